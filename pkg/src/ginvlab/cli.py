"""Command-line front end.

Exit codes: 0 on success, 1 on bad input, 2 when a computed result
contradicts an analytic verdict or identity (the counterexample is printed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter, defaultdict
from typing import Any

from .errors import (
    CharacterizationMismatch,
    GinvError,
    IdentityViolated,
    TheoremViolation,
    UnknownCase,
)
from .exactnum import parse_scalar
from .ginverse import ALL_CLASSES, GInvClass, membership_profile, pinv, sample_ginverse
from .matrix import Matrix, loads_matrix, matrix_to_obj, rank
from .rankcalc import rank_product, rank_rowblock_identity, rank_triple_product
from .rol import constructions as cons
from .rol import applications as cor
from .rol.catalog import CELL_BY_ID, CELLS, SetRelation
from .rol.constructions import derive_seed
from .rol.generate import stratified_instances
from .rol.survey import DEFAULT_BUDGET, CaseReport, find_violations, survey
from .rol.triple import TripleInstance

COMMANDS = ("pinv", "ginv", "member", "rankfmla", "rol-two", "rol-three", "survey",
            "covariance", "sum-pinv", "idempotent", "sweep")


class InputError(Exception):
    pass


class Contradiction(Exception):
    def __init__(self, payload: dict):
        super().__init__("contradiction")
        self.payload = payload


# ---- input helpers


def _load(path: str | None, flag: str) -> Matrix:
    if path is None:
        raise InputError(f"missing required {flag} <path>")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return loads_matrix(text)
    except GinvError as exc:
        raise InputError(f"{path}: {type(exc).__name__}: {exc}") from None


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("GINVLAB_SEED")
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"GINVLAB_SEED must be an integer, got {env!r}") from None


def _cls(args, default: GInvClass | None = None) -> GInvClass:
    if args.cls is None:
        if default is None:
            raise InputError("missing required --class")
        return default
    return GInvClass.parse(args.cls)


def _profile_obj(p: dict) -> dict:
    return {c.value: v for c, v in p.items()}


def _report_list(reps: list[CaseReport], witnesses: bool = False) -> list[dict]:
    return [r.to_obj(with_witnesses=witnesses) for r in reps]


# ---- commands; each returns a JSON-serializable payload


def cmd_pinv(args) -> dict:
    a = _load(args.inp or args.a, "--in")
    return {"pinv": matrix_to_obj(pinv(a))}


def cmd_ginv(args) -> dict:
    a = _load(args.inp or args.a, "--in")
    cls = _cls(args)
    seed = _seed(args)
    g = sample_ginverse(a, cls, seed)
    return {"class": cls.value, "seed": seed, "ginverse": matrix_to_obj(g),
            "membership": _profile_obj(membership_profile(g, a))}


def cmd_member(args) -> dict:
    a = _load(args.inp or args.a, "--in")
    g = _load(args.g, "--g")
    prof = _profile_obj(membership_profile(g, a))
    if args.cls is not None:
        cls = GInvClass.parse(args.cls)
        return {"class": cls.value, "member": prof[cls.value], "membership": prof}
    return {"membership": prof}


def cmd_rankfmla(args) -> dict:
    a = _load(args.a, "--a")
    b = _load(args.b, "--b")
    c = _load(args.c, "--c") if args.c else None
    seed = _seed(args)
    out: dict[str, Any] = {"rank_a": rank(a), "rank_b": rank(b)}
    done = False
    if a.rows == b.rows:
        out["row_block_identity"] = rank_rowblock_identity(a, b, derive_seed(seed, "rowblock"))
        if not out["row_block_identity"]:
            raise Contradiction({"identity": "row block rank", "a": matrix_to_obj(a), "b": matrix_to_obj(b)})
        done = True
    if a.cols == b.rows:
        out["product_rank"] = rank_product(a, b, (derive_seed(seed, "pa"), derive_seed(seed, "pb")))
        done = True
        if c is not None and b.cols == c.rows:
            out["triple_product_rank"] = rank_triple_product(
                a, b, c, (derive_seed(seed, "tab"), derive_seed(seed, "tbc")))
    if not done:
        raise InputError("A and B are neither row-compatible nor multipliable")
    return out


def cmd_rol_two(args) -> dict:
    a, b = _load(args.a, "--a"), _load(args.b, "--b")
    cls = _cls(args, GInvClass.G1)
    seed = _seed(args)
    items = cons.mixed_rol_candidates_two(a, b, cls, seed)
    target = a @ b
    rows = []
    failed = []
    for con in items:
        member = membership_profile(con.matrix, target)[cls]
        rows.append({"name": con.name, "member": member, "matrix": matrix_to_obj(con.matrix)})
        if not member:
            failed.append(con.name)
    g, member = cons.huang_construction_two(a, b, GInvClass.G1, seed)
    g12, member12 = cons.huang_construction_two_12(a, b, seed)
    out = {
        "class": cls.value,
        "templates": rows,
        "corrected": {"matrix": matrix_to_obj(g), "member_1": member},
        "corrected_12": {"matrix": matrix_to_obj(g12), "member_12": member12,
                         "rank_condition": cons.huang_condition_two_12(a, b)},
    }
    if failed or not member:
        raise Contradiction({"failed_templates": failed, "corrected_member": member, **out})
    return out


def cmd_rol_three(args) -> dict:
    a, b, c = _load(args.a, "--a"), _load(args.b, "--b"), _load(args.c, "--c")
    cls = _cls(args, GInvClass.G1)
    seed = _seed(args)
    items = cons.mixed_rol_candidates_three(a, b, c, cls, seed)
    target = a @ b @ c
    rows, failed = [], []
    for con in items:
        member = membership_profile(con.matrix, target)[cls]
        rows.append({"name": con.name, "member": member, "matrix": matrix_to_obj(con.matrix)})
        if not member:
            failed.append(con.name)
    g, member = cons.huang_construction_three(a, b, c, GInvClass.G1, seed)
    g12, member12 = cons.huang_construction_three_12(a, b, c, seed)
    out = {
        "class": cls.value,
        "templates": rows,
        "corrected": {"matrix": matrix_to_obj(g), "member_1": member},
        "corrected_12": {"matrix": matrix_to_obj(g12), "member_12": member12,
                         "rank_condition": cons.huang_condition_three_12(a, b, c)},
    }
    if failed or not member:
        raise Contradiction({"failed_templates": failed, "corrected_member": member, **out})
    return out


def _triple(args) -> TripleInstance:
    return TripleInstance(_load(args.a, "--a"), _load(args.b, "--b"), _load(args.c, "--c"))


def _errata(reps: list[CaseReport]) -> list[dict]:
    return [{"case_id": r.case_id, "relation": r.relation.title, "analytic": r.analytic, "exact": r.exact}
            for r in reps if r.exact_disagreement]


def cmd_survey(args) -> dict:
    inst = _triple(args)
    seed = _seed(args)
    cells = list(CELLS)
    if args.case is not None:
        if args.case not in CELL_BY_ID:
            raise UnknownCase(f"unknown case id {args.case!r}")
        cells = [CELL_BY_ID[args.case]]
    elif args.cls is not None:
        cls = GInvClass.parse(args.cls)
        cells = [c for c in cells if c.lhs is cls]
    if args.relation is not None:
        rel = SetRelation.parse(args.relation)
        cells = [c for c in cells if rel in c.relations]
    reps = survey(inst, args.budget, seed, raise_on_violation=False, cells=cells)
    if args.relation is not None:
        reps = [r for r in reps if r.relation is rel]
    out = {
        "instance": {"m": inst.m, "n": inst.n, "rank_b": inst.rank_b,
                     "range_a": inst.facts.range_a, "range_c": inst.facts.range_c},
        "budget": args.budget,
        "seed": seed,
        "reports": _report_list(reps, args.witnesses),
        "exact_disagreements": _errata(reps),
    }
    viol = find_violations(inst, reps)
    if viol:
        raise Contradiction({"violations": viol, **out})
    return out


def cmd_covariance(args) -> dict:
    a, b = _load(args.a, "--a"), _load(args.b, "--b")
    seed = _seed(args)
    if args.case is not None:
        if args.case not in cor.COVARIANCE_BY_ID:
            raise UnknownCase(f"unknown entry id {args.case!r}")
        e = cor.COVARIANCE_BY_ID[args.case]
        reps = [cor.covariance_case(a, b, e.lhs, e.rhs, e.relation, args.budget, seed)]
    else:
        reps = cor.covariance_survey(a, b, args.budget, seed)
    unitary = cor.covariance_unitary(a, b, args.budget, seed) if (a.H @ a) == Matrix.identity(a.cols) else []
    reps_all = reps + unitary
    flagged = [r for r in reps_all if r.violation or r.exact_disagreement]
    out = {
        "reports": _report_list(reps_all, args.witnesses),
        "flagged_as_listed_errata": [
            {"case_id": r.case_id, "note": cor.COVARIANCE_NOTES[r.case_id]}
            for r in flagged if r.case_id in cor.COVARIANCE_NOTES],
    }
    unexpected = [r for r in flagged if r.violation and r.case_id not in cor.COVARIANCE_NOTES]
    if unexpected:
        raise Contradiction({"violations": [r.to_obj(with_witnesses=True) for r in unexpected], **out})
    return out


def cmd_sum_pinv(args) -> dict:
    a, b = _load(args.a, "--a"), _load(args.b, "--b")
    g = cor.sum_pinv_via_block(a, b)
    sets = cor.sum_set_equalities(a, b, min(args.budget, 16), _seed(args))
    out = {"pinv_sum": matrix_to_obj(g), "set_equalities": _profile_obj(sets)}
    if not all(sets.values()):
        raise Contradiction(out)
    return out


def cmd_idempotent(args) -> dict:
    a, b = _load(args.a, "--a"), _load(args.b, "--b")
    if args.alpha is None or args.beta is None:
        raise InputError("idempotent needs --alpha and --beta")
    rep = cor.idempotent_rol(a, b, parse_scalar(args.alpha), parse_scalar(args.beta),
                             args.budget, _seed(args))
    out = rep.to_obj()
    if not rep.factorization or rep.set_equality.violation or rep.mp_rol != rep.mp_conditions_derived:
        raise Contradiction(out)
    return out


def cmd_sweep(args) -> dict:
    seed = _seed(args)
    if args.a or args.b or args.c:
        insts = [("given", _triple(args))]
    else:
        insts = [(f"{s.stratum.value}/{s.alignment.value}{'/complex' if s.complex_ else ''}", i)
                 for s, i in stratified_instances(args.count, seed)]
    cells: dict[tuple[str, str], Counter] = defaultdict(Counter)
    strata: Counter = Counter()
    violations = []
    for label, inst in insts:
        strata[label.split("/")[0]] += 1
        reps = survey(inst, args.budget, seed, raise_on_violation=False)
        for r in reps:
            c = cells[(r.case_id, r.relation.title)]
            c["instances"] += 1
            c[f"analytic_{str(r.analytic).lower()}"] += 1
            c[r.empirical.value] += 1
            if r.violation:
                c["violations"] += 1
            if r.exact_disagreement:
                c["exact_disagreements"] += 1
            if not r.analytic and r.empirical.value == "ConsistentTrue":
                c["unfalsified"] += 1
        violations.extend(find_violations(inst, reps))
    order = {c.case_id: i for i, c in enumerate(CELLS)}
    table = [{"case_id": k[0], "relation": k[1], **dict(sorted(v.items()))}
             for k, v in sorted(cells.items(), key=lambda kv: (order[kv[0][0]], kv[0][1]))]
    out = {
        "instances": len(insts),
        "budget": args.budget,
        "seed": seed,
        "strata": dict(sorted(strata.items())),
        "violations": len(violations),
        "exact_disagreements": sorted({(t["case_id"], t["relation"]) for t in table
                                       if t.get("exact_disagreements")}),
        "cells": table,
    }
    if violations:
        raise Contradiction({"counterexamples": violations, **out})
    return out


HANDLERS = {
    "pinv": cmd_pinv, "ginv": cmd_ginv, "member": cmd_member, "rankfmla": cmd_rankfmla,
    "rol-two": cmd_rol_two, "rol-three": cmd_rol_three, "survey": cmd_survey,
    "covariance": cmd_covariance, "sum-pinv": cmd_sum_pinv, "idempotent": cmd_idempotent,
    "sweep": cmd_sweep,
}


# ---- output


def _text(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict) and set(obj) == {"rows", "cols", "data"}:
        rows = obj["data"]
        if not rows:
            return [f"{pad}[{obj['rows']}x{obj['cols']} empty]"]
        width = max((len(s) for row in rows for s in row), default=1)
        return [pad + "[ " + "  ".join(s.rjust(width) for s in row) + " ]" for row in rows]
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar_text(v)}")
        return lines
    if isinstance(obj, list):
        lines = []
        for v in obj:
            if isinstance(v, (dict, list)):
                sub = _text(v, indent + 1)
                lines.append(f"{pad}-")
                lines.extend(sub)
            else:
                lines.append(f"{pad}- {_scalar_text(v)}")
        return lines
    return [pad + _scalar_text(obj)]


def _scalar_text(v: Any) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return str(v)


def render(payload: Any, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    return "\n".join(_text(payload)) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ginvlab", description="Exact generalized inverses and reverse order laws.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--in", dest="inp", metavar="PATH", help="input matrix file")
    p.add_argument("--a", metavar="PATH")
    p.add_argument("--b", metavar="PATH")
    p.add_argument("--c", metavar="PATH")
    p.add_argument("--g", metavar="PATH", help="candidate inverse for member")
    p.add_argument("--class", dest="cls", choices=[c.value for c in ALL_CLASSES])
    p.add_argument("--relation", choices=[r.value for r in SetRelation])
    p.add_argument("--case", metavar="ID")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--count", type=int, default=20, help="instances for sweep")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--witnesses", action="store_true", help="embed witness matrices in reports")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", metavar="PATH")
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        if args.budget < 1:
            raise InputError("--budget must be at least 1")
        if args.count < 1:
            raise InputError("--count must be at least 1")
        if args.seed is not None and args.seed < 0:
            raise InputError("--seed must be non-negative")
        payload = HANDLERS[args.command](args)
    except Contradiction as exc:
        _emit(render({"status": "contradiction", **exc.payload}, args.format), args.out)
        return 2
    except TheoremViolation as exc:
        _emit(render({"status": "contradiction", "message": str(exc), "evidence": exc.evidence}, args.format),
              args.out)
        return 2
    except (IdentityViolated, CharacterizationMismatch) as exc:
        _emit(render({"status": "contradiction", "message": f"{type(exc).__name__}: {exc}"}, args.format),
              args.out)
        return 2
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (GinvError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    _emit(render({"status": "ok", **payload}, args.format), args.out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
