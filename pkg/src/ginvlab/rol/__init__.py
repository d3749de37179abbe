"""Reverse order laws for generalized inverses of products."""

from .catalog import CELL_BY_ID, CELLS, Cell, Facts, SetRelation, cells_for, flagged_cells
from .constructions import (
    huang_condition_three_12,
    huang_condition_two_12,
    huang_construction_three,
    huang_construction_three_12,
    huang_construction_two,
    huang_construction_two_12,
    mixed_rol_candidates_three,
    mixed_rol_candidates_two,
)
from .applications import (
    case64_characterizations,
    covariance_case,
    covariance_survey,
    covariance_unitary,
    idempotent_rol,
    sum_pinv_via_block,
    sum_set_equalities,
    unitary_pinv_identity,
)
from .generate import stratified_instances
from .survey import CaseReport, SampleBank, Verdict, analytic_case, analytic_cell, empirical_case, survey
from .triple import TripleInstance

__all__ = [
    "CELLS", "CELL_BY_ID", "CaseReport", "Cell", "Facts", "SampleBank", "SetRelation",
    "TripleInstance", "Verdict", "analytic_case", "analytic_cell", "case64_characterizations",
    "cells_for", "covariance_case", "covariance_survey", "covariance_unitary", "empirical_case",
    "flagged_cells", "huang_condition_three_12", "huang_condition_two_12",
    "huang_construction_three", "huang_construction_three_12", "huang_construction_two",
    "huang_construction_two_12", "idempotent_rol", "mixed_rol_candidates_three",
    "mixed_rol_candidates_two", "stratified_instances", "sum_pinv_via_block",
    "sum_set_equalities", "survey", "unitary_pinv_identity",
]
