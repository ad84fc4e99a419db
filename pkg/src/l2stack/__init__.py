"""Exact L2 decision for linear quotient stacks [V/G] over a local field."""

__version__ = "0.1.0"

from .decide import (L2Verdict, closed_form_check, decide_l2, verify_verdict, very_good_config,
                     very_good_sl2)
from .exponent import ExponentForm, det_exponent, exponent, negative_part
from .ratlp import LinearProgram, LPOutcome, LPStatus, check_certificate, solve_lp
from .reps import WeightRep, builtin_rep, combine, configuration_rep, parse_rep, rep_from_weights
from .rootdata import GroupSpec, RootDatum, build_root_datum, is_dominant, pairing, parse_group
from .series import SeriesReport, enumerate_dominant, partial_sum
from .weylvol import (cartan_cell_volume, cell_volume_report, flag_point_count, integral_term,
                      sandwich_ratio, weyl_elements)

__all__ = [
    "L2Verdict", "closed_form_check", "decide_l2", "verify_verdict", "very_good_config", "very_good_sl2",
    "ExponentForm", "det_exponent", "exponent", "negative_part",
    "LinearProgram", "LPOutcome", "LPStatus", "check_certificate", "solve_lp",
    "WeightRep", "builtin_rep", "combine", "configuration_rep", "parse_rep", "rep_from_weights",
    "GroupSpec", "RootDatum", "build_root_datum", "is_dominant", "pairing", "parse_group",
    "SeriesReport", "enumerate_dominant", "partial_sum",
    "cartan_cell_volume", "cell_volume_report", "flag_point_count", "integral_term", "sandwich_ratio",
    "weyl_elements",
]
