"""Weighted hypergraph matching by iterated rounding with per-edge discounts."""

from hypermatch.hypergraph import Hypergraph, WeightedInstance, build_hypergraph
from hypermatch.rational_lp import (
    BasicSolution,
    max_weight_basic_fractional_matching,
    verify_basic,
)
from hypermatch.discounts import DiscountProfile, Schedule, make_profile
from hypermatch.rounding import Stuck, StuckCertificate, Success, find_matching, verify_outcome

__all__ = [
    "BasicSolution",
    "DiscountProfile",
    "Hypergraph",
    "Schedule",
    "Stuck",
    "StuckCertificate",
    "Success",
    "WeightedInstance",
    "build_hypergraph",
    "find_matching",
    "make_profile",
    "max_weight_basic_fractional_matching",
    "verify_basic",
    "verify_outcome",
]

__version__ = "0.1.0"
