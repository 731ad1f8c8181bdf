"""Exact solvers for Channel Assignment: subset DP, meet-in-the-middle, counting."""

from .model import (
    Assignment,
    AssignmentReport,
    BudgetExceeded,
    ChannelInstance,
    FormatError,
    evaluate_assignment,
    parse_assignment,
    parse_instance,
    instance_with_ell,
    random_instance,
    serialize_assignment,
    serialize_instance,
)
from .config import BenchConfig, Budgets
from .span_count import count_at_most, count_exact_span, count_profile
from .span_dp import dp_solve, dp_span
from .span_mim import mim_solve, mim_span
from .tcoloring import (
    SetCoverInstance,
    TColoringInstance,
    domset_to_setcover,
    reduce_setcover_to_tcoloring,
)

__all__ = [
    "Assignment",
    "AssignmentReport",
    "BenchConfig",
    "Budgets",
    "BudgetExceeded",
    "ChannelInstance",
    "FormatError",
    "SetCoverInstance",
    "TColoringInstance",
    "count_at_most",
    "count_exact_span",
    "count_profile",
    "dp_solve",
    "domset_to_setcover",
    "dp_span",
    "evaluate_assignment",
    "instance_with_ell",
    "mim_solve",
    "mim_span",
    "parse_assignment",
    "parse_instance",
    "random_instance",
    "reduce_setcover_to_tcoloring",
    "serialize_assignment",
    "serialize_instance",
]
