"""Topological entropy of shifts of finite type on the golden-mean semigroup.

A configuration space lives on the Cayley graph of the semigroup
<s1, s2 | s2 s2 = s2>; admissibility is given by one binary transition
matrix per generator.  This package counts admissible ball labelings
through a coupled polynomial recurrence, classifies the 81 possible
systems by growth behavior, and computes their entropies by several
independent engines that cross-validate one another.
"""

from .classifier import classify_static, detect_empirical, essentiality
from .entropy import (
    EntropyResult,
    degree_estimate,
    entropy,
    entropy_closed_form_E,
    entropy_iterative,
    entropy_O2,
    entropy_series_D,
    entropy_zero,
)
from .equivalence import partition_all, swap_image
from .errors import GoldshiftError
from .lattice import (
    DEFAULT_RELATION,
    LAMBDA,
    LAMBDA_BAR,
    RelationMatrix,
    ball_size_formula,
    build_ball,
    reduce_word,
)
from .oracle import brute_force_count, cross_check, tree_dp_count
from .recurrence import (
    AlphaPair,
    RecurrenceSystem,
    TransitionSystem,
    alpha_from_transitions,
    build_system,
    gamma_total,
    initial_state,
    iterate_exact,
    step_exact,
    step_log,
    transitions_from_alpha,
)
from .reference import reference_entropies, reference_types

__version__ = "0.1.0"

__all__ = [
    "AlphaPair",
    "DEFAULT_RELATION",
    "EntropyResult",
    "GoldshiftError",
    "LAMBDA",
    "LAMBDA_BAR",
    "RecurrenceSystem",
    "RelationMatrix",
    "TransitionSystem",
    "alpha_from_transitions",
    "ball_size_formula",
    "brute_force_count",
    "build_ball",
    "build_system",
    "classify_static",
    "cross_check",
    "degree_estimate",
    "detect_empirical",
    "entropy",
    "entropy_O2",
    "entropy_closed_form_E",
    "entropy_iterative",
    "entropy_series_D",
    "entropy_zero",
    "essentiality",
    "gamma_total",
    "initial_state",
    "iterate_exact",
    "partition_all",
    "reduce_word",
    "reference_entropies",
    "reference_types",
    "step_exact",
    "step_log",
    "swap_image",
    "transitions_from_alpha",
    "tree_dp_count",
]
