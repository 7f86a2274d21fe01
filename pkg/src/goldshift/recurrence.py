"""Nonlinear recurrences counting admissible labelings of golden-mean balls.

A shift of finite type on the default semigroup is given by two binary
2x2 transition matrices (T1, T2), one per generator.  The number of
admissible labelings of the radius-n ball splits into four sequences
gamma_{i,n}^{[s_j]} (root symbol i, subtree rooted after generator j)
which satisfy a closed system of polynomial recurrences.  The system is
determined by the pair of 4-vectors alpha_i = row_i(T1) (x) row_i(T2)
(dyadic product), each of which is one of nine canonical vectors.

State layout used throughout: index 0 = gamma_1^[s1], 1 = gamma_2^[s1],
2 = gamma_1^[s2], 3 = gamma_2^[s2].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from gmpy2 import log as _mpz_log
from gmpy2 import mpz

from .errors import (
    BudgetError,
    InvalidAlphaError,
    InvalidTransitionError,
    NumericFaultError,
    ShapeError,
)
from .lattice import DEFAULT_RELATION, RelationMatrix

#: The nine binary 4-vectors expressible as a dyadic product of nonzero
#: binary 2-vectors, in their conventional order.
CANONICAL_VECTORS: dict[int, tuple[int, int, int, int]] = {
    1: (1, 1, 1, 1),
    2: (1, 0, 1, 0),
    3: (0, 1, 0, 1),
    4: (1, 1, 0, 0),
    5: (0, 0, 1, 1),
    6: (1, 0, 0, 0),
    7: (0, 1, 0, 0),
    8: (0, 0, 1, 0),
    9: (0, 0, 0, 1),
}

_NONZERO_ROWS = ((1, 1), (1, 0), (0, 1))


def _factorizations() -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
    out = {}
    for idx, v in CANONICAL_VECTORS.items():
        for a in _NONZERO_ROWS:
            for b in _NONZERO_ROWS:
                if (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]) == v:
                    out[idx] = (a, b)
    return out


#: v_k = a (x) b with a the T1 row and b the T2 row; unique for each k.
FACTORIZATIONS = _factorizations()

VECTOR_INDEX = {v: k for k, v in CANONICAL_VECTORS.items()}

DEFAULT_EXACT_HORIZON = 30


@dataclass(frozen=True)
class TransitionSystem:
    """Pair of binary 2x2 constraint matrices, one per generator."""

    t1: tuple[tuple[int, int], tuple[int, int]]
    t2: tuple[tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        for t in (self.t1, self.t2):
            for row in t:
                if any(x not in (0, 1) for x in row):
                    raise InvalidTransitionError("transition entries must be 0/1")
                if not any(row):
                    raise InvalidTransitionError("transition matrices must have no zero rows")


@dataclass(frozen=True)
class AlphaPair:
    """The pair (alpha_1, alpha_2) identified by canonical indices (k, l)."""

    k: int
    l: int

    def __post_init__(self):
        if self.k not in CANONICAL_VECTORS or self.l not in CANONICAL_VECTORS:
            raise InvalidAlphaError(f"indices ({self.k},{self.l}) outside 1..9")

    @property
    def alpha1(self) -> tuple[int, int, int, int]:
        return CANONICAL_VECTORS[self.k]

    @property
    def alpha2(self) -> tuple[int, int, int, int]:
        return CANONICAL_VECTORS[self.l]

    def __str__(self) -> str:
        return f"F{self.k}{self.l}"


def alpha_from_transitions(ts: TransitionSystem) -> AlphaPair:
    """alpha_i = row_i(T1) (x) row_i(T2), identified with its canonical index."""
    idx = []
    for i in range(2):
        a, b = ts.t1[i], ts.t2[i]
        v = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
        if v not in VECTOR_INDEX:
            raise InvalidAlphaError(f"row {i + 1} dyadic product {v} not canonical")
        idx.append(VECTOR_INDEX[v])
    return AlphaPair(idx[0], idx[1])


def transitions_from_alpha(ap: AlphaPair) -> TransitionSystem:
    """Unique (T1, T2) with row_i(T1) (x) row_i(T2) = alpha_i."""
    a1, b1 = FACTORIZATIONS[ap.k]
    a2, b2 = FACTORIZATIONS[ap.l]
    return TransitionSystem((a1, a2), (b1, b2))


@dataclass(frozen=True)
class RecurrenceSystem:
    """The four coupled equations, as monomial index tuples per equation.

    term_sets[0..1] hold the s1 equations: each monomial is a pair
    (j1, j2) with j1 in {0,1} (an s1 symbol) and j2 in {2,3} (an s2
    symbol), one per 1-entry of alpha_i.  term_sets[2..3] hold the s2
    equations: single-index monomials (j,), one per 1-entry of row i of
    T1.  All coefficients are 1 by construction.
    """

    alpha: AlphaPair
    transitions: TransitionSystem
    term_sets: tuple[tuple[tuple[int, ...], ...], ...]

    def __str__(self) -> str:
        return str(self.alpha)


def build_system(k: int, l: int) -> RecurrenceSystem:
    ap = AlphaPair(k, l)
    ts = transitions_from_alpha(ap)
    eqs = []
    for vec in (ap.alpha1, ap.alpha2):
        # position p (row-major) pairs symbol p//2 of s1 with symbol p%2 of s2
        eqs.append(tuple((p // 2, 2 + p % 2) for p in range(4) if vec[p]))
    for i in range(2):
        eqs.append(tuple((j,) for j in range(2) if ts.t1[i][j]))
    return RecurrenceSystem(ap, ts, tuple(eqs))


def system_from_transitions(ts: TransitionSystem) -> RecurrenceSystem:
    ap = alpha_from_transitions(ts)
    return build_system(ap.k, ap.l)


ALL_PAIRS = tuple((k, l) for k in range(1, 10) for l in range(1, 10))


@dataclass(frozen=True)
class GammaState:
    """The four counts at one level, exact integers or natural logs."""

    n: int
    values: tuple
    log: bool = False

    def __post_init__(self):
        if self.log:
            if any(not math.isfinite(v) for v in self.values):
                raise NumericFaultError(f"non-finite log state at n={self.n}")
        elif any(v < 1 for v in self.values):
            raise ValueError("exact counts must be >= 1")


def initial_state(sys: RecurrenceSystem) -> GammaState:
    """Level-1 counts: |alpha_i| for s1 symbols, row sums of T1 for s2 symbols."""
    vals = (
        sum(sys.alpha.alpha1),
        sum(sys.alpha.alpha2),
        sum(sys.transitions.t1[0]),
        sum(sys.transitions.t1[1]),
    )
    return GammaState(1, tuple(mpz(v) for v in vals))


def step_exact(sys: RecurrenceSystem, state: GammaState) -> GammaState:
    """One synchronous update in unbounded-integer arithmetic."""
    if state.log:
        raise ValueError("step_exact requires an exact state")
    s = state.values
    nxt = []
    for eq in sys.term_sets:
        acc = mpz(0)
        for mono in eq:
            term = mpz(1)
            for i in mono:
                term *= s[i]
            acc += term
        nxt.append(acc)
    return GammaState(state.n + 1, tuple(nxt))


def _lse(vals) -> float:
    m = max(vals)
    return m + math.log(sum(math.exp(x - m) for x in vals))


def step_log(sys: RecurrenceSystem, state: GammaState) -> GammaState:
    """One synchronous update on ln-values via log-sum-exp.

    Summation runs in ascending monomial index so output is
    bit-reproducible.
    """
    if not state.log:
        raise ValueError("step_log requires a log state")
    w = state.values
    nxt = tuple(_lse([sum(w[i] for i in mono) for mono in eq]) for eq in sys.term_sets)
    return GammaState(state.n + 1, nxt, log=True)


def to_log(state: GammaState) -> GammaState:
    if state.log:
        return state
    return GammaState(state.n, tuple(float(_mpz_log(v)) for v in state.values), log=True)


def gamma_total(state: GammaState):
    """gamma_n = gamma_1^[s1] + gamma_2^[s1], in the state's representation."""
    if state.log:
        return _lse(list(state.values[:2]))
    return state.values[0] + state.values[1]


def iterate_exact(sys: RecurrenceSystem, n_max: int,
                  horizon: int = DEFAULT_EXACT_HORIZON) -> list[GammaState]:
    """Exact trajectory [state_1 .. state_{n_max}]; guarded against blowup.

    Integer sizes are doubly exponential in n; the default cap keeps a
    full sweep over the 81 systems under a second.
    """
    if n_max > horizon:
        raise BudgetError(f"exact iteration beyond n={horizon} (asked {n_max})")
    states = [initial_state(sys)]
    while states[-1].n < n_max:
        states.append(step_exact(sys, states[-1]))
    return states


def iterate_log(sys: RecurrenceSystem, n_max: int,
                seed: GammaState | None = None) -> list[GammaState]:
    """Log-domain trajectory [state_1 .. state_{n_max}].

    If `seed` (an exact state) is given, the log trajectory starts from
    its ln-values; earlier entries are filled from a fresh start so the
    list is always indexed by level - 1.
    """
    start = to_log(seed) if seed is not None else to_log(initial_state(sys))
    states = [to_log(initial_state(sys))]
    while states[-1].n < start.n:
        states.append(step_log(sys, states[-1]))
    if start.n > 1:
        states[start.n - 1] = start
    cur = states[-1]
    while cur.n < n_max:
        cur = step_log(sys, cur)
        states.append(cur)
    return states


def hybrid_log_trajectory(sys: RecurrenceSystem, n_max: int,
                          exact_to: int = DEFAULT_EXACT_HORIZON) -> list[GammaState]:
    """Exact prefix re-seeded into the log iteration for maximal accuracy."""
    cut = min(n_max, exact_to)
    exact = iterate_exact(sys, cut)
    states = [to_log(st) for st in exact]
    cur = states[-1]
    while cur.n < n_max:
        cur = step_log(sys, cur)
        states.append(cur)
    return states


def step_general(relation: RelationMatrix, transitions, state):
    """One update of the general counting recurrence.

    `transitions` is a list of m x m binary matrices, one per generator;
    `state` is a list of per-generator count vectors (length m each):
    state[j][i] counts subtrees below an s_{j+1} edge whose root carries
    symbol i+1.  The update is

        gamma_{i}^{[s_j]} <- prod over k with A(j,k)=1 of
                             sum_l T_k(i,l) gamma_{l}^{[s_k]}

    and specializes to step_exact for the default relation with 2 symbols.
    """
    d = relation.d
    if len(transitions) != d or len(state) != d:
        raise ShapeError("need one transition matrix and one state vector per generator")
    m = len(transitions[0])
    for t in transitions:
        if len(t) != m or any(len(row) != m for row in t):
            raise ShapeError("transition matrices must share one symbol count")
        if any(not any(row) for row in t):
            raise InvalidTransitionError("transition matrices must have no zero rows")
    for vec in state:
        if len(vec) != m:
            raise ShapeError("state vectors must match the symbol count")
    nxt = []
    for j in range(1, d + 1):
        vec = []
        for i in range(m):
            acc = mpz(1)
            for k in range(1, d + 1):
                if relation(j, k) == 1:
                    acc *= sum(mpz(transitions[k - 1][i][ll]) * state[k - 1][ll]
                               for ll in range(m))
            vec.append(acc)
        nxt.append(tuple(vec))
    return nxt


def general_initial_state(relation: RelationMatrix, transitions):
    """Level-1 counts for the general recurrence (admissible 1-blocks)."""
    m = len(transitions[0])
    state = []
    for j in range(1, relation.d + 1):
        vec = []
        for i in range(m):
            acc = mpz(1)
            for k in range(1, relation.d + 1):
                if relation(j, k) == 1:
                    acc *= sum(transitions[k - 1][i][ll] for ll in range(m))
            vec.append(acc)
        state.append(tuple(vec))
    return state


def general_rooted_total(relation: RelationMatrix, transitions, state):
    """Count of labelings of the ball one level above `state`, rooted at e."""
    m = len(transitions[0])
    total = mpz(0)
    for i in range(m):
        acc = mpz(1)
        for k in range(1, relation.d + 1):
            acc *= sum(mpz(transitions[k - 1][i][ll]) * state[k - 1][ll]
                       for ll in range(m))
        total += acc
    return total


def doubled_term_sets(sys: RecurrenceSystem):
    """Compose two steps symbolically: level-n symbols in level-(n-2) monomials.

    Returns, per equation, a dict mapping sorted index tuples to integer
    coefficients.  Used by the doubled-step entropy engine for systems
    whose maximality pattern alternates with period 2.
    """
    out = []
    for eq in sys.term_sets:
        monos: dict[tuple[int, ...], int] = {}
        for mono in eq:
            expansions = [sys.term_sets[i] for i in mono]
            for combo in product(*expansions):
                key = tuple(sorted(x for part in combo for x in part))
                monos[key] = monos.get(key, 0) + 1
        out.append(monos)
    return out
