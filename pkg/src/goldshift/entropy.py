"""Entropy computation: iterative baseline plus specialized fast engines.

The topological entropy of a system is h = lim ln(gamma_n) / |E_n|,
where gamma_n counts admissible labelings of the radius-n ball.  The
iterative engine evaluates this directly in log arithmetic and works
for every system.  Specialized engines exploit structure:

  * type Z and reducible systems: exact zero with a certificate,
  * type E: closed form in the golden ratio,
  * type D: linearize along the dominant monomials, w_n = K w_{n-1} + b,
    and resum the correction series against the leading eigenpair of K,
  * type O2: the same resummation applied to the two-step composition,
    whose dominance is parity-stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classifier import (
    TYPE_D,
    TYPE_E,
    TYPE_O2,
    TYPE_Z,
    classify_static,
    dominant_monomials,
    essentiality,
)
from .errors import IndeterminateError, NotApplicableError, NumericFaultError
from .lattice import LAMBDA, LAMBDA_BAR, RelationMatrix, ball_sizes_upto
from .recurrence import (
    GammaState,
    RecurrenceSystem,
    _lse,
    doubled_term_sets,
    gamma_total,
    hybrid_log_trajectory,
)

SQRT5 = math.sqrt(5.0)

DEFAULT_N_MAX = 120
DEFAULT_SERIES_TERMS = 80


@dataclass(frozen=True)
class EntropyResult:
    value: float
    method: str
    n_used: int
    residual: float
    rtype: str
    certificate: str | None = None
    series: "SeriesData | None" = None

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise NumericFaultError("non-finite entropy value")


@dataclass(frozen=True)
class SeriesData:
    """Linearization data w_n = K w_{n-1} + b_{n-1} and its resummation."""

    K: np.ndarray
    Q: np.ndarray
    Q_inv: np.ndarray
    D: np.ndarray
    w1: np.ndarray
    b_seq: tuple
    partial_sums: tuple
    tail_bound: float


def _h_sequence(sys: RecurrenceSystem, n_max: int):
    traj = hybrid_log_trajectory(sys, n_max)
    sizes = ball_sizes_upto(n_max)
    hs = [gamma_total(st) / sizes[st.n] for st in traj]
    return traj, hs


def _aitken_tail(hs, tail: int = 20) -> float:
    """One delta-squared pass over the tail; falls back when increments vanish."""
    seq = hs[-tail:]
    best = seq[-1]
    for i in range(len(seq) - 2):
        d1 = seq[i + 1] - seq[i]
        d2 = seq[i + 2] - 2 * seq[i + 1] + seq[i]
        if abs(d2) > 1e-18:
            best = seq[i + 2] - (seq[i + 2] - seq[i + 1]) ** 2 / d2
    return best


def entropy_iterative(sys: RecurrenceSystem, n_max: int = DEFAULT_N_MAX,
                      accelerate: bool = True) -> EntropyResult:
    """Universal engine: h_n = ln(gamma_n) / |E_n| from the log trajectory."""
    if n_max < 10:
        raise ValueError("n_max must be >= 10")
    _, hs = _h_sequence(sys, n_max)
    residual = abs(hs[-1] - hs[-2])
    value = _aitken_tail(hs) if accelerate else hs[-1]
    return EntropyResult(value, "iterative", n_max, residual,
                         classify_static(sys.alpha.k, sys.alpha.l))


def entropy_closed_form_E(sys: RecurrenceSystem) -> EntropyResult:
    """Closed form for systems whose two root symbols grow identically.

    Requires |alpha_1| = |alpha_2| = a and equal T1 row sums b; then
    h = (1 - conj * ln(b)/ln(a)) * ln(a) / lam^2, which reduces to
    ln(a)/lam when b = a.
    """
    a1, a2 = sum(sys.alpha.alpha1), sum(sys.alpha.alpha2)
    b1, b2 = sum(sys.transitions.t1[0]), sum(sys.transitions.t1[1])
    if a1 != a2 or b1 != b2:
        raise NotApplicableError(f"{sys.alpha}: closed form needs equal weights and row sums")
    if a1 == 1:
        value = 0.0
    else:
        value = (1.0 - LAMBDA_BAR * math.log(b1) / math.log(a1)) / LAMBDA**2 * math.log(a1)
    return EntropyResult(value, "closed_form_E", 0, 0.0,
                         classify_static(sys.alpha.k, sys.alpha.l))


def entropy_zero(sys: RecurrenceSystem) -> EntropyResult:
    """Exact zero, certified structurally.

    Either both alpha weights are 1 (every count stays at 1), or after
    substituting symbols that never exceed 1 the equations become
    affine-linear, so gamma_n grows at most singly exponentially while
    |E_n| grows like lam^n.
    """
    rtype = classify_static(sys.alpha.k, sys.alpha.l)
    if sum(sys.alpha.alpha1) == 1 and sum(sys.alpha.alpha2) == 1:
        return EntropyResult(0.0, "closed_form_Z", 0, 0.0, rtype,
                             certificate="all counts constant at 1")
    report = essentiality(sys)
    essential = set(report.essential_indices)
    for eq in sys.term_sets:
        for mono in eq:
            if sum(1 for i in mono if i in essential) > 1:
                raise NotApplicableError(
                    f"{sys.alpha}: reduced system is not affine-linear")
    return EntropyResult(0.0, "closed_form_Z", 0, 0.0, rtype,
                         certificate="affine reduction after dropping "
                                     f"inessential symbols {report.inessential_indices}")


def _leading_eigenpair(K: np.ndarray):
    evals, evecs = np.linalg.eig(K)
    i = int(np.argmax(evals.real))
    v = evecs[:, i].real
    if v[0] < 0:
        v = -v
    evals_l, evecs_l = np.linalg.eig(K.T)
    j = int(np.argmax(evals_l.real))
    u = evecs_l[:, j].real
    u = u / float(u @ v)
    return float(evals[i].real), u, v, evals, evecs


def _resummed_entropy(K: np.ndarray, w_vectors, rho_expected: float, stride: int,
                      sys_label: str):
    """Common core of the series engines.

    Solves w_{m+stride} ~ K w_m + b along the leading eigenpair (u, v)
    of K and returns (h, SeriesData).  The entropy normalization uses
    |E_n| ~ lam^{n+4} / sqrt(5).
    """
    rho, u, v, evals, evecs = _leading_eigenpair(K)
    if abs(rho - rho_expected) > 1e-8:
        raise NotApplicableError(
            f"{sys_label}: leading eigenvalue {rho:.12f} != expected {rho_expected:.12f}")
    w1 = np.asarray(w_vectors[0])
    acc = float(u @ w1)
    partials = [acc]
    b_seq = []
    for m in range(1, len(w_vectors)):
        b = np.asarray(w_vectors[m]) - K @ np.asarray(w_vectors[m - 1])
        b_seq.append(b)
        acc += rho ** (-m) * float(u @ b)
        partials.append(acc)
    # remaining terms are bounded by max|u.b| * rho^-m summed geometrically
    bmax = max((abs(float(u @ b)) for b in b_seq), default=0.0)
    tail = bmax * rho ** (-(len(w_vectors) - 1)) / (rho - 1.0)
    first_level = 1 if stride == 1 else 2
    h = float(v[0]) * acc * SQRT5 / LAMBDA ** (first_level + 4)
    order = np.argsort(evals.real)[::-1]
    Q = evecs[:, order].real
    data = SeriesData(K, Q, np.linalg.inv(Q), np.diag(evals.real[order]),
                      w1, tuple(b_seq), tuple(partials), tail)
    return h, data


def dominance_matrix(sys: RecurrenceSystem) -> np.ndarray:
    """4x4 structure matrix of the stable dominant monomials."""
    picks = dominant_monomials(sys)
    K = np.zeros((4, 4))
    for row, pick in enumerate(picks):
        for i in sys.term_sets[row][pick]:
            K[row, i] += 1.0
    return K


def entropy_series_D(sys: RecurrenceSystem,
                     n_terms: int = DEFAULT_SERIES_TERMS) -> EntropyResult:
    """Resummation along the dominant-monomial linearization (type D)."""
    rtype = classify_static(sys.alpha.k, sys.alpha.l)
    report = essentiality(sys)
    if report.inessential_indices:
        raise NotApplicableError(f"{sys.alpha}: inessential symbols present")
    try:
        K = dominance_matrix(sys)
    except IndeterminateError as exc:
        raise NotApplicableError(str(exc)) from exc
    traj = hybrid_log_trajectory(sys, n_terms + 1)
    w_vectors = [st.values for st in traj]
    h, data = _resummed_entropy(K, w_vectors, LAMBDA, 1, str(sys.alpha))
    return EntropyResult(h, "series_D", n_terms, data.tail_bound, rtype, series=data)


def entropy_O2(sys: RecurrenceSystem, n_max: int = DEFAULT_N_MAX) -> EntropyResult:
    """Doubled-step engine for parity-alternating systems.

    Composes two recurrence steps symbolically, verifies that the
    composition has a stable dominant monomial per equation along even
    levels, then resums with leading eigenvalue lam^2.
    """
    rtype = classify_static(sys.alpha.k, sys.alpha.l)
    if rtype != TYPE_O2:
        raise NotApplicableError(f"{sys.alpha}: doubled-step engine needs type O2")
    doubled = doubled_term_sets(sys)
    n_terms = max(40, n_max // 2)
    traj = hybrid_log_trajectory(sys, 2 * n_terms + 2)
    K = np.zeros((4, 4))
    for row, monos in enumerate(doubled):
        keys = list(monos.keys())
        # dominance judged by plain monomial value; coefficients belong in b
        pick = None
        for st in traj:
            if st.n < 4 or st.n % 2 or st.n > 40:
                continue
            w = traj[st.n - 1 - 2].values  # level n-2 feeds level n
            vals = [sum(w[i] for i in key) for key in keys]
            mx = max(vals)
            top = {i for i, val in enumerate(vals) if val >= mx - 1e-9}
            if pick is None:
                pick = top
            else:
                pick &= top
            if not pick:
                raise NotApplicableError(
                    f"{sys.alpha}: no parity-stable dominant monomial in eq {row}")
        for i in keys[min(pick)]:
            K[row, i] += 1.0
    even_w = [traj[n - 1].values for n in range(2, 2 * n_terms + 3, 2)]
    h, data = _resummed_entropy(K, even_w, LAMBDA**2, 2, str(sys.alpha))
    return EntropyResult(h, "doubled_O2", 2 * n_terms, data.tail_bound, rtype, series=data)


def degree_estimate(sys: RecurrenceSystem, n_max: int = 60) -> tuple[float, bool]:
    """Estimate of lim ln(ln gamma_n)/n; (value, defined) pair.

    Returns (0.0, False) when gamma_n stops growing (bounded systems
    have no meaningful degree).
    """
    if n_max < 10:
        raise ValueError("n_max must be >= 10")
    traj = hybrid_log_trajectory(sys, n_max)
    g_last = gamma_total(traj[-1])
    g_prev = gamma_total(traj[-2])
    if g_last - g_prev < 1e-12:
        return 0.0, False
    return math.log(g_last) / n_max, True


def degree_estimate_general(relation: RelationMatrix, transitions,
                            n_max: int = 60) -> tuple[float, bool]:
    """Degree estimate for the general recurrence, in log arithmetic."""
    d = relation.d
    m = len(transitions[0])
    # log counts per generator edge per symbol
    w = []
    for j in range(1, d + 1):
        vec = []
        for i in range(m):
            acc = 0.0
            for k in range(1, d + 1):
                if relation(j, k) == 1:
                    acc += math.log(sum(transitions[k - 1][i][ll] for ll in range(m)))
            vec.append(acc)
        w.append(vec)
    for _ in range(n_max - 1):
        nxt = []
        for j in range(1, d + 1):
            vec = []
            for i in range(m):
                acc = 0.0
                for k in range(1, d + 1):
                    if relation(j, k) == 1:
                        terms = [w[k - 1][ll] for ll in range(m)
                                 if transitions[k - 1][i][ll]]
                        acc += _lse(terms)
                vec.append(acc)
            nxt.append(vec)
        w = nxt
    rooted = _lse([
        sum(_lse([w[k - 1][ll] for ll in range(m) if transitions[k - 1][i][ll]])
            for k in range(1, d + 1))
        for i in range(m)
    ])
    if rooted <= math.log(2.0) + 1e-9:
        return 0.0, False
    # rooted is ln(gamma) at level n_max + 1
    return math.log(rooted) / (n_max + 1), True


def entropy(sys: RecurrenceSystem, method: str = "auto",
            n_max: int = DEFAULT_N_MAX, accelerate: bool = True) -> EntropyResult:
    """Method dispatch with iterative fallback.

    auto: Z -> zero certificate; E -> closed form; D with all symbols
    essential -> series; D with inessential symbols -> zero certificate
    when the reduction is affine, else iterative; O2 -> doubled-step;
    O -> iterative.  Specialized failures fall back to iterative.
    """
    if method == "iterate":
        return entropy_iterative(sys, n_max, accelerate)
    if method == "closed":
        try:
            return entropy_zero(sys)
        except NotApplicableError:
            return entropy_closed_form_E(sys)
    if method == "series":
        return entropy_series_D(sys)
    if method == "doubled":
        return entropy_O2(sys, n_max)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")

    rtype = classify_static(sys.alpha.k, sys.alpha.l)
    try:
        if rtype == TYPE_Z:
            return entropy_zero(sys)
        if rtype == TYPE_E:
            return entropy_closed_form_E(sys)
        if rtype == TYPE_D:
            if essentiality(sys).inessential_indices:
                try:
                    return entropy_zero(sys)
                except NotApplicableError:
                    return entropy_iterative(sys, n_max, accelerate)
            return entropy_series_D(sys)
        if rtype == TYPE_O2:
            return entropy_O2(sys, n_max)
    except NotApplicableError:
        pass
    return entropy_iterative(sys, n_max, accelerate)
