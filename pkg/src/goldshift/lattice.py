"""Right Cayley graph of the semigroup G = <s_1..s_d | s_i s_j = s_i when A(i,j) = 0>.

The default relation matrix A = [[1,1],[1,0]] gives the golden-mean
semigroup <s1, s2 | s2 s2 = s2>: canonical words are exactly the binary
strings with no "22" factor, so level counts grow like Fibonacci numbers
and ball sizes like powers of the golden ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BudgetError, InvalidGeneratorError

#: Golden ratio, the spectral radius of the default relation matrix.
LAMBDA = (1.0 + math.sqrt(5.0)) / 2.0

#: Its algebraic conjugate.
LAMBDA_BAR = (1.0 - math.sqrt(5.0)) / 2.0

DEFAULT_BALL_BUDGET = 10**7


@dataclass(frozen=True)
class RelationMatrix:
    """Binary d x d matrix A; the relation s_i s_j = s_i holds iff A(i,j) = 0."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = len(self.entries)
        for row in self.entries:
            if len(row) != d or any(x not in (0, 1) for x in row):
                raise ValueError("relation matrix must be square and 0/1")

    @property
    def d(self) -> int:
        return len(self.entries)

    def __call__(self, i: int, j: int) -> int:
        """Entry A(i,j) with 1-based generator indices."""
        return self.entries[i - 1][j - 1]


DEFAULT_RELATION = RelationMatrix(((1, 1), (1, 0)))


def reduce_word(raw, relation: RelationMatrix = DEFAULT_RELATION) -> tuple[int, ...]:
    """Left-to-right reduction of a generator sequence to canonical form.

    Appending j after a word ending in i is a no-op when A(i,j) = 0.
    The empty tuple is the identity.
    """
    out: list[int] = []
    for j in raw:
        if not 1 <= j <= relation.d:
            raise InvalidGeneratorError(f"generator index {j} outside 1..{relation.d}")
        if out and relation(out[-1], j) == 0:
            continue
        out.append(j)
    return tuple(out)


def children(g: tuple[int, ...], relation: RelationMatrix = DEFAULT_RELATION):
    """Length-increasing successors of a canonical word.

    Returns pairs (j, g + (j,)) for each generator j with A(last(g), j) = 1;
    every generator extends the identity.  Self-loop images (A(i,j) = 0)
    are excluded, matching the constraint semantics used by the counting
    recurrences and the oracles.
    """
    if not g:
        return [(j, (j,)) for j in range(1, relation.d + 1)]
    last = g[-1]
    return [(j, g + (j,)) for j in range(1, relation.d + 1) if relation(last, j) == 1]


@dataclass(frozen=True)
class LatticeModel:
    """Explicit ball of radius n: nodes grouped by word length."""

    relation: RelationMatrix
    levels: tuple[tuple[tuple[int, ...], ...], ...]
    level_counts: tuple[int, ...] = field(init=False)
    ball_sizes: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        counts = tuple(len(lv) for lv in self.levels)
        sizes = []
        total = 0
        for c in counts:
            total += c
            sizes.append(total)
        object.__setattr__(self, "level_counts", counts)
        object.__setattr__(self, "ball_sizes", tuple(sizes))

    @property
    def n(self) -> int:
        return len(self.levels) - 1

    def nodes(self):
        for lv in self.levels:
            yield from lv


def build_ball(relation: RelationMatrix = DEFAULT_RELATION, n: int = 0,
               budget: int = DEFAULT_BALL_BUDGET) -> LatticeModel:
    """Enumerate all canonical words of length <= n, grouped by length."""
    if n < 0:
        raise ValueError("n must be non-negative")
    levels: list[tuple] = [((),)]
    total = 1
    for _ in range(n):
        nxt = []
        for g in levels[-1]:
            for _, child in children(g, relation):
                nxt.append(child)
        total += len(nxt)
        if total > budget:
            raise BudgetError(f"ball exceeds {budget} nodes")
        levels.append(tuple(nxt))
    return LatticeModel(relation, tuple(levels))


def ball_size_formula(relation: RelationMatrix = DEFAULT_RELATION, n: int = 0) -> int:
    """First coordinate of sum_{i=0}^{n} A^i 1, in exact integer arithmetic."""
    if n < 0:
        raise ValueError("n must be non-negative")
    d = relation.d
    vec = [1] * d
    total = vec[0]
    for _ in range(n):
        vec = [sum(relation.entries[i][j] * vec[j] for j in range(d)) for i in range(d)]
        total += vec[0]
    return total


def ball_sizes_upto(n: int, relation: RelationMatrix = DEFAULT_RELATION) -> list[int]:
    """|E_0| .. |E_n| in one pass (same recursion as ball_size_formula)."""
    d = relation.d
    vec = [1] * d
    sizes = [vec[0]]
    for _ in range(n):
        vec = [sum(relation.entries[i][j] * vec[j] for j in range(d)) for i in range(d)]
        sizes.append(sizes[-1] + vec[0])
    return sizes


@dataclass(frozen=True)
class SpectralConstants:
    """Eigendata of the default relation matrix."""

    lam: float
    lam_bar: float
    p: np.ndarray
    p_inv: np.ndarray


def spectral_constants(relation: RelationMatrix = DEFAULT_RELATION) -> SpectralConstants:
    """Diagonalization A = P diag(lam, lam_bar) P^-1 for a 2x2 relation."""
    a = np.array(relation.entries, dtype=float)
    if a.shape != (2, 2):
        raise ValueError("spectral constants are defined for 2x2 relations")
    evals, evecs = np.linalg.eig(a)
    order = np.argsort(evals)[::-1]
    evals = evals[order]
    p = evecs[:, order]
    return SpectralConstants(float(evals[0]), float(evals[1]), p, np.linalg.inv(p))


def level_count_exact(n: int) -> int:
    """Number of canonical words of length n for the default relation.

    Fibonacci-style: l_0 = 1, l_1 = 2, l_{n+1} = l_n + l_{n-1}.
    """
    a, b = 1, 2
    if n == 0:
        return 1
    for _ in range(n - 1):
        a, b = b, a + b
    return b
