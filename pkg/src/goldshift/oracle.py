"""Independent counters used to verify the recurrence engine.

Both oracles work on the explicit ball rather than the collapsed
recurrence: exhaustive enumeration over all symbol assignments (tiny n)
and bottom-up dynamic programming over the tree of length-increasing
edges (moderate n).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from gmpy2 import mpz

from .errors import BudgetError
from .lattice import DEFAULT_RELATION, RelationMatrix, build_ball, children
from .recurrence import (
    AlphaPair,
    TransitionSystem,
    build_system,
    gamma_total,
    iterate_exact,
    transitions_from_alpha,
)

BRUTE_FORCE_NODE_GUARD = 22


def _edges(ball, include_self_loops: bool):
    """(parent index, child index, generator) triples over the ball's nodes."""
    nodes = list(ball.nodes())
    index = {g: i for i, g in enumerate(nodes)}
    out = []
    for g in nodes:
        if len(g) >= ball.n:
            continue
        for j, child in children(g, ball.relation):
            out.append((index[g], index[child], j))
    if include_self_loops:
        for g in nodes:
            if g and ball.relation(g[-1], g[-1]) == 0:
                out.append((index[g], index[g], g[-1]))
    return nodes, out


def brute_force_count(ts: TransitionSystem, n: int,
                      include_self_loops: bool = False,
                      relation: RelationMatrix = DEFAULT_RELATION) -> int:
    """Count admissible labelings by trying all 2^|E_n| assignments.

    Constraints are checked on length-increasing edges only; the
    `include_self_loops` switch exists to show how counts would change
    under the alternative edge semantics, and is not used by defaults.
    """
    ball = build_ball(relation, n)
    if ball.ball_sizes[-1] > BRUTE_FORCE_NODE_GUARD:
        raise BudgetError(f"|E_{n}| = {ball.ball_sizes[-1]} exceeds brute-force guard")
    nodes, edges = _edges(ball, include_self_loops)
    t = (ts.t1, ts.t2)
    count = 0
    for labels in product((0, 1), repeat=len(nodes)):
        if all(t[j - 1][labels[a]][labels[b]] for a, b, j in edges):
            count += 1
    return count


def tree_dp_count(ts: TransitionSystem, n: int,
                  relation: RelationMatrix = DEFAULT_RELATION) -> int:
    """Bottom-up count: per-node admissible-extension vectors, exact integers."""
    ball = build_ball(relation, n)
    t = (ts.t1, ts.t2)
    vectors = {g: (mpz(1), mpz(1)) for g in ball.levels[-1]}
    for level in reversed(ball.levels[:-1]):
        for g in level:
            vec = []
            for a in range(2):
                acc = mpz(1)
                for j, child in children(g, relation):
                    acc *= sum(mpz(t[j - 1][a][b]) * vectors[child][b] for b in range(2))
                vec.append(acc)
            vectors[g] = tuple(vec)
    return int(sum(vectors[()]))


def tree_dp_count_general(relation: RelationMatrix, transitions, n: int) -> int:
    """The same bottom-up count for d generators and m symbols."""
    ball = build_ball(relation, n)
    m = len(transitions[0])
    vectors = {g: (mpz(1),) * m for g in ball.levels[-1]}
    for level in reversed(ball.levels[:-1]):
        for g in level:
            vec = []
            for a in range(m):
                acc = mpz(1)
                for j, child in children(g, relation):
                    acc *= sum(mpz(transitions[j - 1][a][b]) * vectors[child][b]
                               for b in range(m))
                vec.append(acc)
            vectors[g] = tuple(vec)
    return int(sum(vectors[()]))


@dataclass(frozen=True)
class CountReport:
    n: int
    brute_force: int | None
    tree_dp: int
    recurrence: int

    @property
    def match(self) -> bool:
        counts = {self.tree_dp, self.recurrence}
        if self.brute_force is not None:
            counts.add(self.brute_force)
        return len(counts) == 1


def cross_check(ap: AlphaPair, n_max: int = 3,
                brute_limit: int = 4) -> list[CountReport]:
    """Run every applicable counter at each level; mismatches are data."""
    if n_max > 20:
        raise BudgetError("tree DP cross-check capped at n = 20")
    sys = build_system(ap.k, ap.l)
    ts = transitions_from_alpha(ap)
    states = iterate_exact(sys, n_max)
    reports = []
    for st in states:
        bf = None
        if st.n <= brute_limit:
            try:
                bf = brute_force_count(ts, st.n)
            except BudgetError:
                bf = None
        reports.append(CountReport(st.n, bf, tree_dp_count(ts, st.n),
                                   int(gamma_total(st))))
    return reports
