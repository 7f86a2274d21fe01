"""Symbol-swap equivalence of recurrence systems.

Relabeling the two alphabet symbols (1 <-> 2) turns the system with
alpha pair (v_k, v_l) into the one with (sigma(v_l), sigma(v_k)), where
sigma reverses a 4-vector.  Equivalent systems have identical count
trajectories up to the relabeling, hence identical entropy.
"""

from __future__ import annotations

from dataclasses import dataclass

from .recurrence import (
    ALL_PAIRS,
    CANONICAL_VECTORS,
    VECTOR_INDEX,
    AlphaPair,
    TransitionSystem,
    transitions_from_alpha,
)


def sigma(index: int) -> int:
    """Index of the reversed canonical vector."""
    return VECTOR_INDEX[tuple(reversed(CANONICAL_VECTORS[index]))]


def swap_image(ap: AlphaPair) -> AlphaPair:
    """The alpha pair of the symbol-relabeled system."""
    return AlphaPair(sigma(ap.l), sigma(ap.k))


def swap_image_via_transitions(ap: AlphaPair) -> AlphaPair:
    """Same map derived by conjugating (T1, T2) with the symbol transposition.

    Kept as an independent derivation; both must agree.
    """
    ts = transitions_from_alpha(ap)

    def conj(t):
        return ((t[1][1], t[1][0]), (t[0][1], t[0][0]))

    from .recurrence import alpha_from_transitions

    return alpha_from_transitions(TransitionSystem(conj(ts.t1), conj(ts.t2)))


def swap_state(values):
    """Reorder a 4-component state to the relabeled system's convention."""
    return (values[1], values[0], values[3], values[2])


@dataclass(frozen=True)
class EquivalenceClass:
    members: frozenset[tuple[int, int]]

    @property
    def canonical_member(self) -> tuple[int, int]:
        return min(self.members)


def partition_all() -> list[EquivalenceClass]:
    """Partition the 81 index pairs into swap-equivalence classes."""
    seen: set[tuple[int, int]] = set()
    classes = []
    for k, l in ALL_PAIRS:
        if (k, l) in seen:
            continue
        img = swap_image(AlphaPair(k, l))
        members = frozenset({(k, l), (img.k, img.l)})
        seen |= members
        classes.append(EquivalenceClass(members))
    return classes


def class_of(ap: AlphaPair) -> EquivalenceClass:
    img = swap_image(ap)
    return EquivalenceClass(frozenset({(ap.k, ap.l), (img.k, img.l)}))
