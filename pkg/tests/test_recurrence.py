"""Recurrence construction and iteration."""

import math

import pytest
from gmpy2 import mpz
from hypothesis import given, settings
from hypothesis import strategies as st

from goldshift.errors import BudgetError, InvalidAlphaError, InvalidTransitionError
from goldshift.lattice import RelationMatrix, ball_sizes_upto
from goldshift.recurrence import (
    ALL_PAIRS,
    CANONICAL_VECTORS,
    FACTORIZATIONS,
    AlphaPair,
    TransitionSystem,
    alpha_from_transitions,
    build_system,
    gamma_total,
    general_initial_state,
    general_rooted_total,
    hybrid_log_trajectory,
    initial_state,
    iterate_exact,
    iterate_log,
    step_exact,
    step_general,
    step_log,
    to_log,
    transitions_from_alpha,
)

pair_indices = st.sampled_from(ALL_PAIRS)


def test_canonical_vector_weights():
    assert sum(CANONICAL_VECTORS[1]) == 4
    for k in (2, 3, 4, 5):
        assert sum(CANONICAL_VECTORS[k]) == 2
    for k in (6, 7, 8, 9):
        assert sum(CANONICAL_VECTORS[k]) == 1


def test_factorizations_reproduce_vectors():
    for k, v in CANONICAL_VECTORS.items():
        a, b = FACTORIZATIONS[k]
        assert (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]) == v


def test_alpha_from_transitions_examples():
    t = ((1, 1), (1, 0))
    ap = alpha_from_transitions(TransitionSystem(t, t))
    assert (ap.k, ap.l) == (1, 6)
    ap = alpha_from_transitions(TransitionSystem(((1, 1), (1, 1)), ((1, 0), (0, 1))))
    assert (ap.k, ap.l) == (2, 3)
    ap = alpha_from_transitions(TransitionSystem(((1, 1), (1, 1)), ((1, 1), (1, 1))))
    assert (ap.k, ap.l) == (1, 1)


def test_transitions_from_alpha_examples():
    ts = transitions_from_alpha(AlphaPair(2, 3))
    assert ts.t1 == ((1, 1), (1, 1))
    assert ts.t2 == ((1, 0), (0, 1))
    ts = transitions_from_alpha(AlphaPair(1, 1))
    assert ts.t1 == ts.t2 == ((1, 1), (1, 1))
    ts = transitions_from_alpha(AlphaPair(4, 8))
    assert ts.t1 == ((1, 0), (0, 1))
    assert ts.t2 == ((1, 1), (1, 0))


def test_round_trips_all_systems():
    for k, l in ALL_PAIRS:
        ap = AlphaPair(k, l)
        assert alpha_from_transitions(transitions_from_alpha(ap)) == ap
    rows = ((1, 1), (1, 0), (0, 1))
    for t1r1 in rows:
        for t1r2 in rows:
            for t2r1 in rows:
                for t2r2 in rows:
                    ts = TransitionSystem((t1r1, t1r2), (t2r1, t2r2))
                    assert transitions_from_alpha(alpha_from_transitions(ts)) == ts


def test_invalid_inputs():
    with pytest.raises(InvalidTransitionError):
        TransitionSystem(((0, 0), (1, 1)), ((1, 1), (1, 1)))
    with pytest.raises(InvalidAlphaError):
        AlphaPair(0, 5)


def test_term_set_structure():
    for k, l in ALL_PAIRS:
        sys = build_system(k, l)
        assert len(sys.term_sets[0]) == sum(sys.alpha.alpha1)
        assert len(sys.term_sets[1]) == sum(sys.alpha.alpha2)
        for i in (2, 3):
            row = sys.transitions.t1[i - 2]
            assert sys.term_sets[i] == tuple((j,) for j in range(2) if row[j])
        for mono in sys.term_sets[0] + sys.term_sets[1]:
            assert mono[0] in (0, 1) and mono[1] in (2, 3)


def test_initial_states():
    assert initial_state(build_system(1, 6)).values == (4, 1, 2, 1)
    assert initial_state(build_system(6, 7)).values == (1, 1, 1, 1)
    assert initial_state(build_system(4, 8)).values == (2, 1, 1, 1)
    # 1-block counts, not the source listing's (1, 1) for the last two slots
    assert initial_state(build_system(1, 2)).values == (4, 2, 2, 2)


def test_step_exact_examples():
    sys = build_system(1, 6)
    st1 = initial_state(sys)
    st2 = step_exact(sys, st1)
    assert st2.values == (15, 8, 5, 4)
    assert gamma_total(st2) == 23

    sys = build_system(6, 7)
    st = initial_state(sys)
    for _ in range(5):
        st = step_exact(sys, st)
        assert st.values == (1, 1, 1, 1)
    assert gamma_total(st) == 2


def test_affine_growth_with_inessential_symbols():
    sys = build_system(3, 9)
    states = iterate_exact(sys, 15)
    for st in states:
        assert st.values[1] == 1 and st.values[3] == 1
    for a, b in zip(states, states[1:]):
        assert b.values[0] == a.values[0] + 1


@settings(max_examples=30, deadline=None)
@given(pair_indices)
def test_monotone_counts(pair):
    states = iterate_exact(build_system(*pair), 20)
    for a, b in zip(states, states[1:]):
        assert all(x <= y for x, y in zip(a.values, b.values))


@settings(max_examples=20, deadline=None)
@given(pair_indices)
def test_exact_log_agreement(pair):
    sys = build_system(*pair)
    exact = iterate_exact(sys, 25)
    logs = iterate_log(sys, 25)
    for e, w in zip(exact, logs):
        for ev, lv in zip(to_log(e).values, w.values):
            assert abs(ev - lv) <= 1e-10 * max(1.0, abs(ev))


def test_full_shift_identity():
    sys = build_system(1, 1)
    sizes = ball_sizes_upto(20)
    for st in iterate_exact(sys, 20):
        assert gamma_total(st) == mpz(2) ** sizes[st.n]


def test_type_z_constancy():
    for k in (6, 7, 8, 9):
        for l in (6, 7, 8, 9):
            for st in iterate_exact(build_system(k, l), 30):
                assert gamma_total(st) == 2


def test_exact_budget():
    with pytest.raises(BudgetError):
        iterate_exact(build_system(1, 1), 40)


def test_step_log_requires_log_state():
    sys = build_system(1, 6)
    with pytest.raises(ValueError):
        step_log(sys, initial_state(sys))
    with pytest.raises(ValueError):
        step_exact(sys, to_log(initial_state(sys)))


def test_hybrid_trajectory_continues_cleanly():
    sys = build_system(1, 6)
    traj = hybrid_log_trajectory(sys, 40)
    assert [st.n for st in traj] == list(range(1, 41))
    pure = iterate_log(sys, 40)
    for a, b in zip(traj, pure):
        assert abs(a.values[0] - b.values[0]) <= 1e-9 * max(1.0, abs(a.values[0]))


def test_step_general_specializes():
    rel = RelationMatrix(((1, 1), (1, 0)))
    for k, l in ALL_PAIRS:
        sys = build_system(k, l)
        ts = sys.transitions
        mats = [ts.t1, ts.t2]
        state = general_initial_state(rel, mats)
        assert state[0] == initial_state(sys).values[:2]
        assert state[1] == initial_state(sys).values[2:]
        ref = initial_state(sys)
        for _ in range(9):
            state = step_general(rel, mats, state)
            ref = step_exact(sys, ref)
            assert state[0] + state[1] == ref.values


def test_step_general_free_shift():
    rel = RelationMatrix(((1, 1, 1),) * 3)
    full = ((1, 1), (1, 1))
    mats = [full, full, full]
    state = general_initial_state(rel, mats)
    # a full shift admits every labeling: 2^(ball size), sizes (3^(n+1)-1)/2
    for n in range(1, 5):
        total = general_rooted_total(rel, mats, state)
        assert total == mpz(2) ** ((3 ** (n + 2) - 1) // 2)
        state = step_general(rel, mats, state)


def test_step_general_single_generator_line():
    rel = RelationMatrix(((1,),))
    mats = [((1, 1), (1, 1))]
    state = general_initial_state(rel, mats)
    for n in range(1, 8):
        assert general_rooted_total(rel, mats, state) == 2 ** (n + 2)
        state = step_general(rel, mats, state)
