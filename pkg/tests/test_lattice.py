"""Cayley-graph construction and measurement."""

import itertools

import pytest

from goldshift.errors import BudgetError, InvalidGeneratorError
from goldshift.lattice import (
    DEFAULT_RELATION,
    LAMBDA,
    LAMBDA_BAR,
    RelationMatrix,
    ball_size_formula,
    ball_sizes_upto,
    build_ball,
    children,
    level_count_exact,
    reduce_word,
    spectral_constants,
)

FREE_3 = RelationMatrix(((1, 1, 1),) * 3)


def test_reduce_word_examples():
    assert reduce_word([2, 2]) == (2,)
    assert reduce_word([]) == ()
    assert reduce_word([2, 2, 1, 2, 2]) == (2, 1, 2)


def test_reduce_word_rejects_bad_generator():
    with pytest.raises(InvalidGeneratorError):
        reduce_word([1, 3])


def test_reduce_word_idempotent_exhaustive():
    for length in range(9):
        for raw in itertools.product((1, 2), repeat=length):
            once = reduce_word(raw)
            assert reduce_word(once) == once


def test_canonical_words_avoid_forbidden_factor():
    for level in build_ball(n=8).levels:
        for g in level:
            assert all(not (a == 2 and b == 2) for a, b in zip(g, g[1:]))


def test_ball_small_counts():
    ball = build_ball(n=2)
    assert ball.level_counts == (1, 2, 3)
    assert ball.ball_sizes[-1] == 6
    assert build_ball(n=0).level_counts == (1,)


def test_ball_matches_formula_and_fibonacci():
    ball = build_ball(n=20)
    sizes = ball_sizes_upto(20)
    assert list(ball.ball_sizes) == sizes
    counts = ball.level_counts
    for n in range(1, 20):
        assert counts[n + 1] == counts[n] + counts[n - 1]
    for n, c in enumerate(counts):
        assert c == level_count_exact(n)


def test_level_counts_match_no_factor_strings():
    # independent combinatorial check: strings over {1,2} with no "22"
    ball = build_ball(n=10)
    for n, count in enumerate(ball.level_counts):
        direct = sum(
            1
            for w in itertools.product((1, 2), repeat=n)
            if all(not (a == 2 and b == 2) for a, b in zip(w, w[1:]))
        )
        assert count == direct


def test_ball_size_formula_values():
    assert ball_size_formula(n=0) == 1
    assert ball_size_formula(n=1) == 3
    assert ball_size_formula(n=3) == 11


def test_free_semigroup_ball():
    ball = build_ball(FREE_3, 2)
    assert ball.level_counts == (1, 3, 9)
    assert ball.ball_sizes[-1] == 13


def test_children():
    assert children(()) == [(1, (1,)), (2, (2,))]
    assert children((2,)) == [(1, (2, 1))]
    assert children((1,)) == [(1, (1, 1)), (2, (1, 2))]
    for g in build_ball(n=6).nodes():
        for _, child in children(g):
            assert len(child) == len(g) + 1


def test_ball_budget():
    with pytest.raises(BudgetError):
        build_ball(n=10, budget=20)


def test_spectral_constants():
    sc = spectral_constants()
    assert abs(sc.lam - LAMBDA) < 1e-12
    assert abs(sc.lam_bar - LAMBDA_BAR) < 1e-12
    assert abs(LAMBDA * LAMBDA_BAR + 1.0) < 1e-12
    assert abs(LAMBDA + LAMBDA_BAR - 1.0) < 1e-12
    import numpy as np

    recon = sc.p @ np.diag([sc.lam, sc.lam_bar]) @ sc.p_inv
    assert np.allclose(recon, [[1, 1], [1, 0]], atol=1e-12)
