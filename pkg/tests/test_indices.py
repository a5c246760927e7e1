"""Multi-index enumeration and shift maps."""

import numpy as np
import pytest

from momentmg import OrderTable, moment_count, rank, unrank


def test_moment_count_reference_values():
    assert moment_count(10) == 286
    assert moment_count(26) == 3654
    assert moment_count(0) == 1
    assert moment_count(1) == 4


def test_moment_count_rejects_negative():
    with pytest.raises(ValueError):
        moment_count(-1)


def test_rank_of_origin():
    assert rank((0, 0, 0), 5) == 0


def test_rank_unrank_roundtrip_exhaustive():
    # all 56 indices of order 5
    assert moment_count(5) == 56
    for r in range(56):
        assert rank(unrank(r, 5), 5) == r


def test_enumeration_is_graded_prefix():
    t5, t3 = OrderTable(5), OrderTable(3)
    n3 = moment_count(3)
    assert np.array_equal(t5.alphas[:n3], t3.alphas)
    assert np.all(np.diff(t5.degree) >= 0)


def test_degree_offsets_match_moment_count():
    t = OrderTable(6)
    for k in range(7):
        assert t.degree_offset[k + 1] == moment_count(k)


def test_shift_down_matches_manual_lookup():
    rng = np.random.default_rng(3)
    t = OrderTable(4)
    w = rng.normal(size=t.count)
    for d in range(3):
        shifted = t.shift_down(w, d)
        for r, a in enumerate(t.alphas):
            b = list(a)
            b[d] -= 1
            expect = w[t.rank(b)] if b[d] >= 0 else 0.0
            assert shifted[r] == expect


def test_shift_down_dot_and_trace_shift():
    rng = np.random.default_rng(4)
    t = OrderTable(5)
    w = rng.normal(size=t.count)
    delta = np.array([0.3, -1.1, 0.7])
    expect = sum(delta[d] * t.shift_down(w, d) for d in range(3))
    assert np.allclose(t.shift_down_dot(w, delta), expect, atol=1e-15)
    expect2 = sum(t.shift_down2(w, d) for d in range(3))
    assert np.allclose(t.trace_shift_down2(w), expect2, atol=1e-15)


def test_rank_rejects_out_of_range():
    t = OrderTable(3)
    with pytest.raises(IndexError):
        t.rank((4, 0, 0))
    with pytest.raises(ValueError):
        t.rank((-1, 0, 0))
