import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from bcflab.bcf import compute_sequence
from bcflab.errors import ArityMismatch, PoleWithinTruncation
from bcflab.exactalg import MPoly, poly, var
from bcflab.hyper import (HyperParams, Ladder, active_slot, all_shift_ratio, branching_order,
                          contiguous_verify, hyper_series, ladder_alpha, log_derivative_ratio,
                          random_params, ratio_grid, ratio_verify, ratio_weights, shift_count,
                          zero_Fm_log_derivative_check)
from conftest import same, to_sympy

pos_fracs = st.fractions(min_value=Fraction(1, 7), max_value=7, max_denominator=7)


def _rat(f):
    return sympy.Rational(f.numerator, f.denominator)


# -- series -------------------------------------------------------------------

def test_series_examples():
    assert list(hyper_series(HyperParams([1, 1], []), 6).coeffs[:7]) == \
        [poly(math.factorial(n)) for n in range(7)]
    a = var("a")
    s = hyper_series(HyperParams([a], []), 2)
    assert s[1] == a and s[2] == a * (a + 1) / 2
    with pytest.raises(PoleWithinTruncation):
        hyper_series(HyperParams([], [-2]), 5)


@given(st.lists(pos_fracs, max_size=3), st.lists(pos_fracs, max_size=2))
def test_series_coefficients_match_sympy_rising_factorials(a, b):
    N = 6
    s = hyper_series(HyperParams(a, b), N)
    for n in range(N + 1):
        want = sympy.prod([sympy.rf(_rat(x), n) for x in a]) / \
            (sympy.prod([sympy.rf(_rat(x), n) for x in b]) * sympy.factorial(n))
        assert same(s[n], want)


def test_basic_series_matches_q_pochhammer():
    a, b, q = [Fraction(1, 3), Fraction(2, 5)], [Fraction(3, 7)], Fraction(1, 2)
    s = hyper_series(HyperParams(a, b, q), 5)

    def poch(x, n):
        return sympy.prod([1 - _rat(x) * _rat(q) ** j for j in range(n)])
    for n in range(6):
        want = poch(a[0], n) * poch(a[1], n) / (poch(b[0], n) * poch(q, n))
        assert same(s[n], want)


def test_log_derivative_matches_all_shift_ratio():
    p = HyperParams([Fraction(1, 2), 3], [Fraction(5, 3)])
    assert log_derivative_ratio(p, 6) == all_shift_ratio(p, 6)
    assert zero_Fm_log_derivative_check([Fraction(3, 2), Fraction(7, 3)], 6)


# -- contiguous relations -----------------------------------------------------

def test_contiguous_examples():
    a1, a2 = var("a1"), var("a2")
    assert contiguous_verify("A-shift", HyperParams([a1, a2], []), i=1, N=6)
    assert contiguous_verify("AB-shift", HyperParams([Fraction(1, 2), Fraction(1, 3)],
                                                     [Fraction(5, 2)]), N=10)
    assert contiguous_verify("q-AB-shift", HyperParams([Fraction(1, 3), Fraction(2, 3)],
                                                       [Fraction(3, 5)], Fraction(1, 2)), N=8)
    assert contiguous_verify("rF0-special", HyperParams([2, 3, 5], []), i=2, N=6)
    with pytest.raises(ValueError):
        contiguous_verify("C-shift", HyperParams([1], [1]))
    with pytest.raises(ArityMismatch):
        contiguous_verify("B-shift", HyperParams([1], []), j=1)


@given(st.sampled_from(["A-shift", "B-shift", "AB-shift"]),
       st.lists(pos_fracs, min_size=1, max_size=3), st.lists(pos_fracs, min_size=1, max_size=2),
       st.data())
def test_contiguous_relations_hold(relation, a, b, data):
    i = data.draw(st.integers(1, len(a)))
    j = data.draw(st.integers(1, len(b)))
    assert contiguous_verify(relation, HyperParams(a, b), i=i, j=j, N=6)


@given(st.lists(pos_fracs, min_size=2, max_size=3), st.data())
def test_q_relation_holds(a, data):
    b = data.draw(st.lists(pos_fracs, min_size=len(a) - 1, max_size=len(a) - 1))
    q = data.draw(st.fractions(min_value=Fraction(1, 9), max_value=Fraction(8, 9), max_denominator=9))
    if any(x * q ** e == 1 for x in b + [Fraction(1)] for e in range(-12, 12)):
        return
    p = HyperParams(a, b, q)
    assert contiguous_verify("q-AB-shift", p, i=data.draw(st.integers(1, len(a))),
                             j=data.draw(st.integers(1, len(b))), N=5)


# -- the shift indexer --------------------------------------------------------

def test_shift_counts_exhaustively():
    for period in range(1, 6):
        for offset in range(-3, 6):
            for i in range(1, period + 1):
                # no shift just before the slot is first active
                assert shift_count(i, i + offset - 1, period, offset) == 0
                for k in range(i + offset - period, i + offset + 4 * period):
                    step = shift_count(i, k, period, offset) - shift_count(i, k - 1, period, offset)
                    assert step == (1 if active_slot(k, period, offset) == i else 0)


def test_active_slot_cycles():
    assert [active_slot(k, 3) for k in range(1, 8)] == [1, 2, 3, 1, 2, 3, 1]
    assert [active_slot(k, 3, 1) for k in range(1, 5)] == [3, 1, 2, 3]


@pytest.mark.parametrize("kind,r,s", [c for c in ratio_grid() if c[0] != "q-first"])
def test_ladder_stages_shift_one_slot_of_each_kind(kind, r, s):
    lad = Ladder.of(kind, r, s)
    assert lad.m == branching_order(kind, r, s)
    for k in range(1, 12):
        a0, b0 = lad.stage(k - 1)
        a1, b1 = lad.stage(k)
        da = [y - x for x, y in zip(a0, a1)]
        db = [y - x for x, y in zip(b0, b1)]
        assert da == [1 if lad.a_active(k) == i else 0 for i in range(1, r + 1)]
        assert db == [1 if lad.b_active(k) == i else 0 for i in range(1, s + 1)]


def test_bad_shapes():
    with pytest.raises(ArityMismatch):
        Ladder.of("rF0", 1, 0)
    with pytest.raises(ArityMismatch):
        Ladder.of("second", 1, 0)
    with pytest.raises(ArityMismatch):
        Ladder.of("q-first", 2, 2)
    with pytest.raises(ArityMismatch):
        ratio_weights("first", 2, 1, HyperParams([1], [1]))


# -- branched-fraction weights ------------------------------------------------

def test_rF0_weights_give_squared_factorials():
    w = ratio_weights("rF0", 3, 0, HyperParams([1, 1, 1], []))
    assert compute_sequence("S", 2, w, 6) == [poly(math.factorial(n) ** 2) for n in range(7)]


def test_first_ratio_examples():
    assert ratio_verify("first", 2, 1, HyperParams([Fraction(1, 2), Fraction(1, 3)],
                                                   [Fraction(5, 2)]), 8)
    assert ratio_verify("q-first", 2, 1, HyperParams([Fraction(1, 3), Fraction(2, 3)],
                                                     [Fraction(3, 5)], Fraction(1, 2)), 6)


def test_symbolic_rF0_weights():
    a = [var("a1"), var("a2")]
    assert ratio_verify("rF0", 2, 0, HyperParams(a, []), 5)


@pytest.mark.parametrize("kind,r,s", ratio_grid())
def test_ratio_weights_on_grid(kind, r, s):
    rng = random.Random(f"{kind}{r}{s}")
    p = random_params(rng, r, s, q=(kind == "q-first"), N=8)
    assert ratio_verify(kind, r, s, p, 6 if kind != "q-first" else 5)
    w = ratio_weights(kind, r, s, p)
    for i in range(w.m, w.m + 3):
        assert w.alpha(i) == ladder_alpha(kind, p, i)


def test_grid_size():
    assert len(ratio_grid()) == 44
