import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bcflab import families as fam
from bcflab.bcf import compute_partial, compute_sequence
from bcflab.errors import ArityMismatch, UnknownId
from bcflab.exactalg import MPoly, poly, var
from bcflab.paths import TreeKind, tree_oracle

x0, x1, x2 = fam.xvars(3)


def test_weight_family_layouts():
    w = fam.periodic(2, 3, [x0, x1, x2])
    assert [w.alpha(i) for i in range(2, 8)] == [x0, x1, x2, x0, x1, x2]
    y = var("y1")
    w = fam.eventually_periodic(1, 2, [y], [x0, x1])
    assert [w.alpha(i) for i in range(1, 6)] == [y, x0, x1, x0, x1]
    u0, u1 = var("u0"), var("u1")
    w = fam.quasi_affine(1, 2, [x0, x1], [u0, u1])
    assert [w.alpha(i) for i in range(1, 5)] == [x0, x1, x0 + u0, x1 + u1]
    c = fam.xvars(3, "c")
    w = fam.factorized(1, 2, [x0, x1], c)
    assert [w.alpha(i) for i in range(1, 5)] == [c[0] * x0, c[0] * x1, 2 * c[1] * x0, 2 * c[1] * x1]


def test_prealpha_windows():
    w = fam.prealpha_window(2, 2, lambda t: poly(t // 3 + 1))
    assert [w.alpha(i).constant_value() for i in range(2, 11)] == [1, 1, 2, 4, 4, 6, 9, 9, 12]
    pre = lambda t: poly([2 * (t // 3) + 1, 2 * (t // 3) + 2, 2 * (t // 3) + 2][t % 3])
    w = fam.prealpha_window(2, 2, pre)
    assert [w.alpha(i).constant_value() for i in range(2, 11)] == [2, 4, 6, 12, 16, 20, 30, 36, 42]


def test_fuss_narayana_examples():
    assert fam.fuss_narayana("Q", 2, 1, 0, [x0, x1, x2]) == x0 + x1 + x2
    assert fam.fuss_narayana("P", 1, 2, 0, [x0, x1]) == x0 ** 2 + x0 * x1
    for m in (1, 2, 3):
        for n in range(5):
            q = fam.fuss_narayana("Q", m, n, 0, [1] * (m + 1))
            assert q == poly(fam.fuss_catalan(m + 1, n + 1))
    with pytest.raises(ValueError):
        fam.fuss_narayana("P", 1, 2, 1)
    with pytest.raises(UnknownId):
        fam.fuss_narayana("R", 1, 2)
    with pytest.raises(ArityMismatch):
        fam.fuss_narayana("Q", 2, 1, 0, [x0, x1])


@given(st.integers(1, 3), st.lists(st.integers(0, 4), min_size=4, max_size=4), st.integers(0, 4))
def test_fuss_narayana_at_integers_matches_dp(m, vals, n):
    x = vals[:m + 1]
    w = fam.periodic(m, m + 1, x)
    assert fam.fuss_narayana("P", m, n, 0, x) == compute_sequence("S", m, w, n)[n]
    assert fam.fuss_narayana("Q", m, n, 0, x) == compute_partial("S", m, w, m, n)[n]
    xm = vals[:m]
    wm = fam.periodic(m, m, xm)
    assert fam.fuss_narayana("Pminus", m, n, 0, xm) == compute_sequence("S", m, wm, n)[n]


def test_generalized_narayana():
    for n in range(1, 6):
        row = [fam.gen_narayana(1, 2, n, j) for j in range(1, n + 1)]
        assert row == [Fraction(math.comb(n, j) * math.comb(n, j - 1), n) for j in range(1, n + 1)]
    for p in (1, 2, 3):
        for n in range(1, 5):
            assert fam.gen_narayana(p, p, n, n) == fam.fuss_catalan(p, n)
            assert sum(fam.gen_narayana(p, p, n, j) for j in range(n + 1)) == fam.fuss_catalan(p, n)
    for p in (2, 3):
        for n in range(1, 5):
            for j in range(n + 1):
                assert fam.gen_narayana(p, p + 1, n, j, star=True) == \
                    fam.gen_narayana_star_adjacent(p, n, j)


def test_aval_polynomials():
    assert fam.aval(2, 0) == poly(1)
    assert fam.aval(2, 1, [x0, x1, x2]) == x0
    for m in (1, 2):
        for n in range(5):
            assert fam.aval(m, n, [1] * (m + 1)) == poly(fam.fuss_catalan(m + 1, n))
            assert fam.aval(m, n) == compute_sequence("S", m, fam.aval_weights(m), n)[n]


def test_eulerian_examples():
    assert fam.eulerian_mv("P", 1, 2, 0, [x0, x1]) == x0 ** 2 + x0 * x1
    for m in (1, 2):
        for n in range(5):
            assert fam.eulerian_mv("P", m, n, 0, [1] * (m + 1)) == poly(fam.multifactorial(m, n))
            assert fam.eulerian_mv("Pminus", m, n, 0, [1] * m) == poly(fam.multifactorial(m + 1, n))


@pytest.mark.parametrize("m,n", [(1, 3), (2, 3), (1, 4)])
def test_eulerian_routes_agree(m, n):
    x = fam.xvars(m + 1)
    assert fam.eulerian_mv("P", m, n, 0, x) == fam.eulerian_mv("P", m, n, 0, x, route="beta")
    for k in range(n + 1):
        assert fam.eulerian_mv("Qnk", m, n, k, x) == tree_oracle(TreeKind.INCREASING_ARY, m, n, k, x)


def test_eulerian_ladder_verifies():
    from bcflab.bcf import euler_gauss_verify
    x = fam.xvars(2)
    g = fam.eulerian_ladder(1, x, 4, 5)
    assert euler_gauss_verify(1, g, fam.eulerian_weights(1, x), 5)


def test_rth_order_eulerian():
    x = var("x")
    assert fam.rth_order_eulerian(1, 3) == 1 + 4 * x + x ** 2
    assert fam.rth_order_eulerian(2, 3) == 1 + 8 * x + 6 * x ** 2
    for r in (1, 2, 3):
        for n in range(6):
            assert sum(fam.rth_order_eulerian_numbers(r, n)) == fam.multifactorial(r, n)


def test_reversed_eulerian_weights():
    for r in (1, 2):
        S = compute_sequence("S", r, fam.reversed_eulerian_weights(r), 5)
        assert S == [fam.rth_order_eulerian(r, n, reversed=True) for n in range(6)]


def test_classic_numbers():
    assert fam.multifactorial(2, 3) == 15
    assert fam.fuss_catalan(3, 2) == 3
    assert [fam.catalan(n) for n in range(6)] == [1, 1, 2, 5, 14, 42]
    assert [fam.m_schroeder(1, n) for n in range(5)] == [1, 2, 6, 22, 90]
    assert fam.classic_numbers("narayana", 4, {"j": 2}) == 6
    assert fam.classic_numbers("stirling-cycle", 3, {"x": 1, "y": 1}) == poly(6)
    with pytest.raises(UnknownId):
        fam.classic_numbers("bell", 3)


def test_gandhi_and_genocchi():
    y = var("y")
    assert fam.gandhi(1, 1) == poly(1)
    assert fam.gandhi(1, 2) == 2 * y + 1
    assert [fam.genocchi(1, n) for n in range(1, 6)] == [1, 3, 17, 155, 2073]
    rep = fam.gandhi_conjecture_check(1, 5)
    assert rep == {"status": "CONFIRMED", "first_failure": None}


def test_row_generating_weights():
    xi = var("xi")
    w = fam.periodic_rowgen(1, [x0, x1], xi)
    assert [w.alpha(i) for i in range(1, 5)] == [x0 + xi, x1, x0, x1]
