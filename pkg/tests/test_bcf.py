from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bcflab.bcf import (Triangle, compute_partial, compute_sequence, compute_triangle,
                        embed_weights, euler_gauss_verify, validate_good_set)
from bcflab.errors import BadGoodSet, ConstantTermNotOne, MissingWeight
from bcflab.exactalg import MPoly, SeriesTrunc, poly, var
from bcflab.paths import DYCK, LUKASIEWICZ, SCHROEDER, oracle_gen_poly, oracle_partial_poly
from bcflab.weights import (INF, WeightSystem, alpha_table, constant_weights, generic_J,
                            generic_S, generic_T)

PATH_NAME = {"S": DYCK, "T": SCHROEDER, "J": LUKASIEWICZ}
GENERIC = {"S": generic_S, "T": generic_T, "J": generic_J}

ints = st.integers(-3, 5)


def random_weights(kind, m, draw_list):
    vals = draw_list
    if kind == "S":
        return WeightSystem("S", m, alpha=lambda i: poly(vals[i % len(vals)]))
    if kind == "T":
        return WeightSystem("T", m, alpha=lambda i: poly(vals[i % len(vals)]),
                            delta=lambda i: poly(vals[(3 * i + 1) % len(vals)]))
    return WeightSystem("J", m, beta=lambda l, i: poly(vals[(i + 2 * l) % len(vals)]))


@pytest.mark.parametrize("kind,m,N", [("S", 1, 4), ("S", 2, 3), ("S", 3, 2),
                                      ("T", 1, 3), ("T", 2, 3),
                                      ("J", 1, 5), ("J", 2, 4), ("J", INF, 4)])
def test_symbolic_triangle_matches_path_oracle(kind, m, N):
    w = GENERIC[kind](m)
    tri = compute_triangle(kind, m, w, N)
    for n in range(N + 1):
        for k in range(n + 1):
            assert tri[n, k] == oracle_gen_poly(PATH_NAME[kind], m, n, k, w)


@given(st.sampled_from(["S", "T", "J"]), st.integers(1, 3),
       st.lists(st.fractions(-3, 3, max_denominator=3), min_size=1, max_size=7))
def test_numeric_triangle_matches_path_oracle(kind, m, vals):
    w = random_weights(kind, m, vals)
    N = 3 if kind != "J" else 4
    tri = compute_triangle(kind, m, w, N)
    for n in range(N + 1):
        for k in range(n + 1):
            assert tri[n, k] == oracle_gen_poly(PATH_NAME[kind], m, n, k, w)


@given(st.sampled_from(["S", "T"]), st.integers(1, 3), st.integers(0, 4),
       st.lists(ints, min_size=1, max_size=6))
def test_partial_sequence_matches_oracle(kind, m, l, vals):
    w = random_weights(kind, m, vals)
    got = compute_partial(kind, m, w, l, 3)
    assert got == [oracle_partial_poly(PATH_NAME[kind], m, n, l, w) for n in range(4)]


@pytest.mark.parametrize("kind,m", [("S", 1), ("S", 2), ("T", 2)])
def test_partial_with_zero_height_is_column_zero(kind, m):
    w = GENERIC[kind](m)
    assert compute_partial(kind, m, w, 0, 3) == compute_triangle(kind, m, w, 3).column(0)


def test_sequence_matches_triangle_column():
    w = generic_S(2)
    tri = compute_triangle("S", 2, w, 4)
    assert compute_sequence("S", 2, w, 4, k=1) == tri.column(1)


def test_catalan_and_factorial_sequences():
    cat = compute_sequence("S", 1, constant_weights("S", 1), 6)
    assert cat == [poly(v) for v in [1, 1, 2, 5, 14, 42, 132]]
    fact = WeightSystem("S", 1, alpha=lambda i: poly((i + 1) // 2))
    assert compute_sequence("S", 1, fact, 6) == [poly(v) for v in [1, 1, 2, 6, 24, 120, 720]]


def test_finite_table_reports_missing_weight():
    w = alpha_table(1, [1, 1])
    assert compute_sequence("S", 1, w, 1) == [poly(1), poly(1)]
    with pytest.raises(MissingWeight):
        compute_sequence("S", 1, w, 3)


def test_mismatched_order_rejected():
    with pytest.raises(ValueError):
        compute_triangle("S", 2, generic_S(1), 2)


def test_triangle_json_and_matrix():
    tri = compute_triangle("S", 1, generic_S(1), 3)
    assert Triangle.from_json(tri.to_json()) == tri
    M = tri.to_matrix()
    assert M[3, 1] == tri[3, 1]
    assert M[1, 3] == poly(0)


def test_j_triangle_with_only_longest_falls_is_s_triangle():
    m = 2
    a = lambda i: var(f"alpha{i}")
    w = WeightSystem("J", m, beta=lambda l, i: a(i) if l == m else poly(0))
    s = compute_triangle("S", m, generic_S(m), 2)
    j = compute_triangle("J", m, w, (m + 1) * 2)
    for n in range(3):
        for k in range(n + 1):
            assert j[(m + 1) * n, (m + 1) * k] == s[n, k]


# -- embedding ------------------------------------------------------------------

def test_embedding_inserts_zeros():
    sel = lambda i: i % 3 == 1
    e = embed_weights(1, 2, sel, generic_S(1), N=8)
    a = lambda i: var(f"alpha{i}")
    assert [e.alpha(i) for i in range(2, 10)] == [a(1), a(2), poly(0), a(3), a(4), poly(0), a(5), a(6)]


def test_embedding_preserves_sequence():
    sel = lambda i: i % 3 == 1
    w = generic_S(1)
    e = embed_weights(1, 2, sel, w, N=8)
    assert compute_sequence("S", 2, e, 4) == compute_sequence("S", 1, w, 4)


def test_bad_good_sets():
    with pytest.raises(BadGoodSet):
        validate_good_set(1, 2, {2, 4, 7}, 4)
    with pytest.raises(BadGoodSet):
        validate_good_set(1, 2, {4}, 4)


def test_t_embedding_by_residues():
    w = generic_T(1)
    e = embed_weights(1, 2, {1}, w)
    assert e.alpha(3) == poly(0) and e.delta(5) == poly(0)
    assert compute_sequence("T", 2, e, 3) == compute_sequence("T", 1, w, 3)
    with pytest.raises(BadGoodSet):
        embed_weights(1, 3, {1}, generic_T(1))


# -- Euler-Gauss ladders ----------------------------------------------------------

def test_trivial_ladder():
    N = 5
    zero = WeightSystem("S", 2, alpha=lambda i: poly(0))
    g = [SeriesTrunc.one(N)] * 5
    assert euler_gauss_verify(2, g, zero, N)


def test_catalan_ladder():
    # with unit weights the ladder is 1, C, C^2, C^3 for the Catalan series C
    N = 6
    cat = SeriesTrunc([1, 1, 2, 5, 14, 42, 132], N)
    g = [SeriesTrunc.one(N), cat, cat * cat, cat * cat * cat]
    assert euler_gauss_verify(1, g, constant_weights("S", 1), N)
    assert not euler_gauss_verify(1, g, constant_weights("S", 1, 2), N)


def test_ladder_constant_terms_checked():
    with pytest.raises(ConstantTermNotOne):
        euler_gauss_verify(1, [SeriesTrunc([2], 3)] * 3, generic_S(1), 3)
