import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from bcflab.bcf import compute_partial, compute_sequence, compute_triangle
from bcflab.errors import IndexOutOfRange
from bcflab.exactalg import PolyMatrix, poly, var
from bcflab.prodmat import ProductionSpec, build_production
from bcflab.totalpos import (check_tp, check_tp_numeric, hankel_factorization_check,
                             hankel_matrix, initial_minors)
from bcflab.weights import constant_weights, generic_S

CATALAN = [poly(v) for v in [1, 1, 2, 5, 14, 42, 132, 429]]


def test_catalan_hankel_blocks():
    assert hankel_matrix(CATALAN, 2) == PolyMatrix([[1, 1], [1, 2]])
    assert hankel_matrix(CATALAN, 2, shift=1) == PolyMatrix([[1, 2], [2, 5]])
    with pytest.raises(IndexOutOfRange):
        hankel_matrix(CATALAN, 5)


def test_generic_stieltjes_hankel_is_coefficientwise_tp():
    seq = compute_sequence("S", 2, generic_S(2), 6)
    rep = check_tp(hankel_matrix(seq, 4), 3)
    assert rep.ok and rep.verdict == "tp"
    assert rep.checked == sum(sympy.binomial(4, k) ** 2 for k in (1, 2, 3))


def test_partial_hankel_counterexample():
    seq = compute_partial("S", 1, generic_S(1), 2, 4)
    rep = check_tp(hankel_matrix(seq, 2), 2)
    assert rep.verdict == "violated"
    minor = rep.witness[2]
    a = lambda i: var(f"alpha{i}")
    assert minor.coeff({"alpha1": 1, "alpha3": 1}) == -1
    assert minor == a(3) * a(4) - a(1) * a(3)


def test_violation_witness_is_first_failure():
    rep = check_tp(PolyMatrix([[1, 2], [3, 4]]), 2)
    assert rep.verdict == "violated"
    assert rep.witness[:2] == ((0, 1), (0, 1))
    assert rep.witness[2] == poly(-2)
    full = check_tp(PolyMatrix([[1, 2], [3, 4]]), 2, full_scan=True)
    assert full.checked == 5


def _sympy_all_minors_nonneg(rows, r):
    M = sympy.Matrix(rows)
    n = M.rows
    for k in range(1, r + 1):
        for R in itertools.combinations(range(n), k):
            for C in itertools.combinations(range(n), k):
                if M.extract(list(R), list(C)).det() < 0:
                    return False
    return True


square = st.integers(2, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-1, 4), min_size=n, max_size=n), min_size=n, max_size=n))


@given(square)
def test_exhaustive_verdict_matches_sympy(rows):
    n = len(rows)
    rep = check_tp(PolyMatrix(rows), n)
    assert rep.ok == _sympy_all_minors_nonneg(rows, n)


@given(square)
def test_numeric_certificate_agrees_with_exhaustive(rows):
    M = PolyMatrix(rows)
    assert check_tp_numeric(M).ok == check_tp(M, len(rows)).ok


def test_initial_minor_count():
    assert len(list(initial_minors(PolyMatrix.identity(5)))) == 25


def test_numeric_certificate_uses_initial_minors_for_strict_tp():
    seq = compute_sequence("S", 1, constant_weights("S", 1), 20)
    rep = check_tp_numeric(hankel_matrix(seq, 10))
    assert rep.ok and rep.method == "initial-minors"
    with pytest.raises(ValueError):
        check_tp_numeric(PolyMatrix([[var("x")]]))


def test_triangle_is_tp():
    tri = compute_triangle("S", 1, generic_S(1), 4)
    assert check_tp(tri.to_matrix(), 3).ok


def test_hankel_factorization():
    P = build_production(ProductionSpec("SEven", 1, constant_weights("S", 1), 8))
    assert hankel_factorization_check(P, 4)
    P = build_production(ProductionSpec("SEven", 2, generic_S(2), 6))
    assert hankel_factorization_check(P, 3)
