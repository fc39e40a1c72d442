import pytest
import sympy
from hypothesis import given, strategies as st

from bcflab.bcf import compute_sequence, compute_triangle
from bcflab.errors import InsufficientMatrixSize, NotAZShape, TruncationUnsafe
from bcflab.exactalg import PolyMatrix, poly, var
from bcflab.prodmat import (L, ProductionSpec, Ustar, az_sequences, build_production,
                            conjugate_by_Txi, contract, contract_thron, output_matrix,
                            periodic_az_matrix, production_of, restrict_delta, riordan_verify,
                            row_generating_matrix, stieltjes_factors, toeplitz_powers)
from bcflab.weights import WeightSystem, constant_weights, generic_J, generic_S, generic_T
from conftest import same, to_sympy

xi = var("xi")


def test_tridiagonal_ones_give_motzkin():
    P = build_production(ProductionSpec("J", 1, constant_weights("J", 1), 6))
    assert output_matrix(P, 5).column(0) == [poly(v) for v in [1, 1, 2, 4, 9, 21]]


def test_stieltjes_production_with_unit_weights_gives_catalan():
    P = build_production(ProductionSpec("SEven", 1, constant_weights("S", 1), 7))
    assert output_matrix(P, 6).column(0) == [poly(v) for v in [1, 1, 2, 5, 14, 42, 132]]


def test_output_rows_are_first_rows_of_matrix_powers():
    P = build_production(ProductionSpec("SEven", 2, generic_S(2), 5))
    tri = output_matrix(P, 4)
    Ps = sympy.Matrix(5, 5, lambda i, j: to_sympy(P[i, j]))
    for n in range(5):
        row = (Ps ** n).row(0)
        for k in range(n + 1):
            assert same(tri[n, k], row[k])


def test_output_matrix_rejects_bad_superdiagonal_and_small_blocks():
    M = PolyMatrix([[1, 0, 0], [1, 1, 1], [1, 1, 1]])
    with pytest.raises(ValueError):
        output_matrix(M, 2)
    P = build_production(ProductionSpec("J", 1, generic_J(1), 3))
    with pytest.raises(InsufficientMatrixSize):
        output_matrix(P, 5)


@pytest.mark.parametrize("m", [1, 2])
def test_production_output_equals_dp(m):
    w = generic_S(m)
    P = build_production(ProductionSpec("SEven", m, w, 5))
    assert output_matrix(P, 4).rows == compute_triangle("S", m, w, 4).rows
    wt = generic_T(m)
    P = build_production(ProductionSpec("RT", m, wt, 4))
    assert output_matrix(P, 3).rows == compute_triangle("T", m, restrict_delta(wt), 3).rows


def test_production_of_inverts_output_matrix():
    P = build_production(ProductionSpec("J", 2, generic_J(2), 6))
    A = output_matrix(P, 5).to_matrix()
    assert production_of(A) == P.submatrix(range(5), range(5))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_contractions(m):
    w = generic_S(m)
    N = 4
    assert compute_triangle("J", m, contract("even", m, w), N).rows == \
        compute_triangle("S", m, w, N).rows
    S = compute_sequence("S", m, w, N)
    J = compute_sequence("J", m, contract("odd", m, w), N - 1)
    assert all(S[n] == w.alpha(m) * J[n - 1] for n in range(1, N + 1))


def test_thron_contraction_matches_restricted_t():
    w = generic_T(1)
    assert compute_sequence("J", 1, contract_thron(1, w), 4) == \
        compute_sequence("T", 1, restrict_delta(w), 4)


# -- conjugation --------------------------------------------------------------

def _explicit_conjugate(M, size):
    # T^{-1} M T computed directly on a block large enough to be exact
    n = M.rows
    T = sympy.Matrix(n, n, lambda i, j: sympy.Symbol("xi") ** (i - j) if i >= j else 0)
    Ms = sympy.Matrix(n, n, lambda i, j: to_sympy(M[i, j]))
    return (T.inv() * Ms * T)[:size, :size]


def test_bidiagonal_conjugation_rules_for_constant_entries():
    s = var("s")
    lower = L(lambda i: s)
    assert lower.conjugated(xi, 4) == lower.dense(4)
    up = Ustar(lambda i: s).conjugated(xi, 4)
    assert up == Ustar(lambda i: s + xi if i == 1 else s).dense(4)


@pytest.mark.parametrize("shape", [L, Ustar])
def test_bidiagonal_conjugation_matches_explicit(shape):
    B = shape(lambda i: var(f"s{i}"))
    want = _explicit_conjugate(PolyMatrix(B.dense(8)), 4)
    got = B.conjugated(xi, 4)
    for i in range(4):
        for j in range(4):
            assert same(got[i][j], want[i, j])


@pytest.mark.parametrize("m,odd", [(1, False), (2, False), (2, True)])
def test_factored_conjugation_matches_explicit_product(m, odd):
    f = stieltjes_factors(m, generic_S(m), odd=odd)
    got = conjugate_by_Txi(f, xi, 4)
    want = _explicit_conjugate(f.materialize(9), 4)
    for i in range(4):
        for j in range(4):
            assert same(got[i, j], want[i, j])


def test_hessenberg_conjugation_matches_factored_and_refuses_overreach():
    f = stieltjes_factors(1, generic_S(1))
    P = f.materialize(6)
    assert conjugate_by_Txi(P, xi, 5) == conjugate_by_Txi(f, xi, 5)
    with pytest.raises(TruncationUnsafe):
        conjugate_by_Txi(P, xi, 6)


def test_row_generating_matrix_column_zero():
    tri = compute_triangle("S", 1, generic_S(1), 3)
    R = row_generating_matrix(tri, xi)
    for n in range(4):
        want = sum((tri[n, k] * xi ** k for k in range(n + 1)), poly(0))
        assert R[n, 0] == want
    assert toeplitz_powers(xi, 3)[2, 0] == xi ** 2


# -- Riordan arrays -----------------------------------------------------------

def test_catalan_az_matrix():
    P = PolyMatrix.from_function(7, 7, lambda i, j: 1 if (j == i + 1 or (i == j and j >= 1)
                                                          or (j == 0 and i == 0)) else 0)
    a, z = az_sequences(P)
    assert a[:3] == [poly(1), poly(1), poly(0)]
    assert z[:2] == [poly(1), poly(0)]
    assert riordan_verify(P, 6)


def test_varying_subdiagonal_is_not_az():
    P = PolyMatrix.from_function(4, 4, lambda i, j: 1 if j == i + 1 else (i if j == i - 1 else 0))
    with pytest.raises(NotAZShape):
        az_sequences(P)


@pytest.mark.parametrize("m", [1, 2])
def test_periodic_az_matrix_reproduces_periodic_sequence(m):
    xs = [var(f"x{j}") for j in range(m + 1)]
    P = periodic_az_matrix(m, xs, 6)
    assert riordan_verify(P, 5)
    w = WeightSystem("S", m, alpha=lambda i: xs[(i - m) % (m + 1)])
    assert output_matrix(P, 5).column(0) == compute_sequence("S", m, w, 5)


@given(st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_riordan_verify_holds_for_numeric_periodic(vals):
    P = periodic_az_matrix(2, vals, 6)
    assert riordan_verify(P, 5)
