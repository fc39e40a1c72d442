"""Production matrices.

Builds the lower-Hessenberg production matrices attached to S-, T- and J-type
weights, iterates them into output triangles, reads contracted J-weights off
them, conjugates by the Toeplitz matrix of powers T_xi, and checks the
Riordan-array (AZ) description of periodic cases.

Infinite matrices are materialized to an explicit size.  Whenever an
operation would need entries beyond the materialized block it raises
``InsufficientMatrixSize`` or ``TruncationUnsafe`` instead of truncating.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Sequence

from .bcf import Triangle
from .errors import ArityMismatch, InsufficientMatrixSize, NotAZShape, TruncationUnsafe
from .exactalg import MPoly, ONE, ZERO, PolyMatrix, SeriesTrunc, poly, series_div
from .paths import SCHROEDER, enumerate_paths
from .weights import WeightSystem

KINDS = ("SEven", "SOdd", "RT", "J", "PeriodicAZ")


# ---------------------------------------------------------------------------
# bidiagonal factors

@dataclass(frozen=True)
class Bidiagonal:
    """L(s1, s2, ...) (unit diagonal, s_i at (i, i-1)) or U*(s1, s2, ...)
    (s_{i+1} at (i, i), 1 at (i, i+1)).  ``entries(i)`` gives s_i, 1-based."""
    shape: str
    entries: Callable[[int], MPoly]

    def dense(self, size: int) -> list[list[MPoly]]:
        out = [[ZERO] * size for _ in range(size)]
        for i in range(size):
            if self.shape == "L":
                out[i][i] = ONE
                if i:
                    out[i][i - 1] = poly(self.entries(i))
            else:
                out[i][i] = poly(self.entries(i + 1))
                if i + 1 < size:
                    out[i][i + 1] = ONE
        return out

    def conjugated(self, xi: MPoly, size: int) -> list[list[MPoly]]:
        """Entries of T_xi^{-1} B T_xi by the closed-form rules (exact)."""
        s = lambda i: poly(self.entries(i))
        out = [[ZERO] * size for _ in range(size)]
        if self.shape == "L":
            for i in range(size):
                out[i][i] = ONE
                if i:
                    out[i][i - 1] = s(i)
                for j in range(0, i - 1):
                    d = s(i) - s(i - 1)
                    if d:
                        out[i][j] = d * xi ** (i - j - 1)
        else:
            for i in range(size):
                out[i][i] = s(1) + xi if i == 0 else s(i + 1)
                if i + 1 < size:
                    out[i][i + 1] = ONE
                for j in range(0, i):
                    d = s(i + 1) - s(i)
                    if d:
                        out[i][j] = d * xi ** (i - j)
        return out


def L(entries) -> Bidiagonal:
    return Bidiagonal("L", _seq(entries))


def Ustar(entries) -> Bidiagonal:
    return Bidiagonal("U", _seq(entries))


def _seq(entries):
    if callable(entries):
        return entries
    vals = [poly(v) for v in entries]

    def f(i):
        if 1 <= i <= len(vals):
            return vals[i - 1]
        raise InsufficientMatrixSize(f"bidiagonal factor has no entry {i}")
    return f


def _matmul(A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(n):
            acc = ZERO
            for k in range(n):
                a = Ai[k]
                if a:
                    b = B[k][j]
                    if b:
                        acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


class Factored:
    """A product of bidiagonal factors, kept so conjugation can be done exactly."""

    __slots__ = ("factors",)

    def __init__(self, factors: Sequence[Bidiagonal]):
        self.factors = tuple(factors)

    def _product(self, mats, size):
        acc = mats[0]
        for M in mats[1:]:
            acc = _matmul(acc, M)
        return PolyMatrix([r[:size] for r in acc[:size]])

    def materialize(self, size: int) -> PolyMatrix:
        # one spare row/column: a U* factor before an L factor reaches one
        # index beyond the diagonal
        big = size + 1
        return self._product([f.dense(big) for f in self.factors], size)

    def conjugate(self, xi, size: int) -> PolyMatrix:
        xi = poly(xi)
        big = size + 1
        return self._product([f.conjugated(xi, big) for f in self.factors], size)


# ---------------------------------------------------------------------------
# constructors

@dataclass
class ProductionSpec:
    kind: str
    m: int
    weights: object
    size: int


def stieltjes_factors(m: int, alpha: WeightSystem, odd: bool = False) -> Factored:
    """L_1 ... L_m U* (even) or U* L_1 ... L_m (odd) for S-type weights.

    L_r has entries alpha_{m+r+(m+1)(i-1)}; U* has alpha_{m+(m+1)(i-1)}.
    """
    Ls = [L(lambda i, r=r: alpha.alpha(m + r + (m + 1) * (i - 1))) for r in range(1, m + 1)]
    U = Ustar(lambda i: alpha.alpha(m + (m + 1) * (i - 1)))
    return Factored([U] + Ls if odd else Ls + [U])


def _rt_entry(m: int, w: WeightSystem, i: int, j: int) -> MPoly:
    acc = ZERO
    for p in enumerate_paths(SCHROEDER, m, (m + 1) * i, (m + 1) * j, m + 1):
        wt = ONE
        h = p.start_height
        for s in p.steps:
            if s == 1:
                pass
            elif s == -m:
                wt = wt * w.alpha(h)
            else:
                # long steps ending on a multiple of m+1 carry no weight
                wt = ZERO if (h + 1) % (m + 1) == 0 else wt * w.delta(h + 1)
            h += s
            if not wt:
                break
        acc = acc + wt
    return acc


def _elementary(xs: Sequence[MPoly], k: int) -> MPoly:
    # e_k by the usual one-variable-at-a-time recurrence
    e = [ONE] + [ZERO] * k
    for x in xs:
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * x
    return e[k]


def periodic_az_matrix(m: int, x: Sequence, size: int) -> PolyMatrix:
    xs = [poly(v) for v in x]
    if len(xs) != m + 1:
        raise ArityMismatch(f"need x_0..x_{m}, got {len(xs)} values")

    def entry(i, j):
        if j > i + 1:
            return ZERO
        if j == 0:
            return xs[0] * _elementary(xs[1:], i)
        return _elementary(xs, i - j + 1)
    return PolyMatrix.from_function(size, size, entry)


def build_production(spec: ProductionSpec) -> PolyMatrix:
    kind, m, w, size = spec.kind, spec.m, spec.weights, spec.size
    if size < 1:
        raise ValueError("size must be at least 1")
    if kind == "SEven":
        return stieltjes_factors(m, w).materialize(size)
    if kind == "SOdd":
        return stieltjes_factors(m, w, odd=True).materialize(size)
    if kind == "RT":
        return PolyMatrix.from_function(
            size, size, lambda i, j: ONE if j == i + 1 else
            (ZERO if j > i + 1 or i - j > m else _rt_entry(m, w, i, j)))
    if kind == "J":
        return PolyMatrix.from_function(
            size, size, lambda i, j: ONE if j == i + 1 else (w.beta(i - j, i) if j <= i else ZERO))
    if kind == "PeriodicAZ":
        return periodic_az_matrix(m, w, size)
    raise ValueError(f"unknown production kind {kind!r}")


# ---------------------------------------------------------------------------
# iteration

def is_lower_hessenberg(P: PolyMatrix) -> bool:
    return all(not P[i, j] for i in range(P.rows) for j in range(i + 2, P.cols))


def output_matrix(P: PolyMatrix, N: int, family: str = "J", m=None) -> Triangle:
    """Rows 0..N of the output triangle a_{nk} = (P^n)_{0k}."""
    if not is_lower_hessenberg(P):
        raise ValueError("production matrix must be lower-Hessenberg")
    if P.rows < N or P.cols < N + 1:
        raise InsufficientMatrixSize(
            f"{N} output rows need a {N}x{N + 1} block, have {P.rows}x{P.cols}")
    for i in range(N):
        if P[i, i + 1] != ONE:
            raise ValueError(f"superdiagonal entry ({i},{i + 1}) is {P[i, i + 1]}, not 1")
    rows = [[ONE]]
    for n in range(1, N + 1):
        prev = rows[-1]
        row = []
        for k in range(n + 1):
            acc = ZERO
            for i in range(max(0, k - 1), n):
                a, p = prev[i], P[i, k]
                if a and p:
                    acc = acc + a * p
            row.append(acc)
        rows.append(row)
    return Triangle(family, m, N, rows)


def production_of(A: PolyMatrix) -> PolyMatrix:
    """P with A[1:] = A P for a unit-lower-triangular A; size one less than A."""
    n = A.rows
    if A.cols != n:
        raise ValueError("need a square matrix")
    for i in range(n):
        if A[i, i] != ONE or any(A[i, j] for j in range(i + 1, n)):
            raise ValueError("need a unit-lower-triangular matrix")
    # forward substitution column by column: A X = B with B = shifted A
    size = n - 1
    X = [[ZERO] * size for _ in range(size)]
    for j in range(size):
        for i in range(size):
            acc = A[i + 1, j]
            for k in range(i):
                if A[i, k] and X[k][j]:
                    acc = acc - A[i, k] * X[k][j]
            X[i][j] = acc
    return PolyMatrix(X)


# ---------------------------------------------------------------------------
# contraction

class _LazyProduct:
    # grows the materialized product on demand; internally synchronized
    def __init__(self, factored: Factored):
        self.f = factored
        self.M = None
        self.lock = threading.Lock()

    def entry(self, i, j):
        with self.lock:
            if self.M is None or i + 1 >= self.M.rows:
                size = max(8, 2 * (i + 2))
                self.M = self.f.materialize(size)
            return self.M[i, j]


def contract(kind: str, m: int, alpha: WeightSystem) -> WeightSystem:
    """J-weights beta_i^(l) = P_{i, i-l} of the even or odd Stieltjes factorization."""
    if kind not in ("even", "odd"):
        raise ValueError("kind must be 'even' or 'odd'")
    lazy = _LazyProduct(stieltjes_factors(m, alpha, odd=(kind == "odd")))
    return WeightSystem("J", m, beta=lambda l, i: lazy.entry(i, i - l),
                        label=f"{kind}-contraction({alpha.label})")


def contract_thron(m: int, w: WeightSystem) -> WeightSystem:
    """J-weights from the restricted Thron walk matrix."""
    return WeightSystem("J", m, beta=lambda l, i: _rt_entry(m, w, i, i - l),
                        label=f"thron-contraction({w.label})")


def restrict_delta(w: WeightSystem) -> WeightSystem:
    """Zero the delta weights at indices divisible by m+1."""
    m = w.m
    return WeightSystem("T", m, alpha=w.alpha,
                        delta=lambda i: ZERO if i % (m + 1) == 0 else w.delta(i),
                        label=f"restricted({w.label})")


# ---------------------------------------------------------------------------
# conjugation by the Toeplitz matrix of powers

def toeplitz_powers(xi, size: int) -> PolyMatrix:
    xi = poly(xi)
    return PolyMatrix.from_function(size, size, lambda i, j: xi ** (i - j) if i >= j else ZERO)


def conjugate_by_Txi(P, xi, size: int) -> PolyMatrix:
    """T_xi^{-1} P T_xi truncated to ``size``.

    For a ``Factored`` product the closed-form bidiagonal rules are used and any
    size is allowed.  For a plain lower-Hessenberg matrix entry (i, j) needs
    rows up to i and columns up to i+1 of P, so size may be at most
    min(rows, cols - 1).
    """
    xi = poly(xi)
    if isinstance(P, Factored):
        return P.conjugate(xi, size)
    if not is_lower_hessenberg(P):
        raise ValueError("matrix must be lower-Hessenberg")
    if size > min(P.rows, P.cols - 1):
        raise TruncationUnsafe(
            f"a {P.rows}x{P.cols} block determines at most {min(P.rows, P.cols - 1)} rows")
    pw = [ONE]
    for _ in range(P.cols):
        pw.append(pw[-1] * xi)

    def entry(i, j):
        acc = ZERO
        for a, coef in ((i, ONE), (i - 1, -xi)):
            if a < 0:
                continue
            inner = ZERO
            for b in range(j, min(a + 1, P.cols - 1) + 1):
                v = P[a, b]
                if v:
                    inner = inner + v * pw[b - j]
            if inner:
                acc = acc + coef * inner
        return acc
    return PolyMatrix.from_function(size, size, entry)


def row_generating_matrix(tri: Triangle, xi) -> PolyMatrix:
    """Triangle times T_xi; column 0 holds the row-generating polynomials."""
    A = tri.to_matrix()
    return A @ toeplitz_powers(xi, A.rows)


# ---------------------------------------------------------------------------
# Riordan arrays

def az_sequences(P: PolyMatrix) -> tuple[list[MPoly], list[MPoly]]:
    """(a, z) if P has the AZ shape, else NotAZShape."""
    if not is_lower_hessenberg(P):
        raise NotAZShape("not lower-Hessenberg")
    n = min(P.rows, P.cols)
    a = [P[i, 1] for i in range(n)] if P.cols > 1 else []
    for i in range(P.rows):
        for j in range(1, P.cols):
            d = i - j + 1
            if d < 0:
                continue
            if d >= len(a) or P[i, j] != a[d]:
                raise NotAZShape(f"entry ({i},{j}) breaks the Toeplitz pattern")
    z = [P[i, 0] for i in range(P.rows)]
    return a, z


def _compose(coeffs: Sequence[MPoly], g: SeriesTrunc) -> SeriesTrunc:
    # sum c_i g^i with g(0) = 0
    N = g.order
    acc = SeriesTrunc([ZERO], N)
    pw = SeriesTrunc.one(N)
    for i, c in enumerate(coeffs):
        if i > N:
            break
        if c:
            acc = acc + pw * c
        pw = pw * g
    return acc


def riordan_verify(P: PolyMatrix, N: int) -> bool:
    """Compare the output of an AZ production matrix with [t^n] f g^k."""
    a, z = az_sequences(P)
    if P.rows < N + 1 or P.cols < N + 1:
        raise InsufficientMatrixSize(f"need at least {N + 1} rows and columns")
    g = SeriesTrunc([ZERO], N)
    t = SeriesTrunc.t(N)
    for _ in range(N + 1):
        g = t * _compose(a, g)
    f = series_div(SeriesTrunc.one(N), SeriesTrunc.one(N) - t * _compose(z, g))
    tri = output_matrix(P, N)
    pw = f
    for k in range(N + 1):
        for n in range(k, N + 1):
            if tri[n, k] != pw[n]:
                return False
        pw = pw * g
    return True


__all__ = [
    "KINDS", "ProductionSpec", "build_production", "output_matrix", "contract", "contract_thron",
    "conjugate_by_Txi", "riordan_verify", "toeplitz_powers", "row_generating_matrix", "production_of", "restrict_delta",
    "stieltjes_factors", "Factored", "L", "Ustar", "periodic_az_matrix", "az_sequences",
    "is_lower_hessenberg",
]
