"""Total positivity certificates.

Symbolic checks enumerate every minor up to the requested order and test
coefficientwise nonnegativity exactly.  Minors of order k are obtained from
those of order k-1 by expanding along the last selected row, so each minor
costs k polynomial products and no divisions.

For fully numeric square matrices there is a second route: a matrix is
strictly totally positive iff all of its initial minors (contiguous rows and
columns, one of the two sets starting at index 0) are positive, which needs
only n^2 determinants.  When that test fails the checker falls back to the
exhaustive scan.
"""

from __future__ import annotations

import itertools
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import IndexOutOfRange, InsufficientMatrixSize
from .exactalg import ONE, ZERO, MinorEngine, PolyMatrix
from .prodmat import is_lower_hessenberg


def worker_count() -> int:
    """Thread cap from BCFLAB_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("BCFLAB_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class TPReport:
    verdict: str  # "tp" or "violated"
    order: int
    checked: int
    witness: tuple | None = None  # (rows, cols, minor)
    method: str = field(default="exhaustive")

    @property
    def ok(self) -> bool:
        return self.verdict == "tp"

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "order": self.order, "checked": self.checked}
        if self.witness is not None:
            rows, cols, minor = self.witness
            out["witness"] = {"rows": list(rows), "cols": list(cols), "minor": minor.to_json()}
        return out


def hankel_matrix(seq: Sequence, size: int, shift: int = 0) -> PolyMatrix:
    need = 2 * (size - 1) + shift
    if size < 1:
        raise ValueError("size must be at least 1")
    if need >= len(seq):
        raise IndexOutOfRange(f"Hankel block needs seq[{need}], sequence has {len(seq)} terms")
    return PolyMatrix.from_function(size, size, lambda i, j: seq[i + j + shift])


def _is_numeric(M: PolyMatrix) -> bool:
    return all(x.is_constant() for r in M.entries for x in r)


def check_tp(M: PolyMatrix, r: int, backend: str = "auto", full_scan: bool = False,
             progress: Callable[[str], None] | None = None) -> TPReport:
    """Exhaustive coefficientwise check of all minors of order <= r.

    Minors are visited by increasing order, then lexicographic row set, then
    lexicographic column set; the first failing one is the witness.  With
    ``full_scan`` every minor is still counted after a failure.
    """
    if r < 1:
        raise ValueError("order must be at least 1")
    eng = MinorEngine(M, backend=backend)
    top = min(r, M.rows, M.cols)
    prev = {((), ()): eng._one}
    checked = 0
    witness = None
    threads = worker_count()
    for k in range(1, top + 1):
        row_sets = list(itertools.combinations(range(M.rows), k))
        col_sets = list(itertools.combinations(range(M.cols), k))

        def expand(R, prev=prev, col_sets=col_sets, k=k):
            Rp, rl = R[:-1], R[-1]
            erow = eng._e[rl]
            out = []
            for C in col_sets:
                acc = eng._zero
                for t, c in enumerate(C):
                    e = erow[c]
                    if e == 0:
                        continue
                    sub = prev[(Rp, C[:t] + C[t + 1:])]
                    if sub == 0:
                        continue
                    term = e * sub
                    acc = acc - term if (k - 1 + t) % 2 else acc + term
                out.append(acc)
            return out

        if threads > 1:
            with ThreadPoolExecutor(threads) as ex:
                results = list(ex.map(expand, row_sets))
        else:
            results = [expand(R) for R in row_sets]
        cur = {}
        for R, vals in zip(row_sets, results):
            for C, v in zip(col_sets, vals):
                cur[(R, C)] = v
                checked += 1
                if witness is None and not eng.is_nonneg(v):
                    witness = (R, C, eng.to_mpoly(v))
        if progress:
            progress(f"order {k}: {checked} minors checked")
        if witness is not None and not full_scan:
            break
        prev = cur
    if witness is not None:
        return TPReport("violated", r, checked, witness)
    return TPReport("tp", r, checked)


def _fraction_det(rows: list[list[Fraction]]) -> Fraction:
    # Gaussian elimination over Q
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def initial_minors(M: PolyMatrix):
    """Yield (rows, cols) of the n^2 initial minors of a square matrix."""
    n = M.rows
    for k in range(1, n + 1):
        for start in range(0, n - k + 1):
            yield tuple(range(start, start + k)), tuple(range(k))
            if start:
                yield tuple(range(k)), tuple(range(start, start + k))


def check_tp_numeric(M: PolyMatrix, r: int | None = None) -> TPReport:
    """TP certificate for a square matrix of rationals.

    First tries the strict criterion (all initial minors positive), which
    certifies every minor of every order.  Otherwise runs the exhaustive scan
    up to order r (default: full size).
    """
    if not _is_numeric(M):
        raise ValueError("matrix has non-constant entries")
    n = M.rows
    r = n if r is None else r
    if M.rows == M.cols:
        A = [[Fraction(x.constant_value()) for x in row] for row in M.entries]
        count = 0
        strict = True
        for R, C in initial_minors(M):
            count += 1
            if _fraction_det([[A[i][j] for j in C] for i in R]) <= 0:
                strict = False
                break
        if strict:
            return TPReport("tp", r, count, method="initial-minors")
    rep = check_tp(M, r)
    rep.method = "exhaustive"
    return rep


def hankel_factorization_check(P: PolyMatrix, N: int) -> bool:
    """H(a) = O(P) O(P^T)^T on the N x N block, with a_n = (P^n)_{00}."""
    hess = is_lower_hessenberg(P)
    if hess:
        need = max(N, 2 * N - 2)
        if P.rows < need or P.cols < need:
            raise InsufficientMatrixSize(f"need a {need}x{need} block for N={N}")
    n = min(P.rows, P.cols)
    e = P.entries

    def rowvec_times(v):
        return [sum((v[i] * e[i][j] for i in range(n) if v[i] and e[i][j]), ZERO)
                for j in range(n)]

    def times_colvec(v):
        return [sum((e[i][j] * v[j] for j in range(n) if v[j] and e[i][j]), ZERO)
                for i in range(n)]

    unit = [ONE] + [ZERO] * (n - 1)
    rows = [unit]  # e_0 P^i
    cols = [unit]  # P^j e_0
    for _ in range(2 * N):
        rows.append(rowvec_times(rows[-1]))
    for _ in range(N):
        cols.append(times_colvec(cols[-1]))
    moments = [rows[i][0] for i in range(2 * N - 1)]
    for i in range(N):
        for j in range(N):
            rhs = ZERO
            for k in range(n):
                if rows[i][k] and cols[j][k]:
                    rhs = rhs + rows[i][k] * cols[j][k]
            if rhs != moments[i + j]:
                return False
    return True


def stderr_progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


__all__ = ["TPReport", "hankel_matrix", "check_tp", "check_tp_numeric", "initial_minors",
           "hankel_factorization_check", "worker_count", "stderr_progress"]
