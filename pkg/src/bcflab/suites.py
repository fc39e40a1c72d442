"""Self-checking suites: each compares two independent routes exactly.

Every suite returns a ``SuiteResult``; ``ok`` is False only when some
comparison disagrees.  The conjecture suite reports its status in
``status`` and counts a refutation as a successful run.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import families as fam
from . import hyper
from .bcf import compute_partial, compute_sequence, compute_triangle, embed_weights
from .exactalg import MPoly, ONE, ZERO
from .paths import (DYCK, LUKASIEWICZ, SCHROEDER, TreeKind, forest_oracle, oracle_gen_poly,
                    tree_oracle)
from .prodmat import (ProductionSpec, build_production, conjugate_by_Txi, contract,
                      output_matrix, restrict_delta, row_generating_matrix)
from .totalpos import check_tp, check_tp_numeric, hankel_factorization_check, hankel_matrix
from .weights import generic_J, generic_S, generic_T
from .weightspec import parse_weight_spec


@dataclass
class SuiteResult:
    number: int
    title: str
    ok: bool = True
    lines: list = field(default_factory=list)
    status: str | None = None
    checks: int = 0

    def check(self, cond: bool, what: str) -> bool:
        self.checks += 1
        if not cond:
            self.ok = False
            self.lines.append(f"MISMATCH {what}")
        return cond

    def note(self, text: str) -> None:
        self.lines.append(text)

    def to_json(self) -> dict:
        out = {"criterion": self.number, "title": self.title, "ok": self.ok,
               "checks": self.checks, "lines": self.lines}
        if self.status is not None:
            out["status"] = self.status
        return out


def _quiet(_msg):
    pass


# ---------------------------------------------------------------------------

def suite_oracle(ms=(1, 2, 3), N: int = 5) -> SuiteResult:
    """Triangles from the DP against brute-force path and forest enumeration."""
    res = SuiteResult(1, "path-sum DP equals brute-force enumeration")
    for m in ms:
        for family, paths, w in (("S", DYCK, generic_S(m)), ("T", SCHROEDER, generic_T(m)),
                                 ("J", LUKASIEWICZ, generic_J(m))):
            tri = compute_triangle(family, m, w, N)
            bad = [(n, k) for n in range(N + 1) for k in range(n + 1)
                   if tri[n, k] != oracle_gen_poly(paths, m, n, k, w)]
            res.check(not bad, f"{family} m={m} entries {bad[:3]}")
            if family == "J":
                badf = [(n, k) for n in range(N + 1) for k in range(n + 1)
                        if tri[n, k] != forest_oracle(m, n, k, w)]
                res.check(not badf, f"J-forest m={m} entries {badf[:3]}")
        res.note(f"m={m}: S, T, J triangles to row {N} agree with enumeration; J agrees with forests")
    return res


def suite_production(ms=(1, 2), N: int = 5) -> SuiteResult:
    res = SuiteResult(2, "production-matrix output equals the DP triangle")
    for m in ms:
        w = generic_S(m)
        P = build_production(ProductionSpec("SEven", m, w, N + 1))
        res.check(output_matrix(P, N).rows == compute_triangle("S", m, w, N).rows,
                  f"S-type output m={m}")
        wt = generic_T(m)
        P = build_production(ProductionSpec("RT", m, wt, N + 1))
        res.check(output_matrix(P, N).rows == compute_triangle("T", m, restrict_delta(wt), N).rows,
                  f"restricted T output m={m}")
        res.note(f"m={m}: S-type and restricted Thron production matrices reproduce rows 0..{N}")
    return res


def suite_contraction(ms=(1, 2, 3), N: int = 5) -> SuiteResult:
    res = SuiteResult(3, "even and odd contraction")
    for m in ms:
        w = generic_S(m)
        S = compute_triangle("S", m, w, N)
        J = compute_triangle("J", m, contract("even", m, w), N)
        res.check(S.rows == J.rows, f"even contraction m={m}")
        Jodd = compute_sequence("J", m, contract("odd", m, w), N - 1)
        seq = S.column(0)
        res.check(all(seq[n] == w.alpha(m) * Jodd[n - 1] for n in range(1, N + 1)),
                  f"odd contraction m={m}")
        res.note(f"m={m}: even contraction gives the triangle, odd gives S_n = alpha_m J_(n-1), n <= {N}")
    return res


def suite_sequences(N: int = 8) -> SuiteResult:
    res = SuiteResult(4, "factorial sequences from explicit weights")
    cases = [
        ("prealpha:m=2,w=2,pre=repeat3(k+1)", 2, lambda n: math.factorial(n) ** 2, "(n!)^2"),
        ("prealpha:m=2,w=2,pre=cycle(2k+1,2k+2,2k+2)", 2, lambda n: math.factorial(2 * n), "(2n)!"),
        ("table:m=1,alpha=[1,1,2,2,...]", 1, math.factorial, "n!"),
    ]
    for spec, m, f, name in cases:
        seq = compute_sequence("S", m, parse_weight_spec(spec), N)
        vals = [s.constant_value() if s.is_constant() else None for s in seq]
        res.check(vals == [f(n) for n in range(N + 1)], f"{name}: {vals}")
        res.note(f"{name}: {', '.join(str(v) for v in vals)}")
    return res


# ---------------------------------------------------------------------------
# closed-form families

def _fuss_narayana_checks(res, ms, N):
    for m in ms:
        x = fam.xvars(m + 1)
        w = fam.periodic(m, m + 1, x)
        S = compute_sequence("S", m, w, N)
        Q = compute_partial("S", m, w, m, N)
        res.check(all(fam.fuss_narayana("P", m, n, 0, x) == S[n] for n in range(N + 1)),
                  f"P m={m}")
        res.check(all(fam.fuss_narayana("Q", m, n, 0, x) == Q[n] for n in range(N + 1)),
                  f"Q m={m}")
        for k in range(1, 3):
            Qk = compute_partial("S", m, w, (k + 1) * (m + 1) - 1, N - k)
            res.check(all(fam.fuss_narayana("Q", m, n, k, x) == Qk[n - k] for n in range(k, N + 1)),
                      f"Q_(n,{k}) m={m}")
        xm = fam.xvars(m)
        wm = fam.periodic(m, m, xm)
        Sm = compute_sequence("S", m, wm, N)
        res.check(all(fam.fuss_narayana("Pminus", m, n, 0, xm) == Sm[n] for n in range(N + 1)),
                  f"P- m={m}")
        for k in range(0, 3):
            Qk = compute_partial("S", m, wm, (k + 1) * m - 1, N - k)
            res.check(all(fam.fuss_narayana("Qminus", m, n, k, xm) == Qk[n - k]
                          for n in range(k, N + 1)), f"Q-_(n,{k}) m={m}")
        # Fuss-Catalan specializations
        res.check(all(fam.fuss_narayana("Q", m, n, 0, [1] * (m + 1)).constant_value()
                      == fam.fuss_catalan(m + 1, n + 1) for n in range(N + 1)), f"Q(1) m={m}")
        res.check(all(fam.fuss_narayana("Pminus", m, n, 0, [1] * m).constant_value()
                      == fam.fuss_catalan(m + 1, n) for n in range(N + 1)), f"P-(1) m={m}")
    # multiplicity variants at grouped variables
    y = fam.xvars(2, "y")
    for n in range(N + 1):
        grouped = {"y": y, "p": [2, 1]}
        res.check(fam.fuss_narayana("Ptilde", 2, n, 0, grouped)
                  == fam.fuss_narayana("P", 2, n, 0, [y[0], y[0], y[1]]), f"P~ n={n}")
        res.check(all(fam.fuss_narayana("Qtilde", 2, n, k, grouped)
                      == fam.fuss_narayana("Q", 2, n, k, [y[0], y[0], y[1]])
                      for k in range(n + 1)), f"Q~ n={n}")
        grouped = {"y": y, "p": [1, 2]}
        res.check(fam.fuss_narayana("Ptilde-minus", 3, n, 0, grouped)
                  == fam.fuss_narayana("Pminus", 3, n, 0, [y[0], y[1], y[1]]), f"P~- n={n}")
        res.check(all(fam.fuss_narayana("Qtilde-minus", 3, n, k, grouped)
                      == fam.fuss_narayana("Qminus", 3, n, k, [y[0], y[1], y[1]])
                      for k in range(n + 1)), f"Q~- n={n}")
    # m = 1 is the Narayana triangle
    t = MPoly.var("t")
    for n in range(1, N + 1):
        P = fam.fuss_narayana("P", 1, n, 0, [t, 1])
        expect = sum((MPoly.const(math.comb(n, j) * math.comb(n, j - 1) // n) * t ** j
                      for j in range(1, n + 1)), ZERO)
        res.check(P == expect, f"Narayana row {n}")
    res.note(f"Fuss-Narayana P, Q, P-, Q- and multiplicity variants match the DP for m <= {max(ms)}, n <= {N}")


def _aval_checks(res, ms, N):
    for m in ms:
        A = compute_sequence("S", m, fam.aval_weights(m), N)
        res.check(all(fam.aval(m, n) == A[n] for n in range(N + 1)), f"Aval m={m}")
        x = fam.xvars(m + 1)
        y1 = MPoly.var("y1")
        E = compute_sequence("S", m, fam.eventually_periodic(m, m + 1, [y1], x), N)
        res.check(all(fam.eventually_periodic_closed(m, n, y1, x) == E[n] for n in range(N + 1)),
                  f"prefix-one closed form m={m}")
    res.note(f"Aval and one-prefix eventually periodic closed forms match for m <= {max(ms)}")


def _eulerian_checks(res, ms, N):
    for m in ms:
        n_top = N if m < 3 else N - 1
        x = fam.xvars(m + 1)
        S = compute_sequence("S", m, fam.eulerian_weights(m, x), n_top)
        xm = fam.xvars(m)
        Sm = compute_sequence("S", m, fam.eulerian_weights(m, xm, True), n_top)
        for n in range(n_top + 1):
            P = fam.eulerian_mv("P", m, n, 0, x)
            res.check(P == S[n], f"Eulerian P m={m} n={n}")
            res.check(P == fam.eulerian_mv("P", m, n, 0, x, route="beta"), f"beta route P m={m} n={n}")
            res.check(P.subs({str(v): 1 for v in x}).constant_value() == fam.multifactorial(m, n),
                      f"multifactorial m={m} n={n}")
            Pm = fam.eulerian_mv("Pminus", m, n, 0, xm)
            res.check(Pm == Sm[n], f"Eulerian P- m={m} n={n}")
            res.check(Pm == fam.eulerian_mv("Pminus", m, n, 0, xm, route="beta"),
                      f"beta route P- m={m} n={n}")
            res.check(Pm.subs({str(v): 1 for v in xm}).constant_value()
                      == fam.multifactorial(m + 1, n), f"multifactorial- m={m} n={n}")
    # a nontrivial level weight c through the beta route, the DP and trees
    c = fam.xvars(N + 1, "c")
    for m in (1, 2):
        x = fam.xvars(m + 1)
        Sc = compute_sequence("S", m, fam.factorized(m, m + 1, x, c), N - 1)
        res.check(all(Sc[n] == fam.eulerian_mv("P", m, n, 0, x, c) for n in range(N)),
                  f"factorized c m={m}")
        for n in range(4):
            for k in range(n + 1):
                res.check(fam.eulerian_mv("Qnk", m, n, k, x, c)
                          == tree_oracle(TreeKind.INCREASING_ARY, m, n, k, x, c),
                          f"increasing trees m={m} n={n} k={k}")
                xm = fam.xvars(m)
                res.check(fam.eulerian_mv("Qnkminus", m, n, k, xm, c)
                          == tree_oracle(TreeKind.INCREASING_MULTI_ARY, m, n, k, xm, c),
                          f"increasing multi-trees m={m} n={n} k={k}")
    # classical and rth-order Eulerian rows
    for r in (1, 2, 3):
        S = compute_sequence("S", r, fam.reversed_eulerian_weights(r), N)
        res.check(all(S[n] == fam.rth_order_eulerian(r, n, True) for n in range(N + 1)),
                  f"reversed order-{r} Eulerian")
    classical = [[1], [1], [1, 1], [1, 4, 1], [1, 11, 11, 1], [1, 26, 66, 26, 1]]
    for n, row in enumerate(classical):
        res.check(fam.rth_order_eulerian_numbers(1, n)[:len(row)] == row
                  and sum(fam.rth_order_eulerian_numbers(1, n)) == math.factorial(n),
                  f"classical Eulerian row {n}")
    second = [[1], [1], [1, 2], [1, 8, 6], [1, 22, 58, 24]]
    for n, row in enumerate(second):
        res.check(fam.rth_order_eulerian_numbers(2, n)[:len(row)] == row,
                  f"second-order Eulerian row {n}")
    res.note("multivariate Eulerian polynomials (both types, c = 1 and generic c) match the DP and trees")


def _rowgen_checks(res, ms, N):
    xi = MPoly.var("xi")
    for m in ms:
        x = fam.xvars(m + 1)
        tri = compute_triangle("S", m, fam.periodic(m, m + 1, x), N)
        col = row_generating_matrix(tri, xi).column(0)
        S2 = compute_sequence("S", m, fam.periodic_rowgen(m, x, xi), N)
        res.check(list(col) == S2, f"row-generating polynomials m={m}")
        # and the production matrix conjugated by T_xi is the S-type one for the new weights
        size = N + 1
        lhs = conjugate_by_Txi(build_production(ProductionSpec("SEven", m, fam.periodic(m, m + 1, x),
                                                                size + 1)), xi, size)
        rhs = build_production(ProductionSpec("SEven", m, fam.periodic_rowgen(m, x, xi), size))
        res.check(lhs == rhs, f"conjugated production matrix m={m}")
    res.note(f"row-generating polynomials equal the shifted-first-weight fraction, m <= {max(ms)}")


def suite_families(ms=(1, 2, 3), N: int = 6) -> SuiteResult:
    res = SuiteResult(5, "closed-form families equal the DP")
    _fuss_narayana_checks(res, ms, N)
    _aval_checks(res, ms, N)
    _eulerian_checks(res, ms, N - 1)
    _rowgen_checks(res, tuple(m for m in ms if m <= 2), min(N, 5))
    return res


# ---------------------------------------------------------------------------
# total positivity

def suite_reversed_eulerian(sym_size: int = 5, order: int = 4, num_size: int = 13,
                            points=(Fraction(1, 3), Fraction(1), Fraction(3)),
                            progress: Callable = _quiet) -> SuiteResult:
    res = SuiteResult(6, "Hankel total positivity of reversed second-order Eulerian polynomials")
    E = compute_sequence("S", 2, fam.reversed_eulerian_weights(2), 2 * num_size)
    rep = check_tp(hankel_matrix(E, sym_size), order, progress=progress)
    res.check(rep.ok, f"symbolic {sym_size}x{sym_size} order {order}: {rep.to_json()}")
    res.note(f"symbolic {sym_size}x{sym_size} up to order {order}: {rep.verdict} ({rep.checked} minors)")
    for xv in points:
        vals = [e.subs({"x": xv}) for e in E]
        for shift in (0, 1):
            rep = check_tp_numeric(hankel_matrix(vals, num_size, shift))
            res.check(rep.ok, f"numeric x={xv} shift {shift}")
            res.note(f"x={xv} shift {shift}: {num_size}x{num_size} {rep.verdict} via {rep.method}")
    return res


def ell_counterexample(m: int, l: int) -> MPoly:
    """S_{0|l} S_{2|l} - S_{1|l}^2 from its double-sum form (valid for l > m)."""
    a = lambda i: MPoly.var(f"alpha{i}")
    out = ZERO
    for i in range(2 * m + 1, m + l + 1):
        for j in range(m, i - m):
            out = out - a(i) * a(j)
    for i in range(m + l + 1, 2 * m + l + 1):
        for j in range(i - m, m + l + 1):
            out = out + a(i) * a(j)
    return out


def suite_tp_desk_scale(ms=(1, 2), size: int = 5, tri_size: int = 6, order: int = 4,
                      partial_size: int = 4, progress: Callable = _quiet) -> SuiteResult:
    res = SuiteResult(7, "total positivity at desk scale")
    for m in ms:
        w = generic_S(m)
        seq = compute_sequence("S", m, w, 2 * size)
        for shift in (0, 1):
            rep = check_tp(hankel_matrix(seq, size, shift), order, progress=progress)
            res.check(rep.ok, f"Hankel m={m} shift {shift}")
            res.note(f"m={m} Hankel {size}x{size} shift {shift}: {rep.verdict} ({rep.checked} minors)")
        tri = compute_triangle("S", m, w, tri_size - 1)
        rep = check_tp(tri.to_matrix(), order, progress=progress)
        res.check(rep.ok, f"triangle m={m}")
        res.note(f"m={m} triangle {tri_size}x{tri_size}: {rep.verdict} ({rep.checked} minors)")
        for l in range(0, m + 1):
            part = compute_partial("S", m, w, l, 2 * partial_size)
            rep = check_tp(hankel_matrix(part, partial_size), order, progress=progress)
            res.check(rep.ok, f"partial m={m} l={l}")
            res.note(f"m={m} partial l={l} Hankel {partial_size}x{partial_size}: {rep.verdict}")
        l = m + 1
        part = compute_partial("S", m, w, l, 4)
        rep = check_tp(hankel_matrix(part, 3), 2)
        wit = rep.witness
        expect = ell_counterexample(m, l)
        coef = expect.coeff({f"alpha{m}": 1, f"alpha{2 * m + 1}": 1})
        res.check(rep.verdict == "violated" and wit is not None and wit[2] == expect and coef == -1,
                  f"counterexample m={m}")
        if wit is not None:
            res.note(f"m={m} partial l={l}: violated at rows {list(wit[0])} cols {list(wit[1])}: {wit[2]}")
    return res


def suite_hankel_factorization(ms=(1, 2), N: int = 4) -> SuiteResult:
    res = SuiteResult(8, "Hankel factorization through the production matrix")
    for m in ms:
        P = build_production(ProductionSpec("SEven", m, generic_S(m), 2 * N))
        res.check(hankel_factorization_check(P, N), f"m={m}")
        res.note(f"m={m}: H = O(P) O(P^T)^T on the {N}x{N} block")
    return res


# ---------------------------------------------------------------------------

def suite_hyper(seed: int = 20240601, draws: int = 3, N: int = 10) -> SuiteResult:
    res = SuiteResult(9, "hypergeometric ratios and contiguous relations")
    rng = random.Random(seed)
    for rel in hyper.RELATIONS:
        for _ in range(draws):
            if rel == "rF0-special":
                p = hyper.random_params(rng, 3, 0, N=N)
            elif rel == "q-AB-shift":
                p = hyper.random_params(rng, 2, 1, q=True, N=N)
            else:
                p = hyper.random_params(rng, 2, 2, N=N)
            i = rng.randint(1, p.r) if p.r else 1
            j = rng.randint(1, p.s) if p.s else 1
            res.check(hyper.contiguous_verify(rel, p, i=i, j=j, N=N), f"{rel} at {p}")
        res.note(f"{rel}: {draws} random draws agree to order {N}")
    grid = hyper.ratio_grid()
    for kind, r, s in grid:
        q = kind == "q-first"
        order = 6 if q else 8
        for _ in range(draws):
            p = hyper.random_params(rng, r, s, q=q, N=order)
            res.check(hyper.ratio_verify(kind, r, s, p, order), f"{kind} r={r} s={s} at {p}")
    res.note(f"ratio weights reproduce the ratio series on {len(grid)} (kind, r, s) cases")
    for m in (1, 2):
        av = [MPoly.var(f"a{i}") for i in range(1, m + 1)]
        w = hyper.ratio_weights("rF0", m + 1, 0, hyper.HyperParams(av + [1], []))
        S = compute_sequence("S", m, w, 5)
        for n in range(6):
            prod = ONE
            for a in av:
                prod = prod * fam.stirling_cycle_poly(n, a, 1)
            res.check(S[n] == prod, f"Stirling product m={m} n={n}")
    res.note("rF0 with a trailing 1 gives products of Stirling cycle polynomials, m <= 2")
    for m in (1, 2, 3):
        b = [Fraction(rng.randint(2, 9), rng.randint(1, 4)) for _ in range(m)]
        res.check(hyper.zero_Fm_log_derivative_check(b, 8), f"0F{m} log-derivative b={b}")
    res.note("0Fm log-derivative equals the product of third-ratio fractions, m <= 3")
    return res


def suite_gandhi(ms=(1, 2, 3), n_max: int = 6) -> SuiteResult:
    res = SuiteResult(10, "Gandhi polynomial conjecture desk check")
    statuses = []
    for m in ms:
        out = fam.gandhi_conjecture_check(m, n_max)
        statuses.append(out["status"])
        res.note(f"m={m}, n <= {n_max}: CONJECTURE-{out['status']}"
                 + (f" (first failure n={out['first_failure']})" if out["first_failure"] else ""))
    res.status = "CONFIRMED" if all(s == "CONFIRMED" for s in statuses) else "REFUTED"
    return res


def suite_embedding(pairs=((1, 2), (1, 3), (2, 3)), N: int = 5) -> SuiteResult:
    res = SuiteResult(11, "embedding into a larger branching order")
    for m, m2 in pairs:
        for J in itertools.combinations(range(1, m2), m2 - m):
            inI = lambda i, J=J: i >= m2 and i % m2 in J
            w = generic_S(m)
            S = compute_sequence("S", m, w, N)
            S2 = compute_sequence("S", m2, embed_weights(m, m2, inI, w, N), N)
            res.check(S == S2, f"S (m,m')=({m},{m2}) set {J}")
            wt = generic_T(m)
            T = compute_sequence("T", m, wt, N)
            T2 = compute_sequence("T", m2, embed_weights(m, m2, J, wt, N), N)
            res.check(T == T2, f"T (m,m')=({m},{m2}) residues {J}")
        res.note(f"(m,m')=({m},{m2}): S and T sequences unchanged for every residue choice, n <= {N}")
    return res


SUITES = {
    1: suite_oracle, 2: suite_production, 3: suite_contraction, 4: suite_sequences,
    5: suite_families, 6: suite_reversed_eulerian, 7: suite_tp_desk_scale,
    8: suite_hankel_factorization, 9: suite_hyper, 10: suite_gandhi, 11: suite_embedding,
}

__all__ = ["SuiteResult", "SUITES", "ell_counterexample"] + [f.__name__ for f in SUITES.values()]
