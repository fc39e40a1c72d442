"""Closed-form weight generators and reference polynomial families.

Weight generators return ``WeightSystem`` objects of kind S whose alpha_i is
computed on demand.  The polynomial families are evaluated directly from
their binomial-sum or differential-operator definitions so that they can be
compared with the path-sum DP in ``bcf``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .bcf import compute_triangle
from .errors import ArityMismatch, UnknownId
from .exactalg import MPoly, ONE, ZERO, SeriesTrunc, poly
from .weights import INF, WeightSystem


def xvars(count: int, name: str = "x") -> list[MPoly]:
    """Indeterminates name0, name1, ..., name{count-1}."""
    return [MPoly.var(f"{name}{i}") for i in range(count)]


def _polys(values, count: int | None, what: str) -> list[MPoly]:
    vals = [poly(v) for v in values]
    if count is not None and len(vals) != count:
        raise ArityMismatch(f"{what} needs exactly {count} values, got {len(vals)}")
    return vals


def _indexed(src, what: str) -> Callable[[int], MPoly]:
    # a callable, or a finite list whose overrun is reported as an arity problem
    if callable(src):
        return lambda k: poly(src(k))
    vals = [poly(v) for v in src]

    def get(k):
        if k >= len(vals):
            raise ArityMismatch(f"{what} has {len(vals)} entries, index {k} requested")
        return vals[k]
    return get


# ---------------------------------------------------------------------------
# weight generators

def periodic(m: int, p: int, x: Sequence) -> WeightSystem:
    """alpha_{m+j+pk} = x_j for 0 <= j < p."""
    xs = _polys(x, p, f"periodic weights with period {p}")
    return WeightSystem("S", m, alpha=lambda i: xs[(i - m) % p], label=f"periodic(p={p})")


def periodic_rowgen(m: int, x: Sequence, xi) -> WeightSystem:
    """Period m+1 weights with the first weight alpha_m raised by xi."""
    xs = _polys(x, m + 1, "periodic weights with period m+1")
    first = xs[0] + poly(xi)
    return WeightSystem("S", m, alpha=lambda i: first if i == m else xs[(i - m) % (m + 1)],
                        label="periodic-rowgen")


def eventually_periodic(m: int, p: int, y: Sequence, x: Sequence) -> WeightSystem:
    """alpha_m.. = y_1, ..., y_l, then x_0, ..., x_{p-1} repeated."""
    ys = _polys(y, None, "prefix")
    xs = _polys(x, p, f"eventually periodic weights with period {p}")
    l = len(ys)

    def a(i):
        j = i - m
        return ys[j] if j < l else xs[(j - l) % p]
    return WeightSystem("S", m, alpha=a, label=f"eventually-periodic(l={l},p={p})")


def quasi_affine(m: int, p: int, x: Sequence, u: Sequence) -> WeightSystem:
    """alpha_{m+j+pk} = x_j + k u_j."""
    xs = _polys(x, p, "quasi-affine x")
    us = _polys(u, p, "quasi-affine u")

    def a(i):
        k, j = divmod(i - m, p)
        return xs[j] + us[j] * k
    return WeightSystem("S", m, alpha=a, label=f"quasi-affine(p={p})")


def factorized(m: int, p: int, x: Sequence, c) -> WeightSystem:
    """alpha_{m+j+pk} = (k+1) c_k x_j."""
    xs = _polys(x, p, "factorized x")
    cs = _indexed(c, "level weights c")

    def a(i):
        k, j = divmod(i - m, p)
        return cs(k) * xs[j] * (k + 1)
    return WeightSystem("S", m, alpha=a, label=f"factorized(p={p})")


def prealpha_window(m: int, w: int, pre) -> WeightSystem:
    """alpha_{m+j} = pre_{j+1} pre_{j+2} ... pre_{j+w}, pre-alphas indexed from 1."""
    if w < 1:
        raise ValueError("window width must be at least 1")
    get = _indexed(pre, "pre-alpha sequence")

    def a(i):
        j = i - m
        out = ONE
        for t in range(j + 1, j + w + 1):
            out = out * get(t - 1)
        return out
    return WeightSystem("S", m, alpha=a, label=f"prealpha(w={w})")


@dataclass
class FamilyParams:
    family: str
    m: int
    params: dict = field(default_factory=dict)


_FAMILY_KEYS = {
    "periodic": ({"p", "x"}, set()),
    "eventually-periodic": ({"p", "y", "x"}, set()),
    "quasi-affine": ({"p", "x", "u"}, set()),
    "factorized": ({"x", "c"}, {"p"}),
    "prealpha-window": ({"w", "pre"}, set()),
}


def make_weights(fp: FamilyParams) -> WeightSystem:
    if fp.family not in _FAMILY_KEYS:
        raise UnknownId(fp.family)
    need, optional = _FAMILY_KEYS[fp.family]
    have = set(fp.params)
    if not need <= have or not have <= need | optional:
        raise ArityMismatch(f"{fp.family} takes {sorted(need)} (optional {sorted(optional)}), "
                            f"got {sorted(have)}")
    P = fp.params
    if fp.family == "periodic":
        return periodic(fp.m, int(P["p"]), P["x"])
    if fp.family == "eventually-periodic":
        return eventually_periodic(fp.m, int(P["p"]), P["y"], P["x"])
    if fp.family == "quasi-affine":
        return quasi_affine(fp.m, int(P["p"]), P["x"], P["u"])
    if fp.family == "factorized":
        return factorized(fp.m, int(P.get("p", len(P["x"]))), P["x"], P["c"])
    return prealpha_window(fp.m, int(P["w"]), P["pre"])


# ---------------------------------------------------------------------------
# binomial-sum helpers

def _binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def _composition_sum(total: int, factors: Sequence[Callable[[int], object]]) -> MPoly:
    """sum over j_0+...+j_r = total of prod factors[i](j_i), by convolution."""
    acc = [ONE] + [ZERO] * total
    for f in factors:
        col = [poly(f(j)) for j in range(total + 1)]
        nxt = [ZERO] * (total + 1)
        for a, pa in enumerate(acc):
            if not pa:
                continue
            for b in range(total + 1 - a):
                if col[b]:
                    nxt[a + b] = nxt[a + b] + pa * col[b]
        acc = nxt
    return acc[total]


def _integral(p: MPoly, what: str) -> MPoly:
    for _, c in p.terms():
        if Fraction(c).denominator != 1:
            raise ArithmeticError(f"{what}: closed form is not a polynomial over Z (coefficient {c})")
    return p


def _params_xy(params, key="x"):
    if isinstance(params, Mapping):
        return params
    return {key: params}


def _tilde_params(params, total: int, sign: str):
    y = [poly(v) for v in params["y"]]
    p = [int(v) for v in params["p"]]
    if len(y) != len(p):
        raise ArityMismatch(f"{len(y)} variables but {len(p)} multiplicities")
    if any(v < 1 for v in p) or sum(p) != total:
        raise ArityMismatch(f"{sign} type multiplicities must be positive with sum {total}, got {p}")
    return y, p


FUSS_NARAYANA_VARIANTS = ("Q", "P", "Qminus", "Pminus", "Qtilde", "Ptilde",
                          "Qtilde-minus", "Ptilde-minus")


def fuss_narayana(variant: str, m: int, n: int, k: int = 0, params=None) -> MPoly:
    """Multivariate Fuss-Narayana polynomials by their binomial sums.

    ``params`` is a list x (x_0..x_m for positive type, x_0..x_{m-1} for
    negative type) or a mapping with key ``x``; the multiplicity variants take
    ``{"y": [...], "p": [...]}``.  P variants have no second index (k = 0).
    """
    if variant not in FUSS_NARAYANA_VARIANTS:
        raise UnknownId(variant)
    if n < 0 or k < 0 or k > n:
        raise ValueError("need 0 <= k <= n")
    positive = "minus" not in variant
    is_P = variant.startswith("P")
    if is_P and k:
        raise ValueError(f"{variant} has no second index")
    if variant in ("Q", "P", "Qminus", "Pminus"):
        count = m + 1 if positive else m
        if params is None:
            params = xvars(count)
        xs = _polys(_params_xy(params)["x"], count, f"{variant} with m={m}")
        y, mult = xs, [1] * count
    else:
        if params is None:
            raise ArityMismatch(f"{variant} needs y and p")
        y, mult = _tilde_params(_params_xy(params), m + 1 if positive else m,
                                "positive" if positive else "negative")

    if is_P:
        if n == 0:
            return ONE

        def first(j):
            if positive:
                return _binom(mult[0] * n, j - 1) * y[0] ** j
            return _binom(mult[0] * n + j, j - 1) * y[0] ** j

        def rest(i):
            if positive:
                return lambda j: _binom(mult[i] * n, j) * y[i] ** j
            return lambda j: _binom(mult[i] * n + j - 1, j) * y[i] ** j
        s = _composition_sum(n, [first] + [rest(i) for i in range(1, len(y))])
        return _integral(s / n, variant)

    N1 = n + 1

    def qfac(i):
        if positive:
            return lambda j: _binom(mult[i] * N1, j) * y[i] ** j
        return lambda j: _binom(mult[i] * N1 + j - 1, j) * y[i] ** j
    s = _composition_sum(n - k, [qfac(i) for i in range(len(y))])
    return _integral(s * Fraction(k + 1, N1), variant)


def gen_narayana(p: int, p2: int, n: int, j: int, star: bool = False) -> Fraction:
    """Generalized Narayana numbers for 1 <= p <= p2."""
    if not 1 <= p <= p2:
        raise ValueError("need 1 <= p <= p'")
    if n == 0:
        return Fraction(1 if j == 0 else 0)
    if not star:
        return Fraction(_binom(p * n, j - 1) * _binom((p2 - p) * n, n - j), n)
    s = sum(_binom(p * n, n - i - 1) * _binom((p2 - p) * n, i) * _binom(n - i, n - j)
            for i in range(j + 1))
    return Fraction(s, n)


def gen_narayana_star_adjacent(p: int, n: int, j: int) -> Fraction:
    """Closed form of the star variant when p' = p + 1."""
    return Fraction(_binom(p * n + j, n) * _binom(n, j), (p - 1) * n + j + 1)


def aval(m: int, n: int, x: Sequence | None = None) -> MPoly:
    """Multivariate Aval polynomial of order m in x_0..x_m."""
    xs = _polys(x if x is not None else xvars(m + 1), m + 1, f"Aval polynomial with m={m}")
    if n == 0:
        return ONE
    first = lambda j: j * xs[0] ** j
    rest = [(lambda i: lambda j: _binom(n + j - 1, j) * xs[i] ** j)(i) for i in range(1, m + 1)]
    return _integral(_composition_sum(n, [first] + rest) / n, "aval")


def aval_weights(m: int, x: Sequence | None = None) -> WeightSystem:
    """alpha = x_0, then x_1..x_m repeated."""
    xs = _polys(x if x is not None else xvars(m + 1), m + 1, f"Aval weights with m={m}")
    return eventually_periodic(m, m, xs[:1], xs[1:])


def eventually_periodic_closed(m: int, n: int, y1, x: Sequence | None = None) -> MPoly:
    """Closed form of S_n for weights y_1, x_0, ..., x_m, x_0, ... (prefix length 1)."""
    xs = _polys(x if x is not None else xvars(m + 1), m + 1, f"period m+1={m + 1}")
    y1 = poly(y1)
    if n == 0:
        return ONE
    gap = y1 - xs[m]
    star = lambda j: (y1 * gap ** (j - 1) * j) if j >= 1 else ZERO
    rest = [(lambda i: lambda j: _binom(n, j) * xs[i] ** j)(i) for i in range(m + 1)]
    return _integral(_composition_sum(n, [star] + rest) / n, "eventually periodic")


# ---------------------------------------------------------------------------
# multivariate Eulerian polynomials

def _diff_op(xs: Sequence[MPoly], negative: bool) -> Callable[[MPoly], MPoly]:
    names = []
    for v in xs:
        vs = v.variables()
        if len(vs) != 1 or v != MPoly.var(next(iter(vs))):
            raise ValueError("the differential route needs distinct indeterminates")
        names.append(next(iter(vs)))
    total = sum(xs, ZERO)
    mult = [(v * v + v * total) if negative else v * (total - v) for v in xs]

    def D(f):
        out = ZERO
        for name, c in zip(names, mult):
            d = f.diff(name)
            if d:
                out = out + c * d
        return out
    return D


def _elem(xs: Sequence[MPoly], k: int) -> MPoly:
    out = ZERO
    for combo in itertools.combinations(xs, k):
        t = ONE
        for v in combo:
            t = t * v
        out = out + t
    return out


def _complete(xs: Sequence[MPoly], k: int) -> MPoly:
    out = ZERO
    for combo in itertools.combinations_with_replacement(xs, k):
        t = ONE
        for v in combo:
            t = t * v
        out = out + t
    return out


def _falling(i: int, l: int) -> int:
    # (i+1)! / (i-l)!
    return math.perm(i + 1, l + 1)


def eulerian_beta(m: int, x: Sequence, c=None, negative: bool = False) -> WeightSystem:
    """J-type weights whose triangle is the multivariate Eulerian triangle.

    Positive type uses e_{l+1}(x_0..x_m) and branching order m; negative type
    uses h_{l+1}(x_0..x_{m-1}) and falls of every length.
    """
    xs = _polys(x, m if negative else m + 1, f"Eulerian weights with m={m}")
    cs = _indexed(c, "level weights c") if c is not None else None
    sym = {}

    def b(l, i):
        if l not in sym:
            sym[l] = _complete(xs, l + 1) if negative else _elem(xs, l + 1)
        out = sym[l] * _falling(i, l)
        if cs is not None:
            for t in range(i - l, i + 1):
                out = out * cs(t)
        return out
    return WeightSystem("J", INF if negative else m, beta=b,
                        label="eulerian-negative" if negative else "eulerian")


EULERIAN_VARIANTS = ("P", "Q", "Qnk", "Pminus", "Qminus", "Qnkminus")


def _is_all_ones(c) -> bool:
    if c is None:
        return True
    if callable(c):
        return False
    return all(poly(v) == ONE for v in c)


def eulerian_mv(variant: str, m: int, n: int, k: int = 0, x: Sequence | None = None, c=None,
                route: str = "auto") -> MPoly:
    """Multivariate Eulerian polynomials of positive or negative type.

    With c = 1 the default route applies the differential operator n times;
    with general level weights c (list or callable k -> c_k) the polynomial is
    read off the J-triangle of ``eulerian_beta``.  ``route`` forces
    ``"differential"`` or ``"beta"``.
    """
    if variant not in EULERIAN_VARIANTS:
        raise UnknownId(variant)
    negative = variant.endswith("minus")
    count = m if negative else m + 1
    xs = _polys(x if x is not None else xvars(count), count, f"{variant} with m={m}")
    if variant in ("Qnk", "Qnkminus"):
        if not 0 <= k <= n:
            raise ValueError("need 0 <= k <= n")
    elif k:
        raise ValueError(f"{variant} has no second index")
    if route == "auto":
        route = "differential" if _is_all_ones(c) else "beta"
    if route == "differential":
        if not _is_all_ones(c):
            raise ValueError("the differential route covers c = 1 only")
        return _eulerian_differential(variant, n, k, xs, negative)
    if route != "beta":
        raise ValueError(f"unknown route {route!r}")
    cs = c if c is not None else (lambda t: ONE)
    return _eulerian_beta_route(variant, m, n, k, xs, cs, negative)


def _eulerian_differential(variant, n, k, values, negative):
    xs = xvars(len(values), "_x")
    out = _eulerian_differential_generic(variant, n, k, xs, negative)
    return out.subs({f"_x{i}": v for i, v in enumerate(values)})


def _eulerian_differential_generic(variant, n, k, xs, negative):
    D = _diff_op(xs, negative)
    total = sum(xs, ZERO)
    if variant in ("P", "Pminus"):
        f = ONE
        for _ in range(n):
            f = D(f) + xs[0] * f
        return f
    # Q_{n,k}: row by row, keeping columns 0..k
    col = k if variant in ("Qnk", "Qnkminus") else 0
    row = [ONE]
    for r in range(1, n + 1):
        new = []
        for j in range(min(r, col) + 1):
            v = ZERO
            if j < len(row):
                v = D(row[j]) + total * (j + 1) * row[j]
            if j >= 1:
                v = v + row[j - 1]
            new.append(v)
        row = new
    return row[col] if col < len(row) else ZERO


def _eulerian_beta_route(variant, m, n, k, xs, cs, negative):
    beta = eulerian_beta(m, xs, cs, negative)
    fam_m = beta.m
    if variant in ("Q", "Qminus", "Qnk", "Qnkminus"):
        tri = compute_triangle("J", fam_m, beta, n)
        return tri[n, k]
    c_at = _indexed(cs, "level weights c")
    if n == 0:
        return ONE
    tri = compute_triangle("J", fam_m, beta, n - 1)
    if variant == "P":
        return c_at(0) * xs[0] * tri[n - 1, 0]
    out = ZERO
    cprod = ONE
    for j in range(1, n + 1):
        cprod = cprod * c_at(j - 1)
        out = out + cprod * xs[0] ** j * tri[n - 1, j - 1] * math.factorial(j)
    return out


def eulerian_weights(m: int, x: Sequence, negative: bool = False) -> WeightSystem:
    """S-type weights alpha_{m+j+pk} = (k+1) x_j with p = m+1 (or m for negative type)."""
    p = m if negative else m + 1
    xs = _polys(x, p, "Eulerian weights")
    return quasi_affine(m, p, xs, xs)


def eulerian_ladder(m: int, x: Sequence, K: int, N: int, negative: bool = False) -> list[SeriesTrunc]:
    """Series g_{-1}, g_0, ..., g_K (each to order N) of the Euler-Gauss ladder."""
    p = m if negative else m + 1
    xs = _polys(x, p, "Eulerian ladder")
    D = _diff_op(xs, negative)
    alpha = eulerian_weights(m, xs, negative)

    def a(i):
        return alpha.alpha(i) if i >= m else ZERO
    g: dict[int, list[MPoly]] = {}

    def series(k):
        if k < 0:
            return [ONE] + [ZERO] * N
        return g[k]
    for k in range(K + 1):
        shift = sum((a(k + i) for i in range(1, m + 1)), ZERO)
        lower = series(k - m)
        col = [ONE]
        for n in range(1, N + 1):
            col.append(D(col[-1]) + shift * col[-1] + lower[n])
        g[k] = col
    return [SeriesTrunc(series(k), N) for k in range(-1, K + 1)]


# ---------------------------------------------------------------------------
# rth-order Eulerian, classical numbers

def rth_order_eulerian_numbers(r: int, n: int) -> list[int]:
    """Row n of the rth-order Eulerian triangle, k = 0..max(n-1, 0)."""
    if r < 1 or n < 0:
        raise ValueError("need r >= 1 and n >= 0")
    row = [1]
    for N in range(1, n + 1):
        width = max(N, 1)
        new = []
        for k in range(width):
            v = (k + 1) * row[k] if k < len(row) else 0
            if k >= 1 and k - 1 < len(row):
                v += (r * N - (r - 1) - k) * row[k - 1]
            new.append(v)
        row = new
    return row


def rth_order_eulerian(r: int, n: int, reversed: bool = False, x=None) -> MPoly:
    X = poly(x) if x is not None else MPoly.var("x")
    row = rth_order_eulerian_numbers(r, n)
    if reversed:
        if n == 0:
            return ONE
        row = row[::-1]
    out = ZERO
    for k, a in enumerate(row):
        if a:
            out = out + X ** k * a
    return out


def reversed_eulerian_weights(r: int, x=None) -> WeightSystem:
    """Quasi-affine r-S weights at x = (1, ..., 1, x), u = x."""
    X = poly(x) if x is not None else MPoly.var("x")
    xs = [ONE] * r + [X]
    return quasi_affine(r, r + 1, xs, xs)


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def fuss_catalan(p: int, n: int) -> int:
    return math.comb(p * n, n) // ((p - 1) * n + 1)


def m_schroeder(m: int, n: int) -> int:
    s = sum(Fraction(math.comb((m + 1) * n - l, n) * math.comb(n, l), m * n - l + 1)
            for l in range(n + 1))
    assert s.denominator == 1
    return int(s)


def narayana(n: int, j: int) -> Fraction:
    return gen_narayana(1, 2, n, j)


def multifactorial(r: int, n: int) -> int:
    return math.prod(1 + j * r for j in range(n))


def stirling_cycle_poly(n: int, x=None, y=None) -> MPoly:
    X = poly(x) if x is not None else MPoly.var("x")
    Y = poly(y) if y is not None else MPoly.var("y")
    out = ONE
    for j in range(n):
        out = out * (X + Y * j)
    return out


_CLASSIC = {
    "catalan": lambda n, P: catalan(n),
    "fuss-catalan": lambda n, P: fuss_catalan(int(P["p"]), n),
    "schroeder": lambda n, P: m_schroeder(int(P.get("m", 1)), n),
    "narayana": lambda n, P: narayana(n, int(P["j"])),
    "multifactorial": lambda n, P: multifactorial(int(P["r"]), n),
    "stirling-cycle": lambda n, P: stirling_cycle_poly(n, P.get("x"), P.get("y")),
}


def classic_numbers(id: str, n: int, params: Mapping | None = None):
    if id not in _CLASSIC:
        raise UnknownId(id)
    return _CLASSIC[id](n, dict(params or {}))


# ---------------------------------------------------------------------------
# Gandhi polynomials

def gandhi(m: int, n: int, y=None) -> MPoly:
    """mth-order Gandhi polynomial, starting from G_1 = 1."""
    if n < 1:
        raise ValueError("Gandhi polynomials start at n = 1")
    Y = MPoly.var("y")
    shifted = {"y": Y + 1}
    g = ONE
    for _ in range(n - 1):
        g = (Y + 1) ** (m + 1) * g.subs(shifted) - Y ** (m + 1) * g
    return g if y is None else g.subs({"y": poly(y)})


def genocchi(m: int, n: int) -> int:
    v = gandhi(m, n, 1).constant_value()
    return int(v)


def gandhi_prealphas(m: int, y=None) -> Callable[[int], MPoly]:
    """Blocks (y+b repeated m times, then b+1) for b = 0, 1, ...; 0-based index."""
    Y = poly(y) if y is not None else MPoly.var("y")

    def pre(t):
        b, r = divmod(t, m + 1)
        return Y + b if r < m else MPoly.const(b + 1)
    return pre


def gandhi_weights(m: int, y=None) -> WeightSystem:
    return prealpha_window(m, m + 1, gandhi_prealphas(m, y))


def gandhi_conjecture_check(m: int, n_max: int, y=None) -> dict:
    """Compare y^m G_n with S_n of the conjectured weights for n = 1..n_max.

    Returns ``{"status": "CONFIRMED" | "REFUTED", "first_failure": n or None}``.
    """
    from .bcf import compute_sequence
    Y = MPoly.var("y")
    seq = compute_sequence("S", m, gandhi_weights(m), n_max)
    for n in range(1, n_max + 1):
        if Y ** m * gandhi(m, n) != seq[n]:
            return {"status": "REFUTED", "first_failure": n}
    return {"status": "CONFIRMED", "first_failure": None}


__all__ = [
    "xvars", "periodic", "periodic_rowgen", "eventually_periodic", "quasi_affine", "factorized", "prealpha_window",
    "FamilyParams", "make_weights", "fuss_narayana", "FUSS_NARAYANA_VARIANTS", "gen_narayana",
    "gen_narayana_star_adjacent", "aval", "aval_weights", "eventually_periodic_closed",
    "eulerian_beta", "eulerian_mv", "EULERIAN_VARIANTS", "eulerian_weights", "eulerian_ladder",
    "rth_order_eulerian_numbers", "rth_order_eulerian", "reversed_eulerian_weights",
    "catalan", "fuss_catalan", "m_schroeder", "narayana", "multifactorial",
    "stirling_cycle_poly", "classic_numbers", "gandhi", "genocchi", "gandhi_prealphas",
    "gandhi_weights", "gandhi_conjecture_check",
]
