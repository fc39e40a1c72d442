"""Hypergeometric series, contiguous relations, and branched-fraction weights
for ratios of contiguous series.

Every ratio family is described by a ladder g_{-1}, g_0, g_1, ... of series
whose parameters are shifted one at a time; consecutive members satisfy
g_k - g_{k-1} = alpha_{k+m} t g_{k+m}.  The parameter shifts are produced by a
single indexer (``shift_count`` / ``active_slot``) and the weights are the
closed forms read off the contiguous relation that links g_{k-1} to g_k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bcf import compute_sequence
from .errors import ArityMismatch, ConstantTermNotOne, DenominatorVanished, PoleWithinTruncation
from .exactalg import MPoly, ONE, ZERO, SeriesTrunc, poly, series_div
from .weights import WeightSystem

KINDS = ("first", "second", "third", "rF0", "q-first")
RELATIONS = ("A-shift", "B-shift", "AB-shift", "rF0-special", "q-AB-shift")


@dataclass
class HyperParams:
    a: list = field(default_factory=list)
    b: list = field(default_factory=list)
    q: Fraction | None = None

    def __post_init__(self):
        self.a = [poly(x) for x in self.a]
        self.b = [_rational(x, "b") for x in self.b]
        if self.q is not None:
            self.q = _rational(self.q, "q")
            if self.q == 0:
                raise ValueError("q must be nonzero")

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def s(self) -> int:
        return len(self.b)

    def replace(self, a=None, b=None) -> "HyperParams":
        return HyperParams(self.a if a is None else a, self.b if b is None else b, self.q)


def _rational(x, what) -> Fraction:
    if isinstance(x, MPoly):
        if not x.is_constant():
            raise ValueError(f"{what} parameters must be rational numbers")
        x = x.constant_value()
    return Fraction(x)


# ---------------------------------------------------------------------------
# series

def hyper_series(params: HyperParams, N: int) -> SeriesTrunc:
    """rFs (or r phi s when q is set) truncated at t^N."""
    if params.q is not None:
        return _basic_series(params, N)
    coeffs = [ONE]
    num = ONE
    den = Fraction(1)
    for n in range(1, N + 1):
        for i, a in enumerate(params.a):
            num = num * (a + (n - 1))
        for j, b in enumerate(params.b):
            f = b + (n - 1)
            if f == 0:
                raise PoleWithinTruncation(f"b{j + 1}", n)
            den *= f
        den *= n
        coeffs.append(num / den)
    return SeriesTrunc(coeffs, N)


def _basic_series(params: HyperParams, N: int) -> SeriesTrunc:
    q = params.q
    r, s = params.r, params.s
    coeffs = [ONE]
    num = ONE
    den = Fraction(1)
    for n in range(1, N + 1):
        qn = q ** (n - 1)
        for a in params.a:
            num = num * (1 - a * qn)
        for j, b in enumerate(params.b):
            f = 1 - b * qn
            if f == 0:
                raise PoleWithinTruncation(f"b{j + 1}", n)
            den *= f
        f = 1 - q ** n
        if f == 0:
            raise PoleWithinTruncation("q", n)
        den *= f
        extra = ((-1) ** n * q ** (n * (n - 1) // 2)) ** (s + 1 - r)
        coeffs.append(num * extra / den)
    return SeriesTrunc(coeffs, N)


def log_derivative_ratio(params: HyperParams, N: int) -> SeriesTrunc:
    """(prod b / prod a) * d/dt log F, to order N."""
    F = hyper_series(params, N + 1)
    out = series_div(F.derivative(), F.truncate(N))
    scale = Fraction(1)
    for b in params.b:
        scale *= b
    num = ONE
    for a in params.a:
        num = num * a
    if not num.is_constant():
        raise ValueError("log-derivative route needs rational a parameters")
    return out * (scale / Fraction(num.constant_value()))


def all_shift_ratio(params: HyperParams, N: int) -> SeriesTrunc:
    """F(a+1; b+1) / F(a; b)."""
    up = params.replace(a=[x + 1 for x in params.a], b=[x + 1 for x in params.b])
    return series_div(hyper_series(up, N), hyper_series(params, N))


# ---------------------------------------------------------------------------
# contiguous relations

def _prod(xs, start=ONE):
    out = start
    for x in xs:
        out = out * x
    return out


def _bump(xs, idx, by=1):
    return [x + by if t == idx else x for t, x in enumerate(xs)]


def contiguous_verify(relation: str, params: HyperParams, i: int = 1, j: int = 1,
                      N: int = 10) -> bool:
    """Check a three-term contiguous relation modulo t^(N+1).

    ``i`` picks the numerator parameter and ``j`` the denominator parameter
    (both 1-based) where the relation involves them.
    """
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}; expected one of {RELATIONS}")
    a, b = list(params.a), list(params.b)
    r, s = len(a), len(b)
    t = SeriesTrunc.t(N)

    def F(aa, bb):
        return hyper_series(params.replace(a=aa, b=bb), N)

    if relation in ("A-shift", "rF0-special"):
        if relation == "rF0-special" and s != 0:
            raise ArityMismatch("the rF0 relation has no denominator parameters")
        _check_index(i, r, "a")
        lhs = F(_bump(a, i - 1), b) - F(a, b)
        coef = _prod(a[:i - 1] + a[i:]) / _prod(b, Fraction(1))
        rhs = t * F([x + 1 for x in a], [x + 1 for x in b]) * coef
    elif relation == "B-shift":
        _check_index(j, s, "b")
        lhs = F(a, _bump(b, j - 1)) - F(a, b)
        coef = -_prod(a) / ((b[j - 1] + 1) * _prod(b, Fraction(1)))
        rhs = t * F([x + 1 for x in a], _bump([x + 1 for x in b], j - 1)) * coef
    elif relation == "AB-shift":
        _check_index(i, r, "a")
        _check_index(j, s, "b")
        lhs = F(_bump(a, i - 1), _bump(b, j - 1)) - F(a, b)
        coef = (a[i - 1] * -1 + b[j - 1]) * _prod(a[:i - 1] + a[i:]) / (
            (b[j - 1] + 1) * _prod(b, Fraction(1)))
        rhs = t * F([x + 1 for x in a], _bump([x + 1 for x in b], j - 1)) * coef
    else:
        q = params.q
        if q is None:
            raise ValueError("the q relation needs q")
        _check_index(i, r, "a")
        _check_index(j, s, "b")
        e = s + 1 - r

        def P(aa, bb, scale=1):
            return hyper_series(HyperParams(aa, bb, q), N).scale_t(scale)
        qa = [x * q if t_ == i - 1 else x for t_, x in enumerate(a)]
        qb = [x * q if t_ == j - 1 else x for t_, x in enumerate(b)]
        lhs = P(qa, qb) - P(a, b)
        coef = (a[i - 1] - b[j - 1]) * _prod([1 - x for t_, x in enumerate(a) if t_ != i - 1])
        den = (1 - q * b[j - 1]) * _prod([1 - x for x in b], Fraction(1))
        coef = coef * (Fraction(-1) ** e / den)
        up_b = [x * q * (q if t_ == j - 1 else 1) for t_, x in enumerate(b)]
        rhs = t * P([x * q for x in a], up_b, q ** e) * coef
    return (lhs - rhs).truncate(N) == SeriesTrunc([ZERO], N)


def _check_index(i, count, what):
    if not 1 <= i <= count:
        raise ArityMismatch(f"{what} index {i} out of range 1..{count}")


# ---------------------------------------------------------------------------
# the shared indexer

def shift_count(i: int, k: int, period: int, offset: int = 0) -> int:
    """ceil((k + 1 - i - offset) / period): how often parameter i was shifted by stage k."""
    return -((-(k + 1 - i - offset)) // period)


def active_slot(k: int, period: int, offset: int = 0) -> int:
    """The 1-based slot shifted when passing from stage k-1 to stage k."""
    return (k - 1 - offset) % period + 1


def branching_order(kind: str, r: int, s: int) -> int:
    if kind == "third":
        return max(r, s)
    return max(r - 1, s)


def _validate_shape(kind, r, s):
    if kind not in KINDS:
        raise ValueError(f"unknown ratio kind {kind!r}; expected one of {KINDS}")
    if kind == "rF0":
        if s != 0 or r < 2:
            raise ArityMismatch("rF0 needs r >= 2 numerator and no denominator parameters")
    elif kind == "first":
        if r < 1 or s < 1:
            raise ArityMismatch("the first ratio needs r, s >= 1")
    elif kind == "second":
        if r < 1 or (r, s) == (1, 0):
            raise ArityMismatch("the second ratio needs r >= 1 and (r, s) != (1, 0)")
    elif kind == "third":
        if s < 1:
            raise ArityMismatch("the third ratio needs s >= 1")
    else:
        if r != s + 1 or s < 1:
            raise ArityMismatch("the q ratio is implemented for r = s + 1 >= 2")


@dataclass(frozen=True)
class Ladder:
    """Shift pattern of a ratio family: a-slots have period m+1, b-slots period m."""
    kind: str
    r: int
    s: int
    m: int
    a_offset: int
    b_offset: int

    @classmethod
    def of(cls, kind: str, r: int, s: int) -> "Ladder":
        _validate_shape(kind, r, s)
        m = branching_order(kind, r, s)
        if kind == "third":
            # the a-slot m+1 is a pause; missing a's are removed from the front
            return cls(kind, r, s, m, m - r, m - s)
        return cls(kind, r, s, m, m + 1 - r, m - s)

    def a_shift(self, i: int, k: int) -> int:
        return shift_count(i, k, self.m + 1, self.a_offset)

    def b_shift(self, i: int, k: int) -> int:
        return shift_count(i, k, self.m, self.b_offset)

    def a_active(self, k: int) -> int | None:
        slot = active_slot(k, self.m + 1, self.a_offset)
        return slot if slot <= self.r else None

    def b_active(self, k: int) -> int | None:
        slot = active_slot(k, self.m, self.b_offset)
        return slot if slot <= self.s else None

    def stage(self, k: int) -> tuple[list[int], list[int]]:
        """Shift counts of (a_1..a_r), (b_1..b_s) in g_k, k >= -1."""
        a = [self.a_shift(i, k) for i in range(1, self.r + 1)]
        b = [self.b_shift(i, k) for i in range(1, self.s + 1)]
        if k == -1 and self.kind in ("second", "rF0"):
            b = [0] * self.s
        return a, b


def _stage_params(lad: Ladder, params: HyperParams, k: int) -> HyperParams:
    sa, sb = lad.stage(k)
    if params.q is None:
        return params.replace(a=[x + d for x, d in zip(params.a, sa)],
                              b=[x + d for x, d in zip(params.b, sb)])
    q = params.q
    return params.replace(a=[x * q ** d for x, d in zip(params.a, sa)],
                          b=[x * q ** d for x, d in zip(params.b, sb)])


def _sign_flip(lad: Ladder) -> bool:
    # the 0Fm third ratio is taken at -t so that its weights are positive
    return lad.kind == "third" and lad.r == 0


def ladder(kind: str, params: HyperParams, K: int, N: int) -> list[SeriesTrunc]:
    """g_{-1}, g_0, ..., g_K as truncated series."""
    lad = Ladder.of(kind, params.r, params.s)
    out = []
    for k in range(-1, K + 1):
        g = hyper_series(_stage_params(lad, params, k), N)
        out.append(g.scale_t(-1) if _sign_flip(lad) else g)
    return out


# ---------------------------------------------------------------------------
# weights

def _stage_alpha(lad: Ladder, params: HyperParams, k: int) -> MPoly:
    """alpha_{m+k} from the contiguous relation linking g_{k-1} to g_k."""
    cur = _stage_params(lad, params, k)
    a, b = cur.a, cur.b
    ia = lad.a_active(k)
    ib = lad.b_active(k)
    if k == 0 and lad.kind in ("second", "rF0"):
        ib = None
    if params.q is not None:
        return _stage_alpha_q(lad, cur, k, ia, ib)
    if ia is None and ib is None:
        return ZERO
    bprod = _prod(b, Fraction(1))
    if ia is not None and ib is None:
        if bprod == 0:
            raise DenominatorVanished(k, "(product of b)")
        out = _prod(a[:ia - 1] + a[ia:]) / bprod
    else:
        bp = b[ib - 1]
        den = (bp - 1) * bprod
        if den == 0:
            raise DenominatorVanished(k, f"(b'={bp})")
        if ia is None:
            out = -_prod(a) / den
        else:
            out = (a[ia - 1] * -1 + bp) * _prod(a[:ia - 1] + a[ia:]) / den
    return -out if _sign_flip(lad) else out


def _stage_alpha_q(lad, cur, k, ia, ib):
    if ia is None or ib is None:
        raise ArityMismatch("the q ladder shifts one a and one b at every stage")
    q = cur.q
    a, b = cur.a, cur.b
    bp = b[ib - 1]
    den = (1 - bp / q) * _prod([1 - x for x in b], Fraction(1)) * q
    if den == 0:
        raise DenominatorVanished(k, f"(b'={bp})")
    others = _prod([1 - x for t, x in enumerate(a) if t != ia - 1])
    return (a[ia - 1] - bp) * others / den


def ratio_weights(kind: str, r: int, s: int, params: HyperParams) -> WeightSystem:
    """S-type weights of the branched fraction for the chosen contiguous ratio.

    Kinds: ``first`` F(a;b)/F(..a_r-1; ..b_s-1), ``second`` F(a;b)/F(..a_r-1; b),
    ``third`` F(a;b)/F(a; ..b_s-1) (taken at -t when r = 0), ``rF0`` (s = 0,
    polynomial weights), and ``q-first`` for the basic series with r = s+1.
    """
    if (params.r, params.s) != (r, s):
        raise ArityMismatch(f"expected {r} a- and {s} b-parameters, got {params.r} and {params.s}")
    if (kind == "q-first") != (params.q is not None):
        raise ArityMismatch("q must be given exactly for the q-first kind")
    lad = Ladder.of(kind, r, s)
    m = lad.m
    return WeightSystem("S", m, alpha=lambda i: _stage_alpha(lad, params, i - m),
                        label=f"hyper({kind},{r},{s})")


def ladder_alpha(kind: str, params: HyperParams, i: int) -> MPoly:
    """Independent value of alpha_i: the t^1 coefficient of g_k - g_{k-1}, k = i - m."""
    lad = Ladder.of(kind, params.r, params.s)
    k = i - lad.m
    g = ladder(kind, params, k, 1)
    return g[k + 1][1] - g[k][1]


def rF0_prealphas(a: Sequence):
    """a_1, ..., a_{m+1}, a_1 + 1, ..., a_{m+1} + 1, ... as a 0-based callable."""
    xs = [poly(v) for v in a]
    p = len(xs)
    return lambda t: xs[t % p] + t // p


def ratio_series(kind: str, params: HyperParams, N: int) -> SeriesTrunc:
    """The ratio itself, numerator over denominator, to order N."""
    g = ladder(kind, params, 0, N)
    if g[0][0] != ONE:
        raise ConstantTermNotOne("denominator series must start with 1")
    return series_div(g[1], g[0])


def ratio_verify(kind: str, r: int, s: int, params: HyperParams, N: int) -> bool:
    """Series quotient versus the S-polynomials of ``ratio_weights``, n <= N."""
    lhs = ratio_series(kind, params, N)
    w = ratio_weights(kind, r, s, params)
    rhs = compute_sequence("S", w.m, w, N)
    return all(lhs[n] == rhs[n] for n in range(N + 1))


def zero_Fm_log_derivative_check(b: Sequence, N: int) -> bool:
    """Two routes to F(b+1)/F(b) for 0Fm.

    The log-derivative (prod b) (log F)' is compared with the product of the
    m third-ratio fractions obtained by raising b_1, ..., b_m one at a time.
    """
    bs = [Fraction(x) for x in b]
    m = len(bs)
    W = log_derivative_ratio(HyperParams([], bs), N)
    if W != all_shift_ratio(HyperParams([], bs), N):
        return False
    prod = SeriesTrunc.one(N)
    cur = list(bs)
    for j in range(m):
        nxt = cur[:j] + [cur[j] + 1] + cur[j + 1:]
        # third ratio with the raised parameter moved to the last slot
        order = [t for t in range(m) if t != j] + [j]
        p = HyperParams([], [nxt[t] for t in order])
        w = ratio_weights("third", 0, m, p)
        seq = compute_sequence("S", m, w, N)
        prod = prod * SeriesTrunc(seq, N).scale_t(-1)
        cur = nxt
    return prod == W


def ratio_grid() -> list[tuple[str, int, int]]:
    """(kind, r, s) cases exercised by the verification suite."""
    out = []
    for r in range(2, 5):
        out.append(("rF0", r, 0))
    for kind in ("first", "second"):
        for r in range(1, 5):
            for s in range(0, 4):
                try:
                    _validate_shape(kind, r, s)
                except ArityMismatch:
                    continue
                out.append((kind, r, s))
    for r in range(0, 4):
        for s in range(1, 4):
            out.append(("third", r, s))
    for s in (1, 2):
        out.append(("q-first", s + 1, s))
    return out


def random_params(rng: random.Random, r: int, s: int, q: bool = False, N: int = 10) -> HyperParams:
    """Rational parameters avoiding poles and vanishing weight denominators."""
    while True:
        a = [Fraction(rng.randint(1, 9), rng.randint(1, 7)) for _ in range(r)]
        b = [Fraction(rng.randint(1, 9), rng.randint(1, 7)) + Fraction(1, 11) for _ in range(s)]
        if q:
            p = HyperParams(a, b, Fraction(rng.randint(1, 5), rng.randint(6, 9)))
            if any(x * p.q ** e == 1 for x in b for e in range(-2 * N - 2, 2 * N + 2)):
                continue
            return p
        if any((x - d).denominator == 1 and x - d <= 1 for x in b for d in range(0, 3)):
            continue
        return HyperParams(a, b)


__all__ = [
    "HyperParams", "KINDS", "RELATIONS", "hyper_series", "log_derivative_ratio", "all_shift_ratio",
    "contiguous_verify", "shift_count", "active_slot", "branching_order", "Ladder", "ladder",
    "ratio_weights", "ladder_alpha", "rF0_prealphas", "ratio_series", "ratio_verify",
    "zero_Fm_log_derivative_check", "random_params", "ratio_grid",
]
