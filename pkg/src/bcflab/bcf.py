"""Dynamic programs for generalized Stieltjes, Thron and Jacobi type triangles.

All three families are sums over weighted lattice paths.  The engine below
walks states (abscissa, height) forward, but only through states from which
some requested end point is still reachable, so that weights beyond the ones
a given set of entries actually depends on are never requested.
"""

from __future__ import annotations

import csv
import io
from typing import Callable, Iterable, Mapping, Sequence

from .errors import BadGoodSet, ConstantTermNotOne, MissingWeight
from .exactalg import MPoly, ONE, ZERO, PolyMatrix, SeriesTrunc, poly, series_div
from .weights import INF, WeightSystem, generic_J, generic_S, generic_T

FAMILIES = ("S", "T", "J")


class Triangle:
    """Unit-lower-triangular array; ``rows[n][k]`` for 0 <= k <= n <= N."""

    __slots__ = ("family", "m", "N", "rows")

    def __init__(self, family: str, m, N: int, rows: Sequence[Sequence]):
        if len(rows) != N + 1 or any(len(r) != n + 1 for n, r in enumerate(rows)):
            raise ValueError("rows must have lengths 1, 2, ..., N+1")
        self.family = family
        self.m = m
        self.N = N
        self.rows = [[poly(x) for x in r] for r in rows]

    def __getitem__(self, nk) -> MPoly:
        n, k = nk
        if k > n:
            return ZERO
        return self.rows[n][k]

    def column(self, k: int = 0) -> list[MPoly]:
        return [self.rows[n][k] for n in range(k, self.N + 1)]

    def to_matrix(self, size: int | None = None) -> PolyMatrix:
        size = self.N + 1 if size is None else size
        if size > self.N + 1:
            raise ValueError("triangle has too few rows")
        return PolyMatrix.from_function(size, size, lambda i, j: self[i, j])

    def subs(self, assignment) -> "Triangle":
        return Triangle(self.family, self.m, self.N,
                        [[x.subs(assignment) for x in r] for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, Triangle):
            return NotImplemented
        return (self.family, self.m, self.N, self.rows) == (other.family, other.m, other.N, other.rows)

    def __repr__(self):
        return f"Triangle({self.family}, m={self.m}, N={self.N})"

    def to_json(self) -> dict:
        m = "inf" if self.m == INF else self.m
        return {"family": self.family, "m": m, "N": self.N,
                "rows": [[x.to_json() for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "Triangle":
        m = INF if obj["m"] == "inf" else obj["m"]
        return cls(obj["family"], m, obj["N"],
                   [[MPoly.from_json(x) for x in r] for r in obj["rows"]])

    def column_csv(self, k: int = 0) -> str:
        """CSV of one column; every entry must already be a number."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", f"entry_k{k}"])
        for n in range(k, self.N + 1):
            w.writerow([n, rational_str(self.rows[n][k].constant_value())])
        return buf.getvalue()


def rational_str(c) -> str:
    from fractions import Fraction
    f = Fraction(c)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


# ---------------------------------------------------------------------------
# the walk engine

def _walk(steps: Callable[[int], Iterable[tuple[int, int, Callable[[], MPoly]]]],
          step_shapes: Sequence[tuple[int, int]] | None,
          targets: Iterable[tuple[int, int]], max_fall=None) -> dict:
    """Sum weights of paths from (0,0) to each target.

    ``steps(h)`` lists (dx, dy, weight thunk) available at height h.
    ``step_shapes`` lists the (dx, dy) pairs used, for backward reachability;
    when it is None the steps are rises plus falls of every length.
    """
    targets = set(targets)
    if not targets:
        return {}
    X = max(x for x, _ in targets)
    good: list[set] = [set() for _ in range(X + 1)]
    for x, h in targets:
        good[x].add(h)
    for x in range(X - 1, -1, -1):
        acc = good[x]
        if step_shapes is None:
            # rise, level, or any fall
            for h in good[x + 1]:
                if h >= 1:
                    acc.add(h - 1)
            if good[x + 1]:
                lo = min(good[x + 1])
                hi_reach = max(good[x + 1])
                # from height h any h' <= h + 1 is reachable in one step
                acc.update(range(lo, hi_reach + 1))
                # heights above are reachable by longer falls, bounded by x
                acc.update(range(hi_reach + 1, x + 1))
        else:
            for dx, dy in step_shapes:
                if x + dx <= X:
                    for h in good[x + dx]:
                        if h - dy >= 0:
                            acc.add(h - dy)
        # a path from (0,0) can never be above its abscissa
        good[x] = {h for h in acc if h <= x}
    vals: list[dict] = [dict() for _ in range(X + 1)]
    if 0 not in good[0]:
        return {t: ZERO for t in targets}
    vals[0][0] = ONE
    for x in range(X + 1):
        layer = vals[x]
        for h, v in sorted(layer.items()):
            for dx, dy, wt in steps(h):
                x2, h2 = x + dx, h + dy
                if x2 > X or h2 < 0 or h2 not in good[x2]:
                    continue
                w = wt()
                if not w:
                    continue
                term = v if w == ONE else v * w
                nxt = vals[x2]
                nxt[h2] = nxt[h2] + term if h2 in nxt else term
    return {(x, h): vals[x].get(h, ZERO) for x, h in targets}


def _S_steps(w: WeightSystem):
    m = w.m

    def steps(h):
        yield 1, 1, lambda: ONE
        if h >= m:
            yield 1, -m, lambda: w.alpha(h)
    return steps, [(1, 1), (1, -m)]


def _T_steps(w: WeightSystem):
    m = w.m

    def steps(h):
        yield 1, 1, lambda: ONE
        if h >= m:
            yield 1, -m, lambda: w.alpha(h)
        if h >= m - 1:
            yield 2, -(m - 1), lambda: w.delta(h + 1)
    return steps, [(1, 1), (1, -m), (2, -(m - 1))]


def _J_steps(w: WeightSystem):
    m = w.m

    def steps(h):
        yield 1, 1, lambda: ONE
        top = h if m == INF else min(h, m)
        for l in range(top + 1):
            yield 1, -l, (lambda l=l: w.beta(l, h))
    if m == INF:
        return steps, None
    return steps, [(1, 1)] + [(1, -l) for l in range(m + 1)]


def _engine(family: str, w: WeightSystem):
    if family == "S":
        if w.kind != "S":
            raise ValueError("S-triangles need S-type weights")
        return _S_steps(w)
    if family == "T":
        if w.kind != "T":
            raise ValueError("T-triangles need T-type weights")
        return _T_steps(w)
    if family == "J":
        if w.kind != "J":
            raise ValueError("J-triangles need J-type weights")
        return _J_steps(w)
    raise ValueError(f"unknown family {family!r}")


def _scale(family, m):
    return 1 if family == "J" else m + 1


def compute_triangle(family: str, m, weights: WeightSystem, N: int) -> Triangle:
    """The generalized triangle of the family up to row N."""
    if weights.m != m:
        raise ValueError(f"weights are for m={weights.m}, not m={m}")
    steps, shapes = _engine(family, weights)
    s = _scale(family, m)
    targets = [(s * n, s * k) for n in range(N + 1) for k in range(n + 1)]
    vals = _walk(steps, shapes, targets)
    rows = [[vals[(s * n, s * k)] for k in range(n + 1)] for n in range(N + 1)]
    return Triangle(family, m, N, rows)


def compute_sequence(family: str, m, weights: WeightSystem, N: int, k: int = 0) -> list[MPoly]:
    """Column k only (entries n = k..N); requests fewer weights than the full triangle."""
    if weights.m != m:
        raise ValueError(f"weights are for m={weights.m}, not m={m}")
    steps, shapes = _engine(family, weights)
    s = _scale(family, m)
    targets = [(s * n, s * k) for n in range(k, N + 1)]
    vals = _walk(steps, shapes, targets)
    return [vals[(s * n, s * k)] for n in range(k, N + 1)]


def compute_partial(family: str, m: int, weights: WeightSystem, l: int, N: int) -> list[MPoly]:
    """Entries n = 0..N of the partial sequence ending at height l."""
    if family not in ("S", "T"):
        raise ValueError("partial sequences exist for S and T only")
    if l < 0:
        raise ValueError("end height must be nonnegative")
    steps, shapes = _engine(family, weights)
    targets = [((m + 1) * n + l, l) for n in range(N + 1)]
    vals = _walk(steps, shapes, targets)
    return [vals[t] for t in targets]


# ---------------------------------------------------------------------------
# embedding into a larger branching order

def _as_predicate(selector):
    if callable(selector):
        return selector
    s = frozenset(selector)
    return lambda i: i in s


def validate_good_set(m: int, m2: int, selector, N: int) -> None:
    """Check the two good-set conditions on the window of indices [m2, m2*N]."""
    if not 1 <= m < m2:
        raise ValueError("need 1 <= m < m'")
    inI = _as_predicate(selector)
    if inI(m2):
        raise BadGoodSet("a", f"{m2} belongs to the set")
    for j in range(m2, m2 * max(N, 1) + 1):
        if inI(j):
            continue
        hits = sum(1 for i in range(j + 1, j + m2 + 1) if inI(i))
        if hits != m2 - m:
            raise BadGoodSet("b", f"index {j}: {hits} of the next {m2} indices are in the set, "
                                  f"need {m2 - m}")


def _rank_map(m2: int, inI, start: int):
    # position of index i among the complement of the set, counted from `start`
    cache = {}
    order = []
    nxt = [m2]

    def rank(i):
        while i >= nxt[0]:
            j = nxt[0]
            if not inI(j):
                cache[j] = len(order)
                order.append(j)
            nxt[0] += 1
        return cache.get(i)
    return rank


def embed_weights(m: int, m2: int, selector, weights: WeightSystem, N: int = 8) -> WeightSystem:
    """Rewrite m-weights as m'-weights with zeros inserted on the selected set.

    For S-type weights ``selector`` is the set of zeroed indices (a callable
    predicate or a finite collection), validated on [m', m'N].  For T-type
    weights it is the residue set J in {1, ..., m'-1} of size m'-m, and the
    zeroed indices are those congruent to an element of J modulo m'.
    """
    if weights.m != m:
        raise ValueError(f"weights are for m={weights.m}, not m={m}")
    if weights.kind == "T":
        J = set(selector)
        if not J <= set(range(1, m2)):
            raise BadGoodSet("residues", f"{sorted(J)} is not inside 1..{m2 - 1}")
        if len(J) != m2 - m:
            raise BadGoodSet("residues", f"need {m2 - m} residues, got {len(J)}")
        inI = lambda i: i >= m2 and i % m2 in J
    elif weights.kind == "S":
        validate_good_set(m, m2, selector, N)
        inI = _as_predicate(selector)
    else:
        raise ValueError("only S- and T-type weights can be embedded")
    rank = _rank_map(m2, inI, m2)

    def lift(src):
        def f(i):
            if inI(i):
                return ZERO
            return src(m + rank(i))
        return f

    if weights.kind == "S":
        return WeightSystem("S", m2, alpha=lift(weights.alpha), label=f"embedded({weights.label})")
    return WeightSystem("T", m2, alpha=lift(weights.alpha), delta=lift(weights.delta),
                        label=f"embedded({weights.label})")


# ---------------------------------------------------------------------------
# Euler-Gauss ladders

def euler_gauss_verify(m: int, g, alpha: WeightSystem, N: int) -> bool:
    """Check a ladder g_{-1}, g_0, ..., g_K of series against the weights.

    ``g`` is a mapping from k to SeriesTrunc, or a sequence whose first entry is
    g_{-1}.  True iff g_k - g_{k-1} = alpha_{k+m} t g_{k+m} for 0 <= k <= K-m
    and g_0 / g_{-1} agrees with the S-sequence up to the order both are known.
    """
    if not isinstance(g, Mapping):
        g = {k - 1: s for k, s in enumerate(g)}
    K = max(g)
    if min(g) != -1 or set(g) != set(range(-1, K + 1)):
        raise ValueError("ladder must contain g_{-1} through g_K without gaps")
    if K < m:
        raise ValueError("ladder must reach at least g_m")
    for k, s in g.items():
        if s[0] != ONE:
            raise ConstantTermNotOne(f"g_{k} has constant term {s[0]}")
    for k in range(0, K - m + 1):
        lhs = g[k] - g[k - 1]
        rhs = (SeriesTrunc.t(g[k + m].order) * g[k + m]) * alpha.alpha(k + m)
        order = min(N, lhs.order, rhs.order)
        if lhs.truncate(order) != rhs.truncate(order):
            return False
    order = min(N, g[0].order, g[-1].order)
    ratio = series_div(g[0].truncate(order), g[-1].truncate(order))
    seq = compute_sequence("S", m, alpha, order)
    return list(ratio.coeffs) == seq


__all__ = [
    "Triangle", "compute_triangle", "compute_sequence", "compute_partial",
    "embed_weights", "validate_good_set", "euler_gauss_verify",
    "WeightSystem", "generic_S", "generic_T", "generic_J", "MissingWeight",
]
