"""Height-indexed weight systems for S-, T- and J-type path sums.

A weight system of kind ``S`` supplies alpha_i for i >= m, kind ``T`` also
supplies delta_i for i >= m, and kind ``J`` supplies beta_i^(l) for
0 <= l <= m, i >= l.  For kind ``J`` the branching order may be unbounded
(``m = math.inf``), in which case falls of any length are allowed.

Sources are either callables (closed forms, evaluated lazily and memoized) or
finite tables; asking a table for an index it lacks raises ``MissingWeight``.
"""

from __future__ import annotations

import math
import threading
from typing import Callable, Mapping, Sequence

from .errors import MissingWeight
from .exactalg import MPoly, ZERO, poly

INF = math.inf


def _as_source(src, name):
    # turn a table or callable into a callable that raises MissingWeight
    if src is None:
        def missing(*idx):
            raise MissingWeight(name, idx if len(idx) > 1 else idx[0])
        return missing
    if callable(src):
        return src
    if isinstance(src, Mapping):
        table = {k: poly(v) for k, v in src.items()}

        def look(*idx):
            key = idx if len(idx) > 1 else idx[0]
            try:
                return table[key]
            except KeyError:
                raise MissingWeight(name, key) from None
        return look
    raise TypeError(f"weight source must be a mapping or callable, not {type(src).__name__}")


class WeightSystem:
    __slots__ = ("kind", "m", "label", "_alpha", "_delta", "_beta", "_cache", "_lock")

    def __init__(self, kind: str, m, alpha=None, delta=None, beta=None, label: str = "table"):
        if kind not in ("S", "T", "J"):
            raise ValueError(f"unknown weight kind {kind!r}")
        if m != INF and (not isinstance(m, int) or m < 1):
            raise ValueError("m must be a positive integer (or inf for J)")
        if m == INF and kind != "J":
            raise ValueError("only J-type weights may have unbounded m")
        self.kind = kind
        self.m = m
        self.label = label
        self._alpha = _as_source(alpha, "alpha") if kind in ("S", "T") else None
        self._delta = _as_source(delta, "delta") if kind == "T" else None
        self._beta = _as_source(beta, "beta") if kind == "J" else None
        self._cache: dict = {}
        self._lock = threading.Lock()

    def _get(self, key, fn, *idx):
        v = self._cache.get(key)
        if v is None:
            v = poly(fn(*idx))
            with self._lock:
                self._cache.setdefault(key, v)
        return v

    def alpha(self, i: int) -> MPoly:
        if self._alpha is None:
            raise MissingWeight("alpha", i)
        if i < self.m:
            raise MissingWeight("alpha", i)
        return self._get(("a", i), self._alpha, i)

    def delta(self, i: int) -> MPoly:
        if self._delta is None:
            raise MissingWeight("delta", i)
        if i < self.m:
            raise MissingWeight("delta", i)
        return self._get(("d", i), self._delta, i)

    def beta(self, l: int, i: int) -> MPoly:
        if self._beta is None:
            raise MissingWeight("beta", (l, i))
        if l < 0 or l > self.m or i < l:
            return ZERO
        return self._get(("b", l, i), self._beta, l, i)

    def supplies(self, what: str, *idx) -> bool:
        try:
            getattr(self, what)(*idx)
        except MissingWeight:
            return False
        return True

    def map(self, f: Callable[[MPoly], object]) -> "WeightSystem":
        """A new system whose every weight is ``f`` applied to this one's."""
        return WeightSystem(
            self.kind, self.m,
            alpha=(lambda i: f(self.alpha(i))) if self._alpha else None,
            delta=(lambda i: f(self.delta(i))) if self._delta else None,
            beta=(lambda l, i: f(self.beta(l, i))) if self._beta else None,
            label=self.label)

    def subs(self, assignment) -> "WeightSystem":
        return self.map(lambda p: p.subs(assignment))

    def __repr__(self):
        return f"WeightSystem({self.kind}, m={self.m}, {self.label})"


# -- constructors ---------------------------------------------------------

def alpha_name(i: int) -> str:
    return f"alpha{i}"


def delta_name(i: int) -> str:
    return f"delta{i}"


def beta_name(l: int, i: int) -> str:
    return f"beta{l}_{i}"


def generic_S(m: int) -> WeightSystem:
    return WeightSystem("S", m, alpha=lambda i: MPoly.var(alpha_name(i)), label="generic")


def generic_T(m: int) -> WeightSystem:
    return WeightSystem("T", m, alpha=lambda i: MPoly.var(alpha_name(i)),
                        delta=lambda i: MPoly.var(delta_name(i)), label="generic")


def generic_J(m) -> WeightSystem:
    return WeightSystem("J", m, beta=lambda l, i: MPoly.var(beta_name(l, i)), label="generic")


def alpha_table(m: int, values: Sequence, delta: Sequence | None = None) -> WeightSystem:
    """Weights from a finite list; ``values[0]`` is alpha_m."""
    a = {m + i: v for i, v in enumerate(values)}
    if delta is None:
        return WeightSystem("S", m, alpha=a)
    d = {m + i: v for i, v in enumerate(delta)}
    return WeightSystem("T", m, alpha=a, delta=d)


def constant_weights(kind: str, m, value=1, delta=None) -> WeightSystem:
    v = poly(value)
    d = v if delta is None else poly(delta)
    if kind == "S":
        return WeightSystem("S", m, alpha=lambda i: v, label="constant")
    if kind == "T":
        return WeightSystem("T", m, alpha=lambda i: v, delta=lambda i: d, label="constant")
    return WeightSystem("J", m, beta=lambda l, i: v, label="constant")


def as_T(w: WeightSystem, delta=0) -> WeightSystem:
    """View S-weights as T-weights with a constant (default zero) delta."""
    d = poly(delta)
    return WeightSystem("T", w.m, alpha=w.alpha, delta=lambda i: d, label=w.label)
