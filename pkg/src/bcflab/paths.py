"""Brute-force oracles.

Everything here enumerates objects one at a time and sums their weights.
Nothing is memoized; the point is to be slow and obviously right so that the
dynamic programs elsewhere have something independent to be compared with.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

from .errors import ArityMismatch
from .exactalg import MPoly, ONE, ZERO, poly
from .weights import INF, WeightSystem

DYCK = "Dyck"
SCHROEDER = "Schroeder"
LUKASIEWICZ = "Lukasiewicz"
FAMILIES = (DYCK, SCHROEDER, LUKASIEWICZ)


@dataclass(frozen=True)
class LatticePath:
    family: str
    m: int
    start_height: int
    steps: tuple

    def step_width(self, s: int) -> int:
        # the Schroeder long step is the only step two units wide
        if self.family == SCHROEDER and s == -(self.m - 1):
            return 2
        return 1

    def length(self) -> int:
        return sum(self.step_width(s) for s in self.steps)

    def heights(self) -> list[int]:
        h = [self.start_height]
        for s in self.steps:
            h.append(h[-1] + s)
        return h

    def points(self) -> list[tuple[int, int]]:
        pts = [(0, self.start_height)]
        for s in self.steps:
            x, y = pts[-1]
            pts.append((x + self.step_width(s), y + s))
        return pts

    def weight(self, w: WeightSystem) -> MPoly:
        out = ONE
        h = self.start_height
        for s in self.steps:
            if s == 1:
                pass
            elif self.family == LUKASIEWICZ:
                out = out * w.beta(-s, h)
            elif s == -self.m:
                out = out * w.alpha(h)
            else:
                out = out * w.delta(h + 1)
            h += s
        return out


def _step_set(family: str, m) -> list[tuple[int, int]]:
    # (height change, abscissa advance)
    if family == DYCK:
        return [(1, 1), (-m, 1)]
    if family == SCHROEDER:
        return [(1, 1), (-m, 1), (-(m - 1), 2)]
    if family == LUKASIEWICZ:
        return [(1, 1)] + [(-l, 1) for l in range(0, int(m) + 1)] if m != INF else None
    raise ValueError(f"unknown path family {family!r}")


def enumerate_paths(family: str, m, start_height: int, end_height: int,
                    length: int) -> list[LatticePath]:
    """All paths of the family from (0, start) to (length, end) staying >= 0."""
    if family not in FAMILIES:
        raise ValueError(f"unknown path family {family!r}")
    if family == LUKASIEWICZ and m == INF:
        steps = [(1, 1)] + [(-l, 1) for l in range(0, start_height + length + 1)]
    else:
        steps = _step_set(family, m)
    out = []

    def dfs(x, h, acc):
        if x == length:
            if h == end_height:
                out.append(LatticePath(family, m, start_height, tuple(acc)))
            return
        for dy, dx in steps:
            if x + dx > length or h + dy < 0:
                continue
            acc.append(dy)
            dfs(x + dx, h + dy, acc)
            acc.pop()

    dfs(0, start_height, [])
    return out


def _sum_weights(paths: Sequence[LatticePath], w: WeightSystem) -> MPoly:
    acc = ZERO
    for p in paths:
        acc = acc + p.weight(w)
    return acc


def oracle_gen_poly(family: str, m, n: int, k: int, weights: WeightSystem) -> MPoly:
    """Generalized S/T (end height (m+1)k at abscissa (m+1)n) or J (end (n, k))."""
    if family == LUKASIEWICZ:
        return _sum_weights(enumerate_paths(family, m, 0, k, n), weights)
    return _sum_weights(enumerate_paths(family, m, 0, (m + 1) * k, (m + 1) * n), weights)


def oracle_partial_poly(family: str, m: int, n: int, l: int, weights: WeightSystem) -> MPoly:
    """Partial paths from (0, 0) to ((m+1)n + l, l)."""
    if family not in (DYCK, SCHROEDER):
        raise ValueError("partial polynomials are defined for Dyck and Schroeder paths")
    if l < 0:
        raise ValueError("end height must be nonnegative")
    return _sum_weights(enumerate_paths(family, m, 0, l, (m + 1) * n + l), weights)


# ---------------------------------------------------------------------------
# ordered forests

def ordered_trees(vertices: int, max_children=INF) -> Iterator[tuple]:
    """Ordered trees as nested tuples of subtrees."""
    if vertices == 1:
        yield ()
        return
    for forest in ordered_forests(vertices - 1, None, max_children):
        if len(forest) <= max_children:
            yield forest


def ordered_forests(vertices: int, components: int | None, max_children=INF) -> Iterator[tuple]:
    """Sequences of ordered trees with the given total vertex count."""
    if vertices == 0:
        if components in (None, 0):
            yield ()
        return
    if components == 0:
        return
    for first in range(1, vertices + 1):
        rest_c = None if components is None else components - 1
        for t in ordered_trees(first, max_children):
            for rest in ordered_forests(vertices - first, rest_c, max_children):
                yield (t,) + rest


def _preorder(forest) -> tuple[list, list]:
    # depth-first labels 1..N; returns (children lists, tree index) by label
    children: list = [None]
    tree_of: list = [None]

    def visit(t, r):
        me = len(children)
        children.append([])
        tree_of.append(r)
        for sub in t:
            children[me].append(visit(sub, r))
        return me

    for r, t in enumerate(forest, start=1):
        visit(t, r)
    return children, tree_of


def forest_oracle(m, n: int, k: int, beta: WeightSystem) -> MPoly:
    """Ordered forests of ordered trees, n+1 vertices and k+1 components.

    A vertex j (other than the last) at level L with c >= 1 children has
    weight beta_{L+c-1}^{(c-1)}; leaves weigh 1.  The level of j is the number
    of children of vertices 1..j-1 that exceed j, plus k+1 minus the index of
    the tree containing j.
    """
    if m == INF:
        cap = INF
    else:
        cap = m + 1
    acc = ZERO
    for forest in ordered_forests(n + 1, k + 1, cap):
        children, tree_of = _preorder(forest)
        w = ONE
        for j in range(1, n + 1):
            c = len(children[j])
            if c == 0:
                continue
            level = sum(1 for i in range(1, j) for ch in children[i] if ch > j)
            level += k + 1 - tree_of[j]
            w = w * beta.beta(c - 1, level + c - 1)
        acc = acc + w
    return acc


# ---------------------------------------------------------------------------
# trees with labelled edges

class TreeKind(Enum):
    ARY = "Ary"
    MULTI_ARY = "MultiAry"
    INCREASING_ARY = "IncreasingAry"
    INCREASING_MULTI_ARY = "IncreasingMultiAry"


def _labelled_trees(vertices: int, labels: int, multi: bool, root_only_zero: bool):
    # unlabelled trees; yields edge-label multisets as count tuples
    # a tree is described by (label counts of its edges)
    if vertices == 1:
        yield (0,) * labels
        return
    root_labels = 1 if root_only_zero else labels
    for counts in _child_structures(vertices - 1, labels, root_labels, multi):
        yield counts


def _child_structures(rest: int, labels: int, usable: int, multi: bool):
    # distribute `rest` vertices among the root's children; for the (m+1)-ary
    # case each label holds at most one subtree, for the multi case each label
    # holds an ordered sequence of subtrees
    def per_label(label, remaining):
        if label == usable:
            if remaining == 0:
                yield (0,) * labels
            return
        if multi:
            for used in range(0, remaining + 1):
                for seq_counts in _sequence(used, label, labels):
                    for tail in per_label(label + 1, remaining - used):
                        yield tuple(a + b for a, b in zip(seq_counts, tail))
        else:
            for tail in per_label(label + 1, remaining):
                yield tail
            for size in range(1, remaining + 1):
                for sub in _labelled_trees(size, labels, multi, False):
                    edge = tuple(1 if i == label else 0 for i in range(labels))
                    for tail in per_label(label + 1, remaining - size):
                        yield tuple(a + b + c for a, b, c in zip(sub, edge, tail))

    yield from per_label(0, rest)


def _sequence(total: int, label: int, labels: int):
    # ordered sequences of subtrees hanging from `label` edges, total vertices
    if total == 0:
        yield (0,) * labels
        return
    edge = tuple(1 if i == label else 0 for i in range(labels))
    for first in range(1, total + 1):
        for sub in _labelled_trees(first, labels, True, False):
            for rest in _sequence(total - first, label, labels):
                yield tuple(a + b + c for a, b, c in zip(sub, edge, rest))


def _increasing_forests(vertices: int, components: int, labels: int, multi: bool,
                        root_only_zero: bool):
    # vertex v (1-based) is inserted after 1..v-1, either as a new root or as a
    # child of an earlier vertex in some label slot; yields (parent, label)
    # lists with parent 0 for roots
    slots = {}

    def rec(v, parents, used_roots):
        if v > vertices:
            if used_roots == components:
                yield list(parents)
            return
        remaining = vertices - v + 1
        if used_roots < components and components - used_roots <= remaining:
            parents.append((0, None))
            yield from rec(v + 1, parents, used_roots + 1)
            parents.pop()
        if used_roots == 0 or components - used_roots > remaining - 1:
            return
        for p in range(1, v):
            is_root = parents[p - 1][0] == 0
            for lab in range(1 if (root_only_zero and is_root) else labels):
                key = (p, lab)
                count = slots.get(key, 0)
                if not multi and count:
                    continue
                # in the multi case a new child may go in any of count+1 places
                places = count + 1 if multi else 1
                slots[key] = count + 1
                parents.append((p, lab))
                for _ in range(places):
                    yield from rec(v + 1, parents, used_roots)
                parents.pop()
                slots[key] = count

    yield from rec(1, [], 0)


def tree_oracle(kind: TreeKind, m: int, n: int, k: int, x: Sequence, c: Sequence | None = None,
                root_constraint: bool = False) -> MPoly:
    """Generating polynomial of forests with n+1 vertices and k+1 components.

    ``x`` holds one weight per edge label: m+1 labels for the (m+1)-ary kinds
    and m labels for the multi kinds.  For the increasing kinds ``c`` gives
    level weights: every vertex at level L contributes c_L and the total is
    divided by c_0 c_1 ... c_k.  With ``root_constraint`` every root may only
    have 0-edges.
    """
    kind = TreeKind(kind)
    multi = kind in (TreeKind.MULTI_ARY, TreeKind.INCREASING_MULTI_ARY)
    labels = m if multi else m + 1
    if len(x) != labels:
        raise ArityMismatch(f"{kind.value} with m={m} needs {labels} edge weights, got {len(x)}")
    xs = [poly(v) for v in x]
    if kind in (TreeKind.ARY, TreeKind.MULTI_ARY):
        if c is not None:
            raise ValueError("level weights apply to increasing trees only")
        acc = ZERO
        for sizes in _compositions(n + 1, k + 1):
            for parts in itertools.product(
                    *[list(_labelled_trees(s, labels, multi, root_constraint)) for s in sizes]):
                w = ONE
                for counts in parts:
                    for lab, e in enumerate(counts):
                        if e:
                            w = w * xs[lab] ** e
                acc = acc + w
        return acc

    cs = None
    if c is not None:
        cs = [poly(v) for v in c]
    acc = ZERO
    total = n + 1
    for parents in _increasing_forests(total, k + 1, labels, multi, root_constraint):
        w = ONE
        for (p, lab) in parents:
            if p:
                w = w * xs[lab]
        if cs is not None:
            roots_seen = 0
            for j in range(1, total + 1):
                if parents[j - 1][0] == 0:
                    roots_seen += 1
                level = sum(1 for v in range(j + 1, total + 1)
                            if parents[v - 1][0] and parents[v - 1][0] < j)
                level += k + 1 - roots_seen
                if level >= len(cs):
                    raise ArityMismatch(f"level weight c{level} not supplied")
                w = w * cs[level]
        acc = acc + w
    if cs is not None:
        div = ONE
        for L in range(k + 1):
            div = div * cs[L]
        acc = acc.exact_div(div) if not div.is_constant() else acc / div.constant_value()
    return acc


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
