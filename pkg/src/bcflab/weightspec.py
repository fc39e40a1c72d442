"""A small text language for weight systems.

Grammar::

    spec   := family ":" [ pair ("," pair)* ]
    pair   := key "=" value
    value  := list | call | expr
    list   := "[" [ expr ("," expr)* ] [ "," "..." ] "]"
    call   := name "(" [ expr ("," expr)* ] ")"
    expr   := rational/identifier expression with + - * / ^ and parentheses

Families and their keys (``m`` may be omitted when the caller supplies it):

    generic            kind=S|T|J            alpha_i, delta_i or beta_l_i indeterminates
    periodic           p, x                  alpha_{m+j+pk} = x_j
    eventuallyperiodic p, y, x               prefix y, then x repeated
    quasiaffine        p, x, u               alpha_{m+j+pk} = x_j + k u_j
    factorized         p, x, c               alpha_{m+j+pk} = (k+1) c_k x_j
    prealpha           w, pre [, y]          alpha_{m+j} = pre_{j+1} ... pre_{j+w}
    table              alpha [, delta]       finite lists starting at index m

``p`` defaults to the length of ``x``.  A value naming another key
(``u=x``) reuses that key's value.  A scalar ``c`` is a constant sequence.

A list ending in ``...`` is extended:

* identifiers ``c0, c1, ...`` continue as ``c2, c3, ...``;
* numbers continue as the shortest quasi-affine pattern (period p, each
  residue class an arithmetic progression with at least two entries).

Pre-alpha presets (indexing from k = 0):

    repeatR(e)        e(k) repeated R times
    cycle(e1,...,er)  e1(k), ..., er(k) for each k
    gandhi            blocks (y+k repeated m times, then k+1)
    rF0(a1,...,ap)    a1+k, ..., ap+k for each k
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ArityMismatch, MissingWeight, UnknownId
from .exactalg import MPoly, poly
from .families import (eventually_periodic, factorized, gandhi_prealphas, periodic,
                       prealpha_window, quasi_affine)
from .weights import WeightSystem, alpha_table, generic_J, generic_S, generic_T


class WeightSpecError(ValueError):
    """The spec string does not parse or names unknown keys."""


_ALIASES = {
    "eventually-periodic": "eventuallyperiodic",
    "quasi-affine": "quasiaffine",
    "prealpha-window": "prealpha",
}

_KEYS = {
    "generic": ({"kind"}, set()),
    "periodic": ({"x"}, {"p"}),
    "eventuallyperiodic": ({"y", "x"}, {"p"}),
    "quasiaffine": ({"x", "u"}, {"p"}),
    "factorized": ({"x", "c"}, {"p"}),
    "prealpha": ({"w", "pre"}, {"y"}),
    "table": ({"alpha"}, {"delta"}),
}


class Ellipsis_:
    """Marker for a list that continues past its written entries."""

    def __init__(self, items):
        self.items = items


def _split(text: str, sep: str = ",") -> list[str]:
    # split at top-level separators, respecting brackets and parentheses
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise WeightSpecError(f"unbalanced {ch!r} in {text!r}")
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise WeightSpecError(f"unbalanced brackets in {text!r}")
    out.append("".join(cur))
    return out


def _expr(text: str) -> MPoly:
    try:
        return MPoly.parse(text)
    except (ValueError, ZeroDivisionError) as e:
        raise WeightSpecError(f"bad expression {text.strip()!r}: {e}") from None


_CALL = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\((.*)\)$", re.S)


def _value(text: str):
    t = text.strip()
    if not t:
        raise WeightSpecError("empty value")
    if t.startswith("["):
        if not t.endswith("]"):
            raise WeightSpecError(f"unterminated list {t!r}")
        inner = t[1:-1].strip()
        parts = [s.strip() for s in _split(inner)] if inner else []
        more = bool(parts) and parts[-1] == "..."
        if more:
            parts = parts[:-1]
        if "..." in parts:
            raise WeightSpecError("'...' may only end a list")
        items = [_expr(s) for s in parts]
        return Ellipsis_(items) if more else items
    call = _CALL.match(t)
    if call:
        args = _split(call.group(2)) if call.group(2).strip() else []
        return ("call", call.group(1), [_expr(a) for a in args])
    return _expr(t)


def parse_pairs(text: str) -> tuple[str, dict]:
    if ":" not in text:
        raise WeightSpecError(f"missing ':' after the family name in {text!r}")
    fam, _, rest = text.partition(":")
    fam = fam.strip().lower()
    fam = _ALIASES.get(fam, fam)
    pairs: dict = {}
    raw: dict = {}
    if rest.strip():
        for item in _split(rest):
            key, eq, val = item.partition("=")
            key = key.strip()
            if not eq or not key:
                raise WeightSpecError(f"expected key=value, got {item.strip()!r}")
            if key in pairs:
                raise WeightSpecError(f"key {key!r} given twice")
            raw[key] = val.strip()
            pairs[key] = _value(val)
    # a bare identifier naming another key refers to that key's value
    for key, val in list(pairs.items()):
        ref = raw[key]
        if ref in pairs and ref != key and isinstance(val, MPoly):
            pairs[key] = pairs[ref]
    return fam, pairs


# ---------------------------------------------------------------------------
# list continuation

_INDEXED = re.compile(r"^([A-Za-z_]+)(\d+)$")


def _continue_symbols(items: list[MPoly]):
    names = []
    for it in items:
        s = str(it)
        mt = _INDEXED.match(s)
        if not mt:
            return None
        names.append((mt.group(1), int(mt.group(2))))
    if not names or len({n for n, _ in names}) != 1:
        return None
    stem, start = names[0][0], names[0][1]
    if [i for _, i in names] != list(range(start, start + len(names))):
        return None
    return lambda k: MPoly.var(f"{stem}{start + k}")


def _continue_numbers(items: list[MPoly]):
    if not items or not all(it.is_constant() for it in items):
        return None
    vals = [Fraction(it.constant_value()) for it in items]
    n = len(vals)
    for p in range(1, n // 2 + 1):
        steps = []
        ok = True
        for j in range(p):
            cls = vals[j::p]
            if len(cls) < 2:
                ok = False
                break
            d = cls[1] - cls[0]
            if any(cls[t + 1] - cls[t] != d for t in range(len(cls) - 1)):
                ok = False
                break
            steps.append(d)
        if ok:
            return lambda k, p=p, steps=steps: MPoly.const(vals[k % p] + (k // p) * steps[k % p])
    return None


def expand_list(val, what: str):
    """A finite list, or a callable for a list ending in '...'."""
    if isinstance(val, Ellipsis_):
        items = val.items
        f = _continue_symbols(items) or _continue_numbers(items)
        if f is None:
            raise WeightSpecError(f"cannot continue the list for {what}")
        return f
    if isinstance(val, list):
        return val
    raise WeightSpecError(f"{what} must be a list")


# ---------------------------------------------------------------------------
# pre-alpha presets

def _in_k(e: MPoly):
    return lambda k: e.subs({"k": k})


def prealpha_preset(name: str, args: list, m: int, y=None):
    """0-based pre-alpha callable for a named preset."""
    mt = re.fullmatch(r"repeat(\d+)", name)
    if mt:
        r = int(mt.group(1))
        if r < 1 or len(args) != 1:
            raise WeightSpecError("repeatR takes R >= 1 and one expression in k")
        f = _in_k(args[0])
        return lambda t: f(t // r)
    if name == "cycle":
        if not args:
            raise WeightSpecError("cycle needs at least one expression")
        fs = [_in_k(a) for a in args]
        return lambda t: fs[t % len(fs)](t // len(fs))
    if name == "gandhi":
        if args:
            raise WeightSpecError("gandhi takes no arguments (set y=... separately)")
        return gandhi_prealphas(m, y)
    if name == "rF0":
        if not args:
            raise WeightSpecError("rF0 needs its numerator parameters")
        return lambda t: args[t % len(args)] + t // len(args)
    raise UnknownId(f"pre-alpha preset {name!r}")


# ---------------------------------------------------------------------------

def _int(val, what: str) -> int:
    if not isinstance(val, MPoly) or not val.is_constant():
        raise WeightSpecError(f"{what} must be an integer")
    f = Fraction(val.constant_value())
    if f.denominator != 1:
        raise WeightSpecError(f"{what} must be an integer")
    return int(f)


def parse_weight_spec(text: str, m: int | None = None) -> WeightSystem:
    """Build the weight system described by ``text``."""
    fam, P = parse_pairs(text)
    if fam not in _KEYS:
        raise UnknownId(f"weight family {fam!r}")
    if "m" in P:
        mm = _int(P.pop("m"), "m")
        if m is not None and m != mm:
            raise WeightSpecError(f"spec says m={mm} but m={m} was requested")
        m = mm
    if m is None:
        raise WeightSpecError("branching order m not given")
    if m < 1:
        raise WeightSpecError("m must be positive")
    need, optional = _KEYS[fam]
    have = set(P)
    if not need <= have:
        raise ArityMismatch(f"{fam} needs {sorted(need - have)}")
    if not have <= need | optional:
        raise WeightSpecError(f"{fam} does not take {sorted(have - need - optional)}")

    if fam == "generic":
        kind = str(P["kind"])
        if kind not in ("S", "T", "J"):
            raise WeightSpecError("kind must be S, T or J")
        return {"S": generic_S, "T": generic_T, "J": generic_J}[kind](m)
    if fam == "table":
        alpha = P["alpha"]
        delta = P.get("delta")
        if isinstance(alpha, Ellipsis_) or isinstance(delta, Ellipsis_):
            fa = expand_list(alpha, "alpha")
            a = fa if callable(fa) else (lambda i, fa=fa: _at(fa, i, "alpha", m))
            if delta is None:
                return WeightSystem("S", m, alpha=lambda i: poly(a(i - m)), label="table")
            fd = expand_list(delta, "delta")
            d = fd if callable(fd) else (lambda i, fd=fd: _at(fd, i, "delta", m))
            return WeightSystem("T", m, alpha=lambda i: poly(a(i - m)),
                                delta=lambda i: poly(d(i - m)), label="table")
        if not isinstance(alpha, list) or (delta is not None and not isinstance(delta, list)):
            raise WeightSpecError("table weights must be lists")
        return alpha_table(m, alpha, delta)

    x = _xlist(P["x"], "x") if "x" in P else None
    p = _int(P["p"], "p") if "p" in P else (len(x) if x is not None else None)
    if fam == "periodic":
        return periodic(m, p, x)
    if fam == "eventuallyperiodic":
        return eventually_periodic(m, p, _xlist(P["y"], "y"), x)
    if fam == "quasiaffine":
        return quasi_affine(m, p, x, _xlist(P["u"], "u"))
    if fam == "factorized":
        c = P["c"]
        if isinstance(c, MPoly):
            cs = lambda k, c=c: c
        else:
            cs = expand_list(c, "c")
        return factorized(m, p, x, cs)
    # prealpha
    w = _int(P["w"], "w")
    pre = P["pre"]
    if isinstance(pre, MPoly) and re.fullmatch(r"[A-Za-z_]\w*", str(pre)):
        pre = ("call", str(pre), [])
    if isinstance(pre, tuple):
        pre = prealpha_preset(pre[1], pre[2], m, P.get("y"))
    else:
        if "y" in P:
            raise WeightSpecError("y is only used by the gandhi preset")
        pre = expand_list(pre, "pre")
    return prealpha_window(m, w, pre)


def _at(vals, i, what, m):
    if i < 0 or i >= len(vals):
        raise MissingWeight(what, i + m)
    return vals[i]


def _xlist(val, what):
    if isinstance(val, list):
        return val
    raise WeightSpecError(f"{what} must be a bracketed list")


__all__ = ["parse_weight_spec", "parse_pairs", "prealpha_preset", "expand_list", "WeightSpecError"]
