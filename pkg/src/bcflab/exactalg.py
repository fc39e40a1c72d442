"""Exact arithmetic kernel.

Sparse multivariate polynomials with rational coefficients (``MPoly``),
power series in one formal variable truncated at a fixed order
(``SeriesTrunc``), dense polynomial matrices (``PolyMatrix``) and
fraction-free determinants.

Monomials are packed into a single Python integer: field 0 holds the total
degree and field ``i`` holds the exponent of the ``i``-th interned
indeterminate, each field being ``_BITS`` wide.  Multiplying monomials is then
integer addition, which keeps the inner loops of polynomial multiplication
cheap.  Indeterminate names are interned on first use and never removed.
"""

from __future__ import annotations

import heapq
import itertools
import re
import threading
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

try:
    import flint
except ImportError:  # pragma: no cover - exercised only without python-flint
    flint = None

_BITS = 32
_MASK = (1 << _BITS) - 1
_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class NonInvertibleConstantTerm(ArithmeticError):
    pass


class NotSquare(ValueError):
    pass


class DivisionFailed(ArithmeticError):
    pass


class DegreeOverflow(OverflowError):
    pass


# ---------------------------------------------------------------------------
# indeterminate interning

_names: list[str] = [""]  # slot 0 is the total-degree field
_index: dict[str, int] = {}
_intern_lock = threading.Lock()


def _var_index(name: str) -> int:
    i = _index.get(name)
    if i is None:
        if not isinstance(name, str) or not _NAME_RE.match(name):
            raise ValueError(f"bad indeterminate name: {name!r}")
        with _intern_lock:
            i = _index.get(name)
            if i is None:
                i = len(_names)
                _names.append(name)
                _index[name] = i
    return i


def natural_key(name: str):
    """Sort key that orders ``x2`` before ``x10``."""
    return tuple((0, int(tok), "") if tok.isdigit() else (1, 0, tok)
                 for tok in re.findall(r"\d+|\D+", name))


def _encode(exps: Mapping[str, int]) -> int:
    key = 0
    total = 0
    for name, e in exps.items():
        e = int(e)
        if e < 0:
            raise ValueError("negative exponent")
        if e == 0:
            continue
        if e > _MASK:
            raise DegreeOverflow(e)
        key += e << (_BITS * _var_index(name))
        total += e
    if total > _MASK:
        raise DegreeOverflow(total)
    return key + total


def _decode(key: int) -> dict[str, int]:
    out = {}
    k = key >> _BITS
    i = 1
    while k:
        e = k & _MASK
        if e:
            out[_names[i]] = e
        k >>= _BITS
        i += 1
    return out


def _divides(a: int, b: int) -> bool:
    # monomial a divides monomial b iff every field of a is <= that of b
    while a:
        if (a & _MASK) > (b & _MASK):
            return False
        a >>= _BITS
        b >>= _BITS
    return True


def _norm(c):
    if type(c) is int:
        return c
    if type(c) is Fraction:
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return int(c)
    if isinstance(c, Rational):
        return _norm(Fraction(int(c.numerator), int(c.denominator)))
    raise TypeError(f"not an exact rational: {c!r}")


def _is_scalar(x) -> bool:
    return isinstance(x, Rational)


def _as_fraction(c) -> Fraction:
    return c if type(c) is Fraction else Fraction(c)


# ---------------------------------------------------------------------------
# polynomials

class MPoly:
    """Immutable sparse polynomial over Q in named indeterminates."""

    __slots__ = ("_t", "_hash", "_deg")

    def __init__(self, terms: Mapping | None = None):
        # terms: {exponent map or sequence of (name, exp) pairs: coefficient}
        t = {}
        if terms:
            for mono, c in terms.items():
                if isinstance(mono, int):
                    raise TypeError("use MPoly.const for scalars")
                exps = dict(mono) if not isinstance(mono, Mapping) else mono
                k = _encode(exps)
                c = _norm(c)
                if c:
                    t[k] = t.get(k, 0) + c
                    if not t[k]:
                        del t[k]
        self._t = {k: _norm(v) for k, v in t.items()}
        self._hash = None
        self._deg = None

    @classmethod
    def _raw(cls, t: dict) -> "MPoly":
        p = object.__new__(cls)
        p._t = t
        p._hash = None
        p._deg = None
        return p

    @classmethod
    def const(cls, c) -> "MPoly":
        c = _norm(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def var(cls, name: str) -> "MPoly":
        i = _var_index(name)
        return cls._raw({(1 << (_BITS * i)) + 1: 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff=1) -> "MPoly":
        c = _norm(coeff)
        return cls._raw({_encode(exps): c} if c else {})

    @classmethod
    def from_terms(cls, items: Iterable) -> "MPoly":
        """Build from an iterable of ``(exponent map, coefficient)`` pairs."""
        t: dict = {}
        for exps, c in items:
            k = _encode(exps)
            t[k] = t.get(k, 0) + _norm(c)
        return cls._raw({k: _norm(v) for k, v in t.items() if v})

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_term(self):
        return self._t.get(0, 0)

    def constant_value(self):
        """The value of a constant polynomial (int or Fraction)."""
        if not self.is_constant():
            raise ValueError(f"polynomial is not constant: {self}")
        return self._t.get(0, 0)

    def degree(self) -> int:
        if self._deg is None:
            self._deg = max((k & _MASK for k in self._t), default=-1)
        return self._deg

    def degree_in(self, name: str) -> int:
        if name not in _index:
            return 0 if self._t else -1
        shift = _BITS * _index[name]
        return max(((k >> shift) & _MASK for k in self._t), default=-1)

    def variables(self) -> set[str]:
        acc = 0
        for k in self._t:
            acc |= k
        out = set()
        acc >>= _BITS
        i = 1
        while acc:
            if acc & _MASK:
                out.add(_names[i])
            acc >>= _BITS
            i += 1
        # the OR of fields can be nonzero while every exponent is zero only if
        # fields overlap, which packing rules out
        return out

    def coefficients(self) -> list:
        return [c for _, c in self.terms()]

    def terms(self) -> list[tuple[dict[str, int], object]]:
        """Terms as ``(exponent map, coefficient)`` in graded lex order.

        Lower total degree first; within a degree, the monomial with the larger
        exponent on the earliest indeterminate (natural name order) first.
        """
        decoded = [(_decode(k), k & _MASK, c) for k, c in self._t.items()]
        names = sorted({n for d, _, _ in decoded for n in d}, key=natural_key)
        decoded.sort(key=lambda e: (e[1], tuple(-e[0].get(n, 0) for n in names)))
        return [(d, c) for d, _, c in decoded]

    def coeff(self, exps: Mapping[str, int]):
        return self._t.get(_encode(exps), 0)

    def is_coeffwise_nonneg(self) -> bool:
        return all(c >= 0 for c in self._t.values())

    # -- ring operations --------------------------------------------------

    @staticmethod
    def _lift(x) -> "MPoly":
        if isinstance(x, MPoly):
            return x
        if _is_scalar(x):
            return MPoly.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    def __add__(self, other):
        if not isinstance(other, MPoly):
            if not _is_scalar(other):
                return NotImplemented
            other = MPoly.const(other)
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm(v)
            else:
                out.pop(k, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({k: -c for k, c in self._t.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            if not _is_scalar(other):
                return NotImplemented
            other = MPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        return MPoly.const(other) - self

    def scale(self, c) -> "MPoly":
        c = _norm(c)
        if not c:
            return ZERO
        return MPoly._raw({k: _norm(v * c) for k, v in self._t.items()})

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if not _is_scalar(other):
                return NotImplemented
            return self.scale(other)
        a, b = self._t, other._t
        if not a or not b:
            return ZERO
        if len(b) == 1 and 0 in b:
            return self.scale(b[0])
        if len(a) == 1 and 0 in a:
            return other.scale(a[0])
        if self.degree() + other.degree() > _MASK:
            raise DegreeOverflow("total degree exceeds packing width")
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return MPoly._raw({k: _norm(v) for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            if not other:
                raise ZeroDivisionError
            return self.scale(Fraction(1) / _as_fraction(other))
        if isinstance(other, MPoly):
            if other.is_constant():
                return self / other.constant_value()
            return self.exact_div(other)
        return NotImplemented

    def exact_div(self, d: "MPoly") -> "MPoly":
        """Quotient ``self / d``; raises ``DivisionFailed`` unless exact."""
        if not d._t:
            raise ZeroDivisionError
        if d.is_constant():
            return self / d.constant_value()
        lead = max(d._t)
        lc = _as_fraction(d._t[lead])
        rem = dict(self._t)
        heap = [-k for k in rem]
        heapq.heapify(heap)
        q = {}
        dterms = list(d._t.items())
        while heap:
            k = -heapq.heappop(heap)
            c = rem.get(k)
            if not c:
                continue
            if not _divides(lead, k):
                raise DivisionFailed("remainder term not divisible by leading term")
            mk = k - lead
            qc = _norm(c / lc)
            q[mk] = qc
            for kd, cd in dterms:
                kk = mk + kd
                old = rem.get(kk)
                v = (old or 0) - qc * cd
                if v:
                    rem[kk] = v
                    if old is None:
                        heapq.heappush(heap, -kk)
                else:
                    rem.pop(kk, None)
        return MPoly._raw(q)

    def diff(self, name: str) -> "MPoly":
        """Partial derivative with respect to ``name``."""
        if name not in _index:
            return ZERO
        shift = _BITS * _index[name]
        unit = (1 << shift) + 1
        out = {}
        for k, c in self._t.items():
            e = (k >> shift) & _MASK
            if e:
                out[k - unit] = _norm(c * e)
        return MPoly._raw(out)

    def subs(self, assignment: Mapping[str, object]) -> "MPoly":
        """Substitute polynomials (or scalars) for indeterminates."""
        if not assignment:
            return self
        fields = {}
        for name, val in assignment.items():
            if name in _index:
                fields[_index[name]] = MPoly._lift(val)
        if not fields:
            return self
        cache: dict = {}
        out: dict = {}
        for k, c in self._t.items():
            rest = k
            factor = None
            for i, val in fields.items():
                e = (k >> (_BITS * i)) & _MASK
                if e:
                    rest -= (e << (_BITS * i)) + e
                    pw = cache.get((i, e))
                    if pw is None:
                        pw = cache[(i, e)] = val ** e
                    factor = pw if factor is None else factor * pw
            if factor is None:
                out[rest] = out.get(rest, 0) + c
                continue
            for kf, cf in factor._t.items():
                kk = kf + rest
                out[kk] = out.get(kk, 0) + c * cf
        return MPoly._raw({k: _norm(v) for k, v in out.items() if v})

    def evaluate(self, assignment: Mapping[str, object]):
        """Substitute and return a scalar; every indeterminate must be assigned."""
        return self.subs(assignment).constant_value()

    # -- comparison, hashing, display -------------------------------------

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self._t == other._t
        if _is_scalar(other):
            return self._t == ({0: _norm(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for exps, c in reversed(self.terms()):
            mono = "*".join(n if e == 1 else f"{n}^{e}"
                            for n, e in sorted(exps.items(), key=lambda x: natural_key(x[0])))
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"MPoly({str(self)!r})"

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        out = []
        for exps, c in self.terms():
            f = _as_fraction(c)
            out.append({"c": f"{f.numerator}/{f.denominator}",
                        "e": {n: exps[n] for n in sorted(exps, key=natural_key)}})
        return {"terms": out}

    @classmethod
    def from_json(cls, obj: Mapping) -> "MPoly":
        return cls.from_terms((t.get("e", {}), Fraction(t["c"])) for t in obj["terms"])

    @classmethod
    def parse(cls, text: str) -> "MPoly":
        """Parse ``+ - * / ^`` expressions over rationals and identifiers.

        Division is only allowed by a constant.  A number directly followed by
        a name or a parenthesis multiplies it (``2k``).
        """
        return _Parser(text).parse()


ZERO = MPoly._raw({})
ONE = MPoly._raw({0: 1})


def poly(x) -> MPoly:
    """Coerce a scalar, a string expression or an MPoly to MPoly."""
    if isinstance(x, MPoly):
        return x
    if isinstance(x, str):
        return MPoly.parse(x)
    return MPoly.const(x)


def var(name: str) -> MPoly:
    return MPoly.var(name)


def poly_is_coeffwise_nonneg(p: MPoly) -> bool:
    return p.is_coeffwise_nonneg()


def poly_substitute(p: MPoly, assignment: Mapping[str, object]) -> MPoly:
    return p.subs(assignment)


class _Parser:
    _tok = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")

    def __init__(self, text: str):
        self.toks = []
        for num, name, ch in self._tok.findall(text):
            if num:
                self.toks.append(("num", int(num)))
            elif name:
                self.toks.append(("name", name))
            elif ch.strip():
                self.toks.append(("op", ch))
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def fail(self, msg):
        raise ValueError(f"cannot parse {self.text!r}: {msg}")

    def parse(self) -> MPoly:
        if not self.toks:
            self.fail("empty expression")
        p = self.expr()
        if self.i != len(self.toks):
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        p = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while True:
            nxt = self.peek()
            if nxt in (("op", "*"), ("op", "/")):
                op = self.take()[1]
            elif self.toks[self.i - 1][0] == "num" and (nxt[0] == "name" or nxt == ("op", "(")):
                op = "*"  # 2k or 3(k+1)
            else:
                break
            q = self.factor()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or not q:
                    self.fail("division by a non-constant or zero")
                p = p / q.constant_value()
        return p

    def factor(self):
        b = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "num":
                self.fail("exponent must be a nonnegative integer")
            b = b ** e
        return b

    def atom(self):
        kind, v = self.take()
        if kind == "num":
            return MPoly.const(v)
        if kind == "name":
            return MPoly.var(v)
        if (kind, v) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return p
        if (kind, v) == ("op", "-"):
            return -self.factor()
        self.fail(f"unexpected token {v!r}")


# ---------------------------------------------------------------------------
# truncated power series

class SeriesTrunc:
    """Power series in t with MPoly coefficients, exact modulo t^(order+1)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int | None = None):
        cs = [poly(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = cs[: order + 1] + [ZERO] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls, order: int) -> "SeriesTrunc":
        return cls([ONE], order)

    @classmethod
    def t(cls, order: int) -> "SeriesTrunc":
        return cls([ZERO, ONE], order)

    def __getitem__(self, n: int) -> MPoly:
        return self.coeffs[n]

    def __len__(self):
        return self.order + 1

    def truncate(self, order: int) -> "SeriesTrunc":
        return SeriesTrunc(self.coeffs[: order + 1], min(order, self.order))

    def _pair(self, other):
        if isinstance(other, SeriesTrunc):
            n = min(self.order, other.order)
            return n, self.coeffs, other.coeffs
        other = poly(other)
        return self.order, self.coeffs, (other,) + (ZERO,) * self.order

    def __add__(self, other):
        n, a, b = self._pair(other)
        return SeriesTrunc([a[i] + b[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return SeriesTrunc([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        n, a, b = self._pair(other)
        return SeriesTrunc([a[i] - b[i] for i in range(n + 1)], n)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SeriesTrunc):
            c = poly(other)
            return SeriesTrunc([x * c for x in self.coeffs], self.order)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = ZERO
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return SeriesTrunc(out, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SeriesTrunc):
            return series_div(self, other)
        c = poly(other)
        if not c.is_constant() or not c:
            raise NonInvertibleConstantTerm("division by a non-constant scalar")
        return SeriesTrunc([x / c.constant_value() for x in self.coeffs], self.order)

    def derivative(self) -> "SeriesTrunc":
        """d/dt; the result has order one less (at least 0)."""
        cs = [self.coeffs[n] * n for n in range(1, self.order + 1)]
        return SeriesTrunc(cs or [ZERO], max(self.order - 1, 0))

    def scale_t(self, c) -> "SeriesTrunc":
        """f(c t)."""
        c = poly(c)
        out = []
        pw = ONE
        for x in self.coeffs:
            out.append(x * pw)
            pw = pw * c
        return SeriesTrunc(out, self.order)

    def subs(self, assignment) -> "SeriesTrunc":
        return SeriesTrunc([c.subs(assignment) for c in self.coeffs], self.order)

    def __eq__(self, other):
        if not isinstance(other, SeriesTrunc):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        body = " + ".join(f"({c})*t^{i}" for i, c in enumerate(self.coeffs) if c)
        return f"SeriesTrunc({body or '0'}, order={self.order})"


def series_mul(a: SeriesTrunc, b: SeriesTrunc) -> SeriesTrunc:
    return a * b


def series_div(num: SeriesTrunc, den: SeriesTrunc) -> SeriesTrunc:
    """Quotient modulo t^(N+1), N the smaller order."""
    d0 = den.coeffs[0]
    if not d0 or not d0.is_constant():
        raise NonInvertibleConstantTerm("constant term must be a nonzero rational")
    inv = Fraction(1) / _as_fraction(d0.constant_value())
    n = min(num.order, den.order)
    out: list[MPoly] = []
    for k in range(n + 1):
        acc = num.coeffs[k]
        for j in range(1, k + 1):
            if den.coeffs[j] and out[k - j]:
                acc = acc - den.coeffs[j] * out[k - j]
        out.append(acc * inv)
    return SeriesTrunc(out, n)


# ---------------------------------------------------------------------------
# matrices

class PolyMatrix:
    """Dense rectangular matrix of MPoly entries."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries):
        rows = [tuple(poly(x) for x in r) for r in entries]
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        self._e = tuple(rows)
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_function(cls, rows: int, cols: int, f) -> "PolyMatrix":
        return cls([[f(i, j) for j in range(cols)] for i in range(rows)])

    @property
    def entries(self) -> list[list[MPoly]]:
        return [list(r) for r in self._e]

    def __getitem__(self, ij) -> MPoly:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple:
        return self._e[i]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self._e[i][j] for i in range(self.rows)] for j in range(self.cols)])

    @property
    def T(self) -> "PolyMatrix":
        return self.transpose()

    def submatrix(self, rows, cols) -> "PolyMatrix":
        return PolyMatrix([[self._e[i][j] for j in cols] for i in rows])

    def block(self, nrows: int, ncols: int | None = None) -> "PolyMatrix":
        ncols = nrows if ncols is None else ncols
        return self.submatrix(range(nrows), range(ncols))

    def map(self, f) -> "PolyMatrix":
        return PolyMatrix([[f(x) for x in r] for r in self._e])

    def subs(self, assignment) -> "PolyMatrix":
        return self.map(lambda x: x.subs(assignment))

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return PolyMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for r in self._e:
            row = []
            for c in cols:
                acc = ZERO
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._e)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def __repr__(self):
        return "PolyMatrix([\n" + ",\n".join(
            "  [" + ", ".join(str(x) for x in r) + "]" for r in self._e) + "\n])"

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[x.to_json() for x in r] for r in self._e]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "PolyMatrix":
        m = cls([[MPoly.from_json(x) for x in r] for r in obj["entries"]])
        if (m.rows, m.cols) != (obj["rows"], obj["cols"]) and m.rows:
            raise ValueError("dimension fields disagree with entries")
        return m


# ---------------------------------------------------------------------------
# determinants

def det_cofactor(M: PolyMatrix) -> MPoly:
    """Laplace expansion along the first row.  Exponential; used as an oracle."""
    if M.rows != M.cols:
        raise NotSquare(f"{M.rows}x{M.cols}")
    e = M.entries

    def rec(rows, cols):
        if not rows:
            return ONE
        if len(rows) == 1:
            return e[rows[0]][cols[0]]
        acc = ZERO
        r0 = rows[0]
        for idx, c in enumerate(cols):
            a = e[r0][c]
            if not a:
                continue
            sub = rec(rows[1:], cols[:idx] + cols[idx + 1:])
            term = a * sub
            acc = acc - term if idx % 2 else acc + term
        return acc

    return rec(tuple(range(M.rows)), tuple(range(M.cols)))


def _bareiss(e: list[list], zero, one, div):
    n = len(e)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if not e[k][k]:
            for r in range(k + 1, n):
                if e[r][k]:
                    e[k], e[r] = e[r], e[k]
                    sign = -sign
                    break
            else:
                return zero
        pk = e[k][k]
        for i in range(k + 1, n):
            rowi = e[i]
            rowk = e[k]
            aik = rowi[k]
            for j in range(k + 1, n):
                v = rowi[j] * pk - aik * rowk[j]
                rowi[j] = div(v, prev)
        prev = pk
    d = e[n - 1][n - 1]
    return d if sign > 0 else -d


def det_fraction_free(M: PolyMatrix, backend: str = "auto") -> MPoly:
    """Determinant by Bareiss fraction-free elimination.

    ``backend`` is ``"python"``, ``"flint"`` or ``"auto"`` (flint when
    importable).  If an exact division unexpectedly fails in the pure Python
    path, matrices of size at most 4 fall back to cofactor expansion.
    """
    if M.rows != M.cols:
        raise NotSquare(f"{M.rows}x{M.cols}")
    if M.rows == 0:
        return ONE
    if backend not in ("auto", "python", "flint"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "flint" or (backend == "auto" and flint is not None and M.rows >= 3):
        eng = MinorEngine(M, backend="flint")
        return eng.to_mpoly(eng.det(range(M.rows), range(M.cols)))
    try:
        return _bareiss(M.entries, ZERO, ONE, lambda a, b: a.exact_div(b))
    except DivisionFailed:
        if M.rows <= 4:
            return det_cofactor(M)
        raise


class MinorEngine:
    """Evaluates many minors of one matrix in a fixed arithmetic backend.

    With the flint backend the matrix is converted once into a python-flint
    polynomial context over the indeterminates that occur in it, so that
    repeated minor evaluation avoids conversion costs.
    """

    def __init__(self, M: PolyMatrix, backend: str = "auto"):
        if backend == "auto":
            backend = "flint" if flint is not None else "python"
        if backend == "flint" and flint is None:
            raise RuntimeError("python-flint is not installed")
        self.backend = backend
        self.matrix = M
        if backend == "python":
            self._e = M.entries
            self._zero, self._one = ZERO, ONE
            self._div = lambda a, b: a.exact_div(b)
            return
        names = sorted(set().union(*(x.variables() for r in M.entries for x in r)) or {"_t"},
                       key=natural_key)
        integral = all(type(c) is int for r in M.entries for x in r for c in x._t.values())
        self._names = names
        if integral:
            self._ctx = flint.fmpz_mpoly_ctx.get(tuple(names), "deglex")
        else:
            self._ctx = flint.fmpq_mpoly_ctx.get(tuple(names), "deglex")
        self._integral = integral
        self._pos = {n: i for i, n in enumerate(names)}
        self._e = [[self._to_native(x) for x in r] for r in M.entries]
        self._zero = self._ctx.from_dict({})
        self._one = self._zero + 1
        self._div = lambda a, b: a / b

    def _to_native(self, p: MPoly):
        nv = len(self._names)
        d = {}
        for exps, c in ((_decode(k), c) for k, c in p._t.items()):
            key = [0] * nv
            for n, e in exps.items():
                key[self._pos[n]] = e
            if self._integral:
                d[tuple(key)] = int(c)
            else:
                f = _as_fraction(c)
                d[tuple(key)] = flint.fmpq(f.numerator, f.denominator)
        return self._ctx.from_dict(d)

    def to_mpoly(self, x) -> MPoly:
        if self.backend == "python":
            return x
        items = []
        for key, c in x.to_dict().items():
            exps = {self._names[i]: e for i, e in enumerate(key) if e}
            if self._integral:
                items.append((exps, int(c)))
            else:
                items.append((exps, Fraction(int(c.p), int(c.q))))
        return MPoly.from_terms(items)

    def entry(self, i: int, j: int):
        return self._e[i][j]

    def det(self, rows, cols):
        rows, cols = list(rows), list(cols)
        if len(rows) != len(cols):
            raise NotSquare(f"{len(rows)}x{len(cols)}")
        sub = [[self._e[i][j] for j in cols] for i in rows]
        return _bareiss(sub, self._zero, self._one, self._div)

    def is_nonneg(self, x) -> bool:
        if self.backend == "python":
            return x.is_coeffwise_nonneg()
        return all(c >= 0 for c in x.coeffs())


def minors(M: PolyMatrix, k: int):
    """Iterate ``(rows, cols)`` index tuples of all k x k minors in lex order."""
    for R in itertools.combinations(range(M.rows), k):
        for C in itertools.combinations(range(M.cols), k):
            yield R, C
