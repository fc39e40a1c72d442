"""Command-line interface.

    bcflab compute --family S --m 2 --weights "prealpha:w=2,pre=repeat3(k+1)" --N 8
    bcflab tp-check --seq genocchi --size 6 --order 4
    bcflab hyper-verify --params "a=1/2,1/3;b=5/2;kind=first"

Weight systems are given in the weight-spec language of ``bcflab.weightspec``
(``family:key=value,...``).  Results go to stdout as JSON (polynomials as
term lists with "p/q" coefficients plus a readable ``text`` field) or, for
fully numeric results, CSV.  Progress goes to stderr.

Exit status: 0 success, 1 a verdict or identity failed (the witness is
printed), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import families as fam
from . import hyper
from .bcf import compute_partial, compute_sequence, compute_triangle, rational_str
from .errors import (ArityMismatch, BadGoodSet, IndexOutOfRange, InsufficientMatrixSize,
                     MissingWeight, NotAZShape, PoleWithinTruncation, DenominatorVanished,
                     TruncationUnsafe, UnknownId)
from .exactalg import MPoly
from .paths import DYCK, LUKASIEWICZ, SCHROEDER, forest_oracle, oracle_gen_poly
from .prodmat import (KINDS as PROD_KINDS, ProductionSpec, build_production, contract,
                      contract_thron, output_matrix, restrict_delta, row_generating_matrix)
from .suites import SUITES, _rowgen_checks, SuiteResult
from .totalpos import check_tp, check_tp_numeric, hankel_matrix, stderr_progress
from .weights import as_T, generic_J, generic_S, generic_T
from .weightspec import WeightSpecError, parse_pairs, parse_weight_spec

SYMBOLIC_CAP = (6, 4)
NUMERIC_CAP = 13


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output

def pj(p: MPoly) -> dict:
    out = p.to_json()
    out["text"] = str(p)
    return out


def _numeric(values) -> bool:
    return all(v.is_constant() for v in values)


def _num(v: MPoly) -> str:
    return rational_str(v.constant_value())


def emit(args, payload: dict, table: list | None = None, header: list | None = None) -> None:
    """Print JSON, or CSV when asked and every table cell is a number."""
    if args.format == "csv":
        if table is None:
            raise UsageError("this result has no tabular form; use --format json")
        if not all(_numeric(row[1:]) for row in table):
            raise UsageError("CSV output needs fully numeric entries; use --format json")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in table:
            w.writerow([row[0]] + [_num(v) for v in row[1:]])
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(json.dumps(payload, indent=1, sort_keys=True) + "\n")


def _subs_arg(text: str | None) -> dict:
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        name, eq, val = item.partition("=")
        if not eq or not name.strip():
            raise UsageError(f"bad substitution {item!r}; expected name=value")
        out[name.strip()] = MPoly.parse(val)
    return out


def _weights(args, family: str):
    if args.weights:
        w = parse_weight_spec(args.weights, args.m)
    else:
        w = {"S": generic_S, "T": generic_T, "J": generic_J}[family](args.m)
    if family == "T" and w.kind == "S":
        w = as_T(w)
    if w.kind != family:
        raise UsageError(f"weights of kind {w.kind} cannot drive the {family} family")
    return w


def _list_arg(text: str | None, what: str):
    if text is None:
        return None
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise UsageError(f"{what} must be a bracketed list like [x0,x1]")
    inner = t[1:-1].strip()
    return [MPoly.parse(s) for s in inner.split(",")] if inner else []


# ---------------------------------------------------------------------------
# suites

_VERB_SUITES = {
    "oracle-check": [1], "prodmat": [2, 8], "contract": [3], "compute": [4, 11],
    "family": [5], "tp-check": [6, 7], "hyper-verify": [9], "genocchi-check": [10],
    "row-generating": [5],
}


def run_suites(args) -> int:
    allowed = _VERB_SUITES[args.verb]
    if args.suite == "all":
        chosen = allowed
    else:
        try:
            chosen = [int(args.suite)]
        except ValueError:
            raise UsageError(f"--suite takes a criterion number, got {args.suite!r}") from None
        if chosen[0] not in allowed:
            raise UsageError(f"{args.verb} runs criteria {allowed}, not {chosen[0]}")
    results = []
    for n in chosen:
        stderr_progress(f"criterion {n}: running")
        if args.verb == "row-generating":
            res = SuiteResult(5, "row-generating polynomials")
            _rowgen_checks(res, (1, 2), 5)
        elif n in (6, 7):
            res = SUITES[n](progress=stderr_progress)
        else:
            res = SUITES[n]()
        results.append(res)
        stderr_progress(f"criterion {n}: {'PASS' if res.ok else 'FAIL'}")
    payload = {"suites": [r.to_json() for r in results]}
    emit(args, payload)
    return 0 if all(r.ok for r in results) else 1


# ---------------------------------------------------------------------------
# verbs

def cmd_compute(args) -> int:
    w = _weights(args, args.family)
    subs = _subs_arg(args.subs)
    if args.triangle:
        tri = compute_triangle(args.family, args.m, w, args.N)
        if subs:
            tri = tri.subs(subs)
        payload = {"family": args.family, "m": args.m, "N": args.N, "weights": w.label,
                   "rows": [[pj(x) for x in r] for r in tri.rows]}
        table = [[n] + list(r) + [MPoly.const(0)] * (args.N - n) for n, r in enumerate(tri.rows)]
        emit(args, payload, table, ["n"] + [f"k{k}" for k in range(args.N + 1)])
        return 0
    if args.partial is not None:
        if args.family == "J":
            raise UsageError("partial sequences exist for S and T only")
        seq = compute_partial(args.family, args.m, w, args.partial, args.N)
        start, label = 0, f"partial{args.partial}"
    else:
        seq = compute_sequence(args.family, args.m, w, args.N, args.column)
        start, label = args.column, f"k{args.column}"
    seq = [s.subs(subs) for s in seq] if subs else seq
    payload = {"family": args.family, "m": args.m, "N": args.N, "weights": w.label,
               "column": label, "start": start, "values": [pj(s) for s in seq]}
    emit(args, payload, [[start + i, s] for i, s in enumerate(seq)], ["n", label])
    return 0


def cmd_oracle_check(args) -> int:
    w = _weights(args, args.family)
    paths = {"S": DYCK, "T": SCHROEDER, "J": LUKASIEWICZ}[args.family]
    tri = compute_triangle(args.family, args.m, w, args.N)
    mismatches = []
    for n in range(args.N + 1):
        for k in range(n + 1):
            o = oracle_gen_poly(paths, args.m, n, k, w)
            if tri[n, k] != o:
                mismatches.append({"n": n, "k": k, "dp": pj(tri[n, k]), "oracle": pj(o), "via": "paths"})
            if args.family == "J" and args.forests:
                f = forest_oracle(args.m, n, k, w)
                if tri[n, k] != f:
                    mismatches.append({"n": n, "k": k, "dp": pj(tri[n, k]), "oracle": pj(f),
                                       "via": "forests"})
    payload = {"family": args.family, "m": args.m, "N": args.N, "agree": not mismatches,
               "mismatches": mismatches}
    emit(args, payload)
    return 0 if not mismatches else 1


def cmd_contract(args) -> int:
    N, m = args.N, args.m
    if args.kind == "thron":
        w = _weights(args, "T")
        J = contract_thron(m, w)
        target = compute_triangle("T", m, restrict_delta(w), N)
    else:
        w = _weights(args, "S")
        J = contract(args.kind, m, w)
        target = compute_triangle("S", m, w, N)
    beta = {str(l): [pj(J.beta(l, i)) for i in range(l, l + args.beta_count)]
            for l in range(0, m + 1)}
    if args.kind == "odd":
        Jseq = compute_sequence("J", m, J, N - 1)
        got = [MPoly.const(1)] + [w.alpha(m) * v for v in Jseq]
        ok = got == target.column(0)
        result = {"S_sequence": [pj(v) for v in target.column(0)]}
    else:
        Jtri = compute_triangle("J", m, J, N)
        ok = Jtri.rows == target.rows
        result = {"triangle": [[pj(x) for x in r] for r in Jtri.rows]}
    payload = {"kind": args.kind, "m": m, "N": N, "beta": beta, "verified": ok, **result}
    emit(args, payload)
    return 0 if ok else 1


def cmd_prodmat(args) -> int:
    m = args.m
    if args.kind in ("SEven", "SOdd", "PeriodicAZ"):
        w = _weights(args, "S")
    elif args.kind == "RT":
        w = _weights(args, "T")
    else:
        w = _weights(args, "J")
    if args.kind == "PeriodicAZ":
        # the periodic matrix is built from one period x_0..x_m of the weights
        w = [w.alpha(m + j) for j in range(m + 1)]
    P = build_production(ProductionSpec(args.kind, m, w, args.size))
    payload = {"kind": args.kind, "m": m, "size": args.size, "matrix": P.to_json(),
               "text": [[str(x) for x in r] for r in P.entries]}
    ok = True
    if args.output is not None:
        out = output_matrix(P, args.output)
        payload["output"] = [[pj(x) for x in r] for r in out.rows]
        if args.kind == "SEven":
            ok = out.rows == compute_triangle("S", m, w, args.output).rows
        elif args.kind == "RT":
            ok = out.rows == compute_triangle("T", m, restrict_delta(w), args.output).rows
        elif args.kind == "J":
            ok = out.rows == compute_triangle("J", m, w, args.output).rows
        elif args.kind == "PeriodicAZ":
            per = fam.periodic(m, m + 1, w)
            ok = out.rows == compute_triangle("S", m, per, args.output).rows
        payload["matches_dp"] = ok
    emit(args, payload)
    return 0 if ok else 1


def _named_sequence(args, count: int) -> list[MPoly]:
    name = args.seq
    if name == "genocchi":
        m = args.m or 1
        return [MPoly.const(1)] + [MPoly.const(fam.genocchi(m, n)) for n in range(1, count)]
    if name == "gandhi":
        m = args.m or 1
        return [MPoly.const(1)] + [MPoly.var("y") ** m * fam.gandhi(m, n) for n in range(1, count)]
    if name == "reversed-eulerian":
        r = args.r or 2
        return compute_sequence("S", r, fam.reversed_eulerian_weights(r), count - 1)
    classic = {"catalan": fam.catalan, "factorial": math.factorial}
    if name in classic:
        return [MPoly.const(classic[name](n)) for n in range(count)]
    raise UnknownId(f"sequence {name!r}")


def cmd_tp_check(args) -> int:
    size, order = args.size, args.order or args.size
    if args.triangle:
        if not args.weights and args.family is None:
            raise UsageError("--triangle needs --family (and optionally --weights)")
        family = args.family or "S"
        w = _weights(args, family)
        M = compute_triangle(family, args.m, w, size - 1).to_matrix()
        what = f"{family} triangle"
    else:
        count = 2 * (size - 1) + args.shift + 1
        if args.seq:
            seq = _named_sequence(args, count)
            what = f"Hankel of {args.seq}"
        else:
            family = args.family or "S"
            w = _weights(args, family)
            if args.partial is not None:
                seq = compute_partial(family, args.m, w, args.partial, count - 1)
            else:
                seq = compute_sequence(family, args.m, w, count - 1)
            what = f"Hankel of {family}_n"
        M = hankel_matrix(seq, size, args.shift)
    subs = _subs_arg(args.subs)
    if subs:
        M = M.subs(subs)
    numeric = all(x.is_constant() for r in M.entries for x in r)
    if not args.no_cap:
        if numeric and size > NUMERIC_CAP:
            raise UsageError(f"numeric checks are capped at {NUMERIC_CAP}x{NUMERIC_CAP} "
                             "(use --no-cap to lift)")
        if not numeric and (size > SYMBOLIC_CAP[0] or order > SYMBOLIC_CAP[1]):
            raise UsageError(f"symbolic checks are capped at {SYMBOLIC_CAP[0]}x{SYMBOLIC_CAP[0]}"
                             f" / order {SYMBOLIC_CAP[1]} (use --no-cap to lift)")
    if numeric and order >= size:
        rep = check_tp_numeric(M, order)
    else:
        rep = check_tp(M, order, full_scan=args.full_scan,
                       progress=stderr_progress if args.progress else None)
    payload = {"matrix": what, "size": size, "shift": args.shift, **rep.to_json(),
               "method": rep.method}
    if rep.witness is not None:
        payload["witness"]["text"] = str(rep.witness[2])
    emit(args, payload)
    return 0 if rep.ok else 1


def _hyper_params(text: str):
    fields = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        key, eq, val = part.partition("=")
        key = key.strip()
        if not eq or key not in ("a", "b", "q", "kind", "relation", "i", "j"):
            raise UsageError(f"bad parameter field {part.strip()!r}")
        if key in fields:
            raise UsageError(f"parameter {key!r} given twice")
        fields[key] = val.strip()
    split = lambda v: [MPoly.parse(x) for x in v.split(",") if x.strip()]
    a = split(fields.get("a", ""))
    b = []
    for x in split(fields.get("b", "")):
        if not x.is_constant():
            raise UsageError("b parameters must be rational numbers")
        b.append(Fraction(x.constant_value()))
    q = None
    if "q" in fields:
        qv = MPoly.parse(fields["q"])
        if not qv.is_constant():
            raise UsageError("q must be a rational number")
        q = Fraction(qv.constant_value())
    return fields, hyper.HyperParams(a, b, q)


def cmd_hyper_verify(args) -> int:
    fields, p = _hyper_params(args.params)
    N = args.N
    if "relation" in fields:
        rel = fields["relation"]
        i, j = int(fields.get("i", 1)), int(fields.get("j", 1))
        ok = hyper.contiguous_verify(rel, p, i=i, j=j, N=N)
        payload = {"relation": rel, "r": p.r, "s": p.s, "N": N, "verified": ok}
        emit(args, payload)
        return 0 if ok else 1
    kind = fields.get("kind")
    if kind is None:
        raise UsageError("parameters need kind=... or relation=...")
    if kind == "q-first" and p.q is None:
        raise UsageError("the q ratio needs q=...")
    w = hyper.ratio_weights(kind, p.r, p.s, p)
    ok = hyper.ratio_verify(kind, p.r, p.s, p, N)
    weights = [{"i": i, "alpha": pj(w.alpha(i))} for i in range(w.m, w.m + args.count)]
    payload = {"kind": kind, "r": p.r, "s": p.s, "m": w.m, "N": N, "weights": weights,
               "verified": ok}
    table = [[x["i"], w.alpha(x["i"])] for x in weights]
    emit(args, payload, table, ["i", "alpha"])
    return 0 if ok else 1


def cmd_family(args) -> int:
    name = args.name
    x = _list_arg(args.x, "--x")
    c = _list_arg(args.c, "--c")
    ns = range(args.k, args.n + 1) if args.rows else [args.n]
    dp = None
    if name == "fuss-narayana":
        params = x
        if args.y is not None:
            params = {"y": _list_arg(args.y, "--y"), "p": [int(t) for t in args.p.split(",")]}
        vals = [fam.fuss_narayana(args.variant, args.m, n, args.k, params) for n in ns]
        if args.check and args.y is None:
            negative = "minus" in args.variant
            xs = x or fam.xvars(args.m if negative else args.m + 1)
            p = len(xs)
            w = fam.periodic(args.m, p, xs)
            if args.variant.startswith("P"):
                seq = compute_sequence("S", args.m, w, max(ns))
                dp = [seq[n] for n in ns]
            else:
                # Q_{n,k} is the partial sequence ending at height (k+1)p - 1, shifted by k
                k = args.k
                seq = compute_partial("S", args.m, w, (k + 1) * p - 1, max(ns) - k)
                dp = [seq[n - k] for n in ns]
    elif name == "eulerian":
        vals = [fam.eulerian_mv(args.variant, args.m, n, args.k, x, c, route=args.route) for n in ns]
        if args.check and args.variant in ("P", "Pminus") and args.k == 0 and c is None:
            neg = args.variant == "Pminus"
            xs = x or fam.xvars(args.m if neg else args.m + 1)
            seq = compute_sequence("S", args.m, fam.eulerian_weights(args.m, xs, neg), max(ns))
            dp = [seq[n] for n in ns]
    elif name == "aval":
        vals = [fam.aval(args.m, n, x) for n in ns]
        if args.check:
            seq = compute_sequence("S", args.m, fam.aval_weights(args.m, x), max(ns))
            dp = [seq[n] for n in ns]
    elif name == "rth-eulerian":
        vals = [fam.rth_order_eulerian(args.r, n, args.reversed) for n in ns]
        if args.check and args.reversed:
            seq = compute_sequence("S", args.r, fam.reversed_eulerian_weights(args.r), max(ns))
            dp = [seq[n] for n in ns]
    elif name == "gen-narayana":
        vals = [MPoly.const(fam.gen_narayana(args.p_int, args.p2, n, args.j, args.star)) for n in ns]
    elif name == "gandhi":
        vals = [fam.gandhi(args.m, n) for n in ns if n >= 1]
        ns = [n for n in ns if n >= 1]
    elif name == "classic":
        if args.id is None:
            raise UsageError("--name classic needs --id")
        params = dict(parse_pairs("p:" + args.params)[1]) if args.params else {}
        params = {k: (v.constant_value() if isinstance(v, MPoly) and v.is_constant() else v)
                  for k, v in params.items()}
        vals = [MPoly.const(v) if not isinstance(v, MPoly) else v
                for v in (fam.classic_numbers(args.id, n, params) for n in ns)]
    else:
        raise UnknownId(f"family {name!r}")
    payload = {"name": name, "values": [{"n": n, "value": pj(v)} for n, v in zip(ns, vals)]}
    ok = True
    if dp is not None:
        ok = dp == vals
        payload["matches_dp"] = ok
    elif args.check:
        raise UsageError(f"no DP comparison is defined for {name} with these options")
    emit(args, payload, [[n, v] for n, v in zip(ns, vals)], ["n", "value"])
    return 0 if ok else 1


def cmd_genocchi_check(args) -> int:
    out = []
    for m in range(1, args.m_max + 1):
        r = fam.gandhi_conjecture_check(m, args.n_max)
        out.append({"m": m, "n_max": args.n_max, "status": f"CONJECTURE-{r['status']}",
                    "first_failure": r["first_failure"]})
    refuted = any(o["first_failure"] is not None for o in out)
    for o in out:
        stderr_progress(f"m={o['m']}: {o['status']}")
    payload = {"checks": out, "genocchi": {str(m): [str(fam.genocchi(m, n))
                                                    for n in range(1, args.n_max + 1)]
                                           for m in range(1, args.m_max + 1)}}
    emit(args, payload)
    return 1 if refuted else 0


def cmd_row_generating(args) -> int:
    m, N = args.m, args.N
    x = _list_arg(args.x, "--x") or fam.xvars(m + 1)
    xi = MPoly.var(args.xi)
    tri = compute_triangle("S", m, fam.periodic(m, m + 1, x), N)
    col = list(row_generating_matrix(tri, xi).column(0))
    dp = compute_sequence("S", m, fam.periodic_rowgen(m, x, xi), N)
    ok = col == dp
    payload = {"m": m, "N": N, "row_generating": [pj(v) for v in col], "matches_dp": ok}
    emit(args, payload)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _common(p, weights=True):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--suite", nargs="?", const="all", default=None,
                   help="run this verb's acceptance suites (optionally one criterion number)")
    if weights:
        p.add_argument("--weights", help="weight spec, e.g. 'periodic:p=3,x=[x0,x1,x2]'")
    p.add_argument("--m", type=int, help="branching order")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="bcflab", description="Branched continued fraction laboratory.")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="DP values of S/T/J families")
    _common(p)
    p.add_argument("--family", choices=("S", "T", "J"), default="S")
    p.add_argument("--N", type=int, default=6)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--column", type=int, default=0)
    g.add_argument("--triangle", action="store_true")
    g.add_argument("--partial", type=int)
    p.add_argument("--subs", help="substitutions, e.g. 'x=1/3,y=2'")

    p = sub.add_parser("oracle-check", help="DP against brute-force path enumeration")
    _common(p)
    p.add_argument("--family", choices=("S", "T", "J"), default="S")
    p.add_argument("--N", type=int, default=4)
    p.add_argument("--forests", action="store_true", help="also compare J with the forest count")

    p = sub.add_parser("contract", help="even/odd/Thron contraction to J weights")
    _common(p)
    p.add_argument("--kind", choices=("even", "odd", "thron"), default="even")
    p.add_argument("--N", type=int, default=4)
    p.add_argument("--beta-count", type=int, default=4)

    p = sub.add_parser("prodmat", help="production matrices and their output triangles")
    _common(p)
    p.add_argument("--kind", choices=PROD_KINDS, default="SEven")
    p.add_argument("--size", type=int, default=5)
    p.add_argument("--output", type=int, help="also iterate to this many output rows")

    p = sub.add_parser("tp-check", help="coefficientwise total positivity of a matrix")
    _common(p)
    p.add_argument("--seq", help="named sequence: genocchi, gandhi, reversed-eulerian, catalan, factorial")
    p.add_argument("--family", choices=("S", "T", "J"))
    p.add_argument("--r", type=int)
    p.add_argument("--triangle", action="store_true")
    p.add_argument("--partial", type=int)
    p.add_argument("--size", type=int, default=4)
    p.add_argument("--shift", type=int, default=0)
    p.add_argument("--order", type=int)
    p.add_argument("--subs")
    p.add_argument("--full-scan", action="store_true")
    p.add_argument("--no-cap", action="store_true")
    p.add_argument("--progress", action="store_true", help="report minors checked on stderr")

    p = sub.add_parser("hyper-verify", help="hypergeometric ratios and contiguous relations")
    _common(p, weights=False)
    p.add_argument("--params", default="a=1;b=2;kind=first",
                   help="e.g. 'a=1/2,1/3;b=5/2;kind=first' or 'a=1,2;b=3;relation=A-shift;i=1'")
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--count", type=int, default=6, help="number of weights to print")

    p = sub.add_parser("family", help="closed-form polynomial families")
    _common(p, weights=False)
    p.add_argument("--name", default="fuss-narayana",
                   choices=("fuss-narayana", "eulerian", "aval", "rth-eulerian", "gen-narayana",
                            "gandhi", "classic"))
    p.add_argument("--variant", default="P")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--rows", action="store_true", help="all n from 0 to --n")
    p.add_argument("--x")
    p.add_argument("--c")
    p.add_argument("--y", help="grouped variables for multiplicity variants")
    p.add_argument("--p", help="multiplicities for --y, e.g. '2,1'")
    p.add_argument("--p-int", type=int, default=1, help="p for gen-narayana")
    p.add_argument("--p2", type=int, default=2)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--star", action="store_true")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--reversed", action="store_true")
    p.add_argument("--route", choices=("auto", "differential", "beta"), default="auto")
    p.add_argument("--id")
    p.add_argument("--params", help="classic-number parameters, e.g. 'p=3'")
    p.add_argument("--check", action="store_true", help="compare with the DP")

    p = sub.add_parser("genocchi-check", help="Gandhi polynomial conjecture desk check")
    _common(p, weights=False)
    p.add_argument("--m-max", type=int, default=3)
    p.add_argument("--n-max", type=int, default=6)

    p = sub.add_parser("row-generating", help="row-generating polynomials of periodic weights")
    _common(p, weights=False)
    p.add_argument("--N", type=int, default=5)
    p.add_argument("--x")
    p.add_argument("--xi", default="xi")
    return ap


_COMMANDS = {
    "compute": cmd_compute, "oracle-check": cmd_oracle_check, "contract": cmd_contract,
    "prodmat": cmd_prodmat, "tp-check": cmd_tp_check, "hyper-verify": cmd_hyper_verify,
    "family": cmd_family, "genocchi-check": cmd_genocchi_check,
    "row-generating": cmd_row_generating,
}

_INPUT_ERRORS = (UsageError, WeightSpecError, MissingWeight, ArityMismatch, UnknownId,
                 BadGoodSet, InsufficientMatrixSize, TruncationUnsafe, NotAZShape,
                 IndexOutOfRange, PoleWithinTruncation, DenominatorVanished, ValueError)


_NEEDS_M = ("compute", "oracle-check", "contract", "prodmat")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.suite is not None:
            return run_suites(args)
        if getattr(args, "weights", None) and args.m is None:
            args.m = parse_weight_spec(args.weights).m
        if args.m is None:
            if args.verb in ("family", "row-generating"):
                args.m = 1
            elif args.verb in _NEEDS_M or (args.verb == "tp-check" and not args.seq):
                raise UsageError("--m is required (or give m=... inside --weights)")
        return _COMMANDS[args.verb](args)
    except _INPUT_ERRORS as e:
        print(f"bcflab {args.verb}: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
