import sys

import sympy
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from bcflab.exactalg import MPoly

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

NAMES = ["x0", "x1", "y"]


def to_sympy(p: MPoly):
    acc = sympy.Integer(0)
    for exps, c in p.terms():
        f = Fraction(c)
        term = sympy.Rational(f.numerator, f.denominator)
        for name, e in exps.items():
            term *= sympy.Symbol(name) ** e
        acc += term
    return sympy.expand(acc)


def same(p: MPoly, expr) -> bool:
    return sympy.expand(to_sympy(p) - expr) == 0


small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)

monomials = st.dictionaries(st.sampled_from(NAMES), st.integers(1, 3), max_size=3)

polys = st.lists(st.tuples(monomials, small_fracs), max_size=5).map(
    lambda items: MPoly.from_terms(items))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
