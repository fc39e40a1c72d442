import math

import pytest

from bcflab.bcf import compute_sequence
from bcflab.errors import ArityMismatch, MissingWeight, UnknownId
from bcflab.exactalg import poly, var
from bcflab.families import gandhi_weights
from bcflab.weightspec import WeightSpecError, parse_pairs, parse_weight_spec


def alphas(spec, m, count=6):
    w = parse_weight_spec(spec, m)
    return [w.alpha(i) for i in range(m, m + count)]


def seq(spec, m, N=6):
    return compute_sequence("S", m, parse_weight_spec(spec, m), N)


def test_factorial_examples():
    assert seq("prealpha:w=2,pre=repeat3(k+1)", 2) == [poly(math.factorial(n) ** 2) for n in range(7)]
    assert seq("prealpha:w=2,pre=cycle(2k+1,2k+2,2k+2)", 2) == [poly(math.factorial(2 * n)) for n in range(7)]
    assert seq("table:m=1,alpha=[1,1,2,2,...]", 1) == [poly(math.factorial(n)) for n in range(7)]


def test_family_layouts():
    x0, x1, u0, u1 = var("x0"), var("x1"), var("u0"), var("u1")
    assert alphas("periodic:x=[x0,x1]", 1, 4) == [x0, x1, x0, x1]
    assert alphas("eventually-periodic:y=[7],x=[x0,x1]", 1, 4) == [poly(7), x0, x1, x0]
    assert alphas("quasi-affine:x=[1,x],u=x", 1, 4) == [poly(1), var("x"), poly(2), 2 * var("x")]
    assert alphas("quasiaffine:x=[x0,x1],u=[u0,u1]", 1, 4) == [x0, x1, x0 + u0, x1 + u1]
    c0, c1 = var("c0"), var("c1")
    assert alphas("factorized:x=[x0,x1],c=[c0,c1,...]", 1, 4) == [c0 * x0, c0 * x1, 2 * c1 * x0, 2 * c1 * x1]
    assert alphas("factorized:x=[x0],c=3", 1, 2) == [3 * x0, 6 * x0]
    a = lambda i: var(f"alpha{i}")
    assert alphas("generic:kind=S", 2, 2) == [a(2), a(3)]


def test_presets():
    w = parse_weight_spec("prealpha:w=2,pre=gandhi", 1)
    ref = gandhi_weights(1)
    assert [w.alpha(i) for i in range(1, 7)] == [ref.alpha(i) for i in range(1, 7)]
    assert seq("prealpha:w=2,pre=rF0(1,1,1)", 2, 4) == [poly(math.factorial(n) ** 2) for n in range(5)]
    assert alphas("prealpha:w=1,pre=[1,2,3,...]", 1, 4) == [poly(v) for v in (1, 2, 3, 4)]


def test_list_continuation():
    # residue classes 1,2,3,... and 5,5,5,... interleaved
    assert alphas("table:alpha=[1,5,2,5,...]", 1, 6) == [poly(v) for v in (1, 5, 2, 5, 3, 5)]
    with pytest.raises(WeightSpecError):
        parse_weight_spec("table:alpha=[1,2,4,...]", 1).alpha(4)


def test_table_bounds():
    w = parse_weight_spec("table:alpha=[]", 1)
    with pytest.raises(MissingWeight):
        w.alpha(1)
    assert seq("table:alpha=[1,1]", 1, 1) == [poly(1), poly(1)]


def test_pairs_resolve_key_references():
    fam, pairs = parse_pairs("quasi-affine:x=[1,x],u=x")
    assert fam == "quasiaffine" and pairs["u"] == pairs["x"]


@pytest.mark.parametrize("text,err", [
    ("periodic", WeightSpecError),
    ("periodic:x", WeightSpecError),
    ("periodic:x=[1,2", WeightSpecError),
    ("periodic:x=[1,...,2]", WeightSpecError),
    ("periodic:x=[1],x=[2]", WeightSpecError),
    ("periodic:x=[1],z=3", WeightSpecError),
    ("periodic:p=2", ArityMismatch),
    ("bogus:x=[1]", UnknownId),
    ("generic:kind=Q", WeightSpecError),
    ("prealpha:w=2,pre=nosuch", UnknownId),
    ("prealpha:w=2,pre=[1,2],y=3", WeightSpecError),
    ("periodic:m=2,x=[1]", WeightSpecError),
    ("periodic:x=[1/0]", WeightSpecError),
])
def test_spec_errors(text, err):
    with pytest.raises(err):
        parse_weight_spec(text, 1)


def test_m_required():
    with pytest.raises(WeightSpecError):
        parse_weight_spec("periodic:x=[1]")
    assert parse_weight_spec("periodic:m=3,x=[1]").m == 3
