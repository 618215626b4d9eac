import pytest
import sympy
from hypothesis import given, strategies as st

from hodgeloci.polyring import (DEGREVLEX, LEX, ParseError, Polynomial, RingCtx, block_order,
                                euler_identity_holds, jacobian_ideal_gens, ring)

R = ring("x y z")
X, Y, Z = sympy.symbols("x y z")

terms = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
                        st.fractions(min_value=-4, max_value=4, max_denominator=5).filter(bool),
                        max_size=5)


def to_sym(p: Polynomial):
    return sympy.expand(sum(sympy.Rational(int(c.numerator), int(c.denominator))
                            * X ** a * Y ** b * Z ** e for (a, b, e), c in p.terms.items()))


@given(terms, terms)
def test_arithmetic_matches_sympy(ta, tb):
    a, b = Polynomial(R, ta), Polynomial(R, tb)
    pa, pb = to_sym(a), to_sym(b)
    assert to_sym(a + b) == sympy.expand(pa + pb)
    assert to_sym(a - b) == sympy.expand(pa - pb)
    assert to_sym(a * b) == sympy.expand(pa * pb)
    assert to_sym(a ** 2) == sympy.expand(pa ** 2)


@given(terms)
def test_print_parse_round_trip(t):
    p = Polynomial(R, t)
    assert R.parse(str(p)) == p


@given(terms)
def test_derivative_matches_sympy(t):
    p = Polynomial(R, t)
    assert to_sym(p.derivative("y")) == sympy.expand(sympy.diff(to_sym(p), Y))


def test_parse_rationals_and_powers():
    p = R.parse("3/2*x^2 - (y+z)^2")
    assert p.coefficient((2, 0, 0)) == sympy.Rational(3, 2)
    assert p.coefficient((0, 1, 1)) == -2


@pytest.mark.parametrize("text, pos", [("x + * y", 4), ("2x", 1), ("x^y", 2), ("w", 0), ("1/0", 2),
                                       ("(x+y", 4), ("", 0)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        R.parse(text)
    assert info.value.position == pos


def test_monomial_orders():
    m = [(2, 0, 0), (1, 1, 0), (0, 0, 2), (1, 0, 1), (0, 2, 0)]
    grevlex = sorted(m, key=R.sort_key, reverse=True)
    assert grevlex == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 0, 2)]
    rl = R.with_order(LEX)
    assert sorted(m, key=rl.sort_key, reverse=True)[0] == (2, 0, 0)
    rb = R.with_order(block_order(1))
    assert sorted([(0, 3, 0), (1, 0, 0)], key=lambda e: rb.sort_key(e), reverse=True)[0] == (1, 0, 0)


def test_weighted_monomials_of_degree():
    w = RingCtx(("a", "b"), (1, 2))
    assert set(w.monomials_of_degree(4)) == {(4, 0), (2, 1), (0, 2)}
    assert len(R.monomials_of_degree(3)) == 10


def test_substitute_and_evaluate():
    p = R.parse("x^2*y - z")
    q = p.substitute({"x": R.parse("y+z")})
    assert q == R.parse("(y+z)^2*y - z")
    assert p.evaluate({"x": 2, "y": "1/2", "z": 1}) == 1
    assert p.set_to_zero(["z"]) == R.parse("x^2*y")


def test_euler_identity_and_jacobian():
    f = R.parse("x^3 + y^3 + z^3 + x*y*z")
    assert euler_identity_holds(f)
    gens = jacobian_ideal_gens(f)
    assert gens[0] == R.parse("3*x^2 + y*z")


def test_ring_validation():
    with pytest.raises(ValueError):
        ring("x x")
    with pytest.raises(ValueError):
        RingCtx(("x", "y"), (1, 0))
    assert R.order == DEGREVLEX
