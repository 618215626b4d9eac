import random

import pytest
import sympy
from hypothesis import given, strategies as st

from hodgeloci.cycles import random_form
from hodgeloci.groebner import (Ideal, InhomogeneousError, compute_basis, ideal_intersection,
                                ideal_sum, is_zero_dimensional, membership_by_linear_algebra)
from hodgeloci.polyring import LEX, ring

R = ring("x y z")
SYMS = sympy.symbols("x y z")


def sym(p):
    return sympy.sympify(str(p).replace("^", "**"), locals=dict(zip(R.names, SYMS)))


def random_ideal(seed, ngens=3, degs=(2, 3), density=0.6):
    rng = random.Random(seed)
    gens = [random_form(R, rng.choice(degs), rng, density=density, coeff=3) for _ in range(ngens)]
    return Ideal(R, [g for g in gens if not g.is_zero()] or [R.parse("x^2")])


def normalized(exprs, order):
    out = set()
    for e in exprs:
        p = sympy.Poly(e, *SYMS)
        out.add(sympy.expand(p.as_expr() / p.LC(order=order)))
    return out


@given(st.integers(0, 10_000))
def test_reduced_basis_matches_sympy(seed):
    I = random_ideal(seed)
    gb = I.groebner()
    assert gb.check_buchberger_criterion()
    assert gb.is_reduced()
    ref = sympy.groebner([sym(g) for g in I.generators], *SYMS, order="grevlex")
    assert normalized([sym(p) for p in gb], "grevlex") == normalized(ref.exprs, "grevlex")


@given(st.integers(0, 10_000))
def test_lex_basis_matches_sympy(seed):
    I = random_ideal(seed, ngens=2, degs=(2,))
    gb = compute_basis(R, I.generators, LEX)
    ref = sympy.groebner([sym(g) for g in I.generators], *SYMS, order="lex")
    assert normalized([sym(p) for p in gb], "lex") == normalized(ref.exprs, "lex")


@given(st.integers(0, 10_000), st.data())
def test_membership_agrees_with_linear_algebra_oracle(seed, data):
    I = random_ideal(seed)
    rng = random.Random(seed + 1)
    deg = data.draw(st.integers(2, 4))
    if data.draw(st.booleans()):
        # an element of I of degree deg, when one exists
        g = rng.choice(I.generators)
        if g.total_degree() <= deg:
            p = g * random_form(R, deg - g.total_degree(), rng, coeff=2)
        else:
            p = random_form(R, deg, rng, coeff=2)
    else:
        p = random_form(R, deg, rng, coeff=2)
    assert I.contains(p) == membership_by_linear_algebra(p, I.generators)


def test_truncated_basis_is_exact_up_to_its_degree():
    I = random_ideal(7, ngens=3, degs=(2,))
    full = I.groebner()
    trunc = compute_basis(R, I.generators, max_degree=3)
    for d in range(4):
        for m in R.monomials_of_degree(d):
            p = R.monomial(m)
            assert full.normal_form(p) == trunc.normal_form(p)


def test_intersection_of_monomial_ideals():
    I = Ideal.parse(R, ["x^2", "y"])
    J = Ideal.parse(R, ["x", "y^2"])
    K = ideal_intersection(I, J)
    assert K.equals(Ideal.parse(R, ["x^2", "x*y", "y^2"]))


@given(st.integers(0, 10_000))
def test_intersection_is_contained_and_contains_products(seed):
    I, J = random_ideal(seed, ngens=2), random_ideal(seed + 7, ngens=2)
    K = ideal_intersection(I, J)
    assert I.contains_ideal(K) and J.contains_ideal(K)
    for a in I.generators:
        for b in J.generators:
            assert K.contains(a * b)


def test_sum_and_zero_dimensionality():
    I = Ideal.parse(R, ["x^2", "y^2"])
    assert not is_zero_dimensional(I)
    assert is_zero_dimensional(ideal_sum(I, Ideal.parse(R, ["z^3"])))


def test_inhomogeneous_generators_rejected():
    with pytest.raises(InhomogeneousError):
        Ideal.parse(R, ["x^2 + y"])
