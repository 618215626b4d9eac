from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from hodgeloci.exactnum import (DimensionError, RatMatrix, UniPoly, determinant, independent_subset,
                                interpolate, left_kernel_basis, rank, rational_str, rref,
                                right_kernel_basis, solve_in_span, to_rational, univariate_det)

small = st.integers(-6, 6)
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def matrices(rows=st.integers(1, 5), cols=None, entries=fractions):
    def build(shape):
        r, c = shape
        return st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)
    cols = rows if cols is None else cols
    return st.tuples(rows, cols).flatmap(build)


def sym(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])


def test_to_rational_accepts_exact_inputs():
    assert to_rational("3/7") == Fraction(3, 7)
    assert to_rational(Fraction(-2, 4)) == Fraction(-1, 2)
    assert to_rational(5) == 5
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_rational_str_forms():
    assert rational_str(to_rational("6/4")) == "3/2"
    assert rational_str(-4) == "-4"
    assert rational_str(to_rational("-1/3")) == "-1/3"


@given(matrices(cols=st.integers(1, 5)))
def test_rank_matches_sympy(rows):
    assert rank(RatMatrix.from_rows(rows)) == sym(rows).rank()


@given(matrices())
def test_determinant_matches_sympy(rows):
    n = len(rows)
    rows = [r[:n] + [Fraction(0)] * (n - len(r)) for r in rows]
    got = determinant(RatMatrix.from_rows(rows))
    want = sym(rows).det()
    assert Fraction(int(got.numerator), int(got.denominator)) == Fraction(int(want.p), int(want.q))


@given(matrices(cols=st.integers(1, 6), entries=small))
def test_kernels_are_kernels(rows):
    m = RatMatrix.from_rows(rows)
    right = right_kernel_basis(m)
    left = left_kernel_basis(m)
    assert len(right) == m.cols - rank(m)
    assert len(left) == m.rows - rank(m)
    for v in right:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in m.to_rows())
    for v in left:
        assert all(sum(v[i] * m[i, j] for i in range(m.rows)) == 0 for j in range(m.cols))


def test_rref_pivots():
    m = RatMatrix.from_rows([[2, 4, 1], [1, 2, 0], [0, 0, 3]])
    red, piv = rref(m)
    assert piv == [0, 2]
    assert red[0] == [1, 2, 0]


def test_solve_in_span_and_independent_subset():
    vecs = [[1, 0, 1], [0, 1, 1], [1, 1, 2]]
    assert solve_in_span(vecs, [2, 3, 5]) is not None
    assert solve_in_span(vecs, [0, 0, 1]) is None
    assert independent_subset(vecs) == [0, 1]


def test_matrix_shape_errors():
    with pytest.raises(DimensionError):
        RatMatrix.from_rows([[1, 2]]) @ RatMatrix.from_rows([[1, 2]])


@given(st.lists(fractions, min_size=1, max_size=6))
def test_interpolation_recovers_polynomial(coeffs):
    p = UniPoly(coeffs)
    nodes = list(range(len(coeffs)))
    assert interpolate(nodes, [p(x) for x in nodes]) == p


@given(matrices(rows=st.integers(1, 4), entries=small), st.data())
def test_pencil_determinant_interpolated_equals_symbolic(rows, data):
    n = len(rows)
    a1 = RatMatrix.from_rows([r[:n] + [0] * (n - len(r)) for r in rows])
    a2 = RatMatrix.from_rows(data.draw(st.lists(st.lists(small, min_size=n, max_size=n),
                                                min_size=n, max_size=n)))
    p = univariate_det(a1, a2, crosscheck=False)
    assert p == univariate_det(a1, a2, strategy="symbolic")
    t = sympy.Symbol("t")
    want = sympy.Poly((sym(a1.to_rows()) + t * sym(a2.to_rows())).det(), t)
    want_coeffs = [] if want.is_zero else [to_rational(str(c)) for c in reversed(want.all_coeffs())]
    assert list(p.coeffs) == want_coeffs


def test_rational_roots_and_factor_degrees():
    t = UniPoly.t()
    p = t * t * (t + 1) * (t * t + 1) * 3
    assert p.rational_roots() == [(-1, 1), (0, 2)]
    assert p.irrational_factor_degrees() == [(2, 1)]


def test_unipoly_division():
    t = UniPoly.t()
    a = (t + 2) * (t - 3) + 1
    q, r = a.divmod(t + 2)
    assert q == t - 3 and r == UniPoly([1])
    assert str(t * t - t) == "t^2-t"
