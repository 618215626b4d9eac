import random

import pytest
from hypothesis import given, strategies as st

from hodgeloci.cycles import fermat_intersection, random_form
from hodgeloci.exactnum import RatMatrix, rank, solve_in_span
from hodgeloci.groebner import Ideal
from hodgeloci.pairing import (GorensteinError, degree_shift_check, fermat_ideals, fermat_kernel_dim,
                               full_rank_certificate, gram_matrix, kernel_bound_check,
                               pencil_analysis, pencil_from_matrices, spectrum_size_check,
                               subquotient_pairing)
from hodgeloci.polyring import ring
from hodgeloci.quotient import GradedQuotient

R = ring("x y z")


def sigma_by_linear_algebra(p, I: Ideal, socle):
    """Coefficient c with p - c*socle in I, found without a Groebner basis."""
    t = p.homogeneous_degree()
    monos = R.monomials_of_degree(t)
    spanning = []
    for g in I.generators:
        dg = g.total_degree()
        if dg <= t:
            spanning += [g.mul_monomial(m) for m in R.monomials_of_degree(t - dg)]
    vecs = [[s.coefficient(m) for m in monos] for s in spanning]
    vecs.append([1 if m == socle else 0 for m in monos])
    coeffs = solve_in_span(vecs, [p.coefficient(m) for m in monos])
    assert coeffs is not None
    return coeffs[-1]


@given(st.integers(0, 5000))
def test_gram_entries_match_linear_algebra_oracle(seed):
    rng = random.Random(seed)
    I = Ideal(R, [random_form(R, 2, rng, coeff=4) for _ in range(3)])
    q = GradedQuotient(I)
    if not q.is_artinian() or q.socle_degree() != 3:
        return
    left = [R.monomial(m) for m in q.kbase(1)]
    right = [R.monomial(m) for m in q.kbase(2)]
    gp = gram_matrix(q, left, right)
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            assert gp.gram[i, j] == sigma_by_linear_algebra(a * b, I, q.socle_monomial())
    # Gorenstein duality: the pairing S_1 x S_2 -> socle is perfect
    assert rank(gp.gram) == len(left) == len(right)


def test_pairing_requires_one_dimensional_socle():
    q = GradedQuotient(Ideal.parse(R, ["x^2", "y^2", "z^2", "x*y*z"]))
    with pytest.raises(GorensteinError):
        gram_matrix(q, [R.parse("x")], [R.parse("y")])


@pytest.mark.parametrize("d, c, k, expected", [(3, 3, 3, 1), (3, 3, 4, 1), (3, 2, 3, 2), (3, 2, 4, 3),
                                                (4, 2, 3, 1)])
def test_fermat_kernel_closed_form_cases(d, c, k, expected):
    assert fermat_kernel_dim(d, c, k) == expected


@pytest.mark.parametrize("d, c, k", [(4, 3, 3), (5, 2, 2), (5, 3, 2), (3, 3, 5)])
def test_fermat_kernel_bounded_by_sum_ideal(d, c, k):
    _, _, Isum = fermat_ideals(d, c, k)
    top = k * d - 2 * k - 2
    bound = GradedQuotient(Isum).hilbert_function(top)
    dim = fermat_kernel_dim(d, c, k)
    assert dim <= bound
    if bound == 0:
        assert dim == 0


def test_pencil_with_known_spectrum():
    A1 = RatMatrix.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    A2 = RatMatrix.identity(3)
    rep = pencil_from_matrices(A1, A2)
    assert [r for r, _ in rep.drop_values] == [-3, -2, -1]
    assert rep.generic_rank == 3 and rep.generic_rank_certified
    assert rep.irrational_factors == []


def test_pencil_irrational_factor_and_identically_singular():
    A1 = RatMatrix.from_rows([[0, -2], [1, 0]])
    A2 = RatMatrix.identity(2)
    rep = pencil_from_matrices(A1, A2)  # det = t^2 + 2
    assert rep.drop_values == [] and rep.irrational_factors == [(2, 1)]
    Z = RatMatrix.from_rows([[1, 1], [1, 1]])
    rep = pencil_from_matrices(Z, Z)
    assert rep.generic_rank == 1 and not rep.generic_rank_certified


def random_pair(rng, n, m):
    def mat():
        r = rng.randint(0, min(n, m))
        A = RatMatrix.from_rows([[rng.randint(-3, 3) for _ in range(r)] for _ in range(n)], cols=r) \
            if r else RatMatrix.zeros(n, 0)
        B = RatMatrix.from_rows([[rng.randint(-3, 3) for _ in range(m)] for _ in range(r)], cols=m) \
            if r else RatMatrix.zeros(0, m)
        return A @ B if r else RatMatrix.zeros(n, m)
    return mat(), mat()


@given(st.integers(0, 10_000), st.integers(1, 5), st.integers(1, 5))
def test_kernel_bound_lemma_random(seed, n, m):
    phi1, phi2 = random_pair(random.Random(seed), n, m)
    info = kernel_bound_check(phi1, phi2, seed=seed)
    assert info["ok"] in (True, None)


@given(st.integers(0, 10_000), st.integers(1, 5))
def test_spectrum_size_lemma_random(seed, n):
    A1, A2 = random_pair(random.Random(seed), n, n)
    assert spectrum_size_check(A1, A2)["ok"]


def test_degree_shift_on_fermat():
    I1, I2, _ = fermat_ideals(3, 2, 3)
    t = GradedQuotient(I2).socle_degree()
    for alpha in range(t):
        assert degree_shift_check(I2, I1, alpha)


def test_pencil_analysis_on_fermat_planes():
    I1, I2, Isum = fermat_ideals(4, 2, 2)
    rep = pencil_analysis(I1, I2, 4, isum=Isum)
    checks = dict(rep.checks)
    assert checks["rank psi1 = h_I1(d)"] and checks["rank psi2 = h_I2(d)"]
    # the Fermat pair carries a one-dimensional kernel, so the bound is not in force
    assert not checks["one-sided kernels vanish"]
    assert "nonzero drop values within bound" not in checks
    qi = GradedQuotient(fermat_intersection(4, 2, 2))
    assert (rep.A1.rows, rep.A1.cols) == (qi.hilbert_function(4), qi.hilbert_function(2))


def test_subquotient_pairing_shape_and_certificate():
    I1, I2, Isum = fermat_ideals(3, 3, 5)
    gp = subquotient_pairing(Isum, I2, 3)
    cert = full_rank_certificate(gp)
    assert cert["rows"] == GradedQuotient(I2).hilbert_function(3) - GradedQuotient(Isum).hilbert_function(3)
    assert cert["left_kernel_dim"] == 1
