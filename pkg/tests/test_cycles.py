import random

import pytest
from hypothesis import given, settings, strategies as st

from hodgeloci.cycles import (KERNEL_FORCED_ALL_X, NO_KERNEL_FORCED, X_DEPENDENT, CIHodgeDatum,
                              ambient_ring, classify_regime, excess_criterion_ci,
                              fermat_intersection, fermat_plane_ideals, hilbert_rows,
                              hodge_ideal_of_ci, is_smooth, plane_pair_ideals, random_form,
                              random_plane_pair, reduce_ring, smoothness_codim_report,
                              verify_plane_ideals)
from hodgeloci.groebner import Ideal, ideal_intersection
from hodgeloci.polyring import ring
from hodgeloci.quotient import GradedQuotient


def test_classify_rows():
    assert classify_regime(3, 3, 5).case == X_DEPENDENT
    assert classify_regime(3, 3, 5).h_sum_at_top == 1
    assert classify_regime(4, 2, 3).case == X_DEPENDENT
    assert classify_regime(5, 2, 2).case == NO_KERNEL_FORCED
    assert classify_regime(3, 2, 3).case == KERNEL_FORCED_ALL_X
    with pytest.raises(ValueError):
        classify_regime(3, 2, 1)


@pytest.mark.parametrize("d, c, k", [(3, 2, 3), (3, 3, 5), (4, 2, 3), (4, 3, 3), (3, 2, 4), (5, 2, 2)])
def test_h_sum_at_top_matches_fermat_sum_ideal(d, c, k):
    _, _, Isum = fermat_plane_ideals(d, c, k)
    top = k * d - 2 * k - 2
    assert classify_regime(d, c, k).h_sum_at_top == GradedQuotient(Isum).hilbert_function(top)


@pytest.mark.parametrize("d, c, k", [(3, 2, 3), (4, 2, 2), (3, 3, 3)])
def test_fermat_monomial_intersection_matches_elimination(d, c, k):
    I1, I2, _ = fermat_plane_ideals(d, c, k)
    assert fermat_intersection(d, c, k).equals(ideal_intersection(I1, I2))


@pytest.mark.parametrize("d_degrees, e_degrees, d", [([1, 1], [1, 1], 4), ([1, 1], [1, 1], 5),
                                                     ([1, 1, 1], [1, 1], 3), ([2, 1, 1], [1], 4),
                                                     ([1, 2, 1], [2, 1], 5), ([1, 1, 1], [1, 1, 1], 4)])
def test_excess_criterion_matches_monomial_socle(d_degrees, e_degrees, d):
    k, c = len(d_degrees) - 1, len(e_degrees)
    degs = list(e_degrees) + list(d_degrees[:c]) + list(d_degrees[c:]) + [d - x for x in d_degrees[c:]]
    r = ambient_ring(k)
    mono_ci = Ideal(r, [v ** e for v, e in zip(r.gens(), degs)])
    socle = GradedQuotient(mono_ci).socle_degree()
    lhs = sum(e + x for e, x in zip(e_degrees, d_degrees))
    assert excess_criterion_ci(d_degrees, e_degrees, d) == (lhs < (c - 1) * d)
    assert excess_criterion_ci(d_degrees, e_degrees, d) == (socle < k * d - 2 * k - 2)


def test_ci_hodge_ideal_socle():
    r = ambient_ring(1)
    x = r.gens()
    g = [x[0], x[1]]
    h = [x[2] ** 3 + x[3] ** 3, x[2] ** 3 - x[3] ** 3 + x[0] * x[2] ** 2]
    datum = CIHodgeDatum(1, 4, g, h)
    assert datum.g_is_regular_sequence()
    I = hodge_ideal_of_ci(datum)
    assert GradedQuotient(I).socle_degree() == 4


@pytest.mark.parametrize("k, c, d", [(2, 1, 3), (2, 2, 3), (2, 3, 3)])
def test_random_plane_pair_ideals(k, c, d):
    seed = k + c + d
    datum = random_plane_pair(k, c, d, seed=seed)
    while not is_smooth(datum.f).smooth:
        seed += 100
        datum = random_plane_pair(k, c, d, seed=seed)
    assert datum.vanishes_on_planes()
    ids = plane_pair_ideals(datum)
    verify_plane_ideals(datum, ids)
    for h1, h2, hs, hi in hilbert_rows(ids, (d - 2) * (k + 1)):
        assert hi == h1 + h2 - hs


@pytest.mark.parametrize("k, d, c", [(2, 3, 2), (2, 4, 1), (3, 3, 4)])
def test_codimension_formulas_against_groebner(k, d, c):
    rep = smoothness_codim_report(k, d, c)
    assert rep["balance"] and rep["agree"]


def test_reduce_ring_drops_shared_linear_generators():
    r = ring("a b c d")
    I = Ideal.parse(r, ["a", "b^2", "c^2", "d^2"])
    J = Ideal.parse(r, ["a", "b*c", "c^3", "d^2", "b^3"])
    sub, (I2, J2) = reduce_ring([I, J])
    assert sub.names == ("b", "c", "d")
    for big, small in ((I, I2), (J, J2)):
        qb, qs = GradedQuotient(big), GradedQuotient(small)
        assert qb.hilbert_table(6) == qs.hilbert_table(6)
    with pytest.raises(ValueError):
        reduce_ring([I, J], drop=["b"])


def test_smoothness_known_cases():
    r = ring("x y z w")
    assert is_smooth(r.parse("x^3 + y^3 + z^3 + w^3")).smooth
    # cone point at [0:0:0:1]
    assert not is_smooth(r.parse("x^3 + y^3 + z^3")).smooth
    # node at [0:0:0:1]: w*(x*y + z^2) + x^3 + y^3
    assert not is_smooth(r.parse("w*(x*y+z^2) + x^3 + y^3")).smooth
    assert not is_smooth(r.parse("x*y*z + w^3")).smooth


@settings(max_examples=15)
@given(st.integers(0, 10_000))
def test_case_split_agrees_with_direct_test(seed):
    rng = random.Random(seed)
    r = ring("x y z w")
    f = random_form(r, 3, rng, density=rng.choice((0.2, 0.4, 1.0)), coeff=2)
    if f.is_zero():
        return
    assert is_smooth(f, split=True).smooth == is_smooth(f, split=False).smooth
