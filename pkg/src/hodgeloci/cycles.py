"""Ideals of complete-intersection cycles and of pairs of k-planes.

Variables of the ambient ring are x0..x_{2k+1}.  A plane pair datum puts f
in the normal form

    f = sum_{i<c} sum_{j<c} x_i x_{c+j} Q[i][j] + sum_s x_{k+c+1+s} P[s],

so that Pi_1 = V(x_0..x_{c-1}, x_{k+c+1}..x_{2k+1}) and
Pi_2 = V(x_c..x_{2c-1}, x_{k+c+1}..x_{2k+1}) lie on V(f).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .exactnum import to_rational
from .groebner import (Ideal, compute_basis, ideal_intersection, ideal_sum,
                       pure_power_variables)
from .polyring import (Polynomial, RingCtx, indexed_ring, jacobian_ideal_gens, ring,
                       sum_polys)
from .quotient import GradedQuotient, binom, ci_hilbert_series, ci_hilbert_value


def ambient_ring(k: int, prefix: str = "x") -> RingCtx:
    return indexed_ring(prefix, 2 * k + 2)


# ---------------------------------------------------------------------------
# complete intersection cycles


@dataclass
class CIHodgeDatum:
    k: int
    d: int
    g: list
    h: list
    f: Polynomial = None

    def __post_init__(self):
        if len(self.g) != self.k + 1 or len(self.h) != self.k + 1:
            raise ValueError("need k+1 forms g and k+1 forms h")
        for gi, hi in zip(self.g, self.h):
            dg, dh = gi.homogeneous_degree(), hi.homogeneous_degree()
            if dg is None or dh is None or dg + dh != self.d:
                raise ValueError("deg g_i + deg h_i must equal d")
        ring_ = self.g[0].ring
        f = sum_polys(ring_, (gi * hi for gi, hi in zip(self.g, self.h)))
        if self.f is None:
            self.f = f
        elif self.f != f:
            raise ValueError("f differs from sum g_i h_i")
        if f.homogeneous_degree() != self.d:
            raise ValueError("f is not homogeneous of degree d")

    @property
    def ring(self) -> RingCtx:
        return self.f.ring

    def g_is_regular_sequence(self) -> bool:
        """Hilbert function of <g> matches the complete intersection series."""
        q = GradedQuotient(Ideal(self.ring, self.g))
        degs = [g.homogeneous_degree() for g in self.g]
        top = sum(d - 1 for d in degs) + 2
        expected = ci_hilbert_series(degs, self.ring.nvars, length=top + 1)
        return q.hilbert_table(top) == expected


def hodge_ideal_of_ci(datum: CIHodgeDatum, check: bool = True) -> Ideal:
    """<g_0..g_k, h_0..h_k>; checks the quotient is Artinian Gorenstein."""
    I = Ideal(datum.ring, list(datum.g) + list(datum.h))
    if check:
        q = GradedQuotient(I)
        t = q.socle_degree()
        if t != (datum.d - 2) * (datum.k + 1):
            raise ArithmeticError(f"socle degree {t}, expected {(datum.d - 2) * (datum.k + 1)}")
        if q.hilbert_function(t) != 1 or not q.gorenstein_symmetric():
            raise ArithmeticError("quotient is not Gorenstein")
    return I


# ---------------------------------------------------------------------------
# pairs of k-planes


@dataclass
class PlanePairDatum:
    k: int
    c: int
    d: int
    Q: list          # c x c grid, Q[i][j] multiplies x_i x_{c+j}
    P: list          # k+1-c forms, P[s] multiplies x_{k+c+1+s}
    ring: RingCtx = None
    f: Polynomial = field(default=None)

    def __post_init__(self):
        k, c, d = self.k, self.c, self.d
        if not 1 <= c <= k + 1:
            raise ValueError("need 1 <= c <= k+1")
        if len(self.Q) != c or any(len(row) != c for row in self.Q):
            raise ValueError("Q must be a c x c grid")
        if len(self.P) != k + 1 - c:
            raise ValueError("need k+1-c forms P")
        if self.ring is None:
            self.ring = ambient_ring(k)
        if self.ring.nvars != 2 * k + 2:
            raise ValueError("ring must have 2k+2 variables")
        for row in self.Q:
            for q in row:
                if not q.is_zero() and q.homogeneous_degree() != d - 2:
                    raise ValueError("Q entries must have degree d-2")
        for p in self.P:
            if not p.is_zero() and p.homogeneous_degree() != d - 1:
                raise ValueError("P entries must have degree d-1")
        x = self.ring.gens()
        terms = [x[i] * x[c + j] * self.Q[i][j] for i in range(c) for j in range(c)]
        terms += [x[k + c + 1 + s] * self.P[s] for s in range(k + 1 - c)]
        f = sum_polys(self.ring, terms)
        if self.f is None:
            self.f = f
        elif self.f != f:
            raise ValueError("f does not match the normal form")

    def plane_equations(self, which: int) -> list[Polynomial]:
        k, c = self.k, self.c
        x = self.ring.gens()
        first = range(c) if which == 1 else range(c, 2 * c)
        return [x[i] for i in first] + [x[i] for i in range(k + c + 1, 2 * k + 2)]

    def plane_ideal(self, which: int) -> Ideal:
        return Ideal(self.ring, self.plane_equations(which))

    def vanishes_on_planes(self) -> bool:
        for which in (1, 2):
            zero = {self.ring.names[self.ring.index(str(v))]: 0
                    for v in self.plane_equations(which)}
            if not self.f.substitute({n: self.ring.zero() for n in zero}).is_zero():
                return False
        return True


@dataclass
class PlaneIdeals:
    I1: Ideal
    I2: Ideal
    Isum: Ideal
    Iint: Ideal


def plane_pair_ideals(datum: PlanePairDatum, check: bool = False) -> PlaneIdeals:
    """The four ideals from their explicit generator lists."""
    k, c = datum.k, datum.c
    r = datum.ring
    x = r.gens()
    Q, P = datum.Q, datum.P
    tail = [x[i] for i in range(k + c + 1, 2 * k + 2)] + list(P)
    rows = [sum_polys(r, (x[c + j] * Q[i][j] for j in range(c))) for i in range(c)]
    cols = [sum_polys(r, (x[i] * Q[i][j] for i in range(c))) for j in range(c)]
    I1 = Ideal(r, [x[i] for i in range(c)] + rows + tail, "I1")
    I2 = Ideal(r, [x[c + j] for j in range(c)] + cols + tail, "I2")
    Isum = Ideal(r, [x[i] for i in range(2 * c)] + tail, "I1+I2")
    Iint = Ideal(r, [x[i] * x[c + j] for i in range(c) for j in range(c)] + rows + cols + tail,
                 "I1capI2")
    out = PlaneIdeals(I1, I2, Isum, Iint)
    if check:
        verify_plane_ideals(datum, out)
    return out


def verify_plane_ideals(datum: PlanePairDatum, ideals: PlaneIdeals) -> dict:
    """Check the explicit ideals against their defining relations; raise on failure."""
    top = (datum.d - 2) * (datum.k + 1)
    ok_sum = ideal_sum(ideals.I1, ideals.I2).equals(ideals.Isum)
    ok_sub = ideals.I1.contains_ideal(ideals.Iint) and ideals.I2.contains_ideal(ideals.Iint)
    tables = hilbert_rows(ideals, top + 1)
    ok_hp = all(a + b - s == i for a, b, s, i in tables)
    res = {"sum": ok_sum, "intersection_contained": ok_sub, "hilbert_identity": ok_hp}
    if not all(res.values()):
        raise ArithmeticError(f"plane ideal consistency failed: {res}")
    return res


def hilbert_rows(ideals: PlaneIdeals, upto: int) -> list[tuple]:
    qs = [GradedQuotient(I) for I in (ideals.I1, ideals.I2, ideals.Isum, ideals.Iint)]
    return [tuple(q.hilbert_function(e) for q in qs) for e in range(upto + 1)]


def random_form(r: RingCtx, deg: int, rng: random.Random, density: float = 1.0,
                coeff: int = 5, variables: Sequence[int] | None = None) -> Polynomial:
    """Random form with small integer coefficients (optionally in some variables)."""
    if deg < 0:
        return r.zero()
    monos = r.monomials_of_degree(deg)
    if variables is not None:
        allowed = set(variables)
        monos = [m for m in monos if all(e == 0 or i in allowed for i, e in enumerate(m))]
    terms = {}
    for m in monos:
        if rng.random() <= density:
            c = rng.randint(-coeff, coeff)
            if c:
                terms[m] = c
    return Polynomial(r, terms)


def random_plane_pair(k: int, c: int, d: int, seed: int = 0, density: float = 1.0) -> PlanePairDatum:
    rng = random.Random(seed)
    r = ambient_ring(k)
    Q = [[random_form(r, d - 2, rng, density) for _ in range(c)] for _ in range(c)]
    P = [random_form(r, d - 1, rng, density) for _ in range(k + 1 - c)]
    return PlanePairDatum(k, c, d, Q, P, r)


# ---------------------------------------------------------------------------
# codimension formulas


def tangent_codim(i_gamma: Ideal, d: int) -> int:
    """codim of I(gamma)_d in S_d, i.e. the Hilbert function of S/I at d."""
    return GradedQuotient(i_gamma).hilbert_function(d)


def single_plane_codim(k: int, d: int) -> int:
    return binom(k + d, k) - (k + 1) ** 2


def plane_sum_codim(k: int, d: int, c: int) -> int:
    return binom(k - c + d, k - c) - (k + 1 - c) ** 2


def pair_tangent_codim(k: int, d: int, c: int) -> int:
    return 2 * binom(k + d, k) - binom(k - c + d, k - c) - (k + 1) ** 2 - 2 * c * (k + 1) + c * c


def plane_pair_family_dim(k: int, c: int) -> int:
    return (k + 1) ** 2 - c * c + 2 * c * (k + 1)


def containment_codim(k: int, d: int, c: int) -> int:
    return 2 * binom(k + d, d) - binom(k - c + d, k - c)


def _check_range(k, d, c):
    if k < 1 or d * k < 2 * k + 2:
        raise ValueError("need k >= 1 and d >= 2 + 2/k")
    if not 1 <= c <= k + 1:
        raise ValueError("need 1 <= c <= k+1")


def smoothness_codim_report(k: int, d: int, c: int, groebner: bool = True, seed: int = 0) -> dict:
    """Closed-form codimensions for a pair of k-planes, optionally re-derived.

    The Groebner path builds a random plane pair datum and reads every
    quantity off Hilbert functions of the explicit ideals (and of the plane
    ideals and their intersection for the containment codimension).
    """
    _check_range(k, d, c)
    closed = {
        "h_I1": single_plane_codim(k, d),
        "h_Isum": plane_sum_codim(k, d, c),
        "tangent_codim": pair_tangent_codim(k, d, c),
        "family_dim": plane_pair_family_dim(k, c),
        "containment_codim": containment_codim(k, d, c),
    }
    balance = closed["tangent_codim"] == closed["containment_codim"] - closed["family_dim"]
    rep = {"k": k, "d": d, "c": c, "closed_form": closed, "balance": balance}
    if groebner:
        datum = random_plane_pair(k, c, d, seed)
        ids = plane_pair_ideals(datum)
        q1, q2, qs, qi = (GradedQuotient(I) for I in (ids.I1, ids.I2, ids.Isum, ids.Iint))
        pl = ideal_intersection(datum.plane_ideal(1), datum.plane_ideal(2), max_degree=d)
        derived = {
            "h_I1": q1.hilbert_function(d),
            "h_I2": q2.hilbert_function(d),
            "h_Isum": qs.hilbert_function(d),
            "tangent_codim": qi.hilbert_function(d),
            "containment_codim": GradedQuotient(pl, max_degree=d).hilbert_function(d),
        }
        rep["groebner"] = derived
        rep["agree"] = (derived["h_I1"] == closed["h_I1"] == derived["h_I2"]
                        and derived["h_Isum"] == closed["h_Isum"]
                        and derived["tangent_codim"] == closed["tangent_codim"]
                        and derived["containment_codim"] == closed["containment_codim"])
    return rep


NO_KERNEL_FORCED = "NO_KERNEL_FORCED"
KERNEL_FORCED_ALL_X = "KERNEL_FORCED_ALL_X"
X_DEPENDENT = "X_DEPENDENT"


@dataclass(frozen=True)
class RegimeClassification:
    d: int
    c: int
    k: int
    case: str
    h_sum_at_top: int


def sum_ideal_degrees(k: int, c: int, d: int) -> list[int]:
    return [1] * (k + c + 1) + [d - 1] * (k + 1 - c)


def classify_regime(d: int, c: int, k: int) -> RegimeClassification:
    """Which kernel behaviour the plane-pair pairing is forced into."""
    if k < 1 or d * k < 2 * k + 2:
        raise ValueError("need d >= 2 + 2/k")
    top = k * d - 2 * k - 2
    hs = ci_hilbert_value(sum_ideal_degrees(k, c, d), 2 * k + 2, top)
    if (c - 1) * (d - 2) > 2:
        case = NO_KERNEL_FORCED
    elif d > top:
        case = KERNEL_FORCED_ALL_X
    else:
        case = X_DEPENDENT
    return RegimeClassification(d, c, k, case, hs)


def excess_criterion_ci(d_degrees: Sequence[int], e_degrees: Sequence[int], d: int) -> bool:
    """sum_{i<c} (e_i + d_i) < (c-1) d, cross-checked against the socle of S/(I1+I2)."""
    k = len(d_degrees) - 1
    c = len(e_degrees)
    if not 1 <= c <= k + 1 or any(not 1 <= di < d for di in d_degrees):
        raise ValueError("inconsistent multidegrees")
    lhs = sum(e + di for e, di in zip(e_degrees, d_degrees[:c]))
    holds = lhs < (c - 1) * d
    degs = list(e_degrees) + list(d_degrees[:c]) + list(d_degrees[c:]) + [d - di for di in d_degrees[c:]]
    series = ci_hilbert_series(degs, 2 * k + 2)
    socle = len(series) - 1
    if holds != (socle < k * d - 2 * k - 2):
        raise ArithmeticError("inequality and socle degree disagree")
    return holds


# ---------------------------------------------------------------------------
# Fermat planes in adapted coordinates


def fermat_ring(k: int) -> RingCtx:
    return indexed_ring("y", 2 * k + 2)


def fermat_single_plane_ideal(d: int, k: int) -> Ideal:
    """<y_{2i}, y_{2i+1}^{d-1} : i = 0..k>."""
    r = fermat_ring(k)
    y = r.gens()
    gens = []
    for i in range(k + 1):
        gens += [y[2 * i], y[2 * i + 1] ** (d - 1)]
    return Ideal(r, gens)


def fermat_plane_ideals(d: int, c: int, k: int):
    """(I1, I2, I1+I2) for the Fermat planes after the permutation of coordinates."""
    r = fermat_ring(k)
    y = r.gens()
    e = d - 1
    mid = [y[i] ** e for i in range(2 * c, k + c + 1)]
    lin_tail = [y[i] for i in range(k + c + 1, 2 * k + 2)]
    I1 = Ideal(r, [y[i] for i in range(c)] + [y[i] ** e for i in range(c, 2 * c)] + mid + lin_tail, "I1")
    I2 = Ideal(r, [y[i] ** e for i in range(c)] + [y[i] for i in range(c, 2 * c)] + mid + lin_tail, "I2")
    Isum = Ideal(r, [y[i] for i in range(2 * c)] + mid + lin_tail, "I1+I2")
    return I1, I2, Isum


def fermat_intersection(d: int, c: int, k: int) -> Ideal:
    I1, I2, _ = fermat_plane_ideals(d, c, k)
    return monomial_intersection(I1, I2)


def monomial_intersection(I: Ideal, J: Ideal) -> Ideal:
    """Intersection of monomial ideals via pairwise lcms."""
    r = I.ring
    gens = []
    for a in I.generators:
        for b in J.generators:
            if len(a) != 1 or len(b) != 1:
                raise ValueError("monomial ideals expected")
            ma, mb = next(iter(a.terms)), next(iter(b.terms))
            gens.append(r.monomial(tuple(max(x, y) for x, y in zip(ma, mb))))
    return Ideal(r, gens)


# ---------------------------------------------------------------------------
# reduced rings


def linear_variable_generators(ideal: Ideal) -> set[str]:
    """Names of variables that are (scalar multiples of) generators."""
    out = set()
    for g in ideal.generators:
        if len(g) == 1:
            m = next(iter(g.terms))
            if sum(m) == 1:
                out.add(ideal.ring.names[m.index(1)])
    return out


def reduce_ring(ideals: Sequence[Ideal], drop: Sequence[str] | None = None):
    """Delete variables that generate every ideal in the list.

    Returns the smaller ring and the images of the ideals; S/I is isomorphic
    to S'/I' for each of them.
    """
    r = ideals[0].ring
    if drop is None:
        common = set.intersection(*(linear_variable_generators(I) for I in ideals))
    else:
        common = set(drop)
        for I in ideals:
            if not common <= linear_variable_generators(I):
                raise ValueError("can only drop variables contained in every ideal")
    keep = [n for n in r.names if n not in common]
    sub = RingCtx(tuple(keep), tuple(r.weights[r.index(n)] for n in keep), r.order)
    images = []
    for I in ideals:
        gens = []
        for g in I.generators:
            h = g.set_to_zero(common)
            if not h.is_zero():
                gens.append(h.to_ring(sub))
        images.append(Ideal(sub, gens, I.name))
    return sub, images


# ---------------------------------------------------------------------------
# smoothness


@dataclass
class SmoothnessReport:
    smooth: bool
    method: str
    cases: int = 0
    leaf_systems: list = field(default_factory=list)

    def as_dict(self):
        return {"smooth": self.smooth, "method": self.method, "cases": self.cases,
                "leaf_systems": self.leaf_systems}


def is_smooth(f: Polynomial, split: bool = True) -> SmoothnessReport:
    """V(f) is smooth iff the partial derivatives have no common nonzero zero.

    With ``split`` the system is first broken into variable-disjoint blocks
    and, where a partial derivative has a linear factor, into linear cases;
    each leaf is decided by a zero-dimensionality test on leading monomials.
    """
    if f.homogeneous_degree() is None:
        raise ValueError("f must be homogeneous")
    gens = jacobian_ideal_gens(f)
    rep = SmoothnessReport(False, "case-split" if split else "direct")
    if not split:
        rep.smooth = _leaf(gens, rep)
        return rep
    rep.smooth = _trivial_locus(gens, rep)
    return rep


def _leaf(polys: list, rep: SmoothnessReport) -> bool:
    r = polys[0].ring
    n = r.nvars
    D = n * (max(p.total_degree() for p in polys) - 1) + 1
    gb = compute_basis(r, polys, max_degree=D)
    ok = pure_power_variables(gb) == set(range(n))
    if not ok:
        gb = compute_basis(r, polys)
        ok = pure_power_variables(gb) == set(range(n))
    rep.leaf_systems.append({"vars": n, "gens": len(polys), "degree_cap": D,
                             "basis_size": len(gb), "zero_dimensional": ok})
    return ok


def _trivial_locus(polys: list, rep: SmoothnessReport) -> bool:
    """True iff the homogeneous system has only the zero solution over C."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return False
    r = polys[0].ring
    if r.nvars == 1:
        return True
    used = set()
    for p in polys:
        used |= p.variables()
    if len(used) < r.nvars:
        return False
    for p in polys:
        if p.total_degree() == 1:
            return _branch(p, [q for q in polys if q is not p], rep)
    comps = _components(polys)
    if len(comps) > 1:
        for vs, ps in comps:
            sub = ring([r.names[i] for i in sorted(vs)])
            if not _trivial_locus([q.to_ring(sub) for q in ps], rep):
                return False
        return True
    if len(polys) < r.nvars:
        return False
    for p in polys:
        split = _split_linear_factor(p)
        if split is not None:
            lin, rest = split
            others = [q for q in polys if q is not p]
            return _branch(lin, others, rep) and _trivial_locus(others + [rest], rep)
    rep.cases += 1
    return _leaf(polys, rep)


def _branch(lin: Polynomial, others: list, rep: SmoothnessReport) -> bool:
    """Restrict to the hyperplane lin = 0 by solving for its last variable."""
    r = lin.ring
    if r.nvars == 1:
        return True
    v = max(lin.variables())
    e = [0] * r.nvars
    e[v] = 1
    a = lin.coefficient(e)
    sub = ring([n for i, n in enumerate(r.names) if i != v])
    rest = (lin - r.monomial(e, a)).scale(-1 / a)
    image = rest.to_ring(sub) if not rest.is_zero() else sub.zero()
    return _trivial_locus([q.substitute({r.names[v]: image}, sub) for q in others], rep)


def _components(polys: list):
    r = polys[0].ring
    parent = list(range(r.nvars))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p in polys:
        vs = sorted(p.variables())
        for w in vs[1:]:
            parent[find(w)] = find(vs[0])
    groups: dict = {}
    for p in polys:
        root = find(min(p.variables()))
        vs, ps = groups.setdefault(root, (set(), []))
        vs.update(p.variables())
        ps.append(p)
    return list(groups.values())


def _to_sympy(p: Polynomial):
    import sympy
    syms = sympy.symbols(p.ring.names)
    data = {m: sympy.Rational(int(c.numerator), int(c.denominator)) for m, c in p.terms.items()}
    return sympy.Poly.from_dict(data, *syms, domain="QQ")


def _from_sympy(P, r: RingCtx) -> Polynomial:
    return Polynomial(r, {m: to_rational(str(c)) for m, c in P.terms()})


def _split_linear_factor(p: Polynomial):
    """(linear factor, cofactor) of p if p has degree >= 2 and a linear factor."""
    if p.total_degree() < 2:
        return None
    sp = _to_sympy(p)
    _, facs = sp.factor_list()
    for fac, _mult in facs:
        if fac.total_degree() == 1:
            q, rem = sp.div(fac)
            if not rem.is_zero:
                continue
            return _from_sympy(fac, p.ring), _from_sympy(q, p.ring)
    return None
