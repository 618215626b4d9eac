"""Socle pairings, Gram matrices and the pencil psi_1 + t psi_2.

A pairing is read through the socle functional sigma: the coefficient of
the unique standard socle monomial after reduction.  This fixes the scale of
each psi_j; the pencil coordinate t is then determined up to that choice.
"""
from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactnum import (RatMatrix, UniPoly, ZERO, determinant, independent_subset,
                       left_kernel_basis, rank, rational_str, to_rational, univariate_det)
from .groebner import Ideal, ideal_intersection, ideal_sum
from .polyring import Polynomial
from .quotient import GradedQuotient


class GorensteinError(ValueError):
    pass


@dataclass
class GramPairing:
    quotient: GradedQuotient
    left: list
    right: list
    left_degree: int
    right_degree: int
    socle_monomial: tuple
    gram: RatMatrix

    @property
    def shape(self):
        return (self.gram.rows, self.gram.cols)


def build_subquotient_basis(isum: Ideal, ipart: Ideal, deg: int,
                            qpart: GradedQuotient | None = None) -> list[Polynomial]:
    """Basis of ((Isum + Ipart)/Ipart)_deg as normal forms modulo Ipart.

    Each standard monomial m of S/Ipart gives m - NF(m, Isum), an element of
    Isum; its residue modulo Ipart is written in kbase coordinates and a
    greedy independent subset is kept.  If those residues fall short of the
    expected dimension, every monomial of the degree is used instead.
    """
    q = qpart or GradedQuotient(ipart)
    r = q.ring
    kb = q.kbase(deg)
    if not kb:
        return []
    gsum = isum.groebner()
    expected = q.hilbert_function(deg) - GradedQuotient(ideal_sum(ipart, isum)).hilbert_function(deg)

    def residues(monos):
        out = []
        for m in monos:
            mp = r.monomial(m)
            elt = mp - gsum.normal_form(mp)
            if elt.is_zero():
                continue
            red = q.normal_form(elt)
            if not red.is_zero():
                out.append(red)
        return out

    res = residues(kb)
    vecs = [[p.coefficient(m) for m in kb] for p in res]
    idx = independent_subset(vecs)
    if len(idx) < expected:
        res = residues(r.monomials_of_degree(deg))
        vecs = [[p.coefficient(m) for m in kb] for p in res]
        idx = independent_subset(vecs)
    if len(idx) != expected:
        raise ArithmeticError(f"subquotient basis has {len(idx)} elements, expected {expected}")
    return [res[i] for i in idx]


def _pair_value(gb, socle_key, lt, rt):
    prod = {}
    for k1, c1 in lt:
        for k2, c2 in rt:
            k = k1 + k2
            v = prod.get(k, ZERO) + c1 * c2
            if v:
                prod[k] = v
            else:
                prod.pop(k, None)
    for k, c in gb.reduce_encoded(list(prod.items())):
        if k == socle_key:
            return c
    return ZERO


def gram_matrix(target: GradedQuotient, left: Sequence[Polynomial], right: Sequence[Polynomial],
                workers: int = 1) -> GramPairing:
    """Exact Gram matrix sigma(NF(left_i * right_j)) into the socle of target."""
    t = target.socle_degree()
    if target.hilbert_function(t) != 1:
        raise GorensteinError("socle is not one-dimensional")
    dl = {p.homogeneous_degree() for p in left if not p.is_zero()}
    dr = {p.homogeneous_degree() for p in right if not p.is_zero()}
    if len(dl) > 1 or len(dr) > 1:
        raise ValueError("bases must be homogeneous of one degree each")
    a = dl.pop() if dl else None
    b = dr.pop() if dr else None
    if a is not None and b is not None and a + b != t:
        raise ValueError(f"degrees {a} + {b} do not add up to the socle degree {t}")
    soc = target.socle_monomial()
    gb = target.gb
    soc_key = gb._pk.key(soc)
    le = [gb.encode(p) for p in left]
    re_ = [gb.encode(p) for p in right]
    n, m = len(le), len(re_)
    entries = [ZERO] * (n * m)

    def fill_row(i):
        for j in range(m):
            entries[i * m + j] = _pair_value(gb, soc_key, le[i], re_[j])

    if workers > 1 and n > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            list(ex.map(fill_row, range(n)))
    else:
        for i in range(n):
            fill_row(i)
    return GramPairing(target, list(left), list(right),
                       a if a is not None else -1, b if b is not None else -1,
                       soc, RatMatrix(n, m, entries))


def full_rank_certificate(gp: GramPairing | RatMatrix) -> dict:
    g = gp.gram if isinstance(gp, GramPairing) else gp
    rk = rank(g)
    out = {"rows": g.rows, "cols": g.cols, "rank": rk, "left_kernel_dim": g.rows - rk}
    if g.is_square:
        out["det"] = determinant(g)
    out["full_rank"] = rk == min(g.rows, g.cols) and out["left_kernel_dim"] == 0
    return out


def left_kernel_dim(m: RatMatrix) -> int:
    return m.rows - rank(m)


def subquotient_pairing(isum: Ideal, ipart: Ideal, a: int, b: int | None = None,
                        workers: int = 1) -> GramPairing:
    """Pairing ((Isum+Ipart)/Ipart)_a x (...)_b -> (S/Ipart)_socle."""
    q = GradedQuotient(ipart)
    t = q.socle_degree()
    if b is None:
        b = t - a
    left = build_subquotient_basis(isum, ipart, a, q)
    right = left if b == a else build_subquotient_basis(isum, ipart, b, q)
    return gram_matrix(q, left, right, workers)


# ---------------------------------------------------------------------------
# the fermat kernel


def fermat_ideals(d: int, c: int, k: int):
    """Monomial ideals I1, I2, I1+I2 in adapted y-coordinates."""
    from .cycles import fermat_plane_ideals
    return fermat_plane_ideals(d, c, k)


def fermat_kernel_dim(d: int, c: int, k: int) -> int:
    """Left kernel of ((I1+I2)/I2)_d x ((I1+I2)/I2)_{kd-2k-2} -> (S/I2)_top."""
    if not (1 <= c <= k + 1) or d < 3:
        raise ValueError("need 1 <= c <= k+1 and d >= 3")
    I1, I2, Isum = fermat_ideals(d, c, k)
    gp = subquotient_pairing(Isum, I2, d, k * d - 2 * k - 2)
    return left_kernel_dim(gp.gram)


# ---------------------------------------------------------------------------
# pencils


@dataclass
class PencilReport:
    A1: RatMatrix
    A2: RatMatrix
    det_poly: UniPoly | None
    generic_rank: int
    generic_rank_certified: bool
    drop_values: list           # (rational root, multiplicity)
    irrational_factors: list    # (degree, multiplicity)
    bound: int | None
    rank_psi1: int
    rank_psi2: int
    checks: list = field(default_factory=list)

    @property
    def nonzero_drop_values(self) -> list:
        return [(r, mlt) for r, mlt in self.drop_values if r != 0]

    def as_dict(self) -> dict:
        return {
            "size": [self.A1.rows, self.A1.cols],
            "det_poly": str(self.det_poly) if self.det_poly is not None else None,
            "generic_rank": self.generic_rank,
            "generic_rank_certified": self.generic_rank_certified,
            "drop_values": [[rational_str(r), m] for r, m in self.drop_values],
            "nonzero_drop_count": len(self.nonzero_drop_values),
            "irrational_factors": [list(x) for x in self.irrational_factors],
            "bound": self.bound,
            "rank_psi1": self.rank_psi1,
            "rank_psi2": self.rank_psi2,
            "checks": [[label, ok] for label, ok in self.checks],
        }


def pencil_det_poly(A1: RatMatrix, A2: RatMatrix, rng: random.Random | None = None) -> UniPoly:
    """A polynomial whose roots are exactly the t where rank(A1+tA2) < generic.

    Square: det(A1 + t A2).  Otherwise the gcd of det((A1+tA2) R) over a few
    random integer matrices R of matching shape (taking the transpose when
    rows > cols); candidates are confirmed later by exact ranks.
    """
    if A1.is_square:
        return univariate_det(A1, A2)
    rng = rng or random.Random(0)
    if A1.rows > A1.cols:
        A1, A2 = A1.transpose(), A2.transpose()
    n, m = A1.rows, A1.cols
    g = None
    for _ in range(3):
        R = RatMatrix(m, n, [rng.randint(-5, 5) for _ in range(m * n)])
        p = univariate_det(A1 @ R, A2 @ R, crosscheck=False)
        g = p if g is None else _poly_gcd(g, p)
    return g


def _poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while b:
        _, r = a.divmod(b)
        a, b = b, r
    if a:
        a = UniPoly([c / a.leading_coefficient() for c in a.coeffs])
    return a


def pencil_from_matrices(A1: RatMatrix, A2: RatMatrix, bound: int | None = None,
                         seed: int = 0) -> PencilReport:
    rng = random.Random(seed)
    r1, r2 = rank(A1), rank(A2)
    full = min(A1.rows, A1.cols)
    detp = pencil_det_poly(A1, A2, rng) if full else UniPoly()
    checks = []
    if detp is not None and not detp.is_zero():
        candidates = detp.rational_roots()
        irr = detp.irrational_factor_degrees()
        generic = full
        certified = True
        drops = []
        for root, mult in candidates:
            rr = rank(A1 + A2.scale(root))
            if rr < generic:
                drops.append((root, mult))
        # spot check genericity away from the candidates
        t0 = _avoid(rng, [r for r, _ in candidates])
        checks.append(("generic rank at a random point", rank(A1 + A2.scale(t0)) == generic))
    else:
        ranks = []
        for _ in range(7):
            t0 = to_rational(Fraction(rng.randint(-1000, 1000), rng.randint(1, 97)))
            ranks.append(rank(A1 + A2.scale(t0)))
        generic = max(set(ranks), key=ranks.count)
        certified = False
        drops = []
        irr = []
        detp = detp if detp is not None else None
    rep = PencilReport(A1, A2, detp, generic, certified, drops, irr, bound, r1, r2, checks)
    if bound is not None and certified:
        rep.checks.append(("nonzero drop values within bound", len(rep.nonzero_drop_values) <= bound))
    return rep


def _avoid(rng, bad) -> "object":
    bad = set(bad)
    while True:
        t0 = to_rational(Fraction(rng.randint(-1000, 1000), rng.randint(1, 97)))
        if t0 not in bad and t0 != 0:
            return t0


def pencil_matrices(I1: Ideal, I2: Ideal, d: int, iint: Ideal | None = None):
    """Gram matrices of psi_1, psi_2 on (S/(I1 cap I2))_d x (S/(I1 cap I2))_{t-d}."""
    q1, q2 = GradedQuotient(I1), GradedQuotient(I2)
    t1, t2 = q1.socle_degree(), q2.socle_degree()
    if t1 != t2:
        raise GorensteinError(f"socle degrees differ: {t1} vs {t2}")
    if q1.hilbert_function(t1) != 1 or q2.hilbert_function(t2) != 1:
        raise GorensteinError("socle is not one-dimensional")
    if iint is None:
        iint = ideal_intersection(I1, I2)
    qi = GradedQuotient(iint)
    r = I1.ring
    V = [r.monomial(m) for m in qi.kbase(d)]
    W = [r.monomial(m) for m in qi.kbase(t1 - d)]
    A1 = gram_matrix(q1, V, W).gram
    A2 = gram_matrix(q2, V, W).gram
    return A1, A2, qi, q1, q2


def pencil_analysis(I1: Ideal, I2: Ideal, d: int, iint: Ideal | None = None,
                    isum: Ideal | None = None, seed: int = 0) -> PencilReport:
    """Rank-drop analysis of psi_1 + t psi_2 in degrees (d, socle - d)."""
    A1, A2, qi, q1, q2 = pencil_matrices(I1, I2, d, iint)
    t = q1.socle_degree()
    isum = isum or ideal_sum(I1, I2)
    qs = GradedQuotient(isum)
    bound = qs.hilbert_function(d)
    rep = pencil_from_matrices(A1, A2, None, seed)
    rep.bound = bound
    rep.checks.append(("rank psi1 = h_I1(d)", rep.rank_psi1 == q1.hilbert_function(d)))
    rep.checks.append(("rank psi2 = h_I2(d)", rep.rank_psi2 == q2.hilbert_function(d)))
    k1 = left_kernel_dim(subquotient_pairing(isum, I1, d, t - d).gram)
    k2 = left_kernel_dim(subquotient_pairing(isum, I2, d, t - d).gram)
    rep.checks.append(("one-sided kernels vanish", k1 == 0 and k2 == 0))
    if k1 == 0 and k2 == 0 and rep.generic_rank_certified:
        rep.checks.append(("nonzero drop values within bound",
                           len(rep.nonzero_drop_values) <= bound))
    return rep


# ---------------------------------------------------------------------------
# executable bilinear-map lemmas


def _span_intersection_dim(basis_a: list, basis_b: list) -> int:
    if not basis_a or not basis_b:
        return 0
    ra = rank(RatMatrix.from_rows(basis_a))
    rb = rank(RatMatrix.from_rows(basis_b))
    return ra + rb - rank(RatMatrix.from_rows(basis_a + basis_b))


def restricted(m: RatMatrix, left_vecs: list, right_vecs: list) -> RatMatrix:
    """Matrix of the form restricted to span(left) x span(right)."""
    if not left_vecs or not right_vecs:
        return RatMatrix(len(left_vecs), len(right_vecs), [])
    L = RatMatrix.from_rows(left_vecs)
    R = RatMatrix.from_rows(right_vecs).transpose()
    return L @ m @ R


def kernel_bound_check(phi1: RatMatrix, phi2: RatMatrix, samples: int = 5, seed: int = 0) -> dict:
    """Check the kernel bound and the generic-rank lower bound for a pair of forms.

    Reports the ranks r_i and s_i with the restricted kernel dimensions; checks whether
    dim ker_L phi_j|V_i x W_i <= r1 + r2 - dim W and
    max_t rank(phi1 + t phi2) >= r_i + s_i.  A violated precondition
    (V1 cap V2 != 0 or W1 cap W2 != 0) is reported, not asserted.
    """
    rng = random.Random(seed)
    dimV, dimW = phi1.rows, phi1.cols
    V = [left_kernel_basis(phi1), left_kernel_basis(phi2)]
    Wk = [left_kernel_basis(phi1.transpose()), left_kernel_basis(phi2.transpose())]
    pre = _span_intersection_dim(V[0], V[1]) == 0 and _span_intersection_dim(Wk[0], Wk[1]) == 0
    r = [rank(phi1), rank(phi2)]
    phis = [phi1, phi2]
    s, kers = [], []
    for i in range(2):
        j = 1 - i
        res = restricted(phis[j], V[i], Wk[i])
        si = rank(res) if res.rows and res.cols else 0
        s.append(si)
        kers.append(len(V[i]) - si)
    out = {"r": r, "s": s, "restricted_kernel_dims": kers, "precondition": pre,
           "dimV": dimV, "dimW": dimW}
    if not pre:
        out["ok"] = None
        return out
    bound = r[0] + r[1] - dimW
    kb_ok = all(kd <= bound for kd in kers)
    best = 0
    for _ in range(samples):
        t0 = _avoid(rng, [])
        best = max(best, rank(phi1 + phi2.scale(t0)))
    if phi1.is_square:
        detp = univariate_det(phi1, phi2, crosscheck=False)
        if detp:
            best = max(best, dimV)
    gr_ok = all(best >= r[i] + s[i] for i in range(2))
    out.update({"kernel_bound": bound, "kernel_bound_ok": kb_ok, "max_sampled_rank": best,
                "generic_rank_ok": gr_ok, "ok": kb_ok and gr_ok})
    return out


def spectrum_size_check(A1: RatMatrix, A2: RatMatrix) -> dict:
    """Nonzero rank-drop count <= dim V - s1 - s2 when s1 = dim V - r1."""
    info = kernel_bound_check(A1, A2)
    dimV = A1.rows
    applicable = info["precondition"] and info["s"][0] == dimV - info["r"][0]
    rep = pencil_from_matrices(A1, A2)
    drops = len(rep.nonzero_drop_values) if rep.generic_rank_certified else None
    full = rep.generic_rank == dimV
    bound = dimV - info["s"][0] - info["s"][1]
    ok = True
    if applicable and full and drops is not None:
        ok = drops <= bound
    return {"applicable": applicable and full, "drops": drops, "bound": bound, "ok": ok,
            "r": info["r"], "s": info["s"]}


def degree_shift_check(I: Ideal, J: Ideal, alpha: int) -> bool:
    """Nonzero left kernel at alpha implies nonzero left kernel at alpha+1."""
    q = GradedQuotient(I)
    t = q.socle_degree()
    if not 0 <= alpha < t:
        raise ValueError("need 0 <= alpha < socle degree")
    isum = ideal_sum(I, J)
    k0 = left_kernel_dim(subquotient_pairing(isum, I, alpha, t - alpha).gram)
    if k0 == 0:
        return True
    k1 = left_kernel_dim(subquotient_pairing(isum, I, alpha + 1, t - alpha - 1).gram)
    return k1 > 0


def high_degree_check(I1: Ideal, I2: Ideal, alpha: int) -> dict:
    """If h_{I1+I2}(t - alpha) = 0, the pencil has no nonzero drop values."""
    q = GradedQuotient(I1)
    t = q.socle_degree()
    hs = GradedQuotient(ideal_sum(I1, I2)).hilbert_function(t - alpha)
    rep = pencil_analysis(I1, I2, alpha)
    applicable = hs == 0
    ok = (not applicable) or (rep.generic_rank_certified and not rep.nonzero_drop_values
                              and rep.generic_rank == rep.A1.rows)
    return {"applicable": applicable, "h_sum": hs, "ok": ok, "report": rep}
