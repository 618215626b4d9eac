"""Graded quotients S/I: standard monomials, Hilbert functions, socles."""
from __future__ import annotations

import threading
from math import comb
from typing import Sequence

from .exactnum import RatMatrix, rank, right_kernel_basis
from .groebner import GroebnerBasis, Ideal, pure_power_variables
from .polyring import Polynomial, RingCtx


class NotArtinianError(ValueError):
    pass


class GradedQuotient:
    """S/I with memoised per-degree standard monomial bases.

    ``max_degree`` truncates the Groebner basis; queries above it raise.
    """

    def __init__(self, ideal: Ideal, max_degree: int | None = None):
        self.ideal = ideal
        self.ring = ideal.ring
        self.max_degree = max_degree
        self.gb: GroebnerBasis = ideal.groebner(max_degree=max_degree)
        self._kbase: dict[int, list] = {}
        self._lock = threading.Lock()
        self._socle = None

    def _check_degree(self, deg: int):
        if self.max_degree is not None and deg > self.max_degree:
            raise ValueError(f"degree {deg} beyond the truncation degree {self.max_degree}")

    def kbase(self, deg: int) -> list[tuple]:
        """Standard monomials of degree deg, descending in the monomial order."""
        if deg < 0:
            return []
        self._check_degree(deg)
        cached = self._kbase.get(deg)
        if cached is not None:
            return cached
        with self._lock:
            return self._fill(deg)

    def _fill(self, deg: int) -> list:
        cached = self._kbase.get(deg)
        if cached is not None:
            return cached
        r = self.ring
        if deg == 0:
            one = (0,) * r.nvars
            out = [] if self.gb.lead_divides(one) else [one]
        else:
            cand = set()
            for i, w in enumerate(r.weights):
                if w <= deg:
                    prev = self._fill(deg - w) if deg - w != deg else []
                    for m in prev:
                        nm = list(m)
                        nm[i] += 1
                        cand.add(tuple(nm))
            out = [m for m in cand if self.gb.is_standard(m)]
            out.sort(key=r.sort_key, reverse=True)
        self._kbase[deg] = out
        return out

    def hilbert_function(self, deg: int) -> int:
        return len(self.kbase(deg))

    def hilbert_table(self, upto: int) -> list[int]:
        return [self.hilbert_function(e) for e in range(upto + 1)]

    def is_artinian(self) -> bool:
        if self.max_degree is not None:
            # truncated: pure powers found are still a proof
            return pure_power_variables(self.gb) == set(range(self.ring.nvars))
        return pure_power_variables(self.gb) == set(range(self.ring.nvars))

    def socle_degree(self) -> int:
        """Largest degree with a nonzero piece."""
        if self._socle is not None:
            return self._socle
        if not self.is_artinian():
            raise NotArtinianError("quotient is not Artinian")
        window = max(self.ring.weights)
        last = -1
        zeros = 0
        deg = 0
        while zeros < window:
            if self.hilbert_function(deg):
                last = deg
                zeros = 0
            else:
                zeros += 1
            deg += 1
        self._socle = last
        return last

    def socle_monomial(self) -> tuple:
        t = self.socle_degree()
        top = self.kbase(t)
        if len(top) != 1:
            raise ValueError(f"top degree piece has dimension {len(top)}, not 1")
        return top[0]

    def normal_form(self, p: Polynomial) -> Polynomial:
        return self.gb.normal_form(p)

    def coordinates(self, p: Polynomial, deg: int | None = None) -> list:
        """Coefficient vector of NF(p) in the kbase of its degree."""
        nf = self.normal_form(p)
        if deg is None:
            deg = p.homogeneous_degree()
            if deg is None:
                if p.is_zero():
                    raise ValueError("degree needed for the zero polynomial")
                raise ValueError("coordinates need a homogeneous polynomial")
        return [nf.coefficient(m) for m in self.kbase(deg)]

    def sigma(self, p: Polynomial):
        """Socle functional: coefficient of the socle monomial in NF(p)."""
        return self.normal_form(p).coefficient(self.socle_monomial())

    def is_gorenstein_top(self) -> bool:
        """h(socle) = 1 and every pairing into the socle has zero left kernel."""
        from .pairing import gram_matrix
        try:
            t = self.socle_degree()
        except NotArtinianError:
            return False
        if self.hilbert_function(t) != 1:
            return False
        r = self.ring
        for e in range(t + 1):
            left = [r.monomial(m) for m in self.kbase(e)]
            right = [r.monomial(m) for m in self.kbase(t - e)]
            if not left:
                continue
            gp = gram_matrix(self, left, right)
            if rank(gp.gram) != len(left):
                return False
        return True

    def gorenstein_symmetric(self) -> bool:
        t = self.socle_degree()
        h = self.hilbert_table(t)
        return all(h[e] == h[t - e] for e in range(t + 1))


def hilbert_function(ideal: Ideal, deg: int) -> int:
    return GradedQuotient(ideal).hilbert_function(deg)


def ci_hilbert_series(degrees: Sequence[int], nvars: int, length: int | None = None) -> list[int]:
    """Coefficients of prod(1 - t^d_i) / (1 - t)^nvars.

    With as many degrees as variables the series is a polynomial and is
    returned up to its last nonzero coefficient (the socle degree
    sum(d_i - 1)); otherwise ``length`` coefficients are returned.
    """
    if any(d < 1 for d in degrees):
        raise ValueError("degrees must be positive")
    if len(degrees) > nvars:
        raise ValueError("more degrees than variables cannot form a regular sequence")
    if length is None:
        if len(degrees) < nvars:
            raise ValueError("infinite series: pass a length")
        length = sum(d - 1 for d in degrees) + 1
    num = [1]
    for d in degrees:
        new = num + [0] * d
        for i, c in enumerate(num):
            new[i + d] -= c
        num = new
    out = []
    for t in range(length):
        out.append(sum(c * comb(t - i + nvars - 1, nvars - 1)
                       for i, c in enumerate(num) if i <= t))
    while len(degrees) == nvars and out and out[-1] == 0:
        out.pop()
    return out


def ci_hilbert_value(degrees: Sequence[int], nvars: int, deg: int) -> int:
    if deg < 0:
        return 0
    series = ci_hilbert_series(degrees, nvars, length=deg + 1)
    return series[deg] if deg < len(series) else 0


def ci_socle_degree(degrees: Sequence[int]) -> int:
    return sum(d - 1 for d in degrees)


def largest_ideal_with_top(W: Sequence[Polynomial], t: int, ring: RingCtx | None = None) -> dict:
    """Pieces I_e (e <= t) of the largest ideal with I_t = span(W).

    I_e = {g in S_e : g * S_{t-e} in span(W)}, found by exact linear algebra
    against the annihilator of W in the dual of S_t.
    """
    W = [w for w in W if not w.is_zero()]
    if ring is None:
        if not W:
            raise ValueError("ring needed when W is empty")
        ring = W[0].ring
    for w in W:
        if w.homogeneous_degree() != t:
            raise ValueError("W must be homogeneous of degree t")
    monos_t = ring.monomials_of_degree(t)
    pos_t = {m: i for i, m in enumerate(monos_t)}
    if W:
        wmat = RatMatrix.from_rows([[w.coefficient(m) for m in monos_t] for w in W])
        dual = right_kernel_basis(wmat)  # functionals vanishing on W
    else:
        dual = [[1 if i == j else 0 for j in range(len(monos_t))] for i in range(len(monos_t))]
    pieces = {}
    for e in range(t + 1):
        monos_e = ring.monomials_of_degree(e)
        cofactors = ring.monomials_of_degree(t - e)
        rows = []
        for phi in dual:
            for c in cofactors:
                row = []
                for mu in monos_e:
                    prod = tuple(a + b for a, b in zip(mu, c))
                    row.append(phi[pos_t[prod]])
                if any(row):
                    rows.append(row)
        if rows:
            ker = right_kernel_basis(RatMatrix.from_rows(rows, cols=len(monos_e)))
        else:
            ker = [[1 if i == j else 0 for j in range(len(monos_e))] for i in range(len(monos_e))]
        pieces[e] = [sum_terms(ring, monos_e, v) for v in ker]
    _verify_largest(pieces, W, t, ring)
    return pieces


def sum_terms(ring: RingCtx, monos, coeffs) -> Polynomial:
    return Polynomial(ring, {m: c for m, c in zip(monos, coeffs) if c})


def _span_rank(polys, monos) -> int:
    if not polys:
        return 0
    return rank(RatMatrix.from_rows([[p.coefficient(m) for m in monos] for p in polys]))


def _verify_largest(pieces: dict, W, t: int, ring: RingCtx):
    monos_t = ring.monomials_of_degree(t)
    rw = _span_rank(W, monos_t)
    rt = _span_rank(pieces[t], monos_t)
    if rt != rw or _span_rank(list(W) + pieces[t], monos_t) != rw:
        raise ArithmeticError("top piece does not reproduce span(W)")
    for e in range(t):
        monos = ring.monomials_of_degree(e + 1)
        base = _span_rank(pieces[e + 1], monos)
        prods = [g * x for g in pieces[e] for x in ring.gens()]
        if _span_rank(pieces[e + 1] + prods, monos) != base:
            raise ArithmeticError(f"piece of degree {e} not closed under multiplication")


def binom(n: int, k: int) -> int:
    """Binomial coefficient with C(n, k) = 0 for k < 0 or n < k."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)
