"""Buchberger's algorithm for homogeneous ideals over Q.

Internally every monomial is packed into one Python int ``K`` whose integer
order is the monomial order and which is additive (K(ab) = K(a) + K(b)), so
multiplying by a monomial is a single addition.  Exponent vectors are also
kept packed (16-bit fields with a guard bit) for divisibility and lcm tests.
"""
from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq, mpz

from .exactnum import ONE, ZERO
from .polyring import (MonomialOrder, Polynomial, RingCtx, RingMismatch,
                       block_order)

FIELD_BITS = 16
MAX_EXP = (1 << (FIELD_BITS - 1)) - 1


class InhomogeneousError(ValueError):
    pass


class _Packing:
    """Maps exponent tuples to order keys and packed exponent vectors."""

    def __init__(self, ring: RingCtx, order: MonomialOrder, grading: Sequence[int]):
        n = ring.nvars
        self.n = n
        self.order = order
        self.grading = tuple(grading)
        B = FIELD_BITS
        self.B = B
        self.fmask = (1 << B) - 1
        self.guard = sum(1 << (i * B + B - 1) for i in range(n))
        self.low = (1 << (n * B)) - 1
        kind = order.kind
        self.kind = kind
        if kind == "degrevlex":
            self.pos = [i * B for i in range(n)]
            self.ow = ring.weights
            self.N = n * B
        elif kind == "lex":
            self.pos = [(n - 1 - i) * B for i in range(n)]
        else:
            s = order.split
            self.s = s
            self.pos = [i * B for i in range(n)]
            self.N1 = s * B
            self.N2 = (n - s) * B
            self.low1 = (1 << self.N1) - 1
            self.low2 = (1 << self.N2) - 1
            self.Z = self.N2 + B + 1
            self.zmask = (1 << self.Z) - 1

    def pack(self, exps) -> int:
        v = 0
        for e, p in zip(exps, self.pos):
            if e:
                if e > MAX_EXP:
                    raise OverflowError("exponent too large for packed monomials")
                v |= e << p
        return v

    def unpack(self, v: int) -> tuple:
        f = self.fmask
        return tuple((v >> p) & f for p in self.pos)

    def key(self, exps) -> int:
        v = self.pack(exps)
        kind = self.kind
        if kind == "degrevlex":
            w = sum(a * b for a, b in zip(self.ow, exps))
            return (w << self.N) - v
        if kind == "lex":
            return v
        s = self.s
        d1 = sum(exps[:s])
        d2 = sum(exps[s:])
        v1 = v & self.low1
        v2 = v >> self.N1
        k1 = (d1 << self.N1) - v1
        k2 = (d2 << self.N2) - v2
        return (k1 << self.Z) + k2

    def vec(self, K: int) -> int:
        """Packed exponent vector of a key."""
        kind = self.kind
        if kind == "degrevlex":
            return (-K) & self.low
        if kind == "lex":
            return K
        k1 = K >> self.Z
        k2 = K & self.zmask
        return ((-k1) & self.low1) | (((-k2) & self.low2) << self.N1)

    def exps(self, K: int) -> tuple:
        return self.unpack(self.vec(K))

    def key_from_vec(self, v: int) -> int:
        return self.key(self.unpack(v))

    def divides(self, va: int, vb: int) -> bool:
        h = self.guard
        return ((vb | h) - va) & h == h

    def lcm(self, va: int, vb: int) -> int:
        h = self.guard
        m = ((vb | h) - va) & h
        full = m - (m >> (self.B - 1))
        return (vb & full) | (va & ~full & self.low)

    def coprime(self, va: int, vb: int) -> bool:
        return self.lcm(va, vb) == va + vb

    def grade(self, v: int) -> int:
        f = self.fmask
        return sum(w * ((v >> p) & f) for w, p in zip(self.grading, self.pos) if w)


def _encode(pk: _Packing, p: Polynomial) -> list:
    terms = [(pk.key(m), c) for m, c in p.terms.items()]
    terms.sort(reverse=True, key=lambda kc: kc[0])
    return terms


class _Engine:
    """Mutable reducer set shared by Buchberger and normal forms."""

    def __init__(self, pk: _Packing):
        self.pk = pk
        self.polys: list[list] = []   # monic, terms sorted descending by key
        self.leads: list[int] = []    # packed lead exponent vectors
        self.lock = threading.Lock()
        self._hit: dict = {}
        self._miss: set = set()

    def add(self, terms: list) -> int:
        lc = terms[0][1]
        if lc != 1:
            inv = 1 / lc
            terms = [(k, c * inv) for k, c in terms]
        self.polys.append(terms)
        self.leads.append(self.pk.vec(terms[0][0]))
        self._miss = set()
        return len(self.polys) - 1

    def find_reducer(self, v: int):
        idx = self._hit.get(v)
        if idx is not None:
            return idx
        if v in self._miss:
            return None
        h = self.pk.guard
        vb = v | h
        for i, la in enumerate(self.leads):
            if (vb - la) & h == h:
                self._hit[v] = i
                return i
        self._miss.add(v)
        return None

    def reduce(self, terms: Iterable, full: bool = True) -> list:
        """Remainder of a polynomial (list of (key, coeff)) modulo the reducers."""
        work = {}
        for k, c in terms:
            nv = work.get(k, ZERO) + c
            if nv:
                work[k] = nv
            else:
                work.pop(k, None)
        heap = [-k for k in work]
        heapq.heapify(heap)
        vec = self.pk.vec
        polys = self.polys
        rem = []
        push = heapq.heappush
        pop = heapq.heappop
        while heap:
            k = -pop(heap)
            c = work.pop(k, None)
            if c is None:
                continue
            idx = self.find_reducer(vec(k))
            if idx is None:
                rem.append((k, c))
                if not full:
                    rest = sorted(work.items(), reverse=True, key=lambda kc: kc[0])
                    return rem + rest
                continue
            g = polys[idx]
            shift = k - g[0][0]
            for gk, gc in g[1:]:
                nk = gk + shift
                old = work.get(nk)
                if old is None:
                    work[nk] = -c * gc
                    push(heap, -nk)
                else:
                    nv = old - c * gc
                    if nv:
                        work[nk] = nv
                    else:
                        del work[nk]
        return rem


def _content(values) -> "mpz":
    g = mpz(0)
    for v in values:
        g = gmpy2.gcd(g, v)
        if g == 1:
            break
    return g


def _to_primitive(terms) -> list:
    """Integer primitive multiple (positive lead) of a rational term list."""
    den = mpz(1)
    for _, c in terms:
        den = gmpy2.lcm(den, c.denominator)
    ints = [(k, mpz(c.numerator) * (den // c.denominator)) for k, c in terms]
    g = _content(c for _, c in ints)
    if ints and ints[0][1] < 0:
        g = -g
    return [(k, c // g) for k, c in ints] if g not in (0, 1) else ints


class _IntEngine(_Engine):
    """Reducer set with primitive integer coefficients (fraction-free)."""

    def add(self, terms: list) -> int:
        terms = _to_primitive(terms)
        self.polys.append(terms)
        self.leads.append(self.pk.vec(terms[0][0]))
        self._miss = set()
        return len(self.polys) - 1

    def reduce(self, terms: Iterable, full: bool = True) -> list:
        """A primitive integer polynomial with the same normal form up to scale."""
        return self.reduce_scaled(terms)[0]

    def reduce_scaled(self, terms: Iterable):
        """(rem, s) with rem primitive over Z and NF(terms) = s * rem."""
        terms = sorted(terms, reverse=True, key=lambda kc: kc[0])
        terms = [(k, c) for k, c in terms if c]
        if not terms:
            return [], ONE
        prim = _to_primitive(terms)
        scale = mpq(terms[0][1]) / prim[0][1]
        work = dict(prim)
        heap = [-k for k in work]
        heapq.heapify(heap)
        vec = self.pk.vec
        polys = self.polys
        rem: list = []
        push = heapq.heappush
        pop = heapq.heappop
        steps = 0
        while heap:
            k = -pop(heap)
            c = work.pop(k, None)
            if c is None:
                continue
            idx = self.find_reducer(vec(k))
            if idx is None:
                rem.append((k, c))
                continue
            g = polys[idx]
            a = g[0][1]
            gg = gmpy2.gcd(a, c)
            alpha = a // gg
            beta = c // gg
            if alpha != 1:
                for kk in work:
                    work[kk] *= alpha
                rem = [(kk, cc * alpha) for kk, cc in rem]
                scale /= alpha
            shift = k - g[0][0]
            for gk, gc in g[1:]:
                nk = gk + shift
                old = work.get(nk)
                if old is None:
                    work[nk] = -beta * gc
                    push(heap, -nk)
                else:
                    nv = old - beta * gc
                    if nv:
                        work[nk] = nv
                    else:
                        del work[nk]
            steps += 1
            if steps % 16 == 0:
                cont = _content(list(work.values()) + [cc for _, cc in rem])
                if cont > 1:
                    for kk in work:
                        work[kk] //= cont
                    rem = [(kk, cc // cont) for kk, cc in rem]
                    scale *= cont
        if rem:
            cont = _content(cc for _, cc in rem)
            if cont > 1:
                rem = [(kk, cc // cont) for kk, cc in rem]
                scale *= cont
        return rem, scale


def _spoly(engine: _Engine, i: int, j: int, lcm_key: int) -> list:
    gi = engine.polys[i]
    gj = engine.polys[j]
    si = lcm_key - gi[0][0]
    sj = lcm_key - gj[0][0]
    ai, aj = gi[0][1], gj[0][1]
    out = {}
    for k, c in gi[1:]:
        out[k + si] = c * aj
    for k, c in gj[1:]:
        nk = k + sj
        nv = out.get(nk, 0) - c * ai
        if nv:
            out[nk] = nv
        else:
            out.pop(nk, None)
    return list(out.items())


@dataclass
class BuchbergerStats:
    pairs_total: int = 0
    pairs_reduced: int = 0
    zero_reductions: int = 0
    coprime_skipped: int = 0
    chain_skipped: int = 0


def _buchberger(pk: _Packing, gens: list[list], max_degree: int | None,
                stats: BuchbergerStats) -> _Engine:
    """Homogeneous Buchberger with normal selection and Gebauer-Moeller."""
    engine = _IntEngine(pk)
    active: list[int] = []
    pairs: list = []  # heap of (degree, lcm_key, i, j)
    pending: dict[int, list] = {}
    for t in gens:
        d = pk.grade(pk.vec(t[0][0]))
        if max_degree is not None and d > max_degree:
            continue
        pending.setdefault(d, []).append(t)

    def update(h: int):
        vh = engine.leads[h]
        cand = []
        for g in active:
            vg = engine.leads[g]
            cand.append((g, pk.lcm(vh, vg), pk.coprime(vh, vg)))
        kept = []
        for idx, (g, l, cop) in enumerate(cand):
            if cop:
                kept.append((g, l, cop))
                continue
            dominated = False
            for g2, l2, _ in cand[idx + 1:]:
                if pk.divides(l2, l):
                    dominated = True
                    break
            if not dominated:
                for g2, l2, _ in kept:
                    if pk.divides(l2, l):
                        dominated = True
                        break
            if dominated:
                stats.chain_skipped += 1
            else:
                kept.append((g, l, cop))
        new_pairs = []
        for g, l, cop in kept:
            if cop:
                stats.coprime_skipped += 1
                continue
            new_pairs.append((g, l))
        # drop old pairs killed by the chain criterion through h
        survivors = []
        for entry in pairs:
            _, lk, i, j = entry
            l = pk.vec(lk)
            if pk.divides(vh, l):
                lih = pk.lcm(engine.leads[i], vh)
                ljh = pk.lcm(engine.leads[j], vh)
                if lih != l and ljh != l:
                    stats.chain_skipped += 1
                    continue
            survivors.append(entry)
        if len(survivors) != len(pairs):
            pairs[:] = survivors
            heapq.heapify(pairs)
        for g, l in new_pairs:
            d = pk.grade(l)
            if max_degree is not None and d > max_degree:
                continue
            stats.pairs_total += 1
            heapq.heappush(pairs, (d, pk.key_from_vec(l), g, h))
        still = [g for g in active if not pk.divides(vh, engine.leads[g])]
        still.append(h)
        active[:] = still

    def insert(rem: list):
        if not rem:
            stats.zero_reductions += 1
            return
        h = engine.add(rem)
        update(h)

    degrees = sorted(pending)
    while pairs or degrees:
        dp = pairs[0][0] if pairs else None
        dg = degrees[0] if degrees else None
        if dg is not None and (dp is None or dg <= dp):
            degrees.pop(0)
            for t in pending[dg]:
                insert(engine.reduce(t))
            continue
        d, lk, i, j = heapq.heappop(pairs)
        stats.pairs_reduced += 1
        insert(engine.reduce(_spoly(engine, i, j, lk)))

    # reduced basis: minimal leads, fully interreduced tails, monic
    inter = _IntEngine(pk)
    minimal = sorted(active, key=lambda g: engine.polys[g][0][0])
    for g in minimal:
        inter.polys.append(engine.polys[g])
        inter.leads.append(engine.leads[g])
    final = _Engine(pk)
    for t in inter.polys:
        tail, sc = inter.reduce_scaled(t[1:])
        a = mpq(t[0][1])
        final.add([(t[0][0], ONE)] + [(k, sc * c / a) for k, c in tail])
    return final


class GroebnerBasis:
    """Reduced Groebner basis of a homogeneous ideal, optionally truncated.

    When ``max_degree`` is set the basis is only guaranteed to be correct for
    elements of degree <= max_degree.  Immutable after construction; normal
    forms may be computed concurrently.
    """

    def __init__(self, ring: RingCtx, order: MonomialOrder, engine: _Engine,
                 max_degree: int | None, stats: BuchbergerStats | None = None):
        self.ring = ring
        self.order = order
        self.max_degree = max_degree
        self.stats = stats
        self._engine = engine
        self._pk = engine.pk
        self._int = _IntEngine(engine.pk)
        for t in engine.polys:
            self._int.add(t)
        self.elements = [self._decode(t) for t in engine.polys]

    def _decode(self, terms: list) -> Polynomial:
        pk = self._pk
        return Polynomial._raw(self.ring, {pk.exps(k): c for k, c in terms})

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leading_monomials(self) -> list[tuple]:
        pk = self._pk
        return [pk.unpack(v) for v in self._engine.leads]

    def encode(self, p: Polynomial) -> list:
        if p.ring.names != self.ring.names:
            raise RingMismatch("polynomial is not in the basis ring")
        return _encode(self._pk, p)

    def normal_form(self, p: Polynomial) -> Polynomial:
        return self._decode(self.reduce_encoded(self.encode(p)))

    def reduce_encoded(self, terms) -> list:
        """Normal form of an encoded polynomial, as (key, mpq) terms."""
        rem, sc = self._int.reduce_scaled(terms)
        return [(k, sc * c) for k, c in rem]

    def decode(self, terms) -> Polynomial:
        return self._decode(terms)

    def contains(self, p: Polynomial) -> bool:
        return not self._int.reduce(self.encode(p))

    def is_standard(self, exps) -> bool:
        v = self._pk.pack(exps)
        return self._engine.find_reducer(v) is None

    def lead_divides(self, exps) -> bool:
        return not self.is_standard(exps)

    def polys_sorted(self) -> list[Polynomial]:
        return list(self.elements)

    def check_buchberger_criterion(self) -> bool:
        """Every S-pair (up to the truncation degree) reduces to zero."""
        pk = self._pk
        eng = self._engine
        n = len(eng.polys)
        for i in range(n):
            for j in range(i + 1, n):
                vi, vj = eng.leads[i], eng.leads[j]
                if pk.coprime(vi, vj):
                    continue
                l = pk.lcm(vi, vj)
                if self.max_degree is not None and pk.grade(l) > self.max_degree:
                    continue
                if self._int.reduce(_spoly(eng, i, j, pk.key_from_vec(l))):
                    return False
        return True

    def is_reduced(self) -> bool:
        eng = self._engine
        pk = self._pk
        for i, t in enumerate(eng.polys):
            if t[0][1] != 1:
                return False
            for k, _ in t:
                v = pk.vec(k)
                for j, lj in enumerate(eng.leads):
                    if j != i and pk.divides(lj, v):
                        return False
        return True

    def __str__(self):
        return "\n".join(str(g) for g in self.elements)


def _check_homogeneous(gens: Sequence[Polynomial], grading: Sequence[int]):
    for g in gens:
        ds = {sum(w * e for w, e in zip(grading, m)) for m in g.terms}
        if len(ds) > 1:
            raise InhomogeneousError(f"generator {g} is not homogeneous")


_basis_observers: list = []


def add_basis_observer(fn) -> None:
    """Call fn(basis) for every basis computed from now on (audits, tests)."""
    _basis_observers.append(fn)


def remove_basis_observer(fn) -> None:
    _basis_observers.remove(fn)


def compute_basis(ring: RingCtx, gens: Sequence[Polynomial], order: MonomialOrder | None = None,
                  max_degree: int | None = None, grading: Sequence[int] | None = None,
                  verify: bool = True) -> GroebnerBasis:
    order = order or ring.order
    grading = tuple(grading) if grading is not None else ring.weights
    gens = [g for g in gens if not g.is_zero()]
    for g in gens:
        if g.ring.names != ring.names:
            raise RingMismatch("generator outside the ring")
    _check_homogeneous(gens, grading)
    pk = _Packing(ring, order, grading)
    wring = ring.with_order(order) if ring.order != order else ring
    stats = BuchbergerStats()
    enc = [_encode(pk, g) for g in gens]
    engine = _buchberger(pk, enc, max_degree, stats)
    gb = GroebnerBasis(wring, order, engine, max_degree, stats)
    if verify:
        for g, t in zip(gens, enc):
            d = pk.grade(pk.vec(t[0][0]))
            if max_degree is not None and d > max_degree:
                continue
            if gb._int.reduce(t):
                raise ArithmeticError("input generator does not reduce to zero")
    for fn in list(_basis_observers):
        fn(gb)
    return gb


class Ideal:
    """Homogeneous ideal with cached Groebner bases (one per order)."""

    def __init__(self, ring: RingCtx, generators: Iterable[Polynomial], name: str = ""):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring.const(g)
            if g.ring != ring:
                if g.ring.names == ring.names and g.ring.weights == ring.weights:
                    g = Polynomial._raw(ring, g.terms)
                else:
                    raise RingMismatch("generator outside the ring")
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise InhomogeneousError(f"generator {g} is not homogeneous")
            gens.append(g)
        self.ring = ring
        self.generators = gens
        self.name = name
        self._bases: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def parse(cls, ring: RingCtx, texts: Iterable[str], name: str = "") -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts], name)

    def groebner(self, order: MonomialOrder | None = None,
                 max_degree: int | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        with self._lock:
            cached = self._bases.get(order)
            if cached is not None and (cached.max_degree is None or
                                       (max_degree is not None and cached.max_degree >= max_degree)):
                return cached
            gb = compute_basis(self.ring, self.generators, order, max_degree)
            self._bases[order] = gb
            return gb

    def normal_form(self, p: Polynomial) -> Polynomial:
        return self.groebner().normal_form(p)

    def contains(self, p: Polynomial, max_degree: int | None = None) -> bool:
        if p.is_zero():
            return True
        return self.groebner(max_degree=max_degree).contains(p)

    def contains_ideal(self, other: "Ideal", max_degree: int | None = None) -> bool:
        gb = self.groebner(max_degree=max_degree)
        return all(gb.contains(g) for g in other.generators
                   if max_degree is None or g.total_degree() <= max_degree)

    def equals(self, other: "Ideal", max_degree: int | None = None) -> bool:
        return self.contains_ideal(other, max_degree) and other.contains_ideal(self, max_degree)

    def generator_degrees(self) -> list[int]:
        return [g.homogeneous_degree() for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"Ideal{label}<{', '.join(str(g) for g in self.generators)}>"


def buchberger(ideal: Ideal, order: MonomialOrder | None = None,
               max_degree: int | None = None) -> GroebnerBasis:
    return ideal.groebner(order, max_degree)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(p)


def ideal_sum(i: Ideal, j: Ideal) -> Ideal:
    if i.ring != j.ring:
        raise RingMismatch("ideals live in different rings")
    return Ideal(i.ring, list(i.generators) + list(j.generators))


AUX_NAME = "u_aux"


def ideal_intersection(i: Ideal, j: Ideal, max_degree: int | None = None) -> Ideal:
    """I cap J by eliminating u from <u I, (1-u) J>.

    The auxiliary variable has grading weight 0, so the mixed ideal stays
    homogeneous in the original grading and degree truncation is sound.
    The result is generated by the reduced basis elements free of u.
    """
    if i.ring != j.ring:
        raise RingMismatch("ideals live in different rings")
    r = i.ring
    name = AUX_NAME
    while name in r.names:
        name += "_"
    ext = RingCtx((name,) + r.names, (1,) + r.weights, block_order(1))
    u = ext.var(0)
    gens = [u * g.to_ring(ext) for g in i.generators]
    gens += [(ext.one() - u) * g.to_ring(ext) for g in j.generators]
    grading = (0,) + r.weights
    gb = compute_basis(ext, gens, block_order(1), max_degree, grading=grading, verify=False)
    out = []
    for g in gb.elements:
        if all(m[0] == 0 for m in g.terms):
            out.append(Polynomial._raw(r, {m[1:]: c for m, c in g.terms.items()}))
    return Ideal(r, out)


def ideal_quotient_by_variables(ideal: Ideal, names: Sequence[str], target: RingCtx) -> Ideal:
    """Image of the ideal in the ring with the named variables set to 0."""
    gens = []
    for g in ideal.generators:
        h = g.set_to_zero(names)
        if not h.is_zero():
            gens.append(h.to_ring(target))
    return Ideal(target, gens)


def is_zero_dimensional(ideal: Ideal, max_degree: int | None = None) -> bool:
    """True iff a pure power of every variable is a leading monomial.

    With ``max_degree`` the test uses a truncated basis; a positive answer is
    then still a proof, but a negative one only means no pure powers appear
    up to that degree.
    """
    gb = ideal.groebner(max_degree=max_degree)
    return pure_power_variables(gb) == set(range(ideal.ring.nvars))


def pure_power_variables(gb: GroebnerBasis) -> set[int]:
    found = set()
    for m in gb.leading_monomials():
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            found.add(nz[0])
    return found


def pure_power_degrees(gb: GroebnerBasis) -> dict[int, int]:
    out = {}
    for m in gb.leading_monomials():
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            i = nz[0]
            out[i] = min(out.get(i, m[i]), m[i])
    return out


def membership_by_linear_algebra(p: Polynomial, gens: Sequence[Polynomial]) -> bool:
    """Brute-force oracle: is homogeneous p in the span of {m * g} in its degree?"""
    from .exactnum import solve_in_span
    if p.is_zero():
        return True
    d = p.homogeneous_degree()
    if d is None:
        raise InhomogeneousError("membership oracle needs a homogeneous polynomial")
    r = p.ring
    spanning = []
    for g in gens:
        dg = g.homogeneous_degree()
        if dg is None or dg > d:
            continue
        for m in r.monomials_of_degree(d - dg):
            spanning.append(g.mul_monomial(m))
    monos = r.monomials_of_degree(d)
    vecs = [[s.coefficient(m) for m in monos] for s in spanning]
    target = [p.coefficient(m) for m in monos]
    return solve_in_span(vecs, target) is not None
