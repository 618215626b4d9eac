"""Sparse multivariate polynomials over Q in a named, graded ring.

Monomials are exponent tuples.  A ring carries variable names, positive
integer weights and a monomial order; polynomials keep their terms in a dict
and sort lazily in that order.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exactnum import ZERO, ONE, rational_str, to_rational

Monomial = tuple


@dataclass(frozen=True)
class MonomialOrder:
    """kind is 'degrevlex', 'lex' or 'block'; block orders eliminate the
    first ``split`` variables (unit-weight degrevlex inside each block)."""
    kind: str = "degrevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.split < 1:
            raise ValueError("block order needs split >= 1")

    def __str__(self):
        return f"block({self.split})" if self.kind == "block" else self.kind


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def block_order(split: int) -> MonomialOrder:
    return MonomialOrder("block", split)


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class RingCtx:
    names: tuple
    weights: tuple = None
    order: MonomialOrder = DEGREVLEX
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        names = tuple(self.names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise ValueError(f"bad variable name {n!r}")
        weights = tuple(self.weights) if self.weights is not None else (1,) * len(names)
        if len(weights) != len(names) or any(int(w) != w or w < 1 for w in weights):
            raise ValueError("weights must be positive integers, one per variable")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "weights", tuple(int(w) for w in weights))
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})
        if self.order.kind == "block" and self.order.split >= len(names):
            raise ValueError("block split must leave a nonempty second block")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def with_order(self, order: MonomialOrder) -> "RingCtx":
        return RingCtx(self.names, self.weights, order)

    def var(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): ONE})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = to_rational(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): to_rational(coeff)})

    def degree_of(self, exps: Sequence[int]) -> int:
        return sum(w * e for w, e in zip(self.weights, exps))

    def sort_key(self, exps: Sequence[int]):
        """Key increasing with the monomial order."""
        kind = self.order.kind
        if kind == "degrevlex":
            return (self.degree_of(exps), tuple(-e for e in reversed(exps)))
        if kind == "lex":
            return tuple(exps)
        s = self.order.split
        a, b = exps[:s], exps[s:]
        return (sum(a), tuple(-e for e in reversed(a)), sum(b), tuple(-e for e in reversed(b)))

    def monomials_of_degree(self, deg: int) -> list[Monomial]:
        """All monomials of weighted degree deg, descending in the order."""
        out = []
        n = self.nvars
        w = self.weights

        def rec(i, left, cur):
            if i == n - 1:
                if left % w[i] == 0:
                    out.append(tuple(cur + [left // w[i]]))
                return
            for e in range(left // w[i], -1, -1):
                rec(i + 1, left - e * w[i], cur + [e])

        if deg >= 0:
            rec(0, deg, [])
        out.sort(key=self.sort_key, reverse=True)
        return out

    def parse(self, text: str) -> "Polynomial":
        return parse(self, text)

    def __str__(self):
        if all(w == 1 for w in self.weights):
            return " ".join(self.names)
        return " ".join(f"{n}:{w}" for n, w in zip(self.names, self.weights))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial: dict exponent-tuple -> nonzero mpq."""

    __slots__ = ("ring", "terms", "_sorted", "_hash")

    def __init__(self, ring: RingCtx, terms: Mapping | None = None):
        self.ring = ring
        if terms:
            t = {m: to_rational(c) for m, c in terms.items()}
            self.terms = {m: c for m, c in t.items() if c}
        else:
            self.terms = {}
        self._sorted = None
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._sorted = None
        p._hash = None
        return p

    # --- structure -------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        """Terms in descending monomial order."""
        if self._sorted is None:
            key = self.ring.sort_key
            self._sorted = sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)
        return self._sorted

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return self.sorted_terms()[0][0]

    def leading_coefficient(self):
        if not self.terms:
            return ZERO
        return self.sorted_terms()[0][1]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), ZERO)

    def degrees(self) -> set:
        return {self.ring.degree_of(m) for m in self.terms}

    def homogeneous_degree(self):
        """The common weighted degree of all terms, else None (zero -> None)."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None or not self.terms

    def total_degree(self) -> int:
        return max(self.degrees()) if self.terms else -1

    def variables(self) -> set[int]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    # --- arithmetic ------------------------------------------------------
    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch("operands live in different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, ZERO) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Polynomial._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, ZERO) + c1 * c2
        return Polynomial._raw(self.ring, {m: c for m, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = to_rational(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: c * v for m, v in self.terms.items()})

    def mul_monomial(self, mono: Monomial, c=ONE) -> "Polynomial":
        c = to_rational(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {tuple(a + b for a, b in zip(m, mono)): c * v
                                           for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    def derivative(self, var) -> "Polynomial":
        i = var if isinstance(var, int) else self.ring.index(var)
        t = {}
        for m, c in self.terms.items():
            if m[i]:
                nm = list(m)
                nm[i] -= 1
                t[tuple(nm)] = c * m[i]
        return Polynomial._raw(self.ring, t)

    def substitute(self, mapping: Mapping, target: RingCtx | None = None) -> "Polynomial":
        """Ring homomorphism sending variables (by name or index) to polynomials.

        Unmapped variables go to the same-named variable of ``target``.
        """
        target = target or self.ring
        images = []
        for i, name in enumerate(self.ring.names):
            img = mapping.get(name, mapping.get(i))
            if img is None:
                img = target.var(name)
            elif not isinstance(img, Polynomial):
                img = target.const(img)
            elif img.ring != target:
                raise RingMismatch(f"image of {name} is not in the target ring")
            images.append(img)
        powers: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            return powers[key]

        acc = {}
        for m, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            for mm, cc in term.terms.items():
                acc[mm] = acc.get(mm, ZERO) + cc
        return Polynomial._raw(target, {m: c for m, c in acc.items() if c})

    def evaluate(self, values: Mapping):
        """Evaluate at a rational point given by name or index."""
        pt = []
        for i, name in enumerate(self.ring.names):
            v = values.get(name, values.get(i))
            if v is None:
                raise KeyError(f"no value for {name}")
            pt.append(to_rational(v))
        total = ZERO
        for m, c in self.terms.items():
            term = c
            for x, e in zip(pt, m):
                if e:
                    term *= x ** e
            total += term
        return total

    def to_ring(self, target: RingCtx) -> "Polynomial":
        """Move into a ring sharing variable names; missing names must not occur."""
        idx = []
        for i, name in enumerate(self.ring.names):
            idx.append(target._index.get(name))
        t = {}
        for m, c in self.terms.items():
            nm = [0] * target.nvars
            for i, e in enumerate(m):
                if e:
                    if idx[i] is None:
                        raise RingMismatch(f"variable {self.ring.names[i]} missing in target")
                    nm[idx[i]] = e
            t[tuple(nm)] = c
        return Polynomial._raw(target, t)

    def set_to_zero(self, names: Iterable) -> "Polynomial":
        """Drop every term involving one of the named variables."""
        drop = [self.ring.index(n) for n in names]
        return Polynomial._raw(self.ring, {m: c for m, c in self.terms.items()
                                           if not any(m[i] for i in drop)})

    # --- printing --------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def format_monomial(ring: RingCtx, m: Monomial) -> str:
    parts = []
    for name, e in zip(ring.names, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text: descending order, explicit '*', '^' powers."""
    if not p.terms:
        return "0"
    out = []
    for m, c in p.sorted_terms():
        mono = format_monomial(p.ring, m)
        a = abs(c)
        if not mono:
            body = rational_str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{rational_str(a)}*{mono}"
        sign = "-" if c < 0 else "+"
        out.append(body if (not out and sign == "+") else sign + body)
    return "".join(out)


def sum_polys(ring: RingCtx, polys: Iterable[Polynomial]) -> Polynomial:
    acc = {}
    for p in polys:
        for m, c in p.terms.items():
            acc[m] = acc.get(m, ZERO) + c
    return Polynomial._raw(ring, {m: c for m, c in acc.items() if c})


def jacobian_ideal_gens(f: Polynomial) -> list[Polynomial]:
    """All first partial derivatives of f."""
    return [f.derivative(i) for i in range(f.ring.nvars)]


def euler_identity_holds(f: Polynomial) -> bool:
    """sum_i w_i x_i df/dx_i == deg(f) f for weighted-homogeneous f."""
    d = f.homogeneous_degree()
    if d is None:
        return f.is_zero()
    r = f.ring
    lhs = sum_polys(r, (r.var(i) * f.derivative(i) * r.weights[i] for i in range(r.nvars)))
    return lhs == f.scale(d)


# ---------------------------------------------------------------------------
# parser


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1) is not None:
            toks.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in "+-*^()/":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            toks.append(("op", ch, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, ring: RingCtx, text: str):
        self.ring = ring
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect_op(self, ch):
        tok = self.take()
        if tok[0] != "op" or tok[1] != ch:
            self.error(f"expected {ch!r}", tok)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty expression")
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("int", "name") or tok[1] == "(":
                self.error("implicit multiplication is not allowed", tok)
            self.error(f"unexpected {tok[1]!r}", tok)
        return p

    def expr(self):
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "int":
                self.error("exponent must be a nonnegative integer", e)
            return base ** int(e[1])
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            num = int(val)
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "int":
                    self.error("'/' is only allowed between integer literals", den)
                if int(den[1]) == 0:
                    self.error("division by zero", den)
                return self.ring.const(to_rational(f"{num}/{den[1]}"))
            return self.ring.const(num)
        if kind == "name":
            if val not in self.ring._index:
                raise ParseError(f"unknown variable {val!r}", pos, self.text)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {val!r}", tok)


def parse(ring: RingCtx, text: str) -> Polynomial:
    """Parse a polynomial in the ring's variables.

    Grammar: integers, variable names, + - * ^ and parentheses; a/b only
    between integer literals; no implicit multiplication.
    """
    return _Parser(ring, text).parse()


def ring(names, weights=None, order: MonomialOrder = DEGREVLEX) -> RingCtx:
    """Convenience constructor; names may be a whitespace-separated string."""
    if isinstance(names, str):
        names = names.split()
    return RingCtx(tuple(names), weights, order)


def indexed_ring(prefix: str, n: int, start: int = 0, **kw) -> RingCtx:
    return ring([f"{prefix}{i}" for i in range(start, start + n)], **kw)


def all_monomials_up_to(nvars: int, maxdeg: int) -> list[Monomial]:
    return [m for m in itertools.product(range(maxdeg + 1), repeat=nvars) if sum(m) <= maxdeg]
