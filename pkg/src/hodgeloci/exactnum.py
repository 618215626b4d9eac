"""Exact rational arithmetic and linear algebra over Q.

Integers are Python ints (arbitrary precision); rationals are ``gmpy2.mpq``,
which is always stored in lowest terms with a positive denominator.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq, mpz

Rational = type(mpq(0))
ZERO = mpq(0)
ONE = mpq(1)


class DimensionError(ValueError):
    pass


def to_rational(x) -> "mpq":
    """Coerce int, Fraction, mpq or a string like '3/7' to an mpq."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            p, q = s.split("/")
            return mpq(int(p), int(q))
        return mpq(int(s))
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or string instead")
    return mpq(x)


def rational_str(x) -> str:
    """Decimal 'p/q' form ('p' when the denominator is 1)."""
    x = to_rational(x)
    if x.denominator == 1:
        return str(int(x.numerator))
    return f"{int(x.numerator)}/{int(x.denominator)}"


class RatMatrix:
    """Immutable dense matrix over Q, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        ent = tuple(to_rational(e) for e in entries)
        if len(ent) != rows * cols:
            raise DimensionError(f"expected {rows * cols} entries, got {len(ent)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch")
        return RatMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def scale(self, c) -> "RatMatrix":
        c = to_rational(c)
        return RatMatrix(self.rows, self.cols, [c * a for a in self.entries])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionError("shape mismatch")
        ocols = [other.entries[j::other.cols] for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                out.append(sum((a * b for a, b in zip(r, c) if a and b), ZERO))
        return RatMatrix(self.rows, other.cols, out)

    def is_symmetric(self) -> bool:
        return self.is_square and all(self[i, j] == self[j, i]
                                      for i in range(self.rows) for j in range(i))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other):
        return (isinstance(other, RatMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols})"


def _integer_rows(m: RatMatrix) -> list[list]:
    """Rows scaled by their denominators' lcm, as lists of mpz."""
    out = []
    for i in range(m.rows):
        r = m.row(i)
        den = mpz(1)
        for a in r:
            if a:
                den = gmpy2.lcm(den, a.denominator)
        out.append([mpz(a.numerator) * (den // a.denominator) for a in r])
    return out


def _row_content(r) -> "mpz":
    g = mpz(0)
    for a in r:
        if a:
            g = gmpy2.gcd(g, a)
            if g == 1:
                break
    return g


def rank(m: RatMatrix) -> int:
    """Exact rank by fraction-free elimination on integer rows.

    Columns are scanned left to right; the pivot is the first row (in the
    current order) with a nonzero entry in that column.  Rows are divided by
    their content after each step, which keeps entries small.
    """
    rows = [r for r in _integer_rows(m) if any(r)]
    rk = 0
    for col in range(m.cols):
        piv = None
        for idx in range(rk, len(rows)):
            if rows[idx][col]:
                piv = idx
                break
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = rows[rk]
        a = p[col]
        for idx in range(rk + 1, len(rows)):
            r = rows[idx]
            b = r[col]
            if not b:
                continue
            g = gmpy2.gcd(a, b)
            ca, cb = a // g, b // g
            nr = [ca * x - cb * y for x, y in zip(r, p)]
            cont = _row_content(nr)
            if cont > 1:
                nr = [x // cont for x in nr]
            rows[idx] = nr
        rk += 1
        if rk == len(rows):
            break
    return rk


def determinant(m: RatMatrix):
    """Exact determinant via Bareiss elimination (Leibniz sign convention)."""
    if not m.is_square:
        raise DimensionError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return ONE
    rows = _integer_rows(m)
    scale = mpz(1)
    for i in range(n):
        r = m.row(i)
        den = mpz(1)
        for a in r:
            if a:
                den = gmpy2.lcm(den, a.denominator)
        scale *= den
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if not rows[k][k]:
            swap = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if swap is None:
                return ZERO
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pk = rows[k]
        akk = pk[k]
        for i in range(k + 1, n):
            ri = rows[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * pk[j]) // prev
            ri[k] = mpz(0)
        prev = akk
    return mpq(sign * rows[n - 1][n - 1], scale)


def rref(m: RatMatrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    rows = [list(m.row(i)) for i in range(m.rows)]
    pivots = []
    r = 0
    for col in range(m.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def right_kernel_basis(m: RatMatrix) -> list[list]:
    """Basis of {v : m v = 0}, one vector per free column."""
    red, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [ZERO] * m.cols
        v[free] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def left_kernel_basis(m: RatMatrix) -> list[list]:
    """Basis of {v : v m = 0}; its size is rows - rank(m)."""
    return right_kernel_basis(m.transpose())


def solve_in_span(vectors: Sequence[Sequence], target: Sequence):
    """Coefficients c with sum c_i vectors_i = target, or None."""
    if not vectors:
        return [] if not any(target) else None
    n = len(target)
    aug = RatMatrix(n, len(vectors) + 1,
                    [(vectors[j][i] if j < len(vectors) else target[i])
                     for i in range(n) for j in range(len(vectors) + 1)])
    red, pivots = rref(aug)
    if pivots and pivots[-1] == len(vectors):
        return None
    c = [ZERO] * len(vectors)
    for row, pc in zip(red, pivots):
        c[pc] = row[-1]
    return c


def independent_subset(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal independent subset, greedy in input order."""
    if not vectors:
        return []
    m = RatMatrix.from_rows(vectors).transpose()
    _, pivots = rref(m)
    return pivots


# ---------------------------------------------------------------------------
# univariate polynomials over Q


class UniPoly:
    """Dense univariate polynomial over Q, coefficients low to high."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [to_rational(a) for a in coeffs]
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def t(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = other if isinstance(other, UniPoly) else UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-a for a in self.coeffs])

    def __sub__(self, other):
        other = other if isinstance(other, UniPoly) else UniPoly([other])
        return self + (-other)

    def __mul__(self, other):
        other = other if isinstance(other, UniPoly) else UniPoly([other])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.coeffs[-1]
        quot = [ZERO] * max(0, len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c:
                f = c / lc
                quot[i - dq] = f
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= f * b
        return UniPoly(quot), UniPoly(rem)

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, x):
        x = to_rational(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def leading_coefficient(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def valuation(self) -> int:
        """Multiplicity of 0 as a root (order of vanishing at t=0)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                s = rational_str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{rational_str(abs(c))}*{mono}"
            parts.append(("-" if c < 0 else "+") + s)
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out

    def __repr__(self):
        return f"UniPoly({self})"

    def _sympy(self):
        import sympy
        t = sympy.Symbol("t")
        return sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator))
                           for c in reversed(self.coeffs)], t, domain="QQ")

    def factorization(self) -> tuple["mpq", list[tuple[list, int]]]:
        """Irreducible factorization over Q: (content, [(coeffs low->high, mult)])."""
        if self.is_zero():
            raise ValueError("factorization of the zero polynomial")
        content, factors = self._sympy().factor_list()
        out = []
        for fac, mult in factors:
            cs = [to_rational(str(c)) for c in reversed(fac.all_coeffs())]
            out.append((cs, int(mult)))
        return to_rational(str(content)), out

    def rational_roots(self) -> list[tuple["mpq", int]]:
        """Rational roots with multiplicity, sorted ascending."""
        if self.degree <= 0:
            return []
        _, facs = self.factorization()
        roots = []
        for cs, mult in facs:
            if len(cs) == 2:
                root = -cs[0] / cs[1]
                if self(root) != 0:
                    raise ArithmeticError("factorization returned a non-root")
                roots.append((root, mult))
        return sorted(roots)

    def irrational_factor_degrees(self) -> list[tuple[int, int]]:
        """(degree, multiplicity) of irreducible factors of degree >= 2."""
        if self.degree <= 1:
            return []
        _, facs = self.factorization()
        return sorted((len(cs) - 1, mult) for cs, mult in facs if len(cs) > 2)


def interpolate(points: Sequence, values: Sequence) -> UniPoly:
    """Newton interpolation through distinct rational points."""
    xs = [to_rational(p) for p in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    coef = [to_rational(v) for v in values]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly([coef[-1]]) if coef else UniPoly()
    for i in range(n - 2, -1, -1):
        poly = poly * UniPoly([-xs[i], 1]) + coef[i]
    return poly


def _det_symbolic(a1: RatMatrix, a2: RatMatrix) -> UniPoly:
    """det(a1 + t a2) by Bareiss elimination over Q[t] (exact divisions)."""
    n = a1.rows
    if n == 0:
        return UniPoly([1])
    m = [[UniPoly([a1[i, j], a2[i, j]]) for j in range(n)] for i in range(n)]
    sign = 1
    prev = UniPoly([1])
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return UniPoly()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        akk = m[k][k]
        for i in range(k + 1, n):
            aik = m[i][k]
            for j in range(k + 1, n):
                m[i][j] = (akk * m[i][j] - aik * m[k][j]).exact_div(prev)
            m[i][k] = UniPoly()
        prev = akk
    return m[n - 1][n - 1] * sign


SYMBOLIC_CROSSCHECK_MAX = 8


def univariate_det(a1: RatMatrix, a2: RatMatrix, strategy: str = "interpolate",
                   crosscheck: bool | None = None) -> UniPoly:
    """det(a1 + t*a2) as an exact polynomial in t.

    The default evaluates at t = 0..n with exact determinants and
    interpolates.  For n <= SYMBOLIC_CROSSCHECK_MAX the result is compared with
    fraction-free elimination over Q[t].
    """
    if not (a1.is_square and a2.is_square) or a1.rows != a2.rows:
        raise DimensionError("pencil matrices must be square of equal size")
    n = a1.rows
    if strategy == "symbolic":
        return _det_symbolic(a1, a2)
    if strategy != "interpolate":
        raise ValueError(f"unknown strategy {strategy!r}")
    nodes = list(range(n + 1))
    vals = [determinant(a1 + a2.scale(t0)) for t0 in nodes]
    poly = interpolate(nodes, vals)
    if crosscheck is None:
        crosscheck = n <= SYMBOLIC_CROSSCHECK_MAX
    if crosscheck:
        sym = _det_symbolic(a1, a2)
        if sym != poly:
            raise ArithmeticError("interpolated and symbolic determinants disagree")
    return poly
