"""Exact arithmetic foundations: rationals, univariate polynomials over Q,
factorization, and number field arithmetic Q[x]/(q).

Every computation in this package is exact. The scalar type is
``fractions.Fraction`` (arbitrary precision, always normalized); this module
adds the polynomial and number field layers on top of it:

* ``UniPoly``: dense immutable univariate polynomials over Q,
* ``poly_gcd``: monic Euclidean gcd,
* ``factor_over_Q``: complete factorization into monic irreducible rational
  factors times a rational constant,
* ``NumberField`` / ``NFElement``: arithmetic in Q[x]/(q) for q irreducible,
  used to work at an algebraic singular point without picking a complex
  embedding,
* ``rational_roots_over_nf``: rational roots (with multiplicity) of a
  polynomial whose coefficients live in a number field.

Polynomials are represented densely, lowest degree first. The zero
polynomial has an empty coefficient tuple and degree -1.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import sympy

Rational = Fraction

__all__ = [
    "Rational",
    "parse_rational",
    "format_rational",
    "UniPoly",
    "poly_gcd",
    "factor_over_Q",
    "NumberField",
    "NFElement",
    "nfpoly_eval",
    "nfpoly_normalize",
    "rational_roots_over_nf",
]


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational from a decimal string "n" or "n/d"."""
    s = text.strip()
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(q: Fraction) -> str:
    """Format an exact rational as "n" or "n/d" with decimal integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class UniPoly:
    """Dense univariate polynomial over Q, coefficients lowest degree first.

    Instances are immutable and hashable. Arithmetic returns new objects and
    always strips trailing zero coefficients, so ``degree`` is exact.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(c) -> "UniPoly":
        return UniPoly([_as_fraction(c)])

    @staticmethod
    def x_power(n: int, c=1) -> "UniPoly":
        """The monomial c * t^n."""
        return UniPoly([0] * n + [c])

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == UniPoly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- total order used for canonical factor sorting ----------------------

    def sort_key(self):
        return (self.degree, self.coeffs)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            other = UniPoly.constant(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "UniPoly":
        return self + (-other if isinstance(other, UniPoly) else UniPoly.constant(-_as_fraction(other)))

    def __rsub__(self, other) -> "UniPoly":
        return (-self) + other

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return UniPoly([a * c for a in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if not isinstance(other, UniPoly):
            raise TypeError("divmod expects a UniPoly divisor")
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd, dr = other.degree, len(rem) - 1
        if dr < dd:
            return UniPoly(), self
        inv_lead = 1 / other.leading()
        quot = [Fraction(0)] * (dr - dd + 1)
        for k in range(dr - dd, -1, -1):
            c = rem[k + dd] * inv_lead
            if c:
                quot[k] = c
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quot), UniPoly(rem)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out, base = UniPoly.constant(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- calculus and evaluation ---------------------------------------------

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Evaluate by Horner's rule; x may be a Fraction or an NFElement.

        For an NFElement argument the rational coefficients are coerced into
        the field automatically by NFElement's arithmetic.
        """
        if not self.coeffs:
            return Fraction(0) if isinstance(x, (int, Fraction)) else x * 0
        if len(self.coeffs) == 1:
            c0 = self.coeffs[0]
            return c0 if isinstance(x, (int, Fraction)) else x * 0 + c0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def shift(self, a) -> "UniPoly":
        """Taylor shift: return p(t + a) as a polynomial in t."""
        a = _as_fraction(a)
        out = [Fraction(0)] * len(self.coeffs)
        for c in reversed(self.coeffs):
            # multiply current out by (t + a) and add c: synthetic Horner
            prev = list(out)
            for i in range(len(out) - 1, 0, -1):
                out[i] = prev[i - 1] + prev[i] * a
            out[0] = prev[0] * a + c
        return UniPoly(out)

    def content_and_primitive(self) -> tuple[Fraction, "UniPoly"]:
        """Write p = c * q with c in Q, q integer primitive, leading > 0."""
        if self.is_zero():
            return Fraction(0), UniPoly()
        den = lcm(*[c.denominator for c in self.coeffs])
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), UniPoly([Fraction(v // g) for v in ints])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.leading())

    def valuation(self) -> int:
        """Order of vanishing at t = 0 (degree of lowest nonzero term)."""
        if self.is_zero():
            raise ValueError("zero polynomial has infinite valuation")
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise AssertionError("unreachable")

    def __repr__(self) -> str:
        if self.is_zero():
            return "UniPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(format_rational(c))
            else:
                co = "" if c == 1 else ("-" if c == -1 else format_rational(c) + "*")
                parts.append(f"{co}t^{i}" if i > 1 else f"{co}t")
        return "UniPoly(" + " + ".join(parts).replace("+ -", "- ") + ")"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd of two rational polynomials (Euclid's algorithm).

    gcd(0, 0) = 0; otherwise the result is monic so the answer is canonical.
    """
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


_t = sympy.Symbol("t")


def factor_over_Q(p: UniPoly) -> tuple[Fraction, list[tuple[UniPoly, int]]]:
    """Factor p over Q as  constant * prod(f_i ^ m_i)  with each f_i monic
    irreducible in Q[t].

    The factor list is sorted deterministically by (degree, coefficients).
    The constant times the product of factor powers reconstructs p exactly.

    The heavy lifting (square-free decomposition plus Zassenhaus-style
    lift and recombine over a small prime) is delegated to sympy's integer
    polynomial factorization, which implements exactly that method; the
    result is normalized to monic rational factors here and re-verified by
    multiplication in the test suite.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree == 0:
        return p.coeffs[0], []
    content, prim = p.content_and_primitive()
    sp = sympy.Poly([int(c) for c in reversed(prim.coeffs)], _t, domain="ZZ")
    z_content, z_factors = sp.factor_list()
    const = content * Fraction(int(z_content))
    out: list[tuple[UniPoly, int]] = []
    for fac, mult in z_factors:
        cs = [Fraction(int(c)) for c in reversed(fac.all_coeffs())]
        f = UniPoly(cs)
        lead = f.leading()
        const *= lead ** mult
        out.append((f.monic(), int(mult)))
    out.sort(key=lambda fm: fm[0].sort_key())
    return const, out


class NumberField:
    """The field K = Q[x]/(q(x)) for a monic irreducible q over Q.

    Elements are coordinate vectors in the power basis 1, x, ..., x^(d-1).
    The generator ``self.gen`` is the class of x, an exact root of q.
    """

    __slots__ = ("modulus", "degree", "_reduction_rows")

    def __init__(self, modulus: UniPoly, check_irreducible: bool = True):
        if modulus.degree < 1:
            raise ValueError("number field modulus must have degree >= 1")
        modulus = modulus.monic()
        if check_irreducible:
            _, factors = factor_over_Q(modulus)
            if len(factors) != 1 or factors[0][1] != 1:
                raise ValueError("number field modulus must be irreducible over Q")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "degree", modulus.degree)
        # x^(d+k) reduced mod q, for k = 0 .. d-2 (enough for products).
        d = modulus.degree
        rows = []
        cur = [-c for c in modulus.coeffs[:-1]]  # x^d
        rows.append(tuple(cur))
        for _ in range(d - 2):
            nxt = [Fraction(0)] + cur[: d - 1]
            top = cur[d - 1]
            if top:
                for i in range(d):
                    nxt[i] -= top * modulus.coeffs[i]
            cur = nxt
            rows.append(tuple(cur))
        object.__setattr__(self, "_reduction_rows", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("NumberField is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash(("NumberField", self.modulus))

    def __repr__(self) -> str:
        return f"NumberField({self.modulus!r})"

    # -- element constructors ----------------------------------------------

    def element(self, coords: Sequence[Fraction | int]) -> "NFElement":
        cs = [_as_fraction(c) for c in coords]
        if len(cs) > self.degree:
            raise ValueError("coordinate vector longer than field degree")
        cs += [Fraction(0)] * (self.degree - len(cs))
        return NFElement(self, tuple(cs))

    def from_rational(self, c) -> "NFElement":
        return self.element([_as_fraction(c)])

    @property
    def zero(self) -> "NFElement":
        return self.from_rational(0)

    @property
    def one(self) -> "NFElement":
        return self.from_rational(1)

    @property
    def gen(self) -> "NFElement":
        """The class of x: an exact root of the modulus."""
        if self.degree == 1:
            return self.from_rational(-self.modulus.coeffs[0])
        return self.element([0, 1])

    def random_element(self, rng: random.Random, span: int = 10) -> "NFElement":
        return self.element([Fraction(rng.randint(-span, span), rng.randint(1, 4)) for _ in range(self.degree)])


class NFElement:
    """An element of a NumberField, stored as power basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple[Fraction, ...]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("NFElement is immutable")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    def _coerce(self, other) -> "NFElement | None":
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise ValueError("mixing elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self) -> int:
        return hash((self.field, self.coords))

    def __add__(self, other) -> "NFElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> "NFElement":
        return NFElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other) -> "NFElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other) -> "NFElement":
        return (-self) + other

    def __mul__(self, other) -> "NFElement":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return NFElement(self.field, tuple(a * c for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return NFElement(self.field, (self.coords[0] * o.coords[0],))
        raw = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        raw[i + j] += a * b
        out = raw[:d]
        rows = self.field._reduction_rows
        for k in range(d, 2 * d - 1):
            c = raw[k]
            if c:
                row = rows[k - d]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return NFElement(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in number field")
        if self.is_rational():
            return self.field.from_rational(1 / self.coords[0])
        a = UniPoly(self.coords)
        b = self.field.modulus
        # extended gcd: s*a + t*b = g (g constant since b irreducible)
        s0, s1 = UniPoly.constant(1), UniPoly()
        r0, r1 = a, b
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        assert r0.degree == 0, "modulus not irreducible or element not reduced"
        inv_poly = s0 * (1 / r0.coeffs[0])
        inv_poly = inv_poly % self.field.modulus
        return self.field.element(list(inv_poly.coeffs))

    def __truediv__(self, other) -> "NFElement":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "NFElement":
        return self.inverse() * other

    def __repr__(self) -> str:
        return f"NFElement({list(self.coords)})"


def nfpoly_eval(coeffs: Sequence[NFElement], x) -> NFElement:
    """Evaluate a polynomial with NFElement coefficients (lowest first) at x.

    x may be a Fraction, int, or NFElement of the same field.
    """
    if not coeffs:
        raise ValueError("empty coefficient list")
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def nfpoly_normalize(coeffs: Sequence[NFElement]) -> list[NFElement]:
    """Strip trailing zero coefficients (returns a list, possibly empty)."""
    out = list(coeffs)
    while out and out[-1].is_zero():
        out.pop()
    return out


def rational_roots_over_nf(coeffs: Sequence[NFElement]) -> list[tuple[Fraction, int]]:
    """Rational roots, with multiplicities, of a polynomial over a number field.

    The polynomial is given by NFElement coefficients (lowest degree first).
    Each coordinate of the coefficient vector defines a rational "coordinate
    polynomial"; a rational number is a root of the full polynomial exactly
    when it is a common root of all coordinate polynomials, so candidates are
    read off the linear factors of their gcd over Q. Each candidate is
    verified by exact substitution, and its multiplicity found by repeated
    deflation. Roots are returned sorted increasing.
    """
    cs = nfpoly_normalize(coeffs)
    if not cs:
        raise ValueError("rational_roots_over_nf: zero polynomial")
    field = cs[0].field
    d = field.degree
    coord_polys = [UniPoly([c.coords[i] for c in cs]) for i in range(d)]
    g = UniPoly()
    for cp in coord_polys:
        g = poly_gcd(g, cp)
        if g.degree == 0:
            return []
    _, factors = factor_over_Q(g)
    out = []
    for fac, _mult in factors:
        if fac.degree != 1:
            continue
        root = -fac.coeffs[0]
        # verify and count multiplicity by exact deflation over the field
        mult = 0
        work = list(cs)
        while len(work) > 1:
            if not nfpoly_eval(work, root).is_zero():
                break
            # synthetic division by (lambda - root): Horner carries are the
            # quotient coefficients highest-first, the last carry would be the
            # (zero) remainder
            carries = []
            carry = field.zero
            for c in reversed(work):
                carry = c + carry * root
                carries.append(carry)
            work = list(reversed(carries[:-1]))
            mult += 1
        if mult > 0:
            out.append((root, mult))
    out.sort(key=lambda rm: rm[0])
    return out
