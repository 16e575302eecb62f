"""Truncated exact power series and total-degree-truncated multivariate
polynomials.

``TruncatedSeries`` holds the coefficients c_0 .. c_M of a power series in t
with exact rational entries. Quantum periods are normalized power series
(c_0 = 1, c_1 = 0); use :meth:`TruncatedSeries.quantum_period` to get that
validated. The regularization d! * c_d and the Cauchy product are the two
series operations everything downstream builds on.

``MultiPolyTrunc`` is a sparse polynomial in r variables p_1 .. p_r truncated
at a fixed total degree bound. It exists for one job: evaluating period
formulas produced by the Abelian/non-Abelian correspondence, where the period
is read off as the coefficient of the Vandermonde polynomial
prod_{i<j} (p_j - p_i) in a big multi-index sum. Denominator factors
1/(p + k)^e are expanded as k^(-e) * sum_i binom(-e, i) (p/k)^i and truncated
at the bound.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterable, Sequence

from .exactnum import format_rational, parse_rational

__all__ = [
    "TruncatedSeries",
    "exp_linear_normalize",
    "MultiPolyTrunc",
    "vandermonde_poly",
    "extract_leading_vandermonde",
]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class TruncatedSeries:
    """Exact power series in t known through degree ``truncation_order``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int]):
        cs = tuple(_as_fraction(c) for c in coeffs)
        if not cs:
            raise ValueError("a truncated series needs at least the constant term")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def quantum_period(cls, coeffs: Iterable[Fraction | int]) -> "TruncatedSeries":
        """Validating constructor for quantum period series: c_0=1, c_1=0."""
        s = cls(coeffs)
        if s.coeffs[0] != 1:
            raise ValueError(f"quantum period must have c_0 = 1, got {s.coeffs[0]}")
        if s.truncation_order >= 1 and s.coeffs[1] != 0:
            raise ValueError(f"quantum period must have c_1 = 0, got c_1 = {s.coeffs[1]}")
        return s

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, d: int) -> Fraction:
        if not 0 <= d <= self.truncation_order:
            raise IndexError(f"coefficient {d} beyond truncation order {self.truncation_order}")
        return self.coeffs[d]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.truncation_order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1])

    def regularize(self) -> "TruncatedSeries":
        """The regularization: coefficient d becomes d! * c_d."""
        return TruncatedSeries([factorial(d) * c for d, c in enumerate(self.coeffs)])

    def mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Cauchy product, truncated at the smaller truncation order."""
        n = min(self.truncation_order, other.truncation_order)
        a, b = self.coeffs, other.coeffs
        out = []
        for d in range(n + 1):
            acc = Fraction(0)
            for i in range(d + 1):
                if a[i] and b[d - i]:
                    acc += a[i] * b[d - i]
            out.append(acc)
        return TruncatedSeries(out)

    __mul__ = mul

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self) -> str:
        head = ", ".join(format_rational(c) for c in self.coeffs[:6])
        tail = ", ..." if len(self.coeffs) > 6 else ""
        return f"TruncatedSeries([{head}{tail}], order={self.truncation_order})"

    # -- the series file format ---------------------------------------------

    def to_text(self) -> str:
        """Serialize: a truncation_order header, then one exact rational per
        line ("n" or "n/d" in decimal), ascending degree."""
        lines = [f"truncation_order: {self.truncation_order}"]
        lines.extend(format_rational(c) for c in self.coeffs)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TruncatedSeries":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines or not lines[0].startswith("truncation_order:"):
            raise ValueError("series file must start with a 'truncation_order:' line")
        order = int(lines[0].split(":", 1)[1].strip())
        coeffs = [parse_rational(ln) for ln in lines[1:]]
        if len(coeffs) != order + 1:
            raise ValueError(
                f"series file declares truncation order {order} but lists {len(coeffs)} coefficients"
            )
        return cls(coeffs)


def exp_linear_normalize(series: TruncatedSeries) -> tuple[Fraction, TruncatedSeries]:
    """Remove the linear term of a unital series by an exponential twist.

    Given f with f(0) = 1, return the unique constant c and the series
    exp(-c t) * f(t), which is 1 + O(t^2). This is how the degree-1 term
    produced by non-free presentations is normalized away.
    """
    if series.coeffs[0] != 1:
        raise ValueError("exp_linear_normalize expects a series with constant term 1")
    if series.truncation_order < 1:
        return Fraction(0), series
    c = series.coeffs[1]
    if c == 0:
        return Fraction(0), series
    n = series.truncation_order
    expo = [Fraction((-c) ** d, factorial(d)) for d in range(n + 1)]
    out = TruncatedSeries(expo).mul(series)
    assert out.coeffs[0] == 1 and out.coeffs[1] == 0
    return c, out


class MultiPolyTrunc:
    """Polynomial in p_1 .. p_nvars truncated at total degree <= bound.

    Terms are a dict mapping exponent tuples to nonzero Fractions. All
    operations silently drop monomials above the bound; the bound and the
    variable count must agree between operands.
    """

    __slots__ = ("nvars", "bound", "terms")

    def __init__(self, nvars: int, bound: int, terms: dict | None = None):
        self.nvars = nvars
        self.bound = bound
        self.terms = {} if terms is None else terms

    @classmethod
    def constant(cls, nvars: int, bound: int, c) -> "MultiPolyTrunc":
        c = _as_fraction(c)
        zero = (0,) * nvars
        return cls(nvars, bound, {zero: c} if c else {})

    @classmethod
    def linear(cls, nvars: int, bound: int, const, var_coeffs: Sequence[Fraction | int]) -> "MultiPolyTrunc":
        """The affine polynomial const + sum_j var_coeffs[j] * p_(j+1)."""
        if len(var_coeffs) != nvars:
            raise ValueError("wrong number of variable coefficients")
        terms = {}
        c = _as_fraction(const)
        if c and bound >= 0:
            terms[(0,) * nvars] = c
        if bound >= 1:
            for j, v in enumerate(var_coeffs):
                v = _as_fraction(v)
                if v:
                    e = [0] * nvars
                    e[j] = 1
                    terms[tuple(e)] = v
        return cls(nvars, bound, terms)

    @classmethod
    def inverse_linear_power(cls, nvars: int, bound: int, var: int, k: int, e: int) -> "MultiPolyTrunc":
        """Truncated expansion of 1 / (p_var + k)^e for an integer k >= 1.

        Uses (p + k)^(-e) = k^(-e) sum_i binom(-e, i) (p/k)^i, i.e. the i-th
        coefficient is (-1)^i C(e+i-1, i) / k^(e+i).
        """
        if k < 1:
            raise ValueError("inverse_linear_power needs k >= 1")
        terms = {}
        for i in range(bound + 1):
            coef = Fraction((-1) ** i * comb(e + i - 1, i), k ** (e + i))
            exps = [0] * nvars
            exps[var] = i
            terms[tuple(exps)] = coef
        return cls(nvars, bound, terms)

    def _check(self, other: "MultiPolyTrunc"):
        if self.nvars != other.nvars or self.bound != other.bound:
            raise ValueError("MultiPolyTrunc operands must share nvars and bound")

    def __add__(self, other: "MultiPolyTrunc") -> "MultiPolyTrunc":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e, Fraction(0)) + c
            if v:
                terms[e] = v
            elif e in terms:
                del terms[e]
        return MultiPolyTrunc(self.nvars, self.bound, terms)

    def __mul__(self, other) -> "MultiPolyTrunc":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return MultiPolyTrunc(self.nvars, self.bound)
            return MultiPolyTrunc(self.nvars, self.bound, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        bound = self.bound
        out: dict = {}
        for ea, ca in a.items():
            da = sum(ea)
            for eb, cb in b.items():
                if da + sum(eb) > bound:
                    continue
                key = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(key)
                out[key] = ca * cb if v is None else v + ca * cb
        return MultiPolyTrunc(self.nvars, bound, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def homogeneous_part(self, degree: int) -> dict:
        return {e: c for e, c in self.terms.items() if sum(e) == degree}

    def max_total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __repr__(self) -> str:
        return f"MultiPolyTrunc(nvars={self.nvars}, bound={self.bound}, {len(self.terms)} terms)"


def vandermonde_poly(nvars: int) -> MultiPolyTrunc:
    """prod_{1 <= i < j <= nvars} (p_j - p_i), exact, as a MultiPolyTrunc
    with bound nvars*(nvars-1)/2 (its exact total degree).

    Computed from the determinant expansion: the coefficient of
    p_1^s(1) ... p_n^s(n) is the sign of the permutation s of (0 .. n-1).
    """
    bound = nvars * (nvars - 1) // 2
    terms = {}
    for perm in permutations(range(nvars)):
        inv = sum(1 for i, j in combinations(range(nvars), 2) if perm[i] > perm[j])
        terms[perm] = Fraction((-1) ** inv)
    return MultiPolyTrunc(nvars, bound, terms)


def extract_leading_vandermonde(poly: MultiPolyTrunc, strict: bool = False) -> Fraction:
    """Coefficient of the Vandermonde in a polynomial whose top-degree part
    is antisymmetric.

    The degree-n(n-1)/2 antisymmetric polynomials in n variables form a line
    spanned by prod_{i<j}(p_j - p_i), whose expansion contains the monomial
    p_2 p_3^2 ... p_n^(n-1) with coefficient +1; reading off that single
    monomial therefore gives the Vandermonde coefficient.

    With strict=True also assert the two structural facts this relies on:
    every coefficient of total degree < n(n-1)/2 vanishes, and the top-degree
    part is exactly (extracted coefficient) * Vandermonde.
    """
    n = poly.nvars
    top = n * (n - 1) // 2
    if poly.bound < top:
        raise ValueError("polynomial truncated below the Vandermonde degree")
    coeff = poly.coefficient(tuple(range(n)))
    if strict:
        for e, c in poly.terms.items():
            if sum(e) < top and c:
                raise AssertionError(f"sub-Vandermonde coefficient survives at {e}: {c}")
        expected = {e: coeff * c for e, c in vandermonde_poly(n).terms.items() if coeff}
        actual = poly.homogeneous_part(top)
        if expected != actual:
            raise AssertionError("top-degree part is not a multiple of the Vandermonde")
    return coeff
