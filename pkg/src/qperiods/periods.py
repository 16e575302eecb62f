"""Quantum periods of four-dimensional Fano manifolds.

A quantum period is a power series G(t) = 1 + sum_{d >= 2} c_d t^d with
rational coefficients. This module evaluates such series exactly, either
from a structural description or from the closed-form expression attached
to a named family in the builtin catalog:

* toric manifolds presented by weight data (``period_toric``),
* complete intersections in toric manifolds (``period_toric_ci``),
* complete intersections in weighted projective space (``period_wps_ci``),
* products of lower-dimensional factors (``period_product``),
* named families with printed series formulas (``period_closed_form``),
  including the two families whose period is a Vandermonde coefficient
  (``period_flag_extraction``) and the three Strangeway fourfolds
  (``period_strangeway``).

Structural conventions. A toric manifold of Picard rank rho with
torus-invariant divisors D_1 .. D_N is presented by a rho x N integer
weight matrix; column i computes the pairing <beta, D_i> of a curve class
beta in H_2 = Z^rho. The anticanonical degree of beta is the sum of all
pairings, the Fano condition asks that degree to be strictly positive on
every nonzero beta with all pairings >= 0, and the period is

    G(t) = sum_beta t^deg(beta) / prod_i <beta, D_i>!

summed over the lattice points of the cone {all pairings >= 0}. Complete
intersections insert numerator factorials for the bundle pairings, lower
the degree accordingly and normalize away the resulting linear term with
an exponential twist; products multiply the factor series.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product as iter_product
from math import ceil, comb, floor, gcd, lcm

from .series import (
    MultiPolyTrunc,
    TruncatedSeries,
    exp_linear_normalize,
    extract_leading_vandermonde,
)

__all__ = [
    "harmonic",
    "DegreeAccumulator",
    "ToricData",
    "BundleData",
    "WpsCiData",
    "ManifoldSpec",
    "enumerate_beta",
    "period_toric",
    "period_toric_ci",
    "period_wps_ci",
    "period_product",
    "period_closed_form",
    "period_flag_extraction",
    "period_strangeway",
    "strangeway_c",
    "resolve",
    "catalog_entry",
    "catalog_names",
    "CatalogEntry",
]


# ---------------------------------------------------------------------------
# factorials, harmonic numbers and their common denominators

_FACTORIALS: list[int] = [1]


def _f(n: int) -> int:
    """n!, memoized in a growing table."""
    table = _FACTORIALS
    while len(table) <= n:
        table.append(table[-1] * len(table))
    return table[n]


_HARMONIC: list[Fraction] = [Fraction(0)]


def harmonic(m: int) -> Fraction:
    """The m-th harmonic number H_m = 1 + 1/2 + ... + 1/m, with H_0 = 0."""
    if m < 0:
        raise ValueError("harmonic numbers need m >= 0")
    table = _HARMONIC
    while len(table) <= m:
        table.append(table[-1] + Fraction(1, len(table)))
    return table[m]


_HLCM: list[int] = [1]


def _harmonic_lcm(n: int) -> int:
    """lcm(1..n); a common denominator for every H_m with m <= n."""
    table = _HLCM
    while len(table) <= n:
        table.append(lcm(table[-1], len(table)))
    return table[n]


class DegreeAccumulator:
    """Exact accumulation of rational terms bucketed by t-degree.

    Closed-form period evaluation sums enormous numbers of rational terms.
    Adding Fractions pairwise spends almost all of its time in gcd, so each
    degree d instead gets one common denominator (supplied by the caller and
    guaranteed to absorb the denominator of every degree-d term) and terms
    accumulate as plain integers. The gcd work happens once per degree, in
    :meth:`series`.
    """

    def __init__(self, order: int, den_for_degree):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self._order = order
        self._den_fn = den_for_degree
        self._dens: dict[int, int] = {}
        self._nums: dict[int, int] = {}

    @property
    def order(self) -> int:
        return self._order

    def add(self, degree: int, num: int, den: int) -> None:
        """Add num/den to the degree bucket. den must divide the bucket's
        common denominator; a remainder means the caller's bound is wrong
        and raises immediately rather than corrupting the sum."""
        if degree > self._order or not num:
            return
        bucket_den = self._dens.get(degree)
        if bucket_den is None:
            bucket_den = self._den_fn(degree)
            self._dens[degree] = bucket_den
            self._nums[degree] = 0
        scale, rem = divmod(bucket_den, den)
        if rem:
            raise ArithmeticError(
                f"degree-{degree} common denominator does not absorb a term denominator"
            )
        self._nums[degree] += num * scale

    def coefficients(self) -> list[Fraction]:
        return [
            Fraction(self._nums.get(d, 0), self._dens.get(d, 1))
            for d in range(self._order + 1)
        ]

    def quantum_period(self) -> TruncatedSeries:
        return TruncatedSeries.quantum_period(self.coefficients())


# ---------------------------------------------------------------------------
# small exact linear algebra (dimensions <= 4 throughout)


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _primitive(vec) -> tuple[int, ...]:
    denoms = [x.denominator for x in vec if isinstance(x, Fraction)]
    if denoms:
        scale = lcm(*denoms) if len(denoms) > 1 else denoms[0]
        ints = [int(x * scale) for x in vec]
    else:
        ints = [int(x) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def _gauss_eliminate(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Row-reduce in place and return the nonzero rows (echelon form)."""
    rows = [list(r) for r in rows]
    out = []
    ncols = len(rows[0]) if rows else 0
    pivot_col = 0
    while rows and pivot_col < ncols:
        pivot_row = next((r for r in rows if r[pivot_col] != 0), None)
        if pivot_row is None:
            pivot_col += 1
            continue
        rows.remove(pivot_row)
        inv = Fraction(1) / pivot_row[pivot_col]
        pivot_row = [x * inv for x in pivot_row]
        out.append(pivot_row)
        for r in rows:
            if r[pivot_col] != 0:
                c = r[pivot_col]
                for j in range(pivot_col, ncols):
                    r[j] -= c * pivot_row[j]
        pivot_col += 1
    return out


def _matrix_rank(vectors) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    return len(_gauss_eliminate(rows))


def _solve_square(mat, rhs) -> tuple[Fraction, ...] | None:
    """Solve an n x n rational system; None when the matrix is singular."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(mat)]
    ech = _gauss_eliminate(aug)
    if len(ech) < n or any(all(r[j] == 0 for j in range(n)) for r in ech):
        return None
    sol = [Fraction(0)] * n
    for row in reversed(ech):
        j = next(k for k in range(n) if row[k] != 0)
        sol[j] = row[n] - sum(row[k] * sol[k] for k in range(j + 1, n))
    return tuple(sol)


def _kernel_direction(vectors, dim: int) -> tuple[int, ...] | None:
    """A primitive generator of the kernel of the stacked row vectors,
    provided that kernel is one-dimensional; None otherwise."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    ech = _gauss_eliminate(rows) if rows else []
    if len(ech) != dim - 1:
        return None
    pivots = [next(k for k in range(dim) if r[k] != 0) for r in ech]
    free = next(j for j in range(dim) if j not in pivots)
    sol = [Fraction(0)] * dim
    sol[free] = Fraction(1)
    for row, pj in reversed(list(zip(ech, pivots))):
        sol[pj] = -sum(row[k] * sol[k] for k in range(pj + 1, dim))
    return _primitive(sol)


# ---------------------------------------------------------------------------
# structural descriptions


@dataclass(frozen=True)
class ToricData:
    """Weight data of a toric manifold: rho rows, one column per divisor."""

    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.weights)
        object.__setattr__(self, "weights", rows)
        if not rows or not rows[0]:
            raise ValueError("weight data needs at least one row and one column")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("weight rows must all have the same length")
        if _matrix_rank(rows) != len(rows):
            raise ValueError("weight matrix rows must be linearly independent")
        self._check_fano()

    @property
    def rank(self) -> int:
        return len(self.weights)

    @property
    def num_divisors(self) -> int:
        return len(self.weights[0])

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(row[i] for row in self.weights) for i in range(self.num_divisors)]

    def degree_vector(self) -> tuple[int, ...]:
        """The anticanonical degree functional: beta -> sum_i <beta, D_i>."""
        return tuple(sum(row) for row in self.weights)

    def extreme_rays(self) -> list[tuple[int, ...]]:
        """Primitive generators of the extreme rays of the cone
        {beta : all pairings >= 0} (the effective curve classes)."""
        cols = self.columns()
        rho = self.rank
        if rho == 1:
            rays = []
            for s in (1, -1):
                if all(s * c[0] >= 0 for c in cols):
                    rays.append((s,))
            return rays
        found = set()
        for subset in combinations(range(len(cols)), rho - 1):
            direction = _kernel_direction([cols[i] for i in subset], rho)
            if direction is None:
                continue
            for v in (direction, tuple(-x for x in direction)):
                if any(x != 0 for x in v) and all(_dot(v, c) >= 0 for c in cols):
                    found.add(v)
        return sorted(found)

    def _check_fano(self):
        delta = self.degree_vector()
        for ray in self.extreme_rays():
            if _dot(ray, delta) <= 0:
                raise ValueError(
                    f"weight data is not Fano: the curve cone direction {ray} has "
                    f"anticanonical degree {_dot(ray, delta)} <= 0"
                )


@dataclass(frozen=True)
class BundleData:
    """First Chern classes of the bundle line summands, one row per summand,
    written in the basis dual to the curve-class lattice."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise ValueError("bundle data needs at least one row")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("bundle rows must all have the same length")


@dataclass(frozen=True)
class WpsCiData:
    """A complete intersection of hypersurfaces of the given degrees in the
    weighted projective space with the given weights."""

    weights: tuple[int, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        ws = tuple(int(w) for w in self.weights)
        ds = tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "degrees", ds)
        if not ws or any(w <= 0 for w in ws):
            raise ValueError("weighted projective weights must be positive")
        if any(d <= 0 for d in ds):
            raise ValueError("hypersurface degrees must be positive")
        if sum(ws) - sum(ds) <= 0:
            raise ValueError(
                "sum of weights must exceed sum of degrees (Fano condition)"
            )
        for w in ws:
            for d in ds:
                if d % w:
                    raise ValueError(
                        f"every weight must divide every degree; {w} does not divide {d}"
                    )

    @property
    def index(self) -> int:
        return sum(self.weights) - sum(self.degrees)


def _bounded_directions_check(td: ToricData, delta, context: str):
    for ray in td.extreme_rays():
        if _dot(ray, delta) <= 0:
            raise ValueError(
                f"{context}: the degree functional is not positive on the curve "
                f"cone direction {ray}, so the class enumeration is unbounded"
            )


def _enumerate_classes(td: ToricData, max_degree: int, delta):
    """Lattice points of {all pairings >= 0, <beta, delta> <= max_degree},
    as (beta, pairings, degree) with degree taken against delta.

    Bounds come from exact vertex enumeration: every vertex of the rational
    polytope lies on rho of the defining hyperplanes, so intersecting all
    rho-subsets and keeping the feasible intersections yields every vertex;
    the integer points are then scanned from the bounding box.
    """
    if max_degree < 0:
        return
    cols = td.columns()
    rho = td.rank
    constraints = cols + [delta]
    vertices = []
    for subset in combinations(range(len(constraints)), rho):
        mat = [constraints[i] for i in subset]
        rhs = [max_degree if i == len(cols) else 0 for i in subset]
        x = _solve_square(mat, rhs)
        if x is None:
            continue
        if all(_dot(x, c) >= 0 for c in cols) and _dot(x, delta) <= max_degree:
            vertices.append(x)
    if not vertices:
        return
    ranges = []
    for a in range(rho):
        lo = min(v[a] for v in vertices)
        hi = max(v[a] for v in vertices)
        ranges.append(range(ceil(lo), floor(hi) + 1))
    for beta in iter_product(*ranges):
        pairings = tuple(_dot(beta, c) for c in cols)
        if any(p < 0 for p in pairings):
            continue
        degree = _dot(beta, delta)
        if degree > max_degree:
            continue
        yield beta, pairings, degree


def enumerate_beta(td: ToricData, max_degree: int):
    """Effective curve classes of anticanonical degree at most max_degree,
    yielded as (beta, pairings, degree) in lexicographic beta order."""
    yield from _enumerate_classes(td, max_degree, td.degree_vector())


def period_toric(td: ToricData, order: int) -> TruncatedSeries:
    """Quantum period of the toric manifold itself:
    c_d = sum over classes of degree d of 1 / prod_i <beta, D_i>!."""
    coeffs = [Fraction(0)] * (order + 1)
    for _beta, pairings, degree in enumerate_beta(td, order):
        den = 1
        for p in pairings:
            den *= _f(p)
        coeffs[degree] += Fraction(1, den)
    return TruncatedSeries.quantum_period(coeffs)


def period_toric_ci(td: ToricData, bd: BundleData, order: int) -> TruncatedSeries:
    """Quantum period of a complete intersection in a toric manifold.

    The raw sum has numerator prod_j <beta, rho_j>!, runs in the degree
    taken against -K - Lambda, and is normalized by exp_linear_normalize.
    Ampleness of -K - Lambda is the caller's responsibility; positivity on
    the curve cone (necessary for ampleness) is what keeps the enumeration
    finite and is checked here.
    """
    if any(len(row) != td.rank for row in bd.rows):
        raise ValueError("bundle rows must have one entry per weight row")
    delta = tuple(
        d - sum(row[a] for row in bd.rows)
        for a, d in enumerate(td.degree_vector())
    )
    _bounded_directions_check(td, delta, "complete intersection data")
    raw = [Fraction(0)] * (order + 1)
    for beta, pairings, degree in _enumerate_classes(td, order, delta):
        numerator = 1
        for row in bd.rows:
            pairing = _dot(beta, row)
            if pairing < 0:
                raise ValueError(
                    f"bundle not nef: class {beta} pairs to {pairing} with bundle row {row}"
                )
            numerator *= _f(pairing)
        den = 1
        for p in pairings:
            den *= _f(p)
        raw[degree] += Fraction(numerator, den)
    _, normalized = exp_linear_normalize(TruncatedSeries(raw))
    return TruncatedSeries.quantum_period(normalized.coeffs)


def period_wps_ci(wd: WpsCiData, order: int) -> TruncatedSeries:
    """Quantum period of a complete intersection in weighted projective
    space: the raw series sums t^(m*index) prod_j (m d_j)! / prod_i (m w_i)!
    and is then exponentially normalized."""
    k = wd.index
    raw = [Fraction(0)] * (order + 1)
    m = 0
    while m * k <= order:
        num = 1
        for d in wd.degrees:
            num *= _f(m * d)
        den = 1
        for w in wd.weights:
            den *= _f(m * w)
        raw[m * k] += Fraction(num, den)
        m += 1
    _, normalized = exp_linear_normalize(TruncatedSeries(raw))
    return TruncatedSeries.quantum_period(normalized.coeffs)


def period_product(factors) -> TruncatedSeries:
    """Quantum period of a product: the product of the factor periods,
    truncated at the smallest factor truncation order."""
    factors = list(factors)
    if not factors:
        raise ValueError("a product needs at least one factor")
    result = factors[0]
    for f in factors[1:]:
        result = result.mul(f)
    return TruncatedSeries.quantum_period(result.coeffs)


# ---------------------------------------------------------------------------
# closed-form families
#
# One evaluator per named family, transcribing the printed series. Single
# index families fill coefficients directly; multi-index families go through
# DegreeAccumulator with a per-degree common denominator that is a small
# power of s! (each individual factorial argument is at most s, and products
# like l! m! n! with l+m+n = s divide s! outright), times lcm(1..s) when a
# harmonic-number correction contributes to the denominator.


def _single_index(order: int, step: int, term) -> TruncatedSeries:
    coeffs = [Fraction(0)] * (order + 1)
    d = 0
    while step * d <= order:
        coeffs[step * d] = term(d)
        d += 1
    return TruncatedSeries.quantum_period(coeffs)


def _g_p4(order):
    return _single_index(order, 5, lambda d: Fraction(1, _f(d) ** 5))


def _g_q4(order):
    return _single_index(order, 4, lambda d: Fraction(_f(2 * d), _f(d) ** 6))


def _g_fi4_1(order):
    return _single_index(
        order, 3, lambda d: Fraction(_f(6 * d), _f(3 * d) * _f(2 * d) * _f(d) ** 4)
    )


def _g_fi4_2(order):
    return _single_index(order, 3, lambda d: Fraction(_f(4 * d), _f(2 * d) * _f(d) ** 5))


def _g_fi4_3(order):
    return _single_index(order, 3, lambda d: Fraction(_f(3 * d), _f(d) ** 6))


def _g_fi4_4(order):
    return _single_index(order, 3, lambda d: Fraction(_f(2 * d) ** 2, _f(d) ** 7))


def _g_fi4_5(order):
    acc = DegreeAccumulator(
        order, lambda d: _f(d // 3) ** 10 * _harmonic_lcm(d // 3)
    )
    smax = acc.order // 3
    for l in range(smax + 1):
        for m in range(smax - l + 1):
            corr = 1 - 5 * (m - l) * harmonic(m)
            num = (-1) ** (l + m) * _f(l + m) ** 2 * corr.numerator
            den = (_f(l) * _f(m)) ** 5 * corr.denominator
            acc.add(3 * (l + m), num, den)
    return acc.quantum_period()


def _g_v4_2(order):
    return _single_index(order, 2, lambda d: Fraction(_f(6 * d), _f(d) ** 5 * _f(3 * d)))


def _g_v4_4(order):
    return _single_index(order, 2, lambda d: Fraction(_f(4 * d), _f(d) ** 6))


def _g_v4_6(order):
    return _single_index(order, 2, lambda d: Fraction(_f(2 * d) * _f(3 * d), _f(d) ** 7))


def _g_v4_8(order):
    return _single_index(order, 2, lambda d: Fraction(_f(2 * d) ** 3, _f(d) ** 8))


def _g_v4_10(order):
    acc = DegreeAccumulator(
        order, lambda d: _f(d // 2) ** 10 * _harmonic_lcm(d // 2)
    )
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(smax - l + 1):
            corr = 1 - 5 * (m - l) * harmonic(m)
            num = (-1) ** (l + m) * _f(l + m) * _f(2 * l + 2 * m) * corr.numerator
            den = (_f(l) * _f(m)) ** 5 * corr.denominator
            acc.add(2 * (l + m), num, den)
    return acc.quantum_period()


def _g_v4_12(order):
    acc = DegreeAccumulator(
        order, lambda d: _f(d // 2) ** 10 * _harmonic_lcm(2 * (d // 2))
    )
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(smax - l + 1):
            corr = 1 + (m - l) * (
                harmonic(2 * l + m) + 2 * harmonic(l + 2 * m) - 5 * harmonic(m)
            )
            num = (-1) ** (l + m) * _f(2 * l + m) * _f(l + 2 * m) * corr.numerator
            den = (_f(l) * _f(m)) ** 5 * corr.denominator
            acc.add(2 * (l + m), num, den)
    return acc.quantum_period()


def _g_v4_14(order):
    acc = DegreeAccumulator(
        order, lambda d: _f(d // 2) ** 12 * _harmonic_lcm(d // 2)
    )
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(smax - l + 1):
            corr = 1 - 6 * (m - l) * harmonic(m)
            num = (-1) ** (l + m) * _f(l + m) ** 4 * corr.numerator
            den = (_f(l) * _f(m)) ** 6 * corr.denominator
            acc.add(2 * (l + m), num, den)
    return acc.quantum_period()


def _g_mw4_1(order):
    acc = DegreeAccumulator(
        order, lambda d: _f(d // 2) ** 5 * _f(2 * (d // 2)) * _f(3 * (d // 2))
    )
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(smax - l + 1):
            acc.add(
                2 * (l + m),
                _f(6 * m),
                _f(l) ** 2 * _f(m) ** 3 * _f(2 * m) * _f(3 * m),
            )
    return acc.quantum_period()


def _g_mw4_2(order):
    acc = DegreeAccumulator(
        order, lambda d: _f(d // 2) ** 6 * _f(2 * (d // 2))
    )
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(smax - l + 1):
            acc.add(2 * (l + m), _f(4 * m), _f(l) ** 2 * _f(m) ** 4 * _f(2 * m))
    return acc.quantum_period()


def _g_mw4_3(order):
    acc = DegreeAccumulator(order, lambda d: _f(d // 2) ** 7)
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(smax - l + 1):
            acc.add(2 * (l + m), _f(3 * m), _f(l) ** 2 * _f(m) ** 5)
    return acc.quantum_period()


def _g_mw4_4(order):
    acc = DegreeAccumulator(order, lambda d: _f(d // 2) ** 7)
    mmax = acc.order // 2
    for m in range(mmax + 1):
        for l in range(m + 1):
            acc.add(2 * m, _f(2 * m), _f(l) ** 3 * _f(m) * _f(m - l) ** 3)
    return acc.quantum_period()


def _g_mw4_5(order):
    acc = DegreeAccumulator(order, lambda d: _f(d // 2) ** 7)
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(smax - l + 1):
            acc.add(2 * (l + m), _f(l + 2 * m), _f(l) ** 3 * _f(m) ** 4)
    return acc.quantum_period()


def _g_mw4_6(order):
    acc = DegreeAccumulator(order, lambda d: _f(d // 2) ** 8)
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(smax - l + 1):
            acc.add(2 * (l + m), _f(2 * m) ** 2, _f(l) ** 2 * _f(m) ** 6)
    return acc.quantum_period()


def _g_mw4_7(order):
    acc = DegreeAccumulator(order, lambda d: _f(d // 2) ** 8)
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(smax - l + 1):
            acc.add(2 * (l + m), _f(l + m) ** 2, _f(l) ** 4 * _f(m) ** 4)
    return acc.quantum_period()


def _g_mw4_8(order):
    acc = DegreeAccumulator(order, lambda d: _f(d // 2) ** 8)
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(smax - l + 1):
            acc.add(2 * (l + m), _f(l + m) * _f(2 * m), _f(l) ** 3 * _f(m) ** 5)
    return acc.quantum_period()


def _g_mw4_9(order):
    acc = DegreeAccumulator(
        order, lambda d: _f(d // 2) ** 12 * _harmonic_lcm(d // 2)
    )
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(smax - l + 1):
            for n in range(smax - l - m + 1):
                corr = 1 - 5 * (n - m) * harmonic(n)
                num = (-1) ** (m + n) * _f(m + n) ** 3 * corr.numerator
                den = _f(l) ** 2 * _f(m) ** 5 * _f(n) ** 5 * corr.denominator
                acc.add(2 * (l + m + n), num, den)
    return acc.quantum_period()


def _g_mw4_10(order):
    acc = DegreeAccumulator(order, lambda d: _f(d // 2) ** 7)
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(l, smax - l + 1):
            acc.add(2 * (l + m), _f(2 * m), _f(l) ** 3 * _f(m - l) * _f(m) ** 3)
    return acc.quantum_period()


def _g_mw4_11(order):
    acc = DegreeAccumulator(
        order, lambda d: _f(d // 2) ** 10 * _harmonic_lcm(d // 2)
    )
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(smax - l + 1):
            for n in range(max(l, m), smax - l - m + 1):
                corr = 1 + (m - l) * (harmonic(n - m) - 4 * harmonic(m))
                num = (-1) ** (l + m) * _f(l + m) * corr.numerator
                den = (
                    _f(l) ** 4 * _f(m) ** 4 * _f(n - l) * _f(n - m) * corr.denominator
                )
                acc.add(2 * (l + m + n), num, den)
    for l in range(smax + 1):
        for m in range(l + 1, smax - l + 1):
            for n in range(l, min(m - 1, smax - l - m) + 1):
                num = (-1) ** (l + n) * _f(l + m) * _f(m - n - 1) * (m - l)
                den = _f(l) ** 4 * _f(m) ** 4 * _f(n - l)
                acc.add(2 * (l + m + n), num, den)
    return acc.quantum_period()


def _g_mw4_12(order):
    acc = DegreeAccumulator(order, lambda d: _f(d // 2) ** 7)
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(l, smax - l + 1):
            acc.add(2 * (l + m), _f(l + m), _f(l) ** 4 * _f(m - l) * _f(m) ** 2)
    return acc.quantum_period()


def _g_mw4_13(order):
    acc = DegreeAccumulator(order, lambda d: _f(d // 2) ** 7)
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(l, smax - l + 1):
            acc.add(2 * (l + m), _f(2 * l), _f(l) ** 5 * _f(m) * _f(m - l))
    return acc.quantum_period()


def _g_mw4_14(order):
    acc = DegreeAccumulator(
        order, lambda d: _f(d // 2) ** 2 * _f(d // 4) ** 4
    )
    for l in range(order // 2 + 1):
        for m in range((order - 2 * l) // 4 + 1):
            acc.add(2 * l + 4 * m, 1, _f(l) ** 2 * _f(m) ** 4)
    return acc.quantum_period()


def _g_mw4_15(order):
    acc = DegreeAccumulator(order, lambda d: _f(d // 2) ** 6)
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(2 * l, smax - l + 1):
            acc.add(2 * (l + m), 1, _f(l) ** 4 * _f(m) * _f(m - 2 * l))
    return acc.quantum_period()


def _g_mw4_16(order):
    acc = DegreeAccumulator(order, lambda d: _f(d // 2) ** 8)
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(smax - l + 1):
            for n in range(smax - l - m + 1):
                acc.add(
                    2 * (l + m + n), _f(m + n), _f(l) ** 2 * _f(m) ** 3 * _f(n) ** 3
                )
    return acc.quantum_period()


def _g_mw4_17(order):
    acc = DegreeAccumulator(order, lambda d: _f(d // 2) ** 7)
    smax = acc.order // 2
    for l in range(smax + 1):
        for m in range(smax - l + 1):
            for n in range(m, smax - l - m + 1):
                acc.add(
                    2 * (l + m + n), 1, _f(l) ** 2 * _f(m) ** 3 * _f(n) * _f(n - m)
                )
    return acc.quantum_period()


def _g_mw4_18(order):
    # the four line factors are summed two at a time, using
    # sum_{k+l=u} 1/(k! l!)^2 = (2u)!/(u!)^4 for each pair
    acc = DegreeAccumulator(order, lambda d: _f(d // 2) ** 8)
    smax = acc.order // 2
    for u in range(smax + 1):
        for v in range(smax - u + 1):
            acc.add(
                2 * (u + v),
                _f(2 * u) * _f(2 * v),
                (_f(u) * _f(v)) ** 4,
            )
    return acc.quantum_period()


# three-dimensional (and one-dimensional) factors for products


def _g3_p1(order):
    return _single_index(order, 2, lambda d: Fraction(1, _f(d) ** 2))


def _g3_p2(order):
    return _single_index(order, 3, lambda d: Fraction(1, _f(d) ** 3))


def _g3_p3(order):
    return _single_index(order, 4, lambda d: Fraction(1, _f(d) ** 4))


def _g3_b3_1(order):
    return _single_index(
        order, 2, lambda d: Fraction(_f(6 * d), _f(d) ** 3 * _f(2 * d) * _f(3 * d))
    )


def _g3_b3_2(order):
    return _single_index(order, 2, lambda d: Fraction(_f(4 * d), _f(d) ** 4 * _f(2 * d)))


def _g3_b3_3(order):
    return _single_index(order, 2, lambda d: Fraction(_f(3 * d), _f(d) ** 5))


def _g3_b3_4(order):
    return _single_index(order, 2, lambda d: Fraction(_f(2 * d) ** 2, _f(d) ** 6))


def _g3_b3_5(order):
    acc = DegreeAccumulator(
        order, lambda d: _f(d // 2) ** 10 * _harmonic_lcm(d // 2)
    )
    smax = acc.order // 2
    for m in range(smax + 1):
        for n in range(smax - m + 1):
            corr = 1 - 5 * (n - m) * harmonic(n)
            num = (-1) ** (m + n) * _f(m + n) ** 3 * corr.numerator
            den = _f(m) ** 5 * _f(n) ** 5 * corr.denominator
            acc.add(2 * (m + n), num, den)
    return acc.quantum_period()


def _g3_b3_7(order):
    acc = DegreeAccumulator(order, lambda d: _f(d // 2) ** 5)
    smax = acc.order // 2
    for m in range(smax + 1):
        for n in range(m, smax - m + 1):
            acc.add(2 * (m + n), 1, _f(m) ** 3 * _f(n) * _f(n - m))
    return acc.quantum_period()


def _g3_w3(order):
    acc = DegreeAccumulator(order, lambda d: _f(d // 2) ** 6)
    smax = acc.order // 2
    for m in range(smax + 1):
        for n in range(smax - m + 1):
            acc.add(2 * (m + n), _f(m + n), _f(m) ** 3 * _f(n) ** 3)
    return acc.quantum_period()


def _g3_mm2_17(order):
    """The rank-2 threefold whose J-function underlies the Strangeway
    construction. The raw sum carries a linear term (the class has degree-1
    curves), removed by the exponential normalization; the extracted
    constant must be 2."""
    acc = DegreeAccumulator(order, lambda d: _f(d) ** 4 * _harmonic_lcm(d))
    for l1 in range(acc.order + 1):
        for l2 in range(acc.order - l1 + 1):
            for l3 in range(acc.order - l1 - l2 + 1):
                corr = 1 + (l2 - l1) * (harmonic(l2 + l3) - 4 * harmonic(l2))
                num = (
                    (-1) ** (l1 + l2)
                    * _f(l1 + l2)
                    * _f(l1 + l3)
                    * _f(l2 + l3)
                    * _f(l1 + l2 + l3)
                    * corr.numerator
                )
                den = (_f(l1) * _f(l2) * _f(l3)) ** 4 * corr.denominator
                acc.add(l1 + l2 + l3, num, den)
    c, normalized = exp_linear_normalize(TruncatedSeries(acc.coefficients()))
    if order >= 1 and c != 2:
        raise ArithmeticError(f"MM2_17 linear term must be 2, got {c}")
    return TruncatedSeries.quantum_period(normalized.coeffs)


# ---------------------------------------------------------------------------
# Vandermonde-coefficient families
#
# For V4_16 and V4_18 the period is the coefficient of the Vandermonde
# polynomial prod_{i<j} (p_j - p_i) in a multi-index sum of rational
# functions of p. Two independent evaluation routes are provided.
#
# The polynomial route builds each summand as a MultiPolyTrunc truncated at
# the Vandermonde's total degree and extracts the coefficient with strict
# antisymmetry checks. It is exact and direct but slow, so it serves low
# orders and acts as the oracle for the restricted route.
#
# The restricted route evaluates every summand on the line p = eps * a for
# a fixed point a with distinct integer coordinates, truncating in eps. Per
# t-degree the full sum equals c_d * Vandermonde(p) exactly (it is
# antisymmetric of total degree at most the Vandermonde degree), so the
# restricted sum is c_d * V(a) * eps^top and all lower eps-coefficients of
# the total must vanish; that cancellation is checked degree by degree.
# States are integer coefficient vectors with the denominator
# (prod_j l_j!)^e kept implicit, so each summand costs a handful of big
# integer multiplications.


def _g_v4_16_poly(order: int) -> TruncatedSeries:
    nv, bound = 3, 3
    smax = order // 2
    sums = [MultiPolyTrunc(nv, bound) for _ in range(smax + 1)]

    def lin(const, coeffs):
        return MultiPolyTrunc.linear(nv, bound, const, coeffs)

    inv6 = lambda var, k: MultiPolyTrunc.inverse_linear_power(nv, bound, var, k, 6)

    w1 = MultiPolyTrunc.constant(nv, bound, 1)
    for l1 in range(smax + 1):
        if l1 > 0:
            w1 = w1 * inv6(0, l1)
            w1 = w1 * lin(l1, (1, 1, 0))          # (p1 + p2 + k) chain, k = l1
            w1 = w1 * lin(l1, (1, 0, 1))          # (p1 + p3 + k) chain
            w1 = w1 * lin(l1, (1, 1, 1)) * lin(l1, (1, 1, 1))
        w2 = w1
        for l2 in range(smax - l1 + 1):
            if l2 > 0:
                w2 = w2 * inv6(1, l2)
                w2 = w2 * lin(l1 + l2, (1, 1, 0))
                w2 = w2 * lin(l2, (0, 1, 1))      # (p2 + p3 + k) chain, k = l2
                w2 = w2 * lin(l1 + l2, (1, 1, 1)) * lin(l1 + l2, (1, 1, 1))
            w3 = w2
            for l3 in range(smax - l1 - l2 + 1):
                s = l1 + l2 + l3
                if l3 > 0:
                    w3 = w3 * inv6(2, l3)
                    w3 = w3 * lin(l1 + l3, (1, 0, 1))
                    w3 = w3 * lin(l2 + l3, (0, 1, 1))
                    w3 = w3 * lin(s, (1, 1, 1)) * lin(s, (1, 1, 1))
                term = w3 * lin(l2 - l1, (-1, 1, 0))
                term = term * lin(l3 - l1, (-1, 0, 1))
                term = term * lin(l3 - l2, (0, -1, 1))
                sums[s] = sums[s] + term
    coeffs = [Fraction(0)] * (order + 1)
    for s, total in enumerate(sums):
        coeffs[2 * s] = extract_leading_vandermonde(total, strict=True)
    return TruncatedSeries.quantum_period(coeffs)


def _vec_lin(u, c, b, top):
    """Multiply the eps-vector u by (c + b*eps), truncated at degree top."""
    out = [c * u[0]]
    for i in range(1, top + 1):
        out.append(c * u[i] + b * u[i - 1])
    return out


def _vec_mul(u, v, top):
    out = [0] * (top + 1)
    for i, ui in enumerate(u):
        if ui:
            for j in range(top + 1 - i):
                vj = v[j]
                if vj:
                    out[i + j] += ui * vj
    return out


def _g_v4_16_fast(order: int) -> TruncatedSeries:
    top = 3
    a2, a3 = 1, 2                      # sample point a = (0, 1, 2)
    v_at_a = 2                         # (a2-a1)(a3-a1)(a3-a2)
    smax = order // 2
    acc = [[0] * (top + 1) for _ in range(smax + 1)]

    def tstep(u, k, a):
        # u * k^16 * (a*eps + k)^(-6), truncated: coefficients
        # (-1)^i C(5+i,5) a^i k^(10-i)
        t0 = k ** 10
        t1 = -6 * a * k ** 9
        t2 = 21 * a * a * k ** 8
        t3 = -56 * a ** 3 * k ** 7
        u0, u1, u2, u3 = u
        return [
            t0 * u0,
            t0 * u1 + t1 * u0,
            t0 * u2 + t1 * u1 + t2 * u0,
            t0 * u3 + t1 * u2 + t2 * u1 + t3 * u0,
        ]

    w1 = [1, 0, 0, 0]
    for l1 in range(smax + 1):
        if l1 > 0:
            scale = l1 ** 10           # a = 0 collapses the step to a scalar
            w1 = [scale * x for x in w1]
            w1 = _vec_lin(w1, l1, 1, top)      # (p1 + p2 + k), b = a1 + a2
            w1 = _vec_lin(w1, l1, 2, top)      # (p1 + p3 + k)
            w1 = _vec_lin(_vec_lin(w1, l1, 3, top), l1, 3, top)
        w2 = w1
        for l2 in range(smax - l1 + 1):
            if l2 > 0:
                w2 = tstep(w2, l2, a2)
                w2 = _vec_lin(w2, l1 + l2, 1, top)
                w2 = _vec_lin(w2, l2, 3, top)  # (p2 + p3 + k), b = a2 + a3
                w2 = _vec_lin(_vec_lin(w2, l1 + l2, 3, top), l1 + l2, 3, top)
            w3 = w2
            for l3 in range(smax - l1 - l2 + 1):
                s = l1 + l2 + l3
                if l3 > 0:
                    w3 = tstep(w3, l3, a3)
                    w3 = _vec_lin(w3, l1 + l3, 2, top)
                    w3 = _vec_lin(w3, l2 + l3, 3, top)
                    w3 = _vec_lin(_vec_lin(w3, s, 3, top), s, 3, top)
                e = _vec_lin(w3, l2 - l1, 1, top)
                e = _vec_lin(e, l3 - l1, 2, top)
                e = _vec_lin(e, l3 - l2, 1, top)
                # the implicit denominator is (l1! l2! l3!)^16; rescale to
                # the degree-wide denominator (s!)^16 by the multinomial
                q = (comb(s, l1) * comb(s - l1, l2)) ** 16
                bucket = acc[s]
                for i in range(top + 1):
                    if e[i]:
                        bucket[i] += e[i] * q
    coeffs = [Fraction(0)] * (order + 1)
    for s, bucket in enumerate(acc):
        if any(bucket[:top]):
            raise ArithmeticError(
                f"antisymmetry failure at t-degree {2 * s}: "
                "sub-Vandermonde eps-coefficients survive"
            )
        coeffs[2 * s] = Fraction(bucket[top], _f(s) ** 16 * v_at_a)
    return TruncatedSeries.quantum_period(coeffs)


def _g_v4_18_poly(order: int) -> TruncatedSeries:
    nv, bound = 5, 10
    smax = order // 2
    sums = [MultiPolyTrunc(nv, bound) for _ in range(smax + 1)]

    def lin(const, coeffs):
        return MultiPolyTrunc.linear(nv, bound, const, coeffs)

    def unit(j, sign=1):
        e = [0] * nv
        e[j] = sign
        return e

    all_ones = (1, 1, 1, 1, 1)

    def co(j, k):
        # (p1 + ... + p5 - p_j + k)
        coeffs = [1] * nv
        coeffs[j] = 0
        return lin(k, coeffs)

    inv7 = lambda var, k: MultiPolyTrunc.inverse_linear_power(nv, bound, var, k, 7)

    def descend(level, w, ls, s):
        # level: next variable index to loop over (0-based); w carries every
        # chain factor whose count is already fixed by l_1 .. l_level
        if level == nv:
            term = w
            for i in range(nv):
                for j in range(i + 1, nv):
                    coeffs = [0] * nv
                    coeffs[i] = -1
                    coeffs[j] = 1
                    term = term * lin(ls[j] - ls[i], coeffs)
            sums[s] = sums[s] + term
            return
        lj = 0
        while s + lj <= smax:
            if lj > 0:
                w = w * inv7(level, lj)
                for other in range(nv):
                    if other != level:
                        # chain for (P - p_other + k) gains one factor; its
                        # count is the sum of the looped l's except l_other
                        count = s + lj - ls[other] if other < level else s + lj
                        w = w * co(other, count)
                w = w * lin(s + lj, all_ones)
            descend(level + 1, w, ls + [lj], s + lj)
            lj += 1

    descend(0, MultiPolyTrunc.constant(nv, bound, 1), [], 0)
    coeffs = [Fraction(0)] * (order + 1)
    for s, total in enumerate(sums):
        coeffs[2 * s] = extract_leading_vandermonde(total, strict=True)
    return TruncatedSeries.quantum_period(coeffs)


def _g_v4_18_fast(order: int) -> TruncatedSeries:
    top = 10
    a = (0, 1, 2, 3, 4)
    v_at_a = 288                       # prod_{i<j} (a_j - a_i)
    P = sum(a)
    smax = order // 2
    acc = [[0] * (top + 1) for _ in range(smax + 1)]

    # per-variable step vectors: k^17 * (a_j*eps + k)^(-7) has integer
    # eps-coefficients (-1)^i C(6+i,6) a_j^i k^(10-i)
    def tvec(k, aj):
        return [(-1) ** i * comb(6 + i, 6) * aj ** i * k ** (10 - i) for i in range(top + 1)]

    def descend(level, w, ls, s):
        if level == 5:
            e = w
            for i in range(5):
                for j in range(i + 1, 5):
                    e = _vec_lin(e, ls[j] - ls[i], a[j] - a[i], top)
            q = 1
            rest = s
            for lj in ls[:-1]:
                q *= comb(rest, lj)
                rest -= lj
            q = q ** 17
            bucket = acc[s]
            for i in range(top + 1):
                if e[i]:
                    bucket[i] += e[i] * q
            return
        lj = 0
        while s + lj <= smax:
            if lj > 0:
                if a[level]:
                    w = _vec_mul(w, tvec(lj, a[level]), top)
                else:
                    scale = lj ** 10
                    w = [scale * x for x in w]
                for other in range(5):
                    if other != level:
                        count = s + lj - ls[other] if other < level else s + lj
                        w = _vec_lin(w, count, P - a[other], top)
                w = _vec_lin(w, s + lj, P, top)
            descend(level + 1, w, ls + [lj], s + lj)
            lj += 1

    descend(0, [1] + [0] * top, [], 0)
    coeffs = [Fraction(0)] * (order + 1)
    for s, bucket in enumerate(acc):
        if any(bucket[:top]):
            raise ArithmeticError(
                f"antisymmetry failure at t-degree {2 * s}: "
                "sub-Vandermonde eps-coefficients survive"
            )
        coeffs[2 * s] = Fraction(bucket[top], _f(s) ** 17 * v_at_a)
    return TruncatedSeries.quantum_period(coeffs)


_FLAG_POLY_LIMIT = {"V4_16": 24, "V4_18": 8}


def period_flag_extraction(name: str, order: int) -> TruncatedSeries:
    """Quantum period of V4_16 or V4_18 by Vandermonde-coefficient
    extraction. Low orders run the direct polynomial route; beyond the
    crossover the restricted-line route takes over (the two agree, which
    the test suite checks on their overlap)."""
    if name == "V4_16":
        if order <= _FLAG_POLY_LIMIT[name]:
            return _g_v4_16_poly(order)
        return _g_v4_16_fast(order)
    if name == "V4_18":
        if order <= _FLAG_POLY_LIMIT[name]:
            return _g_v4_18_poly(order)
        return _g_v4_18_fast(order)
    raise ValueError(f"no Vandermonde extraction for {name!r}")


def _g_v4_16(order):
    return period_flag_extraction("V4_16", order)


def _g_v4_18(order):
    return period_flag_extraction("V4_18", order)


# ---------------------------------------------------------------------------
# the Strangeway fourfolds


@lru_cache(maxsize=None)
def strangeway_c(l: int, m: int) -> Fraction:
    """Coefficient c_{l,m} of the Strangeway bundle's J-function, as the
    printed double sum; c_{0,0} = c_{1,0} = 1 and c_{0,1} = 0."""
    if l < 0 or m < 0:
        raise ValueError("strangeway_c needs l, m >= 0")
    total = Fraction(0)
    for i in range(l + 1):
        for j in range(m + 1):
            corr = 1 + (2 * i - l) * (harmonic(i + m - j) - 4 * harmonic(i))
            num = (-1) ** (j + l) * _f(m + l - i - j) * _f(i + m - j) * _f(m + l - j)
            den = (
                _f(l - i) ** 4
                * _f(i) ** 4
                * _f(m - j) ** 4
                * _f(j)
                * _f(m)
                * _f(l) ** 4
            )
            total += corr * Fraction(num, den)
    return total


def _mm2_17_j_coefficient(L: int, M: int) -> Fraction:
    """Coefficient of q1^L q2^M in the J-function identity component of the
    rank-2 threefold, with the exponential prefactor expanded. Every term,
    prefactor included, carries one power of 1/z per q factor, so the
    z-power is pinned to -(L + M). Used to pin the c table."""
    total = Fraction(0)
    for l1 in range(L + 1):
        for l2 in range(L - l1 + 1):
            u = L - l1 - l2
            for l3 in range(M + 1):
                v = M - l3
                corr = 1 + (l2 - l1) * (harmonic(l2 + l3) - 4 * harmonic(l2))
                num = (
                    (-1) ** (l1 + l2)
                    * _f(l1 + l2)
                    * _f(l1 + l3)
                    * _f(l2 + l3)
                    * _f(l1 + l2 + l3)
                )
                den = (_f(l1) * _f(l2) * _f(l3)) ** 4
                prefactor = Fraction((-1) ** (u + v), _f(u) * _f(v))
                total += prefactor * corr * Fraction(num, den)
    return total


def period_strangeway(k: int, order: int) -> TruncatedSeries:
    """Quantum period of the Strangeway fourfold Str_k, k in {1, 2, 3}.

    Str_1 and Str_3 carry an exponential prefactor exp(-t) in front of
    their printed sums; the normalization removes the linear term and the
    extracted constant is checked against the printed prefactor.
    """
    raw = [Fraction(0)] * (order + 1)
    if k == 1:
        for l in range(order + 1):
            for m in range((order - l) // 2 + 1):
                raw[l + 2 * m] += _f(l) ** 5 * strangeway_c(l, m)
        expected = Fraction(1)
    elif k == 2:
        for l in range(order // 2 + 1):
            for m in range(order - 2 * l + 1):
                raw[2 * l + m] += _f(l) ** 4 * _f(m) * strangeway_c(l, m)
        expected = Fraction(0)
    elif k == 3:
        for l in range(order + 1):
            for m in range(order - l + 1):
                raw[l + m] += _f(l) ** 4 * _f(l + m) * strangeway_c(l, m)
        expected = Fraction(1)
    else:
        raise ValueError("Strangeway index must be 1, 2 or 3")
    c, normalized = exp_linear_normalize(TruncatedSeries(raw))
    if order >= 1 and c != expected:
        raise ArithmeticError(
            f"Str_{k} linear term {c} does not match the printed prefactor {expected}"
        )
    return TruncatedSeries.quantum_period(normalized.coeffs)


# ---------------------------------------------------------------------------
# manifold specifications and the builtin catalog


@dataclass(frozen=True)
class ManifoldSpec:
    """A structural description that can be resolved to a quantum period.

    Exactly one of the payload fields is populated, selected by ``kind``:
    ``toric`` (ToricData), ``toric_ci`` (ToricData + BundleData), ``wps_ci``
    (WpsCiData), ``product`` (factor specs), ``builtin`` (catalog name).
    """

    kind: str
    toric: ToricData | None = None
    bundle: BundleData | None = None
    wps: WpsCiData | None = None
    factors: tuple["ManifoldSpec", ...] = ()
    name: str = ""

    KINDS = ("toric", "toric_ci", "wps_ci", "product", "builtin")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown manifold kind {self.kind!r}")

    @classmethod
    def from_toric(cls, weights) -> "ManifoldSpec":
        return cls(kind="toric", toric=ToricData(tuple(map(tuple, weights))))

    @classmethod
    def from_toric_ci(cls, weights, bundle) -> "ManifoldSpec":
        return cls(
            kind="toric_ci",
            toric=ToricData(tuple(map(tuple, weights))),
            bundle=BundleData(tuple(map(tuple, bundle))),
        )

    @classmethod
    def from_wps_ci(cls, weights, degrees) -> "ManifoldSpec":
        return cls(kind="wps_ci", wps=WpsCiData(tuple(weights), tuple(degrees)))

    @classmethod
    def from_product(cls, factors) -> "ManifoldSpec":
        return cls(kind="product", factors=tuple(factors))

    @classmethod
    def from_builtin(cls, name: str) -> "ManifoldSpec":
        return cls(kind="builtin", name=name)

    # -- JSON round trip ----------------------------------------------------

    def to_json_dict(self) -> dict:
        if self.kind == "toric":
            return {
                "kind": "toric",
                "weights": [[str(x) for x in row] for row in self.toric.weights],
            }
        if self.kind == "toric_ci":
            return {
                "kind": "toric_ci",
                "weights": [[str(x) for x in row] for row in self.toric.weights],
                "bundle": [[str(x) for x in row] for row in self.bundle.rows],
            }
        if self.kind == "wps_ci":
            return {
                "kind": "wps_ci",
                "weights": [str(w) for w in self.wps.weights],
                "degrees": [str(d) for d in self.wps.degrees],
            }
        if self.kind == "product":
            return {
                "kind": "product",
                "factors": [f.to_json_dict() for f in self.factors],
            }
        return {"kind": "builtin", "name": self.name}

    @classmethod
    def from_json_dict(cls, data: dict) -> "ManifoldSpec":
        if not isinstance(data, dict) or "kind" not in data:
            raise ValueError("manifold spec must be an object with a 'kind' field")
        kind = data["kind"]

        def ints(xs):
            return [int(str(x)) for x in xs]

        def matrix(field_name):
            rows = data.get(field_name)
            if not isinstance(rows, list) or not rows:
                raise ValueError(f"manifold spec field {field_name!r} must be a nonempty list")
            return [ints(row) for row in rows]

        if kind == "toric":
            return cls.from_toric(matrix("weights"))
        if kind == "toric_ci":
            return cls.from_toric_ci(matrix("weights"), matrix("bundle"))
        if kind == "wps_ci":
            if "weights" not in data or "degrees" not in data:
                raise ValueError("wps_ci spec needs 'weights' and 'degrees'")
            return cls.from_wps_ci(ints(data["weights"]), ints(data["degrees"]))
        if kind == "product":
            factors = data.get("factors")
            if not isinstance(factors, list) or not factors:
                raise ValueError("product spec needs a nonempty 'factors' list")
            return cls.from_product(cls.from_json_dict(f) for f in factors)
        if kind == "builtin":
            name = data.get("name")
            if not isinstance(name, str) or not name:
                raise ValueError("builtin spec needs a 'name'")
            return cls.from_builtin(name)
        raise ValueError(f"unknown manifold kind {kind!r}")

    def to_text(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ManifoldSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"manifold spec is not valid JSON: {exc}") from exc
        return cls.from_json_dict(data)

    @classmethod
    def from_file(cls, path) -> "ManifoldSpec":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())


@dataclass(frozen=True)
class CatalogEntry:
    """A named family: its dimension, Fano index, closed-form evaluator and,
    when the family also has a printed structural description, that
    description for cross-checking."""

    name: str
    dimension: int
    fano_index: int
    evaluator: object
    structural: ManifoldSpec | None = None
    summary: str = ""

    def evaluate(self, order: int) -> TruncatedSeries:
        return self.evaluator(order)


def _product_spec(*names: str) -> ManifoldSpec:
    return ManifoldSpec.from_product(ManifoldSpec.from_builtin(n) for n in names)


_CATALOG: dict[str, CatalogEntry] = {}
_ALIASES = {"V4_5": "FI4_5", "MM2_35": "B3_7", "MM2_32": "W3"}


def _register(name, dimension, fano_index, evaluator, structural=None, summary=""):
    _CATALOG[name] = CatalogEntry(name, dimension, fano_index, evaluator, structural, summary)


def _install_catalog():
    reg = _register
    # index-5 and index-4 fourfolds
    reg("P4", 4, 5, _g_p4, ManifoldSpec.from_toric([[1, 1, 1, 1, 1]]),
        "projective four-space")
    reg("Q4", 4, 4, _g_q4,
        ManifoldSpec.from_toric_ci([[1, 1, 1, 1, 1, 1]], [[2]]),
        "quadric in P5")
    # index-3 fourfolds
    reg("FI4_1", 4, 3, _g_fi4_1,
        ManifoldSpec.from_wps_ci([1, 1, 1, 1, 2, 3], [6]),
        "degree-6 hypersurface in P(1,1,1,1,2,3)")
    reg("FI4_2", 4, 3, _g_fi4_2,
        ManifoldSpec.from_wps_ci([1, 1, 1, 1, 1, 2], [4]),
        "degree-4 hypersurface in P(1,1,1,1,1,2)")
    reg("FI4_3", 4, 3, _g_fi4_3,
        ManifoldSpec.from_wps_ci([1, 1, 1, 1, 1, 1], [3]),
        "cubic in P5")
    reg("FI4_4", 4, 3, _g_fi4_4,
        ManifoldSpec.from_toric_ci([[1, 1, 1, 1, 1, 1, 1]], [[2], [2]]),
        "intersection of two quadrics in P6")
    reg("FI4_5", 4, 3, _g_fi4_5, None,
        "linear section of the Grassmannian Gr(2,5)")
    reg("FI4_6", 4, 3, lambda order: period_product(
        [_g3_p2(order), _g3_p2(order)]), _product_spec("P2", "P2"),
        "product of two projective planes")
    # index-2 fourfolds of rank 1
    reg("V4_2", 4, 2, _g_v4_2,
        ManifoldSpec.from_wps_ci([1, 1, 1, 1, 1, 3], [6]),
        "degree-6 hypersurface in P(1,1,1,1,1,3)")
    reg("V4_4", 4, 2, _g_v4_4,
        ManifoldSpec.from_toric_ci([[1, 1, 1, 1, 1, 1]], [[4]]),
        "quartic in P5")
    reg("V4_6", 4, 2, _g_v4_6,
        ManifoldSpec.from_toric_ci([[1, 1, 1, 1, 1, 1, 1]], [[2], [3]]),
        "intersection of a quadric and a cubic in P6")
    reg("V4_8", 4, 2, _g_v4_8,
        ManifoldSpec.from_toric_ci([[1, 1, 1, 1, 1, 1, 1, 1]], [[2], [2], [2]]),
        "intersection of three quadrics in P7")
    reg("V4_10", 4, 2, _g_v4_10, None, "rank-1 index-2 fourfold of degree 10")
    reg("V4_12", 4, 2, _g_v4_12, None, "rank-1 index-2 fourfold of degree 12")
    reg("V4_14", 4, 2, _g_v4_14, None, "rank-1 index-2 fourfold of degree 14")
    reg("V4_16", 4, 2, _g_v4_16, None,
        "section of a flag-bundle presentation; Vandermonde extraction in 3 variables")
    reg("V4_18", 4, 2, _g_v4_18, None,
        "section over Gr(5,7); Vandermonde extraction in 5 variables")
    # index-2 fourfolds of higher rank
    reg("MW4_1", 4, 2, _g_mw4_1, _product_spec("P1", "B3_1"), "P1 x B3_1")
    reg("MW4_2", 4, 2, _g_mw4_2, _product_spec("P1", "B3_2"), "P1 x B3_2")
    reg("MW4_3", 4, 2, _g_mw4_3, _product_spec("P1", "B3_3"), "P1 x B3_3")
    reg("MW4_4", 4, 2, _g_mw4_4,
        ManifoldSpec.from_toric_ci(
            [[1, 1, 1, 0, 0, 0, 1], [0, 0, 0, 1, 1, 1, 1]], [[2, 2]]),
        "double cover of P2 x P2 branched in a (2,2) divisor")
    reg("MW4_5", 4, 2, _g_mw4_5,
        ManifoldSpec.from_toric_ci(
            [[1, 1, 1, 0, 0, 0, 0], [0, 0, 0, 1, 1, 1, 1]], [[1, 2]]),
        "divisor of bidegree (1,2) on P2 x P3")
    reg("MW4_6", 4, 2, _g_mw4_6, _product_spec("P1", "B3_4"), "P1 x B3_4")
    reg("MW4_7", 4, 2, _g_mw4_7,
        ManifoldSpec.from_toric_ci(
            [[1, 1, 1, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 1, 1, 1]],
            [[1, 1], [1, 1]]),
        "intersection of two (1,1) divisors on P3 x P3")
    reg("MW4_8", 4, 2, _g_mw4_8,
        ManifoldSpec.from_toric_ci(
            [[1, 1, 1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 1, 1, 1, 1]],
            [[0, 2], [1, 1]]),
        "divisor of bidegree (1,1) on P2 x Q3")
    reg("MW4_9", 4, 2, _g_mw4_9, _product_spec("P1", "B3_5"), "P1 x B3_5")
    reg("MW4_10", 4, 2, _g_mw4_10,
        ManifoldSpec.from_toric_ci(
            [[1, 1, 1, -1, 0, 0, 0], [0, 0, 0, 1, 1, 1, 1]], [[0, 2]]),
        "blow-up of Q4 along a conic")
    reg("MW4_11", 4, 2, _g_mw4_11, None,
        "projectivized null-correlation bundle over P3")
    reg("MW4_12", 4, 2, _g_mw4_12,
        ManifoldSpec.from_toric_ci(
            [[1, 1, 1, 1, -1, 0, 0], [0, 0, 0, 0, 1, 1, 1]], [[1, 1]]),
        "blow-up of Q4 along a line")
    reg("MW4_13", 4, 2, _g_mw4_13,
        ManifoldSpec.from_toric_ci(
            [[1, 1, 1, 1, 1, 0, -1], [0, 0, 0, 0, 0, 1, 1]], [[2, 0]]),
        "P1-bundle P(O(1) + O) over Q3")
    reg("MW4_14", 4, 2, _g_mw4_14, _product_spec("P1", "P3"), "P1 x P3")
    reg("MW4_15", 4, 2, _g_mw4_15,
        ManifoldSpec.from_toric([[1, 1, 1, 1, 0, -2], [0, 0, 0, 0, 1, 1]]),
        "P1-bundle P(O(1) + O(-1)) over P3")
    reg("MW4_16", 4, 2, _g_mw4_16, _product_spec("P1", "W3"), "P1 x W3")
    reg("MW4_17", 4, 2, _g_mw4_17,
        ManifoldSpec.from_toric(
            [[1, 1, 0, 0, 0, 0, 0], [0, 0, 1, 1, 1, 0, -1], [0, 0, 0, 0, 0, 1, 1]]),
        "P1 x B3_7 (also a rank-3 toric manifold)")
    reg("MW4_18", 4, 2, _g_mw4_18, _product_spec("P1", "P1", "P1", "P1"),
        "product of four projective lines")
    # the Strangeway fourfolds
    reg("Str1", 4, 1, lambda order: period_strangeway(1, order), None,
        "first Strangeway fourfold")
    reg("Str2", 4, 1, lambda order: period_strangeway(2, order), None,
        "second Strangeway fourfold")
    reg("Str3", 4, 1, lambda order: period_strangeway(3, order), None,
        "third Strangeway fourfold")
    # lower-dimensional factors
    reg("P1", 1, 2, _g3_p1, ManifoldSpec.from_toric([[1, 1]]), "projective line")
    reg("P2", 2, 3, _g3_p2, ManifoldSpec.from_toric([[1, 1, 1]]), "projective plane")
    reg("P3", 3, 4, _g3_p3, ManifoldSpec.from_toric([[1, 1, 1, 1]]),
        "projective three-space")
    reg("B3_1", 3, 2, _g3_b3_1,
        ManifoldSpec.from_wps_ci([1, 1, 1, 2, 3], [6]),
        "degree-1 index-2 threefold: sextic in P(1,1,1,2,3)")
    reg("B3_2", 3, 2, _g3_b3_2,
        ManifoldSpec.from_wps_ci([1, 1, 1, 1, 2], [4]),
        "degree-2 index-2 threefold: quartic in P(1,1,1,1,2)")
    reg("B3_3", 3, 2, _g3_b3_3,
        ManifoldSpec.from_wps_ci([1, 1, 1, 1, 1], [3]),
        "cubic threefold")
    reg("B3_4", 3, 2, _g3_b3_4,
        ManifoldSpec.from_toric_ci([[1, 1, 1, 1, 1, 1]], [[2], [2]]),
        "intersection of two quadrics in P5")
    reg("B3_5", 3, 2, _g3_b3_5, None,
        "degree-5 index-2 threefold: linear section of Gr(2,5)")
    reg("B3_7", 3, 2, _g3_b3_7,
        ManifoldSpec.from_toric([[1, 1, 1, 0, -1], [0, 0, 0, 1, 1]]),
        "blow-up of P3 at a point")
    reg("W3", 3, 2, _g3_w3,
        ManifoldSpec.from_toric_ci(
            [[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1]], [[1, 1]]),
        "divisor of bidegree (1,1) on P2 x P2")
    reg("MM2_17", 3, 1, _g3_mm2_17, None,
        "rank-2 threefold underlying the Strangeway construction")


_install_catalog()


def catalog_names() -> list[str]:
    """Primary catalog names, sorted."""
    return sorted(_CATALOG)


def catalog_entry(name: str) -> CatalogEntry:
    key = _ALIASES.get(name, name)
    try:
        return _CATALOG[key]
    except KeyError:
        raise ValueError(f"unknown builtin manifold {name!r}") from None


def period_closed_form(name: str, order: int) -> TruncatedSeries:
    """Quantum period of a named catalog family via its series formula."""
    return catalog_entry(name).evaluate(order)


def resolve(spec: ManifoldSpec, order: int) -> TruncatedSeries:
    """Evaluate the quantum period of a manifold specification."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if spec.kind == "toric":
        return period_toric(spec.toric, order)
    if spec.kind == "toric_ci":
        return period_toric_ci(spec.toric, spec.bundle, order)
    if spec.kind == "wps_ci":
        return period_wps_ci(spec.wps, order)
    if spec.kind == "product":
        return period_product([resolve(f, order) for f in spec.factors])
    return period_closed_form(spec.name, order)
