"""Local analysis of differential operators at their singular points.

An operator sum_k p_k(t) D^k with D = t d/dt acts on formal series in a
local coordinate u at each point of interest.  Rewriting it in the shape
sum_i u^i f_i(theta), where theta = u d/du, exposes the local structure.
The polynomial f_0 is the indicial polynomial and its roots are the
candidate exponents of local solutions.  Frobenius' method then builds a
basis of formal solutions u^rho * sum c_{ij} u^i log(u)^j / j!, where
logarithms enter exactly when integer spaced exponents force resonances.

The local monodromy of the solution sheaf around a singular point s is
read off from this basis.  Writing T_s for the monodromy transformation,
the Jordan form of (log T_s) / (2 pi i) has one nilpotent chain per
Frobenius solution chain, with eigenvalue the shared fractional part of
the exponents feeding the chain.  This module computes those Jordan
blocks exactly, along with the ramification quantity

    rf = sum over points x of dim(V_x / V_x^{T_x})

and the defect rf - 2 * rank, for operators whose indicial exponents are
all rational.

Points where the leading coefficient vanishes are grouped by the
Q-irreducible factor they annihilate and analysed once per factor, in
exact arithmetic over the number field Q[x]/(factor).  Galois conjugate
points therefore share a single record.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import (
    NFElement,
    NumberField,
    UniPoly,
    factor_over_Q,
    format_rational,
    nfpoly_normalize,
    rational_roots_over_nf,
)
from .qde import DiffOperator

__all__ = [
    "UnsupportedExponentError",
    "SingularPoint",
    "ThetaForm",
    "FuchsianReport",
    "LocalMonodromy",
    "RamificationEntry",
    "RamificationReport",
    "singular_points",
    "localize",
    "is_fuchsian",
    "local_log_monodromy",
    "verify_frobenius",
    "ramification",
]


class UnsupportedExponentError(ValueError):
    """Raised when a singular point has an irrational indicial exponent.

    The analysis is exact and only covers rational local exponents, which
    suffices for the operator corpus shipped with this package.
    """

    def __init__(self, point_description: str):
        super().__init__(f"unsupported: irrational exponents at {point_description}")
        self.point_description = point_description


# ---------------------------------------------------------------------------
# field element helpers (elements are Fractions or NFElements throughout)


def _nz(x) -> bool:
    if isinstance(x, NFElement):
        return not x.is_zero()
    return x != 0


def _inv(x):
    if isinstance(x, NFElement):
        return x.inverse()
    return 1 / x


def _field_zero(field):
    return Fraction(0) if field is None else field.zero


def _field_one(field):
    return Fraction(1) if field is None else field.one


def _strip(coeffs) -> tuple:
    out = list(coeffs)
    while out and not _nz(out[-1]):
        out.pop()
    return tuple(out)


def _format_poly(p: UniPoly, var: str = "t") -> str:
    """Integer primitive form of p, highest degree first, for display."""
    _, prim = p.content_and_primitive()
    parts = []
    for i in range(prim.degree, -1, -1):
        c = prim[i]
        if c == 0:
            continue
        mag = abs(int(c))
        if i == 0:
            body = str(mag)
        else:
            head = "" if mag == 1 else f"{mag}*"
            body = f"{head}{var}" if i == 1 else f"{head}{var}^{i}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign0, body0 = parts[0]
    text = ("-" if sign0 == "-" else "") + body0
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# ---------------------------------------------------------------------------
# singular points


@dataclass(frozen=True)
class SingularPoint:
    """A marked point of the operator on the projective t-line.

    kind is "origin", "finite" or "infinity".  A finite point stands for
    the full Galois orbit of roots of its monic irreducible factor; root
    is the class of x in field = Q[x]/(factor), an exact root.  The
    multiplicity_in_leading records how many times the factor (the
    coordinate t, for the origin) divides the leading coefficient.
    """

    kind: str
    factor: UniPoly | None
    field: NumberField | None
    root: NFElement | None
    multiplicity_in_leading: int

    def describe(self) -> str:
        if self.kind == "origin":
            return "t = 0"
        if self.kind == "infinity":
            return "t = infinity"
        if self.factor.degree == 1:
            return f"t = {format_rational(-self.factor.coeffs[0])}"
        return f"roots of {_format_poly(self.factor)}"

    @property
    def degree(self) -> int:
        """Number of Galois conjugates the record stands for."""
        if self.kind == "finite":
            return self.factor.degree
        return 1


def singular_points(op: DiffOperator) -> tuple[SingularPoint, ...]:
    """Marked points of op: origin, leading coefficient roots, infinity.

    The origin and infinity are always included since the operators of
    interest are written in the Euler form around t = 0.  Each remaining
    Q-irreducible factor of the leading coefficient p_N contributes one
    record; a plain factor of t is absorbed into the origin record.  The
    finite records follow the canonical factor order (degree, then
    coefficients), so the listing is deterministic.
    """
    pN = op.p(op.order)
    origin_mult = pN.valuation() if pN[0] == 0 else 0
    points = [SingularPoint("origin", None, None, None, origin_mult)]
    _, factors = factor_over_Q(pN)
    for fac, mult in factors:
        if fac.degree == 1 and fac.coeffs[0] == 0:
            continue
        field = NumberField(fac, check_irreducible=False)
        points.append(SingularPoint("finite", fac, field, field.gen, mult))
    points.append(SingularPoint("infinity", None, None, None, 0))
    return tuple(points)


# ---------------------------------------------------------------------------
# localization to theta form


@dataclass(frozen=True)
class ThetaForm:
    """The operator at a point, as sum_i u^i f_i(theta) with theta = u d/du.

    fs[i] holds the coefficients of f_i, lowest degree first.  The entries
    are Fractions when field is None (origin and infinity) and NFElements
    otherwise.  The overall power of u has been cleared so that f_0 is
    nonzero; clearing_power records the twist used, for transparency.
    f_0 is the indicial polynomial, of degree equal to the operator order
    exactly when the point is a regular singularity.
    """

    point: SingularPoint
    field: NumberField | None
    fs: tuple[tuple, ...]
    clearing_power: int

    def f(self, i: int) -> tuple:
        if 0 <= i < len(self.fs):
            return self.fs[i]
        return ()

    @property
    def indicial(self) -> tuple:
        return self.fs[0]


def _stirling2(n: int) -> list[list[int]]:
    S = [[0] * (n + 1) for _ in range(n + 1)]
    S[0][0] = 1
    for k in range(1, n + 1):
        for j in range(1, k + 1):
            S[k][j] = S[k - 1][j - 1] + j * S[k - 1][j]
    return S


def _falling_factorials(n: int) -> list[UniPoly]:
    polys = [UniPoly([1])]
    for j in range(n):
        polys.append(polys[-1] * UniPoly([-j, 1]))
    return polys


def _taylor_coeffs(coeffs: list, x0) -> list:
    """In place Taylor expansion about x0 by repeated synthetic division.

    coeffs is consumed (lowest degree first) and the returned list holds
    the coefficients of p(x0 + h) as a polynomial in h.  Works for any
    coefficient ring whose elements support + and * with x0.
    """
    n = len(coeffs)
    for a in range(n - 1):
        for b in range(n - 2, a - 1, -1):
            coeffs[b] = coeffs[b] + coeffs[b + 1] * x0
    return coeffs


def localize(op: DiffOperator, point: SingularPoint, root: NFElement | None = None) -> ThetaForm:
    """Rewrite op as sum_i u^i f_i(theta) in the local coordinate at point.

    The local coordinate is u = t at the origin, u = t - s at a finite
    point s, and u = 1/t at infinity (where D = -theta).  For a finite
    point the expansion is carried out over its number field; root may
    select a different embedding of the same field, for Galois checks.
    The result is normalized by a power of u so that f_0 is nonzero.
    """
    N, r = op.order, op.degree
    if point.kind == "infinity":
        fs = []
        for i in range(r + 1):
            coeffs = [Fraction(0)] * (N + 1)
            for k in range(N + 1):
                a = op.coeffs[k][r - i]
                if a:
                    coeffs[k] = Fraction(-a if k % 2 else a)
            fs.append(_strip(coeffs))
        while len(fs) > 1 and not fs[-1]:
            fs.pop()
        return ThetaForm(point, None, tuple(fs), r)

    # Origin or finite point: convert D powers to d/dt powers, shift the
    # coefficients to the point, then regroup into theta powers using
    # u^j (d/du)^j = theta (theta - 1) ... (theta - j + 1).
    stirling = _stirling2(N)
    fall = _falling_factorials(N)
    rjs = []
    for j in range(N + 1):
        acc = UniPoly()
        for k in range(j, N + 1):
            if stirling[k][j]:
                acc = acc + op.p(k) * Fraction(stirling[k][j])
        if not acc.is_zero():
            acc = acc * UniPoly.x_power(j)
        rjs.append(acc)

    if point.kind == "origin":
        field = None
        taylors = [list(rj.coeffs) for rj in rjs]
    else:
        field = point.field
        s = point.root if root is None else root
        if s.field != field:
            raise ValueError("root does not lie in the field of the point")
        taylors = []
        for rj in rjs:
            if rj.is_zero():
                taylors.append([])
            else:
                taylors.append(_taylor_coeffs([field.from_rational(c) for c in rj.coeffs], s))

    orders = {}
    for j, tc in enumerate(taylors):
        v = next((idx for idx, c in enumerate(tc) if _nz(c)), None)
        if v is not None:
            orders[j] = v
    w = max(j - orders[j] for j in orders)
    zero = _field_zero(field)
    length = 1 + max(w - j + len(taylors[j]) - 1 for j in orders)
    fs = [[zero] * (N + 1) for _ in range(length)]
    for j in orders:
        tc = taylors[j]
        fl = fall[j].coeffs
        for m in range(orders[j], len(tc)):
            c = tc[m]
            if not _nz(c):
                continue
            row = fs[w - j + m]
            for d, fc in enumerate(fl):
                if fc:
                    row[d] = row[d] + c * fc
    out = [_strip(row) for row in fs]
    while len(out) > 1 and not out[-1]:
        out.pop()
    return ThetaForm(point, field, tuple(out), w)


# ---------------------------------------------------------------------------
# Fuchsian test


@dataclass(frozen=True)
class FuchsianReport:
    """Verdict of the regular singularity test at every marked point."""

    is_fuchsian: bool
    failures: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.is_fuchsian


def is_fuchsian(op: DiffOperator) -> FuchsianReport:
    """Check that every singular point of op is a regular singularity.

    At each marked point the normalized theta form must have an indicial
    polynomial of degree exactly the operator order; a drop in degree
    means an irregular point.  Ordinary points pass automatically and
    are not inspected.
    """
    failures = []
    for point in singular_points(op):
        tf = localize(op, point)
        if len(tf.indicial) - 1 != op.order:
            failures.append(point.describe())
    return FuchsianReport(not failures, tuple(failures))


# ---------------------------------------------------------------------------
# Frobenius solutions and local log monodromy
#
# Solutions are sought per congruence class of exponents modulo 1.  With
# rho the smallest exponent of a class, the ansatz is
#
#   y = u^rho * sum_{i >= 0} sum_{j <= J} c_{ij} u^i log(u)^j / j!
#
# and theta acts on the vector of log coefficients at level i as
# (rho + i + Lambda), where Lambda shifts the index j down by one.  The
# operator identity then becomes the triangular recursion
#
#   f_0(rho + i + Lambda) v_i = - sum_{i' < i} f_{i-i'}(rho + i' + Lambda) v_{i'}
#
# over the coefficient field.  Away from exponents the left matrix is
# invertible; at an exponent of multiplicity m it is nilpotent of order
# m, which introduces m free constants and up to m linear solvability
# constraints.  Tracking each v_i as a matrix over the free constants
# makes the solution space dimension for a given log bound J an exact
# rank computation.  Raising J until the dimension reaches the class
# multiplicity yields the log filtration, whose increments are the
# conjugate partition of the Jordan block sizes.


def _taylor_of(fcoeffs: tuple, field, x0: Fraction) -> list | None:
    if not fcoeffs:
        return None
    if field is None:
        return _taylor_coeffs(list(fcoeffs), x0)
    return _taylor_coeffs(list(fcoeffs), field.from_rational(x0))


class _ClassRecursion:
    """Frobenius recursion for one mod 1 class of exponents of a theta form."""

    def __init__(self, tf: ThetaForm, rho: Fraction, resonances: dict[int, int]):
        self.tf = tf
        self.field = tf.field
        self.rho = rho
        self.resonances = dict(sorted(resonances.items()))
        self.multiplicity = sum(resonances.values())
        self.n_max = max(resonances)
        self._taylor_cache: dict[tuple[int, int], list | None] = {}

    def _taylor(self, m: int, i: int):
        """Taylor coefficients of f_m about rho + i (None for f_m = 0)."""
        key = (m, i)
        if key not in self._taylor_cache:
            self._taylor_cache[key] = _taylor_of(self.tf.f(m), self.field, self.rho + i)
        return self._taylor_cache[key]

    def run(self, J: int, horizon: int):
        """Forward recursion with symbolic constants up to u^(rho + horizon).

        Returns (ncols, constraints, V): V[i] is the (J+1) x ncols matrix
        expressing the log coefficients of u^(rho+i) in the free
        constants, and constraints lists rows that a constant vector must
        annihilate for the solution to exist.
        """
        field = self.field
        zero, one = _field_zero(field), _field_one(field)
        nfs = len(self.tf.fs)
        ncols = sum(min(m, J + 1) for m in self.resonances.values())
        V: dict[int, list[list]] = {}
        constraints: list[list] = []
        col_at = 0
        for i in range(horizon + 1):
            B = [[zero] * ncols for _ in range(J + 1)]
            for ip in range(max(0, i - nfs + 1), i):
                tc = self._taylor(i - ip, ip)
                if tc is None:
                    continue
                Vp = V[ip]
                for j in range(J + 1):
                    row = B[j]
                    for j2 in range(j, J + 1):
                        d = j2 - j
                        if d >= len(tc):
                            break
                        td = tc[d]
                        if not _nz(td):
                            continue
                        vrow = Vp[j2]
                        for c in range(ncols):
                            if _nz(vrow[c]):
                                row[c] = row[c] - td * vrow[c]
            t0 = self._taylor(0, i)
            m = self.resonances.get(i, 0)
            v = [[zero] * ncols for _ in range(J + 1)]
            if m == 0:
                inv0 = _inv(t0[0])
                for j in range(J, -1, -1):
                    for c in range(ncols):
                        acc = B[j][c]
                        for d in range(1, min(J - j, len(t0) - 1) + 1):
                            if _nz(t0[d]) and _nz(v[j + d][c]):
                                acc = acc - t0[d] * v[j + d][c]
                        if _nz(acc):
                            v[j][c] = acc * inv0
            else:
                if not _nz(t0[m]):
                    raise ArithmeticError("internal error: exponent multiplicity mismatch")
                for j in range(max(0, J - m + 1), J + 1):
                    if any(_nz(x) for x in B[j]):
                        constraints.append(list(B[j]))
                invm = _inv(t0[m])
                for j in range(J - m, -1, -1):
                    for c in range(ncols):
                        acc = B[j][c]
                        for d in range(m + 1, min(J - j, len(t0) - 1) + 1):
                            if _nz(t0[d]) and _nz(v[j + d][c]):
                                acc = acc - t0[d] * v[j + d][c]
                        if _nz(acc):
                            v[j + m][c] = acc * invm
                for j in range(min(m, J + 1)):
                    v[j][col_at] = one
                    col_at += 1
            V[i] = v
        return ncols, constraints, V

    def dimension(self, J: int) -> int:
        """Dimension of the solution space with log powers at most J."""
        ncols, constraints, _ = self.run(J, self.n_max)
        return ncols - _row_rank(constraints)

    def log_filtration(self, order: int) -> list[int]:
        """Dimensions [d_0, d_1, ...] until the class multiplicity is hit."""
        dims = []
        for J in range(order + 1):
            dims.append(self.dimension(J))
            if dims[-1] == self.multiplicity:
                return dims
        raise ArithmeticError(
            "internal error: log ladder did not close at "
            f"{self.tf.point.describe()} (exponent {format_rational(self.rho)})"
        )

    def solutions(self, J: int, horizon: int) -> list[list[list]]:
        """A basis of solutions, each a list over i of log coefficient rows."""
        ncols, constraints, V = self.run(J, horizon)
        kernel = _kernel_basis(constraints, ncols, self.field)
        if len(kernel) != self.multiplicity:
            raise ArithmeticError("internal error: solution count mismatch at "
                                  f"{self.tf.point.describe()}")
        sols = []
        for vec in kernel:
            sol = []
            for i in range(horizon + 1):
                sol.append([_dot_row(V[i][j], vec, self.field) for j in range(J + 1)])
            sols.append(sol)
        return sols


def _dot_row(row: list, vec: list, field):
    acc = _field_zero(field)
    for a, b in zip(row, vec):
        if _nz(a) and _nz(b):
            acc = acc + a * b
    return acc


def _rref(rows: list[list], ncols: int):
    mat = [list(r) for r in rows if any(_nz(x) for x in r)]
    pivots = []
    rpos = 0
    for col in range(ncols):
        pivot = next((rr for rr in range(rpos, len(mat)) if _nz(mat[rr][col])), None)
        if pivot is None:
            continue
        mat[rpos], mat[pivot] = mat[pivot], mat[rpos]
        inv = _inv(mat[rpos][col])
        mat[rpos] = [x * inv for x in mat[rpos]]
        for rr in range(len(mat)):
            if rr != rpos and _nz(mat[rr][col]):
                f = mat[rr][col]
                mat[rr] = [a - f * b for a, b in zip(mat[rr], mat[rpos])]
        pivots.append(col)
        rpos += 1
        if rpos == len(mat):
            break
    return mat, pivots


def _row_rank(rows: list[list]) -> int:
    if not rows:
        return 0
    return len(_rref(rows, len(rows[0]))[1])


def _kernel_basis(rows: list[list], ncols: int, field) -> list[list]:
    zero, one = _field_zero(field), _field_one(field)
    mat, pivots = _rref(rows, ncols)
    basis = []
    for free_col in range(ncols):
        if free_col in pivots:
            continue
        vec = [zero] * ncols
        vec[free_col] = one
        for rr, pc in enumerate(pivots):
            val = mat[rr][free_col]
            if _nz(val):
                vec[pc] = zero - val
        basis.append(vec)
    return basis


def _indicial_roots(f0: tuple, field) -> tuple[list[tuple[Fraction, int]], int]:
    """Rational roots of f_0 with multiplicity, plus the uncovered degree."""
    if field is None:
        _, factors = factor_over_Q(UniPoly(f0))
        roots = sorted((-fac.coeffs[0], mult) for fac, mult in factors if fac.degree == 1)
        uncovered = sum(fac.degree * mult for fac, mult in factors if fac.degree > 1)
    else:
        roots = rational_roots_over_nf(list(f0))
        uncovered = (len(nfpoly_normalize(list(f0))) - 1) - sum(m for _, m in roots)
    return roots, uncovered


def _exponent_classes(roots: list[tuple[Fraction, int]]):
    """Group exponents by fractional part as (rho, {offset: multiplicity})."""
    classes: dict[Fraction, list[tuple[Fraction, int]]] = {}
    for root, mult in roots:
        frac = root - (root.numerator // root.denominator)
        classes.setdefault(frac, []).append((root, mult))
    out = []
    for frac in sorted(classes):
        members = classes[frac]
        rho = min(r for r, _ in members)
        resonances = {int(r - rho): mult for r, mult in members}
        out.append((rho, resonances))
    return out


@dataclass(frozen=True)
class LocalMonodromy:
    """Jordan data of (log T) / (2 pi i) at one singular point.

    blocks lists (eigenvalue, size) pairs with each eigenvalue a rational
    in [0, 1), sorted by eigenvalue and then by decreasing size; the
    sizes add up to the operator order.  exponents lists the indicial
    exponents in increasing order, with multiplicity.
    """

    point: SingularPoint
    exponents: tuple[Fraction, ...]
    blocks: tuple[tuple[Fraction, int], ...]

    @property
    def order(self) -> int:
        return sum(size for _, size in self.blocks)

    @property
    def contribution(self) -> int:
        """dim(V / V^T) at the point: the order minus the fixed part.

        Each Jordan block with eigenvalue 0 fixes a one dimensional
        subspace of the local solution space; no other block fixes
        anything.
        """
        return self.order - sum(1 for ev, _ in self.blocks if ev == 0)

    @property
    def is_trivial(self) -> bool:
        return self.contribution == 0


def local_log_monodromy(op: DiffOperator, point: SingularPoint,
                        root: NFElement | None = None) -> LocalMonodromy:
    """Exact Jordan block data of the local log monodromy at point.

    Requires a regular singularity with rational exponents; an
    irrational exponent raises UnsupportedExponentError.  The blocks are
    obtained from the log filtration of the Frobenius solution basis,
    one congruence class of exponents at a time.
    """
    tf = localize(op, point, root)
    N = op.order
    if len(tf.indicial) - 1 != N:
        raise ValueError(f"operator is not regular singular at {point.describe()}")
    roots, uncovered = _indicial_roots(tf.indicial, tf.field)
    if uncovered:
        raise UnsupportedExponentError(point.describe())
    if sum(mult for _, mult in roots) != N:
        raise ArithmeticError(f"internal error: exponent count at {point.describe()}")

    blocks = []
    for rho, resonances in _exponent_classes(roots):
        rec = _ClassRecursion(tf, rho, resonances)
        dims = rec.log_filtration(N)
        eigenvalue = rho - (rho.numerator // rho.denominator)
        increments = [dims[0]] + [dims[j] - dims[j - 1] for j in range(1, len(dims))]
        if any(e2 > e1 for e1, e2 in zip(increments, increments[1:])):
            raise ArithmeticError(
                f"internal error: log filtration not nested at {point.describe()}")
        padded = increments + [0]
        for size in range(len(increments), 0, -1):
            for _ in range(padded[size - 1] - padded[size]):
                blocks.append((eigenvalue, size))
    blocks.sort(key=lambda b: (b[0], -b[1]))
    exponents = []
    for root_value, mult in roots:
        exponents.extend([root_value] * mult)
    return LocalMonodromy(point, tuple(sorted(exponents)), tuple(blocks))


def verify_frobenius(op: DiffOperator, point: SingularPoint, terms: int = 20,
                     root: NFElement | None = None) -> int:
    """Build the Frobenius basis at point and substitute it back.

    Each solution is expanded terms coefficients past the last resonance
    and the operator is applied to it directly; every coefficient within
    the computed range must vanish.  Returns the number of solutions
    checked, which equals the operator order.  Raises ArithmeticError on
    any failure.
    """
    tf = localize(op, point, root)
    N = op.order
    if len(tf.indicial) - 1 != N:
        raise ValueError(f"operator is not regular singular at {point.describe()}")
    roots, uncovered = _indicial_roots(tf.indicial, tf.field)
    if uncovered:
        raise UnsupportedExponentError(point.describe())
    total = 0
    for rho, resonances in _exponent_classes(roots):
        rec = _ClassRecursion(tf, rho, resonances)
        dims = rec.log_filtration(N)
        J = len(dims) - 1
        horizon = max(resonances) + terms
        for sol in rec.solutions(J, horizon):
            _check_substitution(tf, rho, sol)
            total += 1
    if total != N:
        raise ArithmeticError(f"internal error: solution count at {point.describe()}")
    return total


def _check_substitution(tf: ThetaForm, rho: Fraction, sol: list[list]) -> None:
    """Apply the theta form to one formal solution and demand zero.

    The solution is given as log coefficient rows sol[i][j] for the
    monomials u^(rho+i) log(u)^j / j!.  The check evaluates the image
    coefficients directly from the f_i, independently of the recursion
    that produced the solution.
    """
    field = tf.field
    J1 = len(sol[0])
    nfs = len(tf.fs)
    for i in range(len(sol)):
        for j in range(J1):
            acc = _field_zero(field)
            for ip in range(max(0, i - nfs + 1), i + 1):
                tc = _taylor_of(tf.f(i - ip), field, rho + ip)
                if tc is None:
                    continue
                for j2 in range(j, J1):
                    d = j2 - j
                    if d >= len(tc):
                        break
                    if _nz(tc[d]) and _nz(sol[ip][j2]):
                        acc = acc + tc[d] * sol[ip][j2]
            if _nz(acc):
                raise ArithmeticError(
                    f"Frobenius solution fails to annihilate at {tf.point.describe()} "
                    f"(u power {i}, log power {j})")


# ---------------------------------------------------------------------------
# ramification census


@dataclass(frozen=True)
class RamificationEntry:
    """One singular point record inside a ramification report."""

    point: SingularPoint
    local: LocalMonodromy
    conjugate_count: int

    @property
    def contribution(self) -> int:
        """dim(V / V^T) at one point of the Galois orbit."""
        return self.local.contribution

    @property
    def total(self) -> int:
        return self.contribution * self.conjugate_count


@dataclass(frozen=True)
class RamificationReport:
    """Ramification census of an operator over the projective t-line.

    rf adds up dim(V / V^T) over every singular point, counting each
    Galois conjugate separately.  defect = rf - 2 * rank is recorded even
    when negative, which would flag an anomaly worth investigating.
    Entries with zero contribution are retained in the data and skipped
    in the rendered table.
    """

    entries: tuple[RamificationEntry, ...]
    rank: int
    rf: int
    defect: int

    @property
    def verdict(self) -> str:
        if self.defect == 0:
            return "extremal"
        if self.defect > 0:
            return f"defect {self.defect}"
        return f"anomalous (defect {self.defect})"

    @property
    def anomalous(self) -> bool:
        return self.defect < 0

    def text(self) -> str:
        lines = [f"rank: {self.rank}"]
        for entry in self.entries:
            if entry.contribution == 0:
                continue
            local = entry.local
            lines.append(f"point: {entry.point.describe()}")
            lines.append("  exponents: " +
                         ", ".join(format_rational(e) for e in local.exponents))
            lines.append("  blocks: " +
                         ", ".join(f"({format_rational(ev)}, {size})"
                                   for ev, size in local.blocks))
            lines.append(f"  contribution: {entry.contribution}")
            if entry.conjugate_count > 1:
                lines.append(f"  conjugates: {entry.conjugate_count}")
        lines.append(f"rf: {self.rf}")
        lines.append(f"defect: {self.defect}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines) + "\n"


def ramification(op: DiffOperator) -> RamificationReport:
    """Full local monodromy census and ramification defect of op.

    Every marked point is analysed; a finite record enters rf once per
    Galois conjugate.  The operator must be regular singular everywhere
    with rational exponents.
    """
    entries = []
    rf = 0
    for point in singular_points(op):
        local = local_log_monodromy(op, point)
        entry = RamificationEntry(point, local, point.degree)
        entries.append(entry)
        rf += entry.total
    return RamificationReport(tuple(entries), op.order, rf, rf - 2 * op.order)
