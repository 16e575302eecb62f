"""Differential operators annihilating regularized quantum periods.

An operator is written in terms of D = t d/dt as

    L = sum_{k=0}^{N} p_k(t) D^k,    p_k(t) = sum_{l=0}^{r} a_{kl} t^l,

acting on power series by D(t^n) = n t^n. Applying L to f = sum alpha_n t^n
gives coefficient sum_{k,l} a_{kl} (n-l)^k alpha_{n-l} at t^n.

``reconstruct`` recovers the operator of minimal order N, and among those of
minimal degree r, that annihilates a truncated series: for each candidate
(N, r) in ascending lexicographic order the annihilation conditions form a
linear system in the a_{kl}, and the first candidate whose system is
satisfiable while over-determined by at least ``margin`` equations wins.
The nullspace is computed modulo several word-size primes, lifted by
Chinese remaindering and rational reconstruction, and the lifted operator
is verified exactly over the rationals, so the returned operator and its
uniqueness certificate do not depend on luck with the primes.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

import numpy as np

from .exactnum import UniPoly, format_rational, parse_rational
from .series import TruncatedSeries

__all__ = [
    "DiffOperator",
    "ReconstructionResult",
    "AmbiguousOperatorError",
    "apply",
    "reconstruct",
    "canonicalize",
    "equal_up_to_scalar",
]


class AmbiguousOperatorError(ValueError):
    """The minimal (N, r) admits more than one independent annihilator."""

    def __init__(self, order: int, degree: int, dimension: int):
        self.order = order
        self.degree = degree
        self.dimension = dimension
        super().__init__(
            f"annihilator space at order {order}, degree {degree} has dimension "
            f"{dimension}; the series is too short to pin down a single operator"
        )


class DiffOperator:
    """L = sum_{k <= N, l <= r} a_{kl} t^l D^k with rational coefficients.

    The coefficient matrix is indexed [k][l]. Row N must not vanish
    identically (the order is tight); the degree r is tight only after
    canonicalization.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        rows = tuple(
            tuple(c if isinstance(c, Fraction) else Fraction(c) for c in row)
            for row in coeffs
        )
        if not rows or not rows[0]:
            raise ValueError("operator needs at least one coefficient")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("coefficient rows must all have the same length")
        if all(c == 0 for c in rows[-1]):
            raise ValueError("leading coefficient p_N must be nonzero")
        self.coeffs = rows

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return len(self.coeffs[0]) - 1

    def p(self, k: int) -> UniPoly:
        """The polynomial coefficient of D^k."""
        return UniPoly(self.coeffs[k])

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = []
        for k in range(self.order, -1, -1):
            pk = self.p(k)
            if pk.is_zero():
                continue
            dpart = "" if k == 0 else ("D" if k == 1 else f"D^{k}")
            terms.append(f"({pk}){dpart}" if dpart else f"({pk})")
        return " + ".join(terms) if terms else "0"

    # -- text format ---------------------------------------------------------

    def to_text(self, comment: str | None = None) -> str:
        """Serialize in canonical form: order and degree headers, then the
        integer coefficient matrix, row k ascending, entries l ascending."""
        op = canonicalize(self)
        lines = []
        if comment:
            for ln in comment.splitlines():
                lines.append(f"# {ln}".rstrip())
        lines.append(f"order: {op.order}")
        lines.append(f"degree: {op.degree}")
        for row in op.coeffs:
            lines.append(" ".join(format_rational(c) for c in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "DiffOperator":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if len(lines) < 3 or not lines[0].startswith("order:") or not lines[1].startswith("degree:"):
            raise ValueError("operator file needs 'order:' and 'degree:' headers")
        order = int(lines[0].split(":", 1)[1])
        degree = int(lines[1].split(":", 1)[1])
        rows = []
        for ln in lines[2:]:
            rows.append([parse_rational(tok) for tok in ln.split()])
        if len(rows) != order + 1:
            raise ValueError(
                f"operator file declares order {order} but lists {len(rows)} rows"
            )
        for row in rows:
            if len(row) != degree + 1:
                raise ValueError(
                    f"operator file declares degree {degree} but a row has {len(row)} entries"
                )
        return cls(rows)

    @classmethod
    def from_file(cls, path) -> "DiffOperator":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())


def canonicalize(op: DiffOperator) -> DiffOperator:
    """The canonical scalar multiple: integer coefficients with content 1,
    trailing zero degree columns trimmed, and the highest-degree nonzero
    coefficient of p_N positive."""
    den = 1
    for row in op.coeffs:
        for c in row:
            den = lcm(den, c.denominator)
    rows = [[int(c * den) for c in row] for row in op.coeffs]
    content = 0
    for row in rows:
        for c in row:
            content = gcd(content, c)
    if content:
        rows = [[c // content for c in row] for row in rows]
    width = len(rows[0])
    while width > 1 and all(row[width - 1] == 0 for row in rows):
        width -= 1
    rows = [row[:width] for row in rows]
    lead = next(c for c in reversed(rows[-1]) if c != 0)
    if lead < 0:
        rows = [[-c for c in row] for row in rows]
    return DiffOperator(rows)


def equal_up_to_scalar(a: DiffOperator, b: DiffOperator) -> bool:
    """True iff a and b agree after canonicalization."""
    return canonicalize(a).coeffs == canonicalize(b).coeffs


def _min_degree_column(op: DiffOperator) -> int:
    for l in range(op.degree + 1):
        if any(row[l] != 0 for row in op.coeffs):
            return l
    raise ValueError("zero operator")


def apply(op: DiffOperator, f: TruncatedSeries) -> TruncatedSeries:
    """Apply L to a truncated series.

    The coefficient of t^n in Lf is sum_{k,l} a_{kl} (n-l)^k alpha_{n-l},
    terms with n - l < 0 omitted. With f known through order M, that sum is
    fully determined for n <= M + l0, where l0 is the smallest t-power
    appearing in L (larger n would need coefficients beyond the
    truncation), and that is the output's truncation order.
    """
    alpha = f.coeffs
    M = f.truncation_order
    l0 = _min_degree_column(op)
    out = []
    for n in range(M + l0 + 1):
        total = Fraction(0)
        for k, row in enumerate(op.coeffs):
            for l, a in enumerate(row):
                if a and 0 <= n - l <= M:
                    total += a * (n - l) ** k * alpha[n - l]
        out.append(total)
    return TruncatedSeries(out)


# ---------------------------------------------------------------------------
# modular linear algebra

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin for n below 3.3e24
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_stream():
    """Primes descending from 2^31, a fixed deterministic sequence. They
    stay below 2^31 so modular row operations fit in int64 products."""
    n = 2**31 - 1
    while n > 2**30:
        if _is_prime(n):
            yield n
        n -= 2


def _nullspace_mod_p(mat: np.ndarray, p: int):
    """Reduced row echelon form mod p.

    Returns (pivot_columns, basis) where basis contains one python-int
    vector per free column, normalized to 1 at that column. The pivot rule
    is fixed (topmost available row, leftmost column), so the result is
    deterministic.
    """
    m = np.array(mat, dtype=np.int64) % p
    nrows, ncols = m.shape
    piv_cols = []
    rpos = 0
    for c in range(ncols):
        if rpos == nrows:
            break
        nz = np.nonzero(m[rpos:, c])[0]
        if nz.size == 0:
            continue
        pr = rpos + int(nz[0])
        if pr != rpos:
            m[[rpos, pr]] = m[[pr, rpos]]
        inv = pow(int(m[rpos, c]), p - 2, p)
        m[rpos] = (m[rpos] * inv) % p
        col = m[:, c].copy()
        col[rpos] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[rpos])) % p
        piv_cols.append(c)
        rpos += 1
    piv_set = set(piv_cols)
    basis = []
    for fc in range(ncols):
        if fc in piv_set:
            continue
        vec = [0] * ncols
        vec[fc] = 1
        for i, pc in enumerate(piv_cols):
            vec[pc] = int((-m[i, fc]) % p)
        basis.append(vec)
    return tuple(piv_cols), basis


def _crt_pair(a1, m1, a2, m2):
    t = ((a2 - a1) * pow(m1, -1, m2)) % m2
    return a1 + m1 * t, m1 * m2


def _rational_reconstruct(x: int, m: int) -> Fraction | None:
    """The unique p/q congruent to x mod m with |p|, q <= sqrt(m/2), or
    None when no such fraction exists."""
    bound = isqrt(m // 2)
    r0, r1 = m, x % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1) if s1 > 0 else Fraction(-r1, -s1)


def _worker_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("QPERIODS_WORKERS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


@dataclass(frozen=True)
class ReconstructionResult:
    """Outcome of an annihilator search. ``operator`` is None when no
    candidate (N, r) within the bounds was accepted; the certificate fields
    describe the accepted system."""

    operator: DiffOperator | None
    status: str
    equations: int = 0
    unknowns: int = 0
    margin: int = 0
    nullity: int = 0
    primes_used: int = 0

    @property
    def found(self) -> bool:
        return self.operator is not None


def _series_mod_p(alpha, p):
    out = np.empty(len(alpha), dtype=np.int64)
    for i, c in enumerate(alpha):
        d = c.denominator % p
        if d == 0:
            return None
        out[i] = c.numerator % p * pow(d, p - 2, p) % p
    return out


def _build_system_mod_p(alpha_mod, N, r, p, nrows):
    """Rows n = 0..nrows-1 of the annihilation system mod p, columns
    indexed u = k (r+1) + l."""
    M = len(alpha_mod) - 1
    nrows = min(nrows, M + 1)
    powers = np.empty((N + 1, M + 1), dtype=np.int64)
    powers[0] = 1
    base = np.arange(M + 1, dtype=np.int64)
    for k in range(1, N + 1):
        powers[k] = powers[k - 1] * base % p
    mat = np.zeros((nrows, (N + 1) * (r + 1)), dtype=np.int64)
    for k in range(N + 1):
        weighted = powers[k] * alpha_mod % p
        for l in range(r + 1):
            col = k * (r + 1) + l
            mat[l:nrows, col] = weighted[: max(nrows - l, 0)]
    return mat


def _exact_annihilation(vec, N, r, alpha) -> bool:
    M = len(alpha) - 1
    for n in range(M + 1):
        total = Fraction(0)
        for k in range(N + 1):
            for l in range(min(r, n) + 1):
                a = vec[k * (r + 1) + l]
                if a:
                    total += a * (n - l) ** k * alpha[n - l]
        if total != 0:
            return False
    return True


def _lift_vector(per_prime, primes) -> list[Fraction] | None:
    ncols = len(per_prime[0])
    lifted = []
    for j in range(ncols):
        x, m = per_prime[0][j], primes[0]
        for vec, p in zip(per_prime[1:], primes[1:]):
            x, m = _crt_pair(x, m, vec[j], p)
        q = _rational_reconstruct(x, m)
        if q is None:
            return None
        lifted.append(q)
    return lifted


def _integerize(vec) -> list[int]:
    den = 1
    for c in vec:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in vec]
    content = 0
    for c in ints:
        content = gcd(content, c)
    return [c // content for c in ints] if content else ints


def _solve_all_primes(alpha, N, r, primes, workers):
    """Per-prime RREF of the full system; returns aligned lists
    (primes_kept, pivot_sets, bases). Primes that cannot reduce the series
    (denominator divisible by p) are dropped."""

    def solve(p):
        am = _series_mod_p(alpha, p)
        if am is None:
            return None
        mat = _build_system_mod_p(am, N, r, p, len(alpha))
        return _nullspace_mod_p(mat, p)

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(solve, primes))
    else:
        results = [solve(p) for p in primes]
    kept = [(p, res) for p, res in zip(primes, results) if res is not None]
    return (
        [p for p, _ in kept],
        [res[0] for _, res in kept],
        [res[1] for _, res in kept],
    )


def reconstruct(
    f: TruncatedSeries,
    max_order: int = 10,
    max_degree: int = 40,
    margin: int = 50,
    workers: int | None = None,
) -> ReconstructionResult:
    """Search for the minimal annihilating operator of a truncated series.

    Candidates (N, r) are scanned with N = 1..max_order outer and
    r = 0..max_degree inner. A candidate is accepted when its annihilation
    system has a nonzero nullspace and at least ``unknowns + margin``
    equations; the first accepted candidate therefore has minimal order,
    then minimal degree. A one-dimensional nullspace yields the canonical
    generator, exactly verified against every available coefficient. A
    higher-dimensional nullspace raises AmbiguousOperatorError after exact
    verification of a full basis, so the reported dimension is certified.

    Returns a ReconstructionResult with status "found" or "no_annihilator".
    """
    alpha = f.coeffs
    if f.is_zero():
        raise ValueError("cannot reconstruct an operator from the zero series")
    M = len(alpha) - 1
    workers = _worker_count(workers)
    stream = _prime_stream()
    probe_prime = next(stream)
    probe_alpha = _series_mod_p(alpha, probe_prime)
    while probe_alpha is None:
        probe_prime = next(stream)
        probe_alpha = _series_mod_p(alpha, probe_prime)

    for N in range(1, max_order + 1):
        for r in range(0, max_degree + 1):
            unknowns = (N + 1) * (r + 1)
            if M + 1 < unknowns + margin:
                break
            # cheap certified rejection: full column rank over F_p at the
            # probe prime implies full column rank over Q
            probe = _build_system_mod_p(
                probe_alpha, N, r, probe_prime, unknowns + margin
            )
            piv, _ = _nullspace_mod_p(probe, probe_prime)
            if len(piv) == unknowns:
                continue
            full = _build_system_mod_p(probe_alpha, N, r, probe_prime, M + 1)
            piv, _ = _nullspace_mod_p(full, probe_prime)
            if len(piv) == unknowns:
                continue
            result = _lift_and_verify(alpha, N, r, stream, workers, margin)
            if result is not None:
                return result
    return ReconstructionResult(operator=None, status="no_annihilator", margin=margin)


def _lift_and_verify(alpha, N, r, stream, workers, margin):
    """Multi-prime lift at a candidate (N, r) that showed a modular
    nullspace. Returns a ReconstructionResult, raises on certified
    ambiguity, or returns None if the nullspace melts away over Q."""
    M = len(alpha) - 1
    unknowns = (N + 1) * (r + 1)
    nprimes = 6
    while nprimes <= 384:
        primes = []
        s = _prime_stream()
        while len(primes) < nprimes:
            primes.append(next(s))
        primes_kept, pivots, bases = _solve_all_primes(alpha, N, r, primes, workers)
        if not primes_kept:
            nprimes *= 2
            continue
        nullity = min(len(b) for b in bases)
        if nullity == 0:
            # some prime certifies full column rank, so there is no
            # rational annihilator at this (N, r) after all
            return None
        # primes achieving the minimal nullity share the generic rank
        # profile; primes with larger nullity are unlucky and dropped
        select = [i for i, b in enumerate(bases) if len(b) == nullity]
        pivot_sets = {pivots[i] for i in select}
        if len(pivot_sets) != 1:
            nprimes *= 2
            continue
        chosen_primes = [primes_kept[i] for i in select]
        chosen_bases = [bases[i] for i in select]
        lifted_ok = []
        for which in range(nullity):
            per_prime = [b[which] for b in chosen_bases]
            lifted = _lift_vector(per_prime, chosen_primes)
            if lifted is None:
                break
            vec = _integerize(lifted)
            if not _exact_annihilation(vec, N, r, alpha):
                break
            lifted_ok.append(vec)
        if len(lifted_ok) < nullity:
            nprimes *= 2
            continue
        if nullity > 1:
            # the basis vectors are independent (each is 1 at its own free
            # column and 0 at the others) and all verified exactly, and the
            # modular bound caps the dimension at the same value
            raise AmbiguousOperatorError(N, r, nullity)
        vec = lifted_ok[0]
        rows = [
            [vec[k * (r + 1) + l] for l in range(r + 1)] for k in range(N + 1)
        ]
        if all(c == 0 for c in rows[-1]):
            raise ArithmeticError(
                f"annihilator at order {N}, degree {r} has zero leading row; "
                "a lower-order operator was missed by the search"
            )
        op = canonicalize(DiffOperator(rows))
        return ReconstructionResult(
            operator=op,
            status="found",
            equations=M + 1,
            unknowns=unknowns,
            margin=margin,
            nullity=1,
            primes_used=len(chosen_primes),
        )
    raise ArithmeticError(
        f"rational reconstruction did not stabilize at order {N}, degree {r} "
        "within the prime budget"
    )
