"""Logarithmic image geometry and exact algebraic symmetry enumeration.

The logarithmic image of a Reinhardt domain is {(log|z_1|, ..., log|z_n|)}
over points with no zero coordinate.  Monomial maps of the torus act on this
image as affine maps x -> A^T x + mu, which is why the symmetry search below
is a search over unimodular integer matrices plus positive scalars.

Structure of the candidate maps: coordinates are split by whether the domain
meets the hyperplane {z_i = 0}.  Coordinates that meet must map to each other
by a permutation (their log directions are not pinned), each possibly twisted
by monomials in the avoided coordinates; the avoided coordinates transform
among themselves by a unimodular block.  Scalars are then forced by exact
polynomial equality Q o m == Q and are solved for over the positive rationals
by prime-exponent linear algebra.  Maps whose scalars would be irrational are
out of scope here and are not reported.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .domains import (
    DEFAULT_BAND,
    DomainError,
    DomainSpec,
    boundedness_certificate,
    coordinate_slice,
    find_interior_point,
    sample_interior,
)
from .polynomials import ModuliPolynomial, MonomialMap

__all__ = [
    "HyperplaneIncidence",
    "LogImageSample",
    "SymmetrySearch",
    "ProjectionReport",
    "hyperplane_incidence",
    "log_image_sample",
    "is_exact_symmetry",
    "enumerate_algebraic_symmetries",
    "projection_compactness_check",
]


@dataclass(frozen=True)
class HyperplaneIncidence:
    """Which coordinate hyperplanes {z_i = 0} the domain meets."""

    meets: tuple[int, ...]
    avoids: tuple[int, ...]
    distances: dict[int, float]  # avoided index -> lower bound on |z_i| over D
    note: str

    @property
    def k(self) -> int:
        return len(self.meets)


def _slice_nonempty(spec: DomainSpec, index: int, seed: int, samples: int) -> bool:
    """Does the domain meet {z_index = 0}?  Exact fast path via Q(0)."""
    restricted = spec.Q.restrict([index])
    if restricted.constant_term() < 1:
        return True
    n = spec.n
    rng = np.random.default_rng(seed)
    scale = 1.0
    for _ in range(20):
        u = rng.uniform(0.0, scale, size=(samples, n))
        u[:, index] = 0.0
        if np.any(restricted.evaluate_batch(u) < 1.0):
            return True
        scale *= 2.0
    return False


def _exact_axis_distance(Q: ModuliPolynomial, index: int) -> float:
    """For n == 1 avoided coordinates: exact rational bisection of Q = 1.

    Returns sqrt of the largest c with [0, c] entirely outside {Q < 1}.
    """
    lo, hi = Fraction(0), Fraction(1)
    # grow hi until the slice [0, hi] contains a domain point (sign scan)
    def empty_below(c: Fraction) -> bool:
        # dense rational scan; exactness comes from exact evaluation
        for k in range(65):
            x = c * Fraction(k, 64)
            if Q.evaluate([x] if Q.num_vars == 1 else [x]) < 1:
                return False
        return True

    for _ in range(40):
        if not empty_below(hi):
            break
        hi *= 2
    else:
        return float("inf")
    for _ in range(60):
        mid = (lo + hi) / 2
        if empty_below(mid):
            lo = mid
        else:
            hi = mid
    return math.sqrt(float(lo))


def _sampled_distance(
    spec: DomainSpec, index: int, seed: int, samples: int
) -> float:
    """Sampled lower bound on |z_index| over the domain.

    Takes the smallest u_index seen among interior samples, then verifies by
    sampling that nothing lives below 99% of it.  Honest only at the sampling
    resolution.
    """
    if spec.n == 1:
        return _exact_axis_distance(spec.Q, index)
    rng = np.random.default_rng(seed)
    interior = find_interior_point(spec, seed=seed)
    u0 = np.abs(np.array(interior)) ** 2
    box = max(4.0 * float(np.max(u0)), 4.0)
    best = float(u0[index])
    for _ in range(40):
        u = rng.uniform(0.0, box, size=(samples, spec.n))
        good = u[spec.Q.evaluate_batch(u) < 1.0]
        if good.size:
            best = min(best, float(np.min(good[:, index])))
    floor = 0.99 * best
    u = rng.uniform(0.0, box, size=(4 * samples, spec.n))
    u[:, index] = rng.uniform(0.0, floor, size=4 * samples)
    if np.any(spec.Q.evaluate_batch(u) < 1.0):
        floor = 0.0  # found points below; no positive bound at this resolution
    return math.sqrt(floor)


def hyperplane_incidence(
    spec: DomainSpec, seed: int = 0, samples: int = 2000
) -> HyperplaneIncidence:
    """Split coordinates into meets/avoids and bound |z_i| from below on avoids."""
    meets = []
    avoids = []
    for i in range(spec.n):
        (meets if _slice_nonempty(spec, i, seed + i, samples) else avoids).append(i)
    distances = {}
    for i in avoids:
        distances[i] = _sampled_distance(spec, i, seed + 1000 + i, samples)
    note = (
        "meets decided exactly through the origin value where possible, "
        f"otherwise sampled at resolution {samples}"
    )
    return HyperplaneIncidence(tuple(meets), tuple(avoids), distances, note)


# ---------------------------------------------------------------------------
# Log image sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LogImageSample:
    points: np.ndarray  # (N, n) array of (log|z_1|, ..., log|z_n|)
    rescale: tuple[float, ...]  # per-coordinate divisor applied to moduli
    accepted: int
    attempted: int


def log_image_sample(
    spec: DomainSpec, count: int = 2000, seed: int = 0, min_acceptance: float = 1e-4
) -> LogImageSample:
    """Point cloud of the logarithmic image after polydisk rescaling.

    Moduli are rescaled by the observed per-coordinate sup so the domain sits
    in the unit polydisk; the divisors are reported.  All output coordinates
    are strictly negative.  Raises DomainError when the acceptance rate
    collapses (empty or degenerate interior).
    """
    rng = np.random.default_rng(seed)
    n = spec.n
    scale = 1.0
    accepted: list[np.ndarray] = []
    attempted = 0
    got = 0
    for _ in range(200):
        u = rng.uniform(0.0, scale, size=(4096, n))
        attempted += u.shape[0]
        good = u[spec.Q.evaluate_batch(u) < 1.0]
        if good.size == 0:
            scale *= 2.0
            if attempted > 4096 * 8 and got == 0:
                break
            continue
        accepted.append(good)
        got += good.shape[0]
        if got >= count:
            break
    if got == 0 or got / attempted < min_acceptance:
        raise DomainError(
            f"log image sampling accepted {got}/{attempted}; interior too thin"
        )
    u = np.vstack(accepted)[:count]
    sup = u.max(axis=0) * (1.0 + 1e-9)
    sup[sup == 0.0] = 1.0
    positive = u[np.all(u > 0.0, axis=1)]
    if positive.shape[0] == 0:
        raise DomainError("no samples with all-positive moduli")
    logs = 0.5 * np.log(positive / sup[None, :])
    return LogImageSample(
        points=logs,
        rescale=tuple(float(s) for s in sup),
        accepted=int(positive.shape[0]),
        attempted=attempted,
    )


# ---------------------------------------------------------------------------
# Exact symmetries
# ---------------------------------------------------------------------------


def is_exact_symmetry(spec: DomainSpec, mm: MonomialMap) -> bool:
    """True iff Q o m equals Q exactly as a Laurent polynomial."""
    if mm.n != spec.n:
        raise ValueError("map dimension mismatch")
    return spec.Q.substitute(mm) == spec.Q


def _factor_positive(x: int, cache: dict[int, dict[int, int]]) -> dict[int, int]:
    if x in cache:
        return cache[x]
    out: dict[int, int] = {}
    m = x
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    cache[x] = out
    return out


def _solve_scalars(Q: ModuliPolynomial, matrix) -> tuple[Fraction, ...] | None:
    """Positive rational scalars making Q o (scalars, matrix) == Q, or None.

    The exponent action must permute the support of Q; each orbit constraint
    prod_i s_i^{e_i} = c_target / c_source is solved prime by prime with exact
    linear algebra, demanding integer prime exponents (rational scalars).
    """
    n = Q.num_vars
    support = dict(Q.terms)
    rows: list[tuple[int, ...]] = []
    ratios: list[Fraction] = []
    for exps, coeff in support.items():
        image = tuple(
            sum(exps[i] * matrix[i][j] for i in range(n)) for j in range(n)
        )
        target = support.get(image)
        if target is None:
            return None
        ratio = target / coeff
        if ratio <= 0:
            return None
        rows.append(exps)
        ratios.append(ratio)

    cache: dict[int, dict[int, int]] = {}
    primes: set[int] = set()
    factored: list[dict[int, int]] = []
    for r in ratios:
        f: dict[int, int] = {}
        for p, e in _factor_positive(r.numerator, cache).items():
            f[p] = f.get(p, 0) + e
        for p, e in _factor_positive(r.denominator, cache).items():
            f[p] = f.get(p, 0) - e
        factored.append(f)
        primes.update(f)

    exponents = {p: [Fraction(0)] * n for p in primes}
    if primes:
        a = [[Fraction(e) for e in row] for row in rows]
        for p in primes:
            rhs = [Fraction(f.get(p, 0)) for f in factored]
            sol = _solve_rational(a, rhs)
            if sol is None or any(x.denominator != 1 for x in sol):
                return None
            exponents[p] = sol
    scalars = []
    for i in range(n):
        s = Fraction(1)
        for p in primes:
            e = exponents[p][i]
            s *= Fraction(p) ** int(e)
        scalars.append(s)
    return tuple(scalars)


def _solve_rational(a_rows, rhs) -> list[Fraction] | None:
    """Solve A x = b over Q; free variables pinned to 0; None if inconsistent."""
    rows = [list(r) + [b] for r, b in zip(a_rows, rhs)]
    ncols = len(a_rows[0])
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for (ri, ci) in pivots:
        sol[ci] = rows[ri][ncols]
    return sol


@dataclass(frozen=True)
class SymmetrySearch:
    maps: tuple[MonomialMap, ...]
    warnings: tuple[str, ...]
    incidence: HyperplaneIncidence
    candidates_tested: int


def _unimodular_blocks(size: int, bound: int):
    """All size x size integer matrices with entries in [-bound, bound], det +-1.

    Generated row by row with partial-rank pruning so the blowup stays sane
    for the small sizes this search is meant for.
    """
    if size == 0:
        yield ()
        return
    entries = range(-bound, bound + 1)
    vectors = [v for v in itertools.product(entries, repeat=size) if any(v)]

    def rank_of(rows) -> int:
        m = [[Fraction(x) for x in row] for row in rows]
        rank = 0
        for c in range(size):
            piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            inv = 1 / m[rank][c]
            m[rank] = [x * inv for x in m[rank]]
            for i in range(len(m)):
                if i != rank and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
            rank += 1
        return rank

    def extend(rows):
        if len(rows) == size:
            from .polynomials import _int_det

            if _int_det(rows) in (1, -1):
                yield tuple(rows)
            return
        for v in vectors:
            cand = rows + [v]
            if rank_of(cand) == len(cand):
                yield from extend(cand)

    yield from extend([])


def enumerate_algebraic_symmetries(
    spec: DomainSpec,
    entry_bound: int = 3,
    seed: int = 0,
    assume_bounded: bool = False,
    incidence: HyperplaneIncidence | None = None,
    max_candidates: int = 5_000_000,
) -> SymmetrySearch:
    """Enumerate monomial self-maps with Q o m == Q, modulo torus rotations.

    Requires a bounded domain (certified, or asserted by the caller).  The
    identity is always present.  Composition closure and inverses are checked
    within the entry bound; escapes are reported as warnings rather than
    silently extending the search.
    """
    if not assume_bounded:
        report = boundedness_certificate(spec, seed=seed)
        if report.kind == "unbounded_witness":
            raise DomainError("symmetry enumeration requires a bounded domain")
        if report.kind == "unknown":
            raise DomainError(
                "boundedness could not be certified; pass assume_bounded=True to override"
            )
    if incidence is None:
        incidence = hyperplane_incidence(spec, seed=seed)
    meets = list(incidence.meets)
    avoids = list(incidence.avoids)
    n = spec.n
    k = len(meets)

    found: dict[tuple, MonomialMap] = {}
    tested = 0

    def consider(matrix) -> None:
        nonlocal tested
        tested += 1
        scalars = _solve_scalars(spec.Q, matrix)
        if scalars is None:
            return
        mm = MonomialMap(scalars, matrix)
        if is_exact_symmetry(spec, mm):
            found[mm.matrix] = mm

    if k == n:
        # every hyperplane is met: only permutation-with-scaling can occur
        if n > 8:
            raise DomainError("symmetry search over permutations limited to n <= 8")
        for sigma in itertools.permutations(range(n)):
            matrix = tuple(
                tuple(1 if j == sigma[i] else 0 for j in range(n)) for i in range(n)
            )
            consider(matrix)
    else:
        w = len(avoids)
        count_estimate = (
            math.factorial(k)
            * (2 * entry_bound + 1) ** (k * w)
            * (2 * entry_bound + 1) ** (w * w)
        )
        if count_estimate > max_candidates:
            raise DomainError(
                f"candidate space ~{count_estimate:.2e} exceeds the cap; "
                "lower entry_bound"
            )
        coupling_rows = list(
            itertools.product(range(-entry_bound, entry_bound + 1), repeat=w)
        )
        blocks = list(_unimodular_blocks(w, entry_bound))
        for sigma in itertools.permutations(range(k)):
            for coupling in itertools.product(coupling_rows, repeat=k):
                for block in blocks:
                    matrix = [[0] * n for _ in range(n)]
                    for pos, i in enumerate(meets):
                        matrix[i][meets[sigma[pos]]] = 1
                        for cpos, j in enumerate(avoids):
                            matrix[i][j] = coupling[pos][cpos]
                    for pos, i in enumerate(avoids):
                        for cpos, j in enumerate(avoids):
                            matrix[i][j] = block[pos][cpos]
                    consider(tuple(tuple(row) for row in matrix))

    maps = sorted(
        found.values(),
        key=lambda m: (m.matrix, tuple(m.scalars)),
    )

    warnings: list[str] = []
    index = {m.matrix: m for m in maps}
    bound_now = max(
        (abs(e) for m in maps for row in m.matrix for e in row), default=0
    )
    for m1 in maps:
        for m2 in maps:
            comp = m1.compose(m2)
            peak = max(abs(e) for row in comp.matrix for e in row)
            if peak > max(entry_bound, bound_now):
                warnings.append(
                    "a composition leaves the entry bound; the returned set may "
                    "not be closed at this bound"
                )
                break
            if comp.matrix not in index:
                warnings.append("composition closure violated within the entry bound")
        else:
            continue
        break
    return SymmetrySearch(
        maps=tuple(maps),
        warnings=tuple(dict.fromkeys(warnings)),
        incidence=incidence,
        candidates_tested=tested,
    )


# ---------------------------------------------------------------------------
# Projection compactness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjectionReport:
    avoided: tuple[int, ...]
    intervals: dict[int, tuple[float, float]]  # log|z_i| ranges from samples
    trivial: bool
    note: str


def projection_compactness_check(
    spec: DomainSpec,
    incidence: HyperplaneIncidence | None = None,
    count: int = 2000,
    seed: int = 0,
) -> ProjectionReport:
    """Bounding intervals for the log-image projection onto avoided coordinates.

    Trivial when every hyperplane is met (nothing to project onto).  An
    avoided coordinate whose incidence distance bound is zero, or whose
    sampled interval hits the probe floor, is flagged as an unbounded
    projection via DomainError.
    """
    if incidence is None:
        incidence = hyperplane_incidence(spec, seed=seed)
    if not incidence.avoids:
        return ProjectionReport((), {}, True, "all hyperplanes met; projection trivial")
    rng = np.random.default_rng(seed)
    interior = find_interior_point(spec, seed=seed)
    u0 = np.abs(np.array(interior)) ** 2
    box = max(4.0 * float(np.max(u0)), 4.0)
    pts = []
    for _ in range(60):
        u = rng.uniform(0.0, box, size=(count, spec.n))
        good = u[spec.Q.evaluate_batch(u) < 1.0]
        if good.size:
            pts.append(good)
    if not pts:
        raise DomainError("no interior samples for projection check")
    u = np.vstack(pts)
    intervals = {}
    for i in incidence.avoids:
        lower_bound = incidence.distances.get(i, 0.0)
        if lower_bound <= 0.0:
            raise DomainError(
                f"projection onto log|z{i + 1}| is unbounded below at this resolution"
            )
        lo = 0.5 * math.log(float(np.min(u[:, i])))
        hi = 0.5 * math.log(float(np.max(u[:, i])))
        intervals[i] = (min(lo, math.log(lower_bound)), hi)
    return ProjectionReport(
        avoided=incidence.avoids,
        intervals=intervals,
        trivial=False,
        note=f"intervals from {u.shape[0]} interior samples plus incidence bounds",
    )
