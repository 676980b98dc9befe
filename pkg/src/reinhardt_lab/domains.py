"""Reinhardt domain specifications and their basic geometry.

A domain spec is a dimension n, an ordinary nonconstant polynomial Q in the
moduli u_j = |z_j|^2, and optionally a declared block structure (an ordered
partition of the coordinates).  The domain is {z in C^n : Q(moduli(z)) < 1}.

Provided here: the spec-file parser, membership with a boundary band, ray and
boundary solving, coordinate slices, a boundedness certificate with an
unboundedness witness search, interior/boundary samplers, and the boundary
regularity (gradient norm) probe.

Spec file grammar, line oriented, `#` starts a comment, `;` also separates
statements::

    n = 3
    Q = u1 + u2^2 + u3^2 - u2*u3
    blocks = [[1], [2], [3]]     # optional, 1-based coordinate indices
    name = some label            # optional
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .polynomials import MonomialMap, ModuliPolynomial, SpecSyntaxError, parse_polynomial

__all__ = [
    "BlockStructure",
    "DomainSpec",
    "Containment",
    "BoundednessReport",
    "RegularityReport",
    "DomainError",
    "parse_spec",
    "boundary_solve",
    "coordinate_slice",
    "boundedness_certificate",
    "boundary_regularity_sample",
    "find_interior_point",
    "sample_interior",
    "sample_boundary",
    "moduli",
]

DEFAULT_BAND = 1e-12


class DomainError(ValueError):
    """Domain-level failure (no interior point, escaping ray, etc.)."""


@dataclass(frozen=True)
class BlockStructure:
    """Ordered partition of the coordinates {0..n-1} into disjoint groups."""

    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, blocks: Sequence[Sequence[int]]):
        groups = tuple(tuple(int(i) for i in g) for g in blocks)
        seen: list[int] = []
        for g in groups:
            if not g:
                raise ValueError("empty block")
            seen.extend(g)
        n = len(seen)
        if sorted(seen) != list(range(n)):
            raise ValueError(f"blocks {groups} are not a partition of 0..{n - 1}")
        object.__setattr__(self, "blocks", groups)

    @property
    def n(self) -> int:
        return sum(len(g) for g in self.blocks)

    @property
    def p(self) -> int:
        return len(self.blocks)

    def block_of(self, index: int) -> int:
        for b, g in enumerate(self.blocks):
            if index in g:
                return b
        raise ValueError(f"coordinate {index} not in any block")

    @classmethod
    def singletons(cls, n: int) -> "BlockStructure":
        return cls([[i] for i in range(n)])

    def to_one_based(self) -> list[list[int]]:
        return [[i + 1 for i in g] for g in self.blocks]


class Containment(NamedTuple):
    kind: str  # "inside" | "boundary" | "outside"
    margin: float  # Q(moduli(z)) - 1


def moduli(z: Sequence[complex]) -> tuple[float, ...]:
    """Squared moduli (|z_1|^2, ..., |z_n|^2)."""
    return tuple(abs(complex(v)) ** 2 for v in z)


@dataclass(frozen=True)
class DomainSpec:
    """A Reinhardt domain {Q(|z_1|^2, ..., |z_n|^2) < 1}."""

    n: int
    Q: ModuliPolynomial
    blocks: BlockStructure | None = None
    name: str = ""

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.Q.num_vars != self.n:
            raise ValueError(
                f"Q has {self.Q.num_vars} variables but n = {self.n}"
            )
        if not self.Q.is_ordinary():
            raise ValueError("Q must be ordinary (no negative exponents)")
        if self.Q.is_constant():
            raise ValueError("Q must not be constant")
        if self.blocks is not None and self.blocks.n != self.n:
            raise ValueError("block structure does not cover the coordinates")

    def contains(self, z: Sequence[complex], band: float = DEFAULT_BAND) -> Containment:
        """Classify a point as inside/boundary/outside with margin Q - 1."""
        if len(z) != self.n:
            raise ValueError(f"point has {len(z)} coordinates, expected {self.n}")
        value = self.Q.evaluate(moduli(z))
        margin = float(value) - 1.0
        if abs(margin) <= band:
            kind = "boundary"
        elif margin < 0:
            kind = "inside"
        else:
            kind = "outside"
        return Containment(kind, margin)

    def contains_moduli(self, u: Sequence[float], band: float = DEFAULT_BAND) -> Containment:
        value = self.Q.evaluate([float(x) for x in u])
        margin = float(value) - 1.0
        if abs(margin) <= band:
            return Containment("boundary", margin)
        return Containment("inside" if margin < 0 else "outside", margin)

    def effective_blocks(self) -> BlockStructure:
        return self.blocks if self.blocks is not None else BlockStructure.singletons(self.n)

    def __str__(self) -> str:
        label = self.name or "domain"
        return f"{label}: {{ {self.Q} < 1 }} in C^{self.n}"


# ---------------------------------------------------------------------------
# Spec file parsing
# ---------------------------------------------------------------------------


def _parse_blocks_value(raw: str, n: int, line: int, col: int) -> BlockStructure:
    try:
        value = ast.literal_eval(raw)
    except (ValueError, SyntaxError):
        raise SpecSyntaxError("blocks must be a list of lists of integers", line, col)
    if not isinstance(value, list) or not all(isinstance(g, list) for g in value):
        raise SpecSyntaxError("blocks must be a list of lists of integers", line, col)
    flat = []
    for g in value:
        for i in g:
            if not isinstance(i, int):
                raise SpecSyntaxError("block entries must be integers", line, col)
            if not 1 <= i <= n:
                raise SpecSyntaxError(
                    f"block index {i} out of range 1..{n}", line, col
                )
            flat.append(i)
    if len(set(flat)) != len(flat):
        raise SpecSyntaxError("repeated index in blocks", line, col)
    if len(flat) != n:
        raise SpecSyntaxError(
            f"blocks cover {len(flat)} of {n} coordinates", line, col
        )
    return BlockStructure([[i - 1 for i in g] for g in value])


def parse_spec(text: str, default_name: str = "") -> DomainSpec:
    """Parse the spec-file grammar; errors carry 1-based line and column."""
    n: int | None = None
    Q: ModuliPolynomial | None = None
    blocks_raw: tuple[str, int, int] | None = None
    name = default_name
    seen: set[str] = set()

    for lineno, raw_line in enumerate(text.splitlines(), 1):
        hash_pos = raw_line.find("#")
        line = raw_line if hash_pos < 0 else raw_line[:hash_pos]
        cursor = 0
        for segment in line.split(";"):
            seg_col = cursor + 1
            cursor += len(segment) + 1
            if not segment.strip():
                continue
            if "=" not in segment:
                raise SpecSyntaxError(
                    "expected 'key = value'", lineno, seg_col + len(segment) - len(segment.lstrip())
                )
            key, _, value = segment.partition("=")
            key_offset = seg_col + (len(key) - len(key.lstrip()))
            key = key.strip()
            value_col = seg_col + len(segment.partition("=")[0]) + 1
            value_col += len(value) - len(value.lstrip())
            value = value.strip()
            if key in seen:
                raise SpecSyntaxError(f"duplicate key {key!r}", lineno, key_offset)
            if key == "n":
                try:
                    n = int(value)
                except ValueError:
                    raise SpecSyntaxError("n must be an integer", lineno, value_col)
                if n < 1:
                    raise SpecSyntaxError("n must be >= 1", lineno, value_col)
            elif key == "Q":
                if n is None:
                    raise SpecSyntaxError(
                        "n must be declared before Q", lineno, key_offset
                    )
                try:
                    Q = parse_polynomial(value, num_vars=n, line=lineno)
                except SpecSyntaxError as err:
                    raise SpecSyntaxError(
                        err.message, lineno, value_col + err.col - 1
                    ) from None
            elif key == "blocks":
                blocks_raw = (value, lineno, value_col)
            elif key == "name":
                name = value
            else:
                raise SpecSyntaxError(f"unknown key {key!r}", lineno, key_offset)
            seen.add(key)

    last = len(text.splitlines()) or 1
    if n is None:
        raise SpecSyntaxError("missing 'n = <int>'", last, 1)
    if Q is None:
        raise SpecSyntaxError("missing 'Q = <polynomial>'", last, 1)
    if Q.is_constant():
        raise SpecSyntaxError("Q must not be constant", last, 1)
    if not Q.is_ordinary():
        raise SpecSyntaxError("Q must be ordinary (no negative exponents)", last, 1)
    blocks = None
    if blocks_raw is not None:
        blocks = _parse_blocks_value(blocks_raw[0], n, blocks_raw[1], blocks_raw[2])
    return DomainSpec(n=n, Q=Q, blocks=blocks, name=name)


# ---------------------------------------------------------------------------
# Rays and boundary points
# ---------------------------------------------------------------------------


def _point_on_ray(interior, direction, t: float):
    return tuple(p + t * d for p, d in zip(interior, direction))


def boundary_solve(
    spec: DomainSpec,
    interior: Sequence[complex],
    direction: Sequence[complex],
    band: float = DEFAULT_BAND,
    t_max: float = 1e8,
    max_iter: int = 80,
) -> tuple[tuple[complex, ...], float]:
    """First boundary crossing along interior + t*direction, t > 0.

    Brackets the crossing by doubling t, then bisects until |Q - 1| <= band
    (at most ``max_iter`` bisection steps).  Returns (point, t).  Raises
    DomainError when the ray never exits within ``t_max``.
    """
    if len(direction) != spec.n or all(abs(complex(d)) == 0 for d in direction):
        raise ValueError("direction must be a nonzero vector of length n")
    val0 = float(spec.Q.evaluate(moduli(interior)))
    if val0 >= 1.0 - band:
        raise DomainError("ray start is not strictly inside the domain")

    def q_at(t: float) -> float:
        return float(spec.Q.evaluate(moduli(_point_on_ray(interior, direction, t))))

    t_hi = 1.0
    while q_at(t_hi) < 1.0:
        t_hi *= 2.0
        if t_hi > t_max:
            raise DomainError(
                f"ray never exits the domain within t_max = {t_max:g}"
            )
    t_lo = 0.0 if t_hi == 1.0 else t_hi / 2.0
    t_mid = 0.5 * (t_lo + t_hi)
    for _ in range(max_iter):
        t_mid = 0.5 * (t_lo + t_hi)
        v = q_at(t_mid)
        if abs(v - 1.0) <= band:
            break
        if v < 1.0:
            t_lo = t_mid
        else:
            t_hi = t_mid
    point = _point_on_ray(interior, direction, t_mid)
    residual = abs(q_at(t_mid) - 1.0)
    if residual > band:
        # the bracket collapsed without meeting the band; report honestly
        raise DomainError(
            f"bisection stalled with |Q - 1| = {residual:.3e} > band {band:g}"
        )
    return point, t_mid


def coordinate_slice(spec: DomainSpec, zero_indices: Sequence[int]) -> DomainSpec:
    """Slice by {z_i = 0 : i in zero_indices} and reindex onto the subspace.

    The result lives in the remaining coordinates (dimension drops).  Blocks
    lose their zeroed members; emptied blocks disappear.
    """
    zeros = sorted(set(int(i) for i in zero_indices))
    if any(not 0 <= i < spec.n for i in zeros):
        raise ValueError("slice index out of range")
    if len(zeros) >= spec.n:
        raise ValueError("slice must keep at least one coordinate")
    keep = [i for i in range(spec.n) if i not in zeros]
    new_index = {old: new for new, old in enumerate(keep)}
    q_restricted = spec.Q.restrict(zeros).compress(keep)
    if q_restricted.is_constant():
        raise DomainError("slice has a constant defining polynomial")
    new_blocks = None
    if spec.blocks is not None:
        pruned = []
        for g in spec.blocks.blocks:
            kept = [new_index[i] for i in g if i in new_index]
            if kept:
                pruned.append(kept)
        new_blocks = BlockStructure(pruned)
    suffix = ",".join(f"z{i + 1}=0" for i in zeros)
    name = f"{spec.name}|{suffix}" if spec.name else f"slice[{suffix}]"
    return DomainSpec(n=len(keep), Q=q_restricted, blocks=new_blocks, name=name)


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def find_interior_point(
    spec: DomainSpec, seed: int = 0, attempts: int = 40000
) -> tuple[complex, ...]:
    """A point of the open domain; the origin when it qualifies.

    Otherwise samples moduli boxes of doubling size.  Raises DomainError when
    nothing is found (empty or extremely thin interior).
    """
    if float(spec.Q.evaluate([0.0] * spec.n)) < 1.0:
        return (0j,) * spec.n
    rng = np.random.default_rng(seed)
    per_scale = max(1, attempts // 24)
    for scale_exp in range(0, 24):
        box = 2.0**scale_exp
        u = rng.uniform(0.0, box, size=(per_scale, spec.n))
        vals = spec.Q.evaluate_batch(u)
        hits = np.flatnonzero(vals < 1.0)
        if hits.size:
            best = u[hits[np.argmin(vals[hits])]]
            return tuple(complex(math.sqrt(x)) for x in best)
    raise DomainError("no interior point found by sampling")


def sample_interior(
    spec: DomainSpec,
    count: int,
    seed: int = 0,
    box: float | None = None,
    max_batches: int = 400,
) -> np.ndarray:
    """Rejection-sample ``count`` interior points, returned as (count, n) complex.

    Moduli are drawn uniformly from [0, box)^n (box doubles from 1 until the
    acceptance rate is workable when not given) and phases uniformly.
    """
    rng = np.random.default_rng(seed)
    n = spec.n
    scale = box
    if scale is None:
        scale = 1.0
        for _ in range(24):
            u = rng.uniform(0.0, scale, size=(256, n))
            if np.any(spec.Q.evaluate_batch(u) < 1.0):
                break
            scale *= 2.0
    out = np.empty((count, n), dtype=np.complex128)
    got = 0
    for _ in range(max_batches):
        u = rng.uniform(0.0, scale, size=(max(256, count), n))
        good = u[spec.Q.evaluate_batch(u) < 1.0]
        if good.size == 0:
            continue
        take = good[: count - got]
        phases = rng.uniform(0.0, 2.0 * math.pi, size=take.shape)
        out[got : got + take.shape[0]] = np.sqrt(take) * np.exp(1j * phases)
        got += take.shape[0]
        if got >= count:
            return out
    raise DomainError(
        f"interior sampling got {got}/{count} points; acceptance too low"
    )


def sample_boundary(
    spec: DomainSpec,
    count: int,
    seed: int = 0,
    interior: Sequence[complex] | None = None,
    band: float = DEFAULT_BAND,
    t_max: float = 1e8,
) -> np.ndarray:
    """Boundary points found by bisecting random rays from an interior point.

    Vectorized across rays; raises DomainError when some ray fails to exit
    (unbounded direction) or the start is not interior.
    """
    rng = np.random.default_rng(seed)
    if interior is None:
        interior = find_interior_point(spec, seed=seed)
    z0 = np.array([complex(v) for v in interior], dtype=np.complex128)
    if float(spec.Q.evaluate_batch(np.abs(z0[None, :]) ** 2)[0]) >= 1.0 - band:
        raise DomainError("interior point is not strictly inside")
    dirs = rng.normal(size=(count, spec.n)) + 1j * rng.normal(size=(count, spec.n))
    norms = np.linalg.norm(dirs, axis=1, keepdims=True)
    dirs /= np.where(norms == 0, 1.0, norms)

    def q_at(t: np.ndarray) -> np.ndarray:
        pts = z0[None, :] + t[:, None] * dirs
        return spec.Q.evaluate_batch(np.abs(pts) ** 2)

    t_hi = np.ones(count)
    for _ in range(60):
        vals = q_at(t_hi)
        need = vals < 1.0
        if not need.any():
            break
        t_hi[need] *= 2.0
        if np.any(t_hi > t_max):
            raise DomainError("a sampled ray never exits the domain")
    else:
        raise DomainError("a sampled ray never exits the domain")
    t_lo = np.where(t_hi == 1.0, 0.0, t_hi / 2.0)
    for _ in range(100):
        t_mid = 0.5 * (t_lo + t_hi)
        vals = q_at(t_mid)
        below = vals < 1.0
        t_lo = np.where(below, t_mid, t_lo)
        t_hi = np.where(below, t_hi, t_mid)
        if np.max(np.abs(vals - 1.0)) <= band:
            break
    t_mid = 0.5 * (t_lo + t_hi)
    return z0[None, :] + t_mid[:, None] * dirs


# ---------------------------------------------------------------------------
# Boundedness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundednessReport:
    kind: str  # "bounded_certified" | "unbounded_witness" | "unknown"
    witness: dict | None
    detail: str

    def is_bounded(self) -> bool:
        return self.kind == "bounded_certified"


def _exact_certificate(Q: ModuliPolynomial) -> tuple[bool, str]:
    """Try to certify that {Q < 1} has bounded moduli region, exactly.

    Requires a positive pure power per coordinate; every negative term must
    have weighted degree <= 1 under the induced weights, be dominated in the
    geometric-mean sense by the adjacent pure coefficients, and the combined
    per-coordinate drain of negative terms must stay strictly below each pure
    coefficient.  Those conditions make Q >= c * max_j u_j^{d_j} - C with
    c > 0, hence the sublevel set is bounded.
    """
    n = Q.num_vars
    pure: dict[int, tuple[int, Fraction]] = {}
    for exps, coeff in Q.terms.items():
        support = [j for j, e in enumerate(exps) if e > 0]
        if len(support) == 1 and coeff > 0:
            j = support[0]
            d = exps[j]
            if j not in pure or d > pure[j][0]:
                pure[j] = (d, coeff)
    missing = [j for j in range(n) if j not in pure]
    if missing:
        names = ", ".join(f"u{j + 1}" for j in missing)
        return False, f"no positive pure power in {names}"
    degrees = {j: pure[j][0] for j in pure}
    rs = {j: pure[j][1] for j in pure}
    drains = {j: Fraction(0) for j in range(n)}
    for exps, coeff in Q.terms.items():
        if coeff >= 0:
            continue
        support = [j for j, e in enumerate(exps) if e > 0]
        weight = sum(Fraction(exps[j], degrees[j]) for j in support)
        if weight > 1:
            return False, f"negative term with weighted degree {weight} > 1"
        # geometric-mean domination: |coeff|^|S| <= prod r_j over the support
        k = len(support)
        prod_r = math.prod((rs[j] for j in support), start=Fraction(1))
        if abs(coeff) ** k > prod_r:
            return False, "negative coefficient exceeds the geometric mean of pure terms"
        for j in support:
            drains[j] += -coeff * Fraction(exps[j], degrees[j])
    for j in range(n):
        if drains[j] >= rs[j]:
            return False, f"negative terms drain the pure power of u{j + 1}"
    return True, "pure powers dominate all negative terms"


def _unit_pure_rescale(Q: ModuliPolynomial) -> ModuliPolynomial | None:
    """Rational dilation pushing every top pure coefficient close to 1.

    Boundedness of {Q < 1} is invariant under positive dilations of the
    moduli, so retrying the exact certificate on the rescaled polynomial is
    sound.  This repairs the scale sensitivity of the drain inequalities,
    which otherwise reject dilated copies of certifiable polynomials.
    """
    n = Q.num_vars
    pure: dict[int, tuple[int, Fraction]] = {}
    for exps, coeff in Q.terms.items():
        support = [j for j, e in enumerate(exps) if e > 0]
        if len(support) == 1 and coeff > 0:
            j = support[0]
            if j not in pure or exps[j] > pure[j][0]:
                pure[j] = (exps[j], coeff)
    if len(pure) < n:
        return None
    scalars = []
    for j in range(n):
        d, r = pure[j]
        s = Fraction(float(r) ** (-1.0 / d)).limit_denominator(10**9)
        if s <= 0:
            return None
        scalars.append(s)
    if all(s == 1 for s in scalars):
        return None
    return Q.substitute(MonomialMap.dilation(scalars))


def _leading_form_positive(Q: ModuliPolynomial, seed: int) -> bool:
    """Sampled strict positivity of the top weighted part on the simplex."""
    n = Q.num_vars
    pure: dict[int, int] = {}
    for exps, coeff in Q.terms.items():
        support = [j for j, e in enumerate(exps) if e > 0]
        if len(support) == 1 and coeff > 0:
            pure[support[0]] = max(pure.get(support[0], 0), exps[support[0]])
    from .polynomials import WeightVector

    weights = WeightVector([Fraction(1, pure[j]) for j in range(n)])
    leading, _ = Q.weighted_decompose(weights)
    rng = np.random.default_rng(seed)
    dirs = rng.dirichlet(np.ones(n), size=512)
    vals = leading.evaluate_batch(dirs)
    eye = np.eye(n)
    vals_axes = leading.evaluate_batch(eye)
    return bool(np.all(vals > 0) and np.all(vals_axes > 0))


def _axis_max(Q: ModuliPolynomial, j: int, radius: float) -> float | None:
    """sup of u_j on the axis {others = 0} within {Q < 1}; None if > radius."""
    n = Q.num_vars

    def val(c: float) -> float:
        u = [0.0] * n
        u[j] = c
        return float(Q.evaluate(u))

    hi = 1.0
    while val(hi) < 1.0:
        hi *= 2.0
        if hi > radius:
            return None
    lo = 0.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if val(mid) < 1.0:
            lo = mid
        else:
            hi = mid
    return lo


def _channel_sweep(Q: ModuliPolynomial, radius: float) -> dict | None:
    """Look for escape channels hugging an axis cap: u_i near its axis sup,
    another coordinate growing without bound."""
    n = Q.num_vars
    caps: dict[int, float] = {}
    for i in range(n):
        cap = _axis_max(Q, i, radius)
        if cap is not None and cap > 0:
            caps[i] = cap
    for i, cap in caps.items():
        for j in range(n):
            if j == i:
                continue
            for k in range(1, 46):
                delta = 2.0**-k
                u = [0.0] * n
                u[i] = cap * (1.0 - delta)
                if float(Q.evaluate(u)) >= 1.0:
                    continue
                grow = 1.0
                while grow <= radius:
                    u[j] = grow
                    if float(Q.evaluate(u)) >= 1.0:
                        break
                    grow *= 2.0
                else:
                    u[j] = radius
                    if float(Q.evaluate(u)) < 1.0:
                        return {"type": "point", "moduli": [float(x) for x in u]}
    return None


def boundedness_certificate(
    spec: DomainSpec,
    seed: int = 0,
    rays: int = 10000,
    radius: float = 1e6,
) -> BoundednessReport:
    """Certify boundedness exactly, or search for an unboundedness witness.

    The certificate is sound but not complete: a failed certificate falls
    through to a probe (axis rays, random radial rays, channel sweeps), and
    when the probe also finds nothing the verdict is "unknown".
    """
    ok, detail = _exact_certificate(spec.Q)
    if ok and _leading_form_positive(spec.Q, seed):
        return BoundednessReport("bounded_certified", None, detail)
    if not ok:
        rescaled = _unit_pure_rescale(spec.Q)
        if rescaled is not None:
            ok2, detail2 = _exact_certificate(rescaled)
            if ok2 and _leading_form_positive(rescaled, seed):
                return BoundednessReport(
                    "bounded_certified",
                    None,
                    detail2 + " (after a rational dilation normalizing the pure coefficients)",
                )

    n = spec.n
    rng = np.random.default_rng(seed)
    directions = [np.eye(n)[i] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = np.zeros(n)
            d[i] = d[j] = 0.5
            directions.append(d)
    directions = np.vstack([np.array(directions), rng.dirichlet(np.ones(n), size=rays)])
    radii = np.geomspace(1.0, radius, 32)
    for d in directions:
        pts = radii[:, None] * d[None, :]
        vals = spec.Q.evaluate_batch(pts)
        if np.all(vals < 1.0):
            return BoundednessReport(
                "unbounded_witness",
                {"type": "ray", "direction": [float(x) for x in d]},
                "a radial moduli ray stays below 1 out to the probe radius",
            )
    witness = _channel_sweep(spec.Q, radius)
    if witness is not None:
        return BoundednessReport(
            "unbounded_witness",
            witness,
            "found a moduli point with an arbitrarily large coordinate inside the domain",
        )
    return BoundednessReport(
        "unknown",
        None,
        f"no exact certificate ({detail}) and no unboundedness witness "
        f"within radius {radius:g}",
    )


# ---------------------------------------------------------------------------
# Boundary regularity probe
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegularityReport:
    sampled_points: int
    min_gradient_norm: float
    failures: tuple[tuple[complex, ...], ...]
    threshold: float
    note: str


def boundary_regularity_sample(
    spec: DomainSpec,
    samples: int = 1000,
    threshold: float = 1e-6,
    seed: int = 0,
    interior: Sequence[complex] | None = None,
) -> RegularityReport:
    """Sample boundary points and record the z-gradient norm of Q(moduli) - 1.

    The holomorphic gradient component is (dQ/du_j)(u) * conj(z_j); a norm
    under ``threshold`` is recorded as a failure.  This is a sampled probe:
    "no failures" means none detected at this resolution, not a proof.
    """
    pts = sample_boundary(spec, samples, seed=seed, interior=interior)
    u = np.abs(pts) ** 2
    grads = np.empty((samples, spec.n))
    for j, qj in enumerate(spec.Q.gradient()):
        grads[:, j] = qj.evaluate_batch(u) if not qj.is_zero() else 0.0
    norms = np.sqrt(np.sum(grads**2 * u, axis=1))
    bad = np.flatnonzero(norms < threshold)[:32]
    failures = tuple(tuple(complex(c) for c in pts[i]) for i in bad)
    note = (
        f"no gradient degeneracy detected at resolution {samples}"
        if not failures
        else f"{len(bad)} sampled points with gradient norm below {threshold:g}"
    )
    return RegularityReport(
        sampled_points=samples,
        min_gradient_norm=float(norms.min()) if samples else float("nan"),
        failures=failures,
        threshold=threshold,
        note=note,
    )
