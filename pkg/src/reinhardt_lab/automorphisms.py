"""Explicit symmetry families: torus rotations, the one-parameter Moebius
family that model domains carry, and the matching family on the standard
infinite-type channel fixture.

For a model spec  { |z^1|^2 + sum_j r_j |z^j|^{2 m_j} + ... < 1 }  the map

    z_1     -> (z_1 - a) / (1 - a z_1)            (first coordinate of block 1)
    z_i     -> sqrt(1 - a^2) z_i / (1 - a z_1)    (rest of block 1)
    z^j     -> (1 - a^2)^{1/(2 m_j)} z^j / (1 - a z_1)^{1/m_j}

with a in (-1, 1) satisfies  rho(F(z)) = (1 - a^2) rho(z) / |1 - a z_1|^2,
so it preserves the domain and its boundary.  The principal branch of the
fractional powers is valid because Re(1 - a z_1) > 0 on the closure.  As
a -> ±1 the iterates of any interior point accumulate on the boundary sphere
of the distinguished block, which is why these domains have non-compact
symmetry groups.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .classification import ModelForm
from .domains import DEFAULT_BAND, DomainError, DomainSpec, boundary_solve, sample_interior

__all__ = [
    "TorusRotation",
    "MoebiusAutomorphism",
    "InfiniteTypeAutomorphism",
    "moebius_family",
    "OrbitReport",
    "orbit",
    "InvarianceReport",
    "invariance_check",
    "AccumulationSet",
    "accumulation_set",
]


class TorusRotation:
    """Coordinate rotations z_i -> exp(i theta_i) z_i; always symmetries."""

    def __init__(self, angles):
        self.angles = tuple(float(t) for t in angles)
        self._phases = np.exp(1j * np.asarray(self.angles))

    def __call__(self, z):
        return np.asarray(z, dtype=complex) * self._phases

    def inverse(self) -> "TorusRotation":
        return TorusRotation([-t for t in self.angles])


def _principal_power(w: complex, exponent: float) -> complex:
    # principal branch; callers guarantee Re(w) > 0 so this is continuous
    return cmath.exp(exponent * cmath.log(w))


class MoebiusAutomorphism:
    """One member of the non-compact family, parameter a in (-1, 1).

    ``first_block`` lists the coordinates of the distinguished block (the
    Moebius action lives on its first coordinate), ``power_blocks`` pairs each
    remaining block's coordinate tuple with its exponent m_j.  Optional
    ``unitaries`` apply a unitary matrix to chosen blocks afterwards; the
    closed-form inverse is only available without them.
    """

    def __init__(
        self,
        n: int,
        a: float,
        first_block,
        power_blocks=(),
        unitaries=None,
        band: float = 1e-9,
    ):
        a = float(a)
        if not -1.0 < a < 1.0:
            raise DomainError("Moebius parameter must lie in (-1, 1)")
        self.n = int(n)
        self.a = a
        self.first_block = tuple(int(i) for i in first_block)
        self.power_blocks = tuple((tuple(int(i) for i in g), int(m)) for g, m in power_blocks)
        self.band = float(band)
        seen = set(self.first_block)
        for g, m in self.power_blocks:
            if m < 1:
                raise DomainError("block exponents must be positive")
            seen.update(g)
        if seen != set(range(self.n)) or len(seen) != len(self.first_block) + sum(
            len(g) for g, _ in self.power_blocks
        ):
            raise DomainError("blocks must partition the coordinates")
        self.unitaries = {}
        if unitaries:
            for key, U in unitaries.items():
                U = np.asarray(U, dtype=complex)
                size = len(self.first_block) if key == 0 else len(self.power_blocks[key - 1][0])
                if U.shape != (size, size):
                    raise DomainError(f"unitary for block {key} has wrong shape")
                if np.max(np.abs(U.conj().T @ U - np.eye(size))) > 1e-12:
                    raise DomainError(f"matrix for block {key} is not unitary to 1e-12")
                self.unitaries[int(key)] = U

    @classmethod
    def from_model(cls, model: ModelForm, n: int, a: float, unitaries=None) -> "MoebiusAutomorphism":
        power = [
            (model.blocks.blocks[j + 1], model.exponents[j])
            for j in range(len(model.exponents))
        ]
        return cls(n, a, model.first_block, power, unitaries=unitaries)

    @classmethod
    def for_ball(cls, n: int, a: float) -> "MoebiusAutomorphism":
        return cls(n, a, tuple(range(n)))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if z.shape != (self.n,):
            raise ValueError(f"expected a point of C^{self.n}")
        z1 = z[self.first_block[0]]
        if abs(self.a * z1) >= 1.0 - 1e-13:
            raise DomainError("point outside the validity region of the Moebius map")
        denom = 1.0 - self.a * z1
        one_minus = 1.0 - self.a * self.a
        out = np.empty(self.n, dtype=complex)
        out[self.first_block[0]] = (z1 - self.a) / denom
        root = math.sqrt(one_minus)
        for i in self.first_block[1:]:
            out[i] = root * z[i] / denom
        for g, m in self.power_blocks:
            scale = one_minus ** (1.0 / (2 * m)) * _principal_power(denom, -1.0 / m)
            for i in g:
                out[i] = scale * z[i]
        for key, U in self.unitaries.items():
            idx = list(self.first_block) if key == 0 else list(self.power_blocks[key - 1][0])
            out[idx] = U @ out[idx]
        return out

    def conformal_factor(self, z) -> float:
        """rho(F(z)) = conformal_factor(z) * rho(z), exactly, for this family."""
        z1 = complex(np.asarray(z, dtype=complex)[self.first_block[0]])
        return (1.0 - self.a * self.a) / abs(1.0 - self.a * z1) ** 2

    def inverse(self) -> "MoebiusAutomorphism":
        if self.unitaries:
            raise DomainError("closed-form inverse is only available without unitaries")
        return MoebiusAutomorphism(
            self.n, -self.a, self.first_block, self.power_blocks, band=self.band
        )


class InfiniteTypeAutomorphism:
    """Moebius-type family on the channel fixture { u1 + (1-u1)^2 u2 < 1 }.

    F(z1, z2) = ((z1 - a)/(1 - a z1), (1 - a z1) z2 / sqrt(1 - a^2)); this
    satisfies rho(F(z)) = (1 - a^2) rho(z) / |1 - a z1|^2, so the unbounded
    smooth Reinhardt channel carries a non-compact symmetry family even
    though its boundary contains no model-form structure of finite type.
    """

    n = 2

    def __init__(self, a: float):
        a = float(a)
        if not -1.0 < a < 1.0:
            raise DomainError("Moebius parameter must lie in (-1, 1)")
        self.a = a

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if z.shape != (2,):
            raise ValueError("expected a point of C^2")
        denom = 1.0 - self.a * z[0]
        if abs(denom) < 1e-300:
            raise DomainError("point outside the validity region of the Moebius map")
        root = math.sqrt(1.0 - self.a * self.a)
        return np.array([(z[0] - self.a) / denom, denom * z[1] / root], dtype=complex)

    def conformal_factor(self, z) -> float:
        z1 = complex(np.asarray(z, dtype=complex)[0])
        return (1.0 - self.a * self.a) / abs(1.0 - self.a * z1) ** 2

    def inverse(self) -> "InfiniteTypeAutomorphism":
        return InfiniteTypeAutomorphism(-self.a)


def moebius_family(spec: DomainSpec, parameters, model: ModelForm | None = None):
    """Construct the family for each parameter value, classifying if needed."""
    if model is None:
        from .classification import classify

        verdict = classify(spec)
        if verdict.kind == "ball":
            return [MoebiusAutomorphism.for_ball(spec.n, a) for a in parameters]
        if verdict.kind != "model":
            raise DomainError(
                f"no Moebius family: classification returned {verdict.kind}"
            )
        model = verdict.model
    assert model is not None
    return [MoebiusAutomorphism.from_model(model, spec.n, a) for a in parameters]


# ---------------------------------------------------------------------------
# Orbits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitReport:
    parameters: tuple[float, ...]
    points: tuple[tuple[complex, ...], ...]
    boundary_distances: tuple[float, ...]
    limit: tuple[complex, ...] | None
    limit_on_boundary: bool
    note: str


def _radial_boundary_distance(spec: DomainSpec, z: np.ndarray) -> float:
    """Distance from z to the boundary along the outward radial ray.

    Unlike boundary_solve this tolerates starts that already sit on the
    boundary (late orbit points), where the distance is simply ~0.
    """
    norm = float(np.linalg.norm(z))
    direction = z if norm > 0 else np.eye(spec.n, dtype=complex)[0]

    def f(t: float) -> float:
        pt = z + t * direction
        return float(spec.Q.evaluate_batch(np.abs(pt[None, :]) ** 2)[0]) - 1.0

    if f(0.0) > 0.0:
        return 0.0
    t_hi = 2.0**-52
    while f(t_hi) <= 0.0:
        t_hi *= 2.0
        if t_hi > 1e12:
            return float("nan")  # radial ray never exits
    t_lo = 0.0 if t_hi == 2.0**-52 else t_hi / 2.0
    for _ in range(200):
        t_mid = 0.5 * (t_lo + t_hi)
        if t_mid == t_lo or t_mid == t_hi:
            break
        if f(t_mid) <= 0.0:
            t_lo = t_mid
        else:
            t_hi = t_mid
    return 0.5 * (t_lo + t_hi) * (norm if norm > 0 else 1.0)

def orbit(
    spec: DomainSpec,
    maps,
    point,
    band: float = 1e-9,
    limit_tol: float = 1e-8,
) -> OrbitReport:
    """Apply each map to the point; record radial boundary distances and any
    Cauchy limit.  Raises when an image escapes the closed domain by more
    than the band (that would mean the maps are not symmetries).
    """
    p = np.asarray(point, dtype=complex)
    params = []
    points = []
    distances = []
    for f in maps:
        img = np.asarray(f(p), dtype=complex)
        kind, margin = spec.contains(img, band=band)
        if kind == "outside":
            raise DomainError(
                f"orbit point escaped the domain (defining value exceeds 1 by {margin:.3e})"
            )
        params.append(float(getattr(f, "a", float("nan"))))
        points.append(tuple(complex(c) for c in img))
        distances.append(_radial_boundary_distance(spec, img))
    limit = None
    limit_on_boundary = False
    note = "no Cauchy limit detected at the requested tolerance"
    if len(points) >= 2:
        last = np.asarray(points[-1])
        prev = np.asarray(points[-2])
        if float(np.linalg.norm(last - prev)) < limit_tol:
            limit = points[-1]
            kind, _ = spec.contains(last, band=max(band, limit_tol))
            limit_on_boundary = kind == "boundary"
            note = (
                "orbit converges; limit lies on the boundary"
                if limit_on_boundary
                else "orbit converges inside the domain"
            )
    return OrbitReport(
        parameters=tuple(params),
        points=tuple(points),
        boundary_distances=tuple(distances),
        limit=limit,
        limit_on_boundary=limit_on_boundary,
        note=note,
    )


# ---------------------------------------------------------------------------
# Invariance checking
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvarianceReport:
    samples: int
    flip_fraction: float
    max_boundary_residual: float
    max_conformal_error: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.flip_fraction == 0.0 and self.max_boundary_residual < 1e-8


def invariance_check(
    spec: DomainSpec,
    automorphism,
    samples: int = 200,
    seed: int = 0,
    box: float | None = None,
    band: float = DEFAULT_BAND,
) -> InvarianceReport:
    """Sample interior points: none may change side under the map.  When the
    map exposes its conformal factor the exact relation
    rho(F(z)) = factor(z) * rho(z) is checked as well, and boundary points
    obtained radially from the samples must stay on the boundary.
    """
    rng = np.random.default_rng(seed)
    interior = sample_interior(spec, samples, seed=seed, box=box)
    flips = 0
    max_residual = 0.0
    max_factor_err = 0.0
    for z in interior:
        img = automorphism(z)
        kind, _ = spec.contains(img, band=band)
        if kind == "outside":
            flips += 1
        rho = spec.Q.evaluate([abs(c) ** 2 for c in z]) - 1
        rho_img = spec.Q.evaluate([abs(c) ** 2 for c in img]) - 1
        factor = getattr(automorphism, "conformal_factor", None)
        if factor is not None:
            predicted = factor(z) * float(rho)
            err = abs(float(rho_img) - predicted) / max(1.0, abs(predicted))
            max_factor_err = max(max_factor_err, err)
        direction = rng.standard_normal(spec.n) + 1j * rng.standard_normal(spec.n)
        try:
            b, _ = boundary_solve(spec, z, direction, band=band)
        except DomainError:
            continue
        img_b = automorphism(np.asarray(b))
        residual = abs(float(spec.Q.evaluate([abs(c) ** 2 for c in img_b])) - 1.0)
        max_residual = max(max_residual, residual)
    return InvarianceReport(
        samples=len(interior),
        flip_fraction=flips / max(1, len(interior)),
        max_boundary_residual=max_residual,
        max_conformal_error=max_factor_err,
        note=f"{len(interior)} interior samples, side flips {flips}",
    )


# ---------------------------------------------------------------------------
# Orbit accumulation geometry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AccumulationSet:
    """Where the a -> ±1 orbits of the Moebius family pile up.

    For a model spec this is the unit sphere of the distinguished block with
    the remaining coordinates zero: real dimension 2*n1 - 1.  For the ball it
    is the whole boundary sphere, dimension 2*n - 1.
    """

    coordinates: tuple[int, ...]
    ambient_dim: int
    dimension: int
    description: str

    def contains(self, z, tol: float = 1e-8) -> bool:
        z = np.asarray(z, dtype=complex)
        inside = math.fsum(abs(z[i]) ** 2 for i in self.coordinates)
        rest = [abs(z[i]) for i in range(self.ambient_dim) if i not in self.coordinates]
        return abs(inside - 1.0) <= tol and all(r <= tol for r in rest)


def accumulation_set(spec: DomainSpec, model: ModelForm | None = None) -> AccumulationSet:
    if model is None:
        from .classification import classify
        from .gallery import infinite_type_domain

        fixture = infinite_type_domain()
        if spec.n == fixture.n and spec.Q == fixture.Q:
            # the channel family pushes (z1, 0) orbits onto the circle |z1| = 1
            return AccumulationSet(
                coordinates=(0,),
                ambient_dim=2,
                dimension=1,
                description="circle |z1| = 1, z2 = 0; real dimension 1",
            )
        verdict = classify(spec)
        if verdict.kind == "ball":
            coords = tuple(range(spec.n))
            return AccumulationSet(
                coordinates=coords,
                ambient_dim=spec.n,
                dimension=2 * spec.n - 1,
                description=(
                    f"entire boundary sphere |z|=1, real dimension {2 * spec.n - 1}"
                ),
            )
        if verdict.kind != "model":
            raise DomainError(
                f"no non-compact family to accumulate: classification returned {verdict.kind}"
            )
        model = verdict.model
    assert model is not None
    coords = model.first_block
    n1 = len(coords)
    return AccumulationSet(
        coordinates=tuple(coords),
        ambient_dim=spec.n,
        dimension=2 * n1 - 1,
        description=(
            f"unit sphere of the distinguished block (coordinates "
            f"{[i + 1 for i in coords]}), other coordinates 0; real dimension {2 * n1 - 1}"
        ),
    )
