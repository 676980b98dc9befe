"""Boundary geometry: Levi form at boundary points and holomorphic contact
order of analytic discs.

For rho(z) = Q(|z_1|^2, ..., |z_n|^2) - 1 the complex Hessian is

    L_jk = Q_jk(u) z_k conj(z_j) + delta_jk Q_j(u),      u_i = |z_i|^2,

restricted to the complex tangent space spanned by the graph basis
b_k = e_k - (d_k rho / d_p rho) e_p, where p is the first coordinate whose
rho-derivative does not vanish.  The basis is deliberately not orthonormal:
eigenvalue *signs* are basis-independent, the numbers themselves refer to
this fixed basis.

Contact order works on exact data: a curve with Gaussian-rational
coefficients through an exact boundary point q gives a bivariate polynomial
R(t, s) = Q(gamma(t) conj(gamma)(s)) - 1 over the Gaussian rationals whose
lowest total degree, divided by the vanishing order of gamma - q, is the
normalized contact order.  R identically zero certifies infinite order.
A float-based slope estimator is provided for points without exact
coordinates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .domains import DomainError, DomainSpec

__all__ = [
    "ComplexRational",
    "AnalyticCurve",
    "LeviReport",
    "levi_form",
    "ContactReport",
    "contact_order",
    "NumericContactReport",
    "contact_order_numeric",
    "TypeProbeReport",
    "type_probe",
]


# ---------------------------------------------------------------------------
# Exact complex scalars
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplexRational:
    """Gaussian rational a + b i with exact Fraction parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def from_value(cls, value) -> "ComplexRational":
        if isinstance(value, ComplexRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value), Fraction(0))
        if isinstance(value, (float, complex)):
            re, im = (value.real, value.imag) if isinstance(value, complex) else (value, 0.0)
            if re != int(re) or im != int(im):
                raise TypeError(
                    "exact contact analysis needs rational coordinates; pass "
                    "int/Fraction/ComplexRational, or use the numeric estimator"
                )
            return cls(Fraction(int(re)), Fraction(int(im)))
        if isinstance(value, tuple) and len(value) == 2:
            return cls(Fraction(value[0]), Fraction(value[1]))
        raise TypeError(f"cannot interpret {value!r} as an exact complex number")

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    def __add__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "ComplexRational":
        return ComplexRational(-self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def modulus_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re} {sign} {abs(self.im)}*i"


_CR_ZERO = ComplexRational()
_CR_ONE = ComplexRational(Fraction(1))


# ---------------------------------------------------------------------------
# Levi form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LeviReport:
    point: tuple[complex, ...]
    moduli: tuple[float, ...]
    matrix: np.ndarray  # full complex Hessian of rho, n x n
    gradient: tuple[complex, ...]  # d rho / d z_j
    pivot: int
    tangent_basis: np.ndarray  # (n-1) x n rows
    tangent_form: np.ndarray  # (n-1) x (n-1) Hermitian
    eigenvalues: tuple[float, ...]  # ascending
    verdict: str


_VERDICTS = (
    "positive_definite",
    "positive_semidefinite",
    "indefinite",
    "negative_semidefinite",
    "negative_definite",
    "zero",
)


def _eigen_verdict(eigenvalues, tol: float) -> str:
    if len(eigenvalues) == 0:
        return "zero"
    pos = any(e > tol for e in eigenvalues)
    neg = any(e < -tol for e in eigenvalues)
    if pos and neg:
        return "indefinite"
    if pos:
        return "positive_definite" if all(e > tol for e in eigenvalues) else "positive_semidefinite"
    if neg:
        return "negative_definite" if all(e < -tol for e in eigenvalues) else "negative_semidefinite"
    return "positive_semidefinite"  # identically zero form is weakly positive


def levi_form(
    spec: DomainSpec,
    point,
    band: float = 1e-8,
    eig_tol: float = 1e-9,
) -> LeviReport:
    """Levi data of the boundary at ``point`` (must satisfy |Q(u) - 1| <= band).

    Raises DomainError off the boundary or when every rho-derivative
    vanishes (the graph basis then has no pivot to solve for).
    """
    z = np.asarray(point, dtype=complex)
    if z.shape != (spec.n,):
        raise ValueError(f"expected a point of C^{spec.n}")
    u = np.abs(z) ** 2
    value = float(spec.Q.evaluate_batch(u[None, :])[0])
    if abs(value - 1.0) > band:
        raise DomainError(
            f"point is not on the boundary: |Q(u) - 1| = {abs(value - 1.0):.3e} > {band:g}"
        )
    grads = spec.Q.gradient()
    g1 = np.array([complex(g.evaluate([float(x) for x in u])) for g in grads])
    gradient = g1 * np.conj(z)
    gmax = float(np.max(np.abs(gradient)))
    if gmax < 1e-12:
        raise DomainError("degenerate boundary point: all rho-derivatives vanish")

    n = spec.n
    L = np.zeros((n, n), dtype=complex)
    for j in range(n):
        hess_row = grads[j].gradient()
        for k in range(n):
            L[j, k] = complex(hess_row[k].evaluate([float(x) for x in u])) * z[k] * np.conj(z[j])
        L[j, j] += g1[j]

    pivot = next(j for j in range(n) if abs(gradient[j]) > 1e-9 * gmax)
    basis = np.zeros((n - 1, n), dtype=complex)
    row = 0
    for k in range(n):
        if k == pivot:
            continue
        basis[row, k] = 1.0
        basis[row, pivot] = -gradient[k] / gradient[pivot]
        row += 1
    H = basis @ L @ basis.conj().T
    eigenvalues = tuple(float(e) for e in np.linalg.eigvalsh(H)) if n > 1 else ()
    verdict = "zero" if n == 1 else _eigen_verdict(eigenvalues, eig_tol)
    return LeviReport(
        point=tuple(complex(c) for c in z),
        moduli=tuple(float(x) for x in u),
        matrix=L,
        gradient=tuple(complex(c) for c in gradient),
        pivot=pivot,
        tangent_basis=basis,
        tangent_form=H,
        eigenvalues=eigenvalues,
        verdict=verdict,
    )


# ---------------------------------------------------------------------------
# Exact analytic curves
# ---------------------------------------------------------------------------


class AnalyticCurve:
    """gamma(t) = base + sum_d coeff_d t^d per coordinate, all data exact.

    ``coefficients`` is one mapping {degree >= 1: value} per coordinate;
    values accept anything ComplexRational.from_value takes.
    """

    def __init__(self, base, coefficients):
        self.base = tuple(ComplexRational.from_value(b) for b in base)
        coeffs = []
        for entry in coefficients:
            clean = {}
            for d, c in dict(entry).items():
                d = int(d)
                if d < 1:
                    raise ValueError("curve coefficients start at degree 1")
                c = ComplexRational.from_value(c)
                if c:
                    clean[d] = c
            coeffs.append(clean)
        self.coefficients = tuple(coeffs)
        if len(self.coefficients) != len(self.base):
            raise ValueError("one coefficient table per coordinate required")
        if not any(self.coefficients):
            raise ValueError("curve must move: all coefficients vanish")

    @property
    def n(self) -> int:
        return len(self.base)

    def vanishing_order(self) -> int:
        return min(min(table) for table in self.coefficients if table)

    def __call__(self, t: complex) -> np.ndarray:
        out = np.empty(self.n, dtype=complex)
        for i, (b, table) in enumerate(zip(self.base, self.coefficients)):
            acc = complex(b)
            for d, c in table.items():
                acc += complex(c) * t**d
            out[i] = acc
        return out

    def __str__(self) -> str:
        parts = []
        for i, (b, table) in enumerate(zip(self.base, self.coefficients)):
            terms = [str(b)] if b else []
            for d in sorted(table):
                exp = "t" if d == 1 else f"t^{d}"
                terms.append(f"({table[d]})*{exp}")
            parts.append(" + ".join(terms) if terms else "0")
        return "(" + ", ".join(parts) + ")"


# bivariate polynomials in (t, s): dict[(i, j)] -> ComplexRational


def _bv_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            key = (i1 + i2, j1 + j2)
            prev = out.get(key)
            out[key] = c1 * c2 if prev is None else prev + c1 * c2
    return {k: v for k, v in out.items() if v}


def _bv_pow(a: dict, k: int) -> dict:
    out = {(0, 0): _CR_ONE}
    for _ in range(k):
        out = _bv_mul(out, a)
    return out


def _curve_modulus_series(curve: AnalyticCurve, i: int) -> dict:
    """|gamma_i|^2 as a bivariate polynomial gamma_i(t) * conj(gamma_i)(s)."""
    table = dict(curve.coefficients[i])
    table[0] = curve.base[i]
    out: dict = {}
    for d1, c1 in table.items():
        for d2, c2 in table.items():
            key = (d1, d2)
            val = c1 * c2.conjugate()
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class ContactReport:
    order: Fraction | float  # Fraction, or math.inf
    boundary_vanishing: int | None  # lowest total degree of R, None when R == 0
    curve_vanishing: int
    infinite: bool
    certificate: str | None
    curve: str


def contact_order(spec: DomainSpec, curve: AnalyticCurve) -> ContactReport:
    """Exact normalized contact order of the boundary with the curve.

    The curve base point must lie exactly on the boundary.  Requires an
    ordinary (non-Laurent) defining polynomial.
    """
    if not spec.Q.is_ordinary():
        raise DomainError("contact analysis requires an ordinary defining polynomial")
    if curve.n != spec.n:
        raise ValueError("curve dimension does not match the domain")
    base_moduli = [b.modulus_squared() for b in curve.base]
    if spec.Q.evaluate(base_moduli) != 1:
        raise DomainError("curve base point is not exactly on the boundary")

    moduli_series = [_curve_modulus_series(curve, i) for i in range(spec.n)]
    R: dict = {(0, 0): ComplexRational(Fraction(-1))}
    for exps, coeff in spec.Q.terms.items():
        term = {(0, 0): ComplexRational(coeff)}
        for i, e in enumerate(exps):
            if e:
                term = _bv_mul(term, _bv_pow(moduli_series[i], e))
        for key, val in term.items():
            prev = R.get(key)
            R[key] = val if prev is None else prev + val
    R = {k: v for k, v in R.items() if v}

    nu_curve = curve.vanishing_order()
    if not R:
        return ContactReport(
            order=math.inf,
            boundary_vanishing=None,
            curve_vanishing=nu_curve,
            infinite=True,
            certificate=(
                "the defining function vanishes identically along "
                f"gamma(t) = {curve}; every truncation of rho o gamma is zero"
            ),
            curve=str(curve),
        )
    nu_R = min(i + j for (i, j) in R)
    return ContactReport(
        order=Fraction(nu_R, nu_curve),
        boundary_vanishing=nu_R,
        curve_vanishing=nu_curve,
        infinite=False,
        certificate=None,
        curve=str(curve),
    )


# ---------------------------------------------------------------------------
# Numeric slope estimator
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NumericContactReport:
    slope: float
    residual: float
    points_used: int
    order_estimate: int | None
    note: str


def contact_order_numeric(
    spec: DomainSpec,
    curve,
    t_values=None,
    floor: float = 1e-13,
    max_residual: float = 0.05,
) -> NumericContactReport:
    """Estimate the vanishing order of rho along a float curve.

    Fits log|rho(gamma(t))| against log t; the slope is the order.  Points
    below the double-precision floor are discarded; the estimate is only
    reported when at least five points spanning two decades survive and the
    RMS residual stays under ``max_residual``.
    """
    if t_values is None:
        t_values = np.logspace(-4.0, -0.5, 15)
    ts = np.asarray(t_values, dtype=float)
    rhos = []
    kept_t = []
    for t in ts:
        z = np.asarray(curve(t), dtype=complex)
        val = float(spec.Q.evaluate_batch(np.abs(z[None, :]) ** 2)[0]) - 1.0
        if abs(val) > floor:
            rhos.append(abs(val))
            kept_t.append(t)
    if len(kept_t) < 5 or max(kept_t) / min(kept_t) < 100.0:
        return NumericContactReport(
            slope=float("nan"),
            residual=float("inf"),
            points_used=len(kept_t),
            order_estimate=None,
            note=(
                "insufficient resolvable points above the precision floor; "
                "the contact may be too flat for double precision"
            ),
        )
    x = np.log(np.asarray(kept_t))
    y = np.log(np.asarray(rhos))
    A = np.column_stack([x, np.ones_like(x)])
    sol, *_ = np.linalg.lstsq(A, y, rcond=None)
    fit = A @ sol
    residual = float(np.sqrt(np.mean((fit - y) ** 2)))
    slope = float(sol[0])
    ok = residual < max_residual
    return NumericContactReport(
        slope=slope,
        residual=residual,
        points_used=len(kept_t),
        order_estimate=int(round(slope)) if ok else None,
        note="clean power-law fit" if ok else "fit residual too large to trust",
    )


# ---------------------------------------------------------------------------
# Type probe: search over exact curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TypeProbeReport:
    order: Fraction | float  # max over tested curves; math.inf when certified
    best_curve: str
    curves_tested: int
    infinite: bool
    certificate: str | None
    note: str


def _grid_options(degree: int, denominators) -> list:
    units = [
        ComplexRational(Fraction(1), Fraction(0)),
        ComplexRational(Fraction(-1), Fraction(0)),
        ComplexRational(Fraction(0), Fraction(1)),
        ComplexRational(Fraction(0), Fraction(-1)),
    ]
    options: list = [None]
    for d in range(1, degree + 1):
        for den in denominators:
            for w in units:
                options.append((d, ComplexRational(w.re / den, w.im / den)))
    return options


def type_probe(
    spec: DomainSpec,
    base_point,
    degree: int = 2,
    denominators=(1, 2),
    random_curves: int = 25,
    seed: int = 0,
) -> TypeProbeReport:
    """Largest contact order found among a grid of exact test curves.

    Single-monomial perturbations per coordinate (degrees up to ``degree``,
    fourth-root-of-unity coefficients scaled by 1/denominator) plus seeded
    random rational curves.  Returns early with a certificate when a curve
    with identically vanishing rho shows up.  The maximum is over tested
    curves only; it is a lower bound for the true type.
    """
    base = tuple(ComplexRational.from_value(b) for b in base_point)
    if len(base) != spec.n:
        raise ValueError(f"expected a point of C^{spec.n}")
    options = _grid_options(degree, denominators)
    best: Fraction = Fraction(0)
    best_curve = ""
    tested = 0
    for combo in itertools.product(options, repeat=spec.n):
        if all(c is None for c in combo):
            continue
        coeffs = [({} if c is None else {c[0]: c[1]}) for c in combo]
        curve = AnalyticCurve(base, coeffs)
        report = contact_order(spec, curve)
        tested += 1
        if report.infinite:
            return TypeProbeReport(
                order=math.inf,
                best_curve=report.curve,
                curves_tested=tested,
                infinite=True,
                certificate=report.certificate,
                note="exact certificate of infinite contact order",
            )
        assert isinstance(report.order, Fraction)
        if report.order > best:
            best = report.order
            best_curve = report.curve

    rng = np.random.default_rng(seed)
    for _ in range(random_curves):
        coeffs = []
        moved = False
        for _i in range(spec.n):
            table = {}
            for d in range(1, degree + 1):
                if rng.random() < 0.5:
                    continue
                re = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4)))
                im = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4)))
                if re or im:
                    table[d] = ComplexRational(re, im)
                    moved = True
            coeffs.append(table)
        if not moved:
            continue
        curve = AnalyticCurve(base, coeffs)
        report = contact_order(spec, curve)
        tested += 1
        if report.infinite:
            return TypeProbeReport(
                order=math.inf,
                best_curve=report.curve,
                curves_tested=tested,
                infinite=True,
                certificate=report.certificate,
                note="exact certificate of infinite contact order",
            )
        assert isinstance(report.order, Fraction)
        if report.order > best:
            best = report.order
            best_curve = report.curve

    return TypeProbeReport(
        order=best,
        best_curve=best_curve,
        curves_tested=tested,
        infinite=False,
        certificate=None,
        note="maximum over tested curves; a lower bound for the boundary type",
    )
