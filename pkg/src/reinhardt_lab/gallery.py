"""Built-in example domains used by the CLI and the test-suite."""

from __future__ import annotations

from fractions import Fraction

from .domains import BlockStructure, DomainSpec
from .polynomials import parse_polynomial

__all__ = [
    "unit_ball",
    "nonconvex_model",
    "infinite_type_domain",
    "shell_domain",
    "unbounded_sheet",
    "two_block_model",
    "GALLERY",
    "builtin",
]


def unit_ball(n: int = 3) -> DomainSpec:
    """{ |z_1|^2 + ... + |z_n|^2 < 1 }."""
    Q = parse_polynomial(" + ".join(f"u{i + 1}" for i in range(n)), num_vars=n)
    return DomainSpec(n=n, Q=Q, blocks=BlockStructure([list(range(n))]), name=f"ball{n}")


def nonconvex_model() -> DomainSpec:
    """Model domain with a mixed term making it non-convex:

    { |z1|^2 + |z2|^4 + |z3|^4 - |z2|^2 |z3|^2 < 1 },  m = (2, 2).

    The quartic part is positive definite in (|z2|^2, |z3|^2), so the domain
    is bounded, but the -u2*u3 term bends the boundary: the Levi form is
    indefinite at suitable boundary points.
    """
    Q = parse_polynomial("u1 + u2^2 + u3^2 - u2*u3", num_vars=3)
    return DomainSpec(
        n=3,
        Q=Q,
        blocks=BlockStructure([[0], [1], [2]]),
        name="nonconvex-model",
    )


def infinite_type_domain() -> DomainSpec:
    """Unbounded smooth channel { |z1|^2 + (1 - |z1|^2)^2 |z2|^2 < 1 } in C^2.

    Expanded: u1 + u2 - 2 u1 u2 + u1^2 u2.  Along z1 = 1 the defining
    function equals 1 identically in z2, so the boundary contains the
    complex line {z1 = 1}: the curve t -> (1, t) has infinite contact order,
    and the domain carries a non-compact symmetry family despite not being
    of the bounded model shape.
    """
    Q = parse_polynomial("u1 + u2 - 2*u1*u2 + u1^2*u2", num_vars=2)
    return DomainSpec(n=2, Q=Q, blocks=None, name="infinite-type-channel")


def shell_domain() -> DomainSpec:
    """Shell avoiding z1 = 0: { (|z1|^2 - 2)^2 < 1 }, i.e. 1 < |z1|^2 < 3.

    The coordinate hyperplane z1 = 0 is avoided (exact distance 1), so
    log-image based symmetry analysis must treat it accordingly.
    """
    Q = parse_polynomial("u1^2 - 4*u1 + 4", num_vars=1)
    return DomainSpec(n=1, Q=Q, blocks=None, name="shell")


def unbounded_sheet() -> DomainSpec:
    """{ |z1|^2 - |z2|^2 < 1 }: unbounded along the z2 axis."""
    Q = parse_polynomial("u1 - u2", num_vars=2)
    return DomainSpec(n=2, Q=Q, blocks=None, name="unbounded-sheet")


def two_block_model() -> DomainSpec:
    """Model with a genuine block of size 2:

    { (|z1|^2 + |z2|^2) + (|z3|^2 + |z4|^2)^2 < 1 },  blocks {1,2} | {3,4}.
    """
    Q = parse_polynomial(
        "u1 + u2 + u3^2 + 2*u3*u4 + u4^2",
        num_vars=4,
    )
    return DomainSpec(
        n=4,
        Q=Q,
        blocks=BlockStructure([[0, 1], [2, 3]]),
        name="two-block-model",
    )


GALLERY = {
    "ball2": lambda: unit_ball(2),
    "ball3": lambda: unit_ball(3),
    "nonconvex-model": nonconvex_model,
    "infinite-type-channel": infinite_type_domain,
    "shell": shell_domain,
    "unbounded-sheet": unbounded_sheet,
    "two-block-model": two_block_model,
}


def builtin(name: str) -> DomainSpec:
    try:
        return GALLERY[name]()
    except KeyError:
        known = ", ".join(sorted(GALLERY))
        raise KeyError(f"unknown builtin domain {name!r}; available: {known}") from None
