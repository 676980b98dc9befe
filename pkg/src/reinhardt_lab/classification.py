"""Classification of Reinhardt specs against the distinguished-block model form.

The target shape is

    |z^1|^2 + sum_j r_j |z^j|^{2 m_j} + sum_l a_l prod_j |z^j|^{2 l_j}  <  1,

blocks z^1, ..., z^p, pure coefficients r_j > 0, and every mixed exponent
tuple satisfying the weight equation sum_j l_j / m_j = 1.  Domains of this
shape carry one-parameter families of non-affine symmetries; a bounded smooth
Reinhardt domain not of this shape (up to dilations and permutations) has a
compact symmetry group.

classify() decides Ball / Model / NotModel / Unknown with exact rational
arithmetic.  canonical_form() further normalizes every pure coefficient to 1;
the dilation scalars this needs are m-th roots of rationals, kept exact via
:class:`reinhardt_lab.radicals.Radical` so canonical comparison never rounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .domains import (
    BlockStructure,
    DomainError,
    DomainSpec,
    RegularityReport,
    boundedness_certificate,
    coordinate_slice,
)
from .polynomials import ModuliPolynomial, MonomialMap, WeightVector
from .radicals import Radical

__all__ = [
    "ModelForm",
    "ClassificationVerdict",
    "CanonicalForm",
    "detect_block_structure",
    "block_moduli_polynomial",
    "classify",
    "verify_slice_form",
    "canonical_form",
]


# ---------------------------------------------------------------------------
# Block structure detection
# ---------------------------------------------------------------------------


def compose_polynomials(
    outer: ModuliPolynomial, args: Sequence[ModuliPolynomial]
) -> ModuliPolynomial:
    """Exact composition outer(args[0], ..., args[p-1])."""
    if len(args) != outer.num_vars:
        raise ValueError("argument count mismatch")
    n = args[0].num_vars
    result = ModuliPolynomial.zero(n)
    for exps, coeff in outer.terms.items():
        term = ModuliPolynomial.constant(n, coeff)
        for arg, e in zip(args, exps):
            if e < 0:
                raise ValueError("composition requires ordinary outer polynomial")
            if e:
                term = term * arg**e
        result = result + term
    return result


def _block_sum_variables(blocks: BlockStructure, n: int) -> list[ModuliPolynomial]:
    out = []
    for group in blocks.blocks:
        s = ModuliPolynomial.zero(n)
        for i in group:
            s = s + ModuliPolynomial.variable(n, i)
        out.append(s)
    return out


def block_moduli_polynomial(Q: ModuliPolynomial, blocks: BlockStructure) -> ModuliPolynomial:
    """Rewrite Q as a polynomial in the block sums v_b = sum_{i in b} u_i.

    Exact: the candidate is read off by zeroing all but one representative
    per block, then verified by expanding back and comparing with Q.  Raises
    DomainError when Q is not expressible in these block sums.
    """
    n = Q.num_vars
    reps = [g[0] for g in blocks.blocks]
    others = [i for i in range(n) if i not in reps]
    candidate = Q.restrict(others).compress(reps)
    expanded = compose_polynomials(candidate, _block_sum_variables(blocks, n))
    if expanded != Q:
        raise DomainError(
            "Q is not expressible as a polynomial in the declared block sums"
        )
    return candidate


def detect_block_structure(spec: DomainSpec) -> BlockStructure:
    """Validate the declared block structure, or infer the coarsest valid one.

    Two coordinates can share a block exactly when dQ/du_i == dQ/du_j as
    polynomials (Q is then constant along their difference direction), so the
    coarsest partition is the equal-partials partition.
    """
    grads = spec.Q.gradient()
    classes: list[list[int]] = []
    for i in range(spec.n):
        for cls in classes:
            if grads[cls[0]] == grads[i]:
                cls.append(i)
                break
        else:
            classes.append([i])
    coarsest = BlockStructure(sorted(classes, key=min))
    if spec.blocks is None:
        block_moduli_polynomial(spec.Q, coarsest)  # round-trip safety check
        return coarsest
    block_moduli_polynomial(spec.Q, spec.blocks)  # raises when not expressible
    return spec.blocks


# ---------------------------------------------------------------------------
# Model form data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModelForm:
    """Distinguished-block normal form with exact rational data.

    ``blocks`` lists original coordinate indices, distinguished block first.
    ``exponents`` and ``pure_coefficients`` describe the remaining blocks in
    order; ``cross_terms`` maps exponent tuples over those blocks to their
    coefficients.  ``first_block_scale`` is the linear coefficient the
    distinguished block carried before the normalizing dilation.
    """

    blocks: BlockStructure
    exponents: tuple[int, ...]
    pure_coefficients: tuple[Fraction, ...]
    cross_terms: tuple[tuple[tuple[int, ...], Fraction], ...]
    first_block_scale: Fraction

    def __post_init__(self):
        if len(self.exponents) != self.blocks.p - 1:
            raise ValueError("one exponent per non-distinguished block required")
        if len(self.pure_coefficients) != len(self.exponents):
            raise ValueError("one pure coefficient per non-distinguished block required")
        if any(m < 1 for m in self.exponents):
            raise ValueError("exponents must be positive integers")
        if any(r <= 0 for r in self.pure_coefficients):
            raise ValueError("pure coefficients must be positive")
        if self.first_block_scale <= 0:
            raise ValueError("first block scale must be positive")
        for exps, coeff in self.cross_terms:
            if len(exps) != len(self.exponents):
                raise ValueError("cross exponent tuple has wrong length")
            if coeff == 0:
                raise ValueError("zero cross coefficient stored")
            weight = sum(Fraction(l, m) for l, m in zip(exps, self.exponents))
            if weight != 1:
                raise ValueError(f"cross tuple {exps} violates the weight equation")
            support = [j for j, l in enumerate(exps) if l > 0]
            if len(support) == 1 and exps[support[0]] == self.exponents[support[0]]:
                raise ValueError("pure power stored among cross terms")

    @property
    def cross_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.cross_terms)

    @property
    def first_block(self) -> tuple[int, ...]:
        return self.blocks.blocks[0]

    def weight_vector(self) -> WeightVector:
        return WeightVector.from_exponents(self.exponents)


@dataclass(frozen=True)
class ClassificationVerdict:
    kind: str  # "ball" | "model" | "not_model" | "unknown"
    model: ModelForm | None
    reason: str | None
    diagnostics: tuple[str, ...]
    constant_shift: Fraction = Fraction(0)


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def _renormalize_constant(Q: ModuliPolynomial) -> tuple[ModuliPolynomial, Fraction]:
    """Remove a constant term k by passing to (Q - k)/(1 - k); same domain."""
    k = Q.constant_term()
    if k == 0:
        return Q, k
    scale = Fraction(1) / (1 - k)
    return (Q - k) * scale, k


def _ball_check(Q: ModuliPolynomial) -> bool:
    return (
        Q.total_degree() == 1
        and all(sum(e) == 1 for e in Q.terms)
        and all(c > 0 for c in Q.terms.values())
        and len(Q.terms) == Q.num_vars
    )


def _model_candidates(Qv: ModuliPolynomial) -> list[int]:
    """Blocks whose modulus enters Qv purely linearly, with positive coefficient."""
    p = Qv.num_vars
    out = []
    for b in range(p):
        linear = tuple(1 if j == b else 0 for j in range(p))
        coeff = Qv.terms.get(linear)
        if coeff is None or coeff <= 0:
            continue
        if any(e[b] != 0 for e in Qv.terms if e != linear):
            continue
        out.append(b)
    return out


def _extract_model(
    Qv: ModuliPolynomial, blocks: BlockStructure, distinguished: int
) -> tuple[ModelForm | None, str | None]:
    """Try to read the model data off Qv with the given distinguished block."""
    p = Qv.num_vars
    rest = [b for b in range(p) if b != distinguished]
    linear = tuple(1 if j == distinguished else 0 for j in range(p))
    c = Qv.terms[linear]
    exponents: dict[int, int] = {}
    pures: dict[int, Fraction] = {}
    cross: dict[tuple[int, ...], Fraction] = {}
    for exps, coeff in Qv.terms.items():
        if exps == linear:
            continue
        support = [j for j, e in enumerate(exps) if e != 0]
        if len(support) == 1:
            b = support[0]
            if b in pures:
                return None, (
                    f"block {b + 1} carries two pure powers; no single weight fits"
                )
            exponents[b] = exps[b]
            pures[b] = coeff
        else:
            cross[tuple(exps[j] for j in rest)] = coeff
    missing = [b for b in rest if b not in pures]
    if missing:
        return None, f"block {missing[0] + 1} lacks a positive pure power"
    negative = [b for b in rest if pures[b] <= 0]
    if negative:
        return None, f"pure coefficient of block {negative[0] + 1} is not positive"
    m = [exponents[b] for b in rest]
    for exps, coeff in cross.items():
        weight = sum(Fraction(l, mj) for l, mj in zip(exps, m))
        if weight != 1:
            return None, (
                f"mixed term with block exponents {exps} violates the weight "
                f"equation (weighted degree {weight})"
            )
    reordered = BlockStructure(
        [blocks.blocks[distinguished]] + [blocks.blocks[b] for b in rest]
    )
    try:
        form = ModelForm(
            blocks=reordered,
            exponents=tuple(m),
            pure_coefficients=tuple(pures[b] for b in rest),
            cross_terms=tuple(sorted(cross.items())),
            first_block_scale=c,
        )
    except ValueError as err:
        return None, str(err)
    return form, None


def classify(
    spec: DomainSpec,
    assume_bounded: bool = False,
    regularity: RegularityReport | None = None,
    seed: int = 0,
) -> ClassificationVerdict:
    """Decide Ball / Model / NotModel / Unknown for a bounded spec.

    Raises DomainError when the origin is outside the closed domain or the
    domain is certifiably unbounded; returns Unknown when boundedness cannot
    be settled.  The verdict is invariant under coordinate permutations and
    positive dilations of the input.
    """
    diagnostics: list[str] = []
    if spec.Q.constant_term() >= 1:
        raise DomainError("the origin is not contained in the domain")
    if assume_bounded:
        diagnostics.append("boundedness asserted by caller")
    else:
        report = boundedness_certificate(spec, seed=seed)
        if report.kind == "unbounded_witness":
            raise DomainError("the domain is unbounded; classification needs bounded input")
        if report.kind == "unknown":
            return ClassificationVerdict(
                kind="unknown",
                model=None,
                reason=f"boundedness unresolved: {report.detail}",
                diagnostics=tuple(diagnostics),
            )
        diagnostics.append(f"boundedness certified: {report.detail}")

    Q, shift = _renormalize_constant(spec.Q)
    if shift != 0:
        diagnostics.append(
            f"constant term {shift} absorbed by renormalizing the inequality"
        )

    if _ball_check(Q):
        diagnostics.append("Q is a positive linear form in all moduli")
        return ClassificationVerdict(
            kind="ball",
            model=None,
            reason=None,
            diagnostics=tuple(diagnostics),
            constant_shift=shift,
        )

    work = DomainSpec(n=spec.n, Q=Q, blocks=spec.blocks, name=spec.name)
    blocks = detect_block_structure(work)
    diagnostics.append(
        ("declared" if spec.blocks is not None else "inferred")
        + f" blocks {blocks.to_one_based()}"
    )
    Qv = block_moduli_polynomial(Q, blocks)

    candidates = _model_candidates(Qv)
    if not candidates:
        reason = "no block modulus enters the polynomial purely linearly"
        return _not_model(reason, diagnostics, regularity, shift)

    forms: list[tuple[tuple, ModelForm]] = []
    failure: str | None = None
    for b in candidates:
        form, why = _extract_model(Qv, blocks, b)
        if form is None:
            if failure is None:
                failure = why
            continue
        forms.append((_model_fingerprint(form), form))
    if not forms:
        return _not_model(failure or "no valid distinguished block", diagnostics, regularity, shift)
    forms.sort(key=lambda t: t[0])
    chosen = forms[0][1]
    diagnostics.append(
        f"distinguished block {list(i + 1 for i in chosen.first_block)}, "
        f"m = {list(chosen.exponents)}"
    )
    return ClassificationVerdict(
        kind="model",
        model=chosen,
        reason=None,
        diagnostics=tuple(diagnostics),
        constant_shift=shift,
    )


def _not_model(
    reason: str,
    diagnostics: list[str],
    regularity: RegularityReport | None,
    shift: Fraction,
) -> ClassificationVerdict:
    if regularity is not None and not regularity.failures:
        reason += (
            "; the symmetry group is compact if the boundary is smooth "
            "(no boundary degeneracy detected at the sampled resolution)"
        )
    return ClassificationVerdict(
        kind="not_model",
        model=None,
        reason=reason,
        diagnostics=tuple(diagnostics),
        constant_shift=shift,
    )


# ---------------------------------------------------------------------------
# Slice verification
# ---------------------------------------------------------------------------


def verify_slice_form(spec: DomainSpec, model: ModelForm, block_index: int) -> bool:
    """Check the two-block slice prediction exactly.

    Zeroing every coordinate outside the distinguished block and block
    ``block_index`` (1-based among the non-distinguished blocks) must leave
    exactly c*v_1 + r_j * v_j^{m_j}.
    """
    if not 1 <= block_index <= model.blocks.p - 1:
        raise ValueError("block_index must pick a non-distinguished block")
    keep = set(model.first_block) | set(model.blocks.blocks[block_index])
    zeros = [i for i in range(spec.n) if i not in keep]
    Q_norm, _ = _renormalize_constant(spec.Q)
    work = DomainSpec(n=spec.n, Q=Q_norm, blocks=spec.blocks, name=spec.name)
    sliced = coordinate_slice(work, zeros) if zeros else work
    survivors = [i for i in range(spec.n) if i in keep]
    new_index = {old: new for new, old in enumerate(survivors)}
    nn = len(survivors)
    v1 = ModuliPolynomial.zero(nn)
    for i in model.first_block:
        v1 = v1 + ModuliPolynomial.variable(nn, new_index[i])
    vj = ModuliPolynomial.zero(nn)
    for i in model.blocks.blocks[block_index]:
        vj = vj + ModuliPolynomial.variable(nn, new_index[i])
    m = model.exponents[block_index - 1]
    r = model.pure_coefficients[block_index - 1]
    expected = model.first_block_scale * v1 + r * vj**m
    return sliced.Q == expected


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    """Fully dilation-normalized model data; exact up to radicals.

    ``cross_terms`` carry Radical coefficients because dividing by m-th roots
    of the pure coefficients is generally irrational.  ``spec`` materializes
    the canonical polynomial when everything happens to be rational, else it
    is None and the exact data here is the canonical object.  The witness maps
    the (constant-renormalized) input onto the canonical polynomial:
    substituting it into the input Q reproduces the canonical Q exactly.
    """

    kind: str  # "ball" | "model"
    block_sizes: tuple[int, ...]
    exponents: tuple[int, ...]
    cross_terms: tuple[tuple[tuple[int, ...], Radical], ...]
    witness_permutation: tuple[int, ...]  # canonical position -> input coordinate
    witness_scalars: tuple[Radical, ...]  # moduli dilation per input coordinate
    constant_shift: Fraction
    spec: DomainSpec | None
    witness_map: MonomialMap | None

    def fingerprint(self) -> tuple:
        return (self.kind, self.block_sizes, self.exponents, self.cross_terms)


def _radical_key(r: Radical) -> tuple:
    return (r.sign, r.base.numerator, r.base.denominator, r.root)


def _model_fingerprint(form: ModelForm) -> tuple:
    """Canonical comparison key for a ModelForm, used to pick among candidates."""
    sizes = tuple(len(g) for g in form.blocks.blocks)
    canonical_cross = _canonical_cross(form)
    return (sizes[0], _sorted_rest_key(form, canonical_cross))


def _canonical_cross(form: ModelForm) -> dict[tuple[int, ...], Radical]:
    out = {}
    for exps, coeff in form.cross_terms:
        value = Radical.from_rational(coeff)
        for l, mj, rj in zip(exps, form.exponents, form.pure_coefficients):
            if l:
                value = value * Radical.nth_root(Fraction(1, 1) / rj, mj) ** l
        out[exps] = value
    return out


def _sorted_rest_key(
    form: ModelForm, cross: dict[tuple[int, ...], Radical]
) -> tuple:
    """Best (lexicographically smallest) serialization over tie permutations."""
    rest = list(range(len(form.exponents)))
    keyed = sorted(rest, key=lambda j: (len(form.blocks.blocks[j + 1]), form.exponents[j]))
    groups: list[list[int]] = []
    for j in keyed:
        sig = (len(form.blocks.blocks[j + 1]), form.exponents[j])
        if groups and sig == groups[-1][0]:
            groups[-1][1].append(j)
        else:
            groups.append([sig, [j]])  # type: ignore[list-item]
    tie_groups = [g[1] for g in groups]  # type: ignore[index]
    if any(len(g) > 6 for g in tie_groups):
        raise DomainError("too many interchangeable blocks for canonical ordering")
    best = None
    for choice in itertools.product(*(itertools.permutations(g) for g in tie_groups)):
        order = [j for group in choice for j in group]
        position = {j: q for q, j in enumerate(order)}
        serialized = tuple(
            sorted(
                (
                    tuple(exps[j] for j in order),
                    _radical_key(value),
                )
                for exps, value in cross.items()
            )
        )
        sizes = tuple(len(form.blocks.blocks[j + 1]) for j in order)
        ms = tuple(form.exponents[j] for j in order)
        key = (sizes, ms, serialized, tuple(order))
        if best is None or key < best:
            best = key
    assert best is not None
    return best


def canonical_form(
    spec: DomainSpec,
    verdict: ClassificationVerdict | None = None,
    assume_bounded: bool = False,
) -> CanonicalForm:
    """Dilation/permutation-normalized form: first block coefficient 1, all
    pure coefficients 1, blocks sorted by (size, exponent) with exact
    tie-breaking.  Equivalent inputs (permuted or positively dilated) map to
    identical canonical data; applying canonical_form to its own rational
    output yields the identity witness.
    """
    if verdict is None:
        verdict = classify(spec, assume_bounded=assume_bounded)
    if verdict.kind == "ball":
        return _canonical_ball(spec, verdict)
    if verdict.kind != "model":
        raise DomainError(f"canonical form requires Ball or Model, got {verdict.kind}")
    form = verdict.model
    assert form is not None
    cross = _canonical_cross(form)
    best = _sorted_rest_key(form, cross)
    order = list(best[3])
    canon_cross = tuple(
        sorted(
            ((tuple(exps[j] for j in order), cross[exps]) for exps in cross),
            key=lambda t: (t[0], _radical_key(t[1])),
        )
    )
    exponents = tuple(form.exponents[j] for j in order)
    block_sizes = (len(form.first_block),) + tuple(
        len(form.blocks.blocks[j + 1]) for j in order
    )
    perm = list(form.first_block)
    for j in order:
        perm.extend(form.blocks.blocks[j + 1])
    scalars: list[Radical] = [Radical(1)] * spec.n
    inv_scale = Fraction(1) / form.first_block_scale
    for i in form.first_block:
        scalars[i] = Radical.from_rational(inv_scale)
    for pos, j in enumerate(order):
        rj = form.pure_coefficients[j]
        s = Radical.nth_root(Fraction(1) / rj, form.exponents[j])
        for i in form.blocks.blocks[j + 1]:
            scalars[i] = s

    rational = all(v.is_rational() for _, v in canon_cross)
    out_spec = None
    out_map = None
    if rational:
        out_spec = _materialize_model(spec.n, block_sizes, exponents, canon_cross, spec.name)
        if all(s.is_rational() for s in scalars):
            sigma = [0] * spec.n
            for q, i in enumerate(perm):
                sigma[i] = q
            out_map = MonomialMap(
                [s.as_fraction() for s in scalars],
                [[1 if j == sigma[i] else 0 for j in range(spec.n)] for i in range(spec.n)],
            )
            Q_norm, _ = _renormalize_constant(spec.Q)
            if Q_norm.substitute(out_map) != out_spec.Q:
                raise AssertionError("canonical witness failed to reproduce the form")
    return CanonicalForm(
        kind="model",
        block_sizes=block_sizes,
        exponents=exponents,
        cross_terms=canon_cross,
        witness_permutation=tuple(perm),
        witness_scalars=tuple(scalars),
        constant_shift=verdict.constant_shift,
        spec=out_spec,
        witness_map=out_map,
    )


def _canonical_ball(spec: DomainSpec, verdict: ClassificationVerdict) -> CanonicalForm:
    Q_norm, _ = _renormalize_constant(spec.Q)
    n = spec.n
    coeffs = {}
    for exps, c in Q_norm.terms.items():
        i = next(j for j, e in enumerate(exps) if e)
        coeffs[i] = c
    scalars = tuple(Radical.from_rational(Fraction(1) / coeffs[i]) for i in range(n))
    canonical_Q = ModuliPolynomial(
        n, {tuple(1 if j == i else 0 for j in range(n)): Fraction(1) for i in range(n)}
    )
    out_spec = DomainSpec(
        n=n, Q=canonical_Q, blocks=BlockStructure([list(range(n))]), name=spec.name
    )
    out_map = MonomialMap.dilation([s.as_fraction() for s in scalars])
    if Q_norm.substitute(out_map) != canonical_Q:
        raise AssertionError("ball witness failed to reproduce the form")
    return CanonicalForm(
        kind="ball",
        block_sizes=(n,),
        exponents=(),
        cross_terms=(),
        witness_permutation=tuple(range(n)),
        witness_scalars=scalars,
        constant_shift=verdict.constant_shift,
        spec=out_spec,
        witness_map=out_map,
    )


def _materialize_model(
    n: int,
    block_sizes: tuple[int, ...],
    exponents: tuple[int, ...],
    cross: tuple[tuple[tuple[int, ...], Radical], ...],
    name: str,
) -> DomainSpec:
    """Build the canonical DomainSpec when all coefficients are rational."""
    p = len(block_sizes)
    Qv_terms: dict[tuple[int, ...], Fraction] = {}
    lin = tuple(1 if j == 0 else 0 for j in range(p))
    Qv_terms[lin] = Fraction(1)
    for j, m in enumerate(exponents, start=1):
        key = tuple(m if b == j else 0 for b in range(p))
        Qv_terms[key] = Fraction(1)
    for exps, value in cross:
        key = (0,) + exps
        Qv_terms[key] = value.as_fraction()
    Qv = ModuliPolynomial(p, Qv_terms)
    groups = []
    start = 0
    for size in block_sizes:
        groups.append(list(range(start, start + size)))
        start += size
    blocks = BlockStructure(groups)
    Q = compose_polynomials(Qv, _block_sum_variables(blocks, n))
    return DomainSpec(n=n, Q=Q, blocks=blocks, name=name)
