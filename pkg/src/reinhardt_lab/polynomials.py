"""Exact Laurent polynomials in squared moduli, weights, and monomial maps.

A Reinhardt domain is cut out by an inequality Q(|z_1|^2, ..., |z_n|^2) < 1.
This module provides the algebra that everything else is built on: polynomials
in the moduli variables u_j = |z_j|^2 with exact rational coefficients and
integer (possibly negative) exponents.

Representation: a polynomial is a mapping from exponent tuples to nonzero
``Fraction`` coefficients.  The zero polynomial is the empty mapping.  All
arithmetic is exact; nothing here ever rounds.  Printing uses graded
lexicographic order on exponent vectors so output is deterministic.

Three kinds of objects live here:

* :class:`ModuliPolynomial` -- the polynomial itself, with arithmetic,
  evaluation (exact over rationals, floating otherwise), gradients,
  restriction to coordinate subspaces, and weighted-homogeneity tests.
* :class:`WeightVector` -- positive rational weights w_j assigned to the
  moduli variables; a polynomial is weight-homogeneous when every monomial
  satisfies sum_j e_j * w_j == 1 exactly.
* :class:`MonomialMap` -- an algebraic torus map u_i -> s_i * prod_j u_j^{a_ij}
  with positive rational scalars and a unimodular integer exponent matrix.
  These are the maps that act on Reinhardt domains coordinate-monomially;
  unimodularity is checked exactly on construction.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "ModuliPolynomial",
    "WeightVector",
    "MonomialMap",
    "SpecSyntaxError",
    "parse_polynomial",
]


class SpecSyntaxError(ValueError):
    """Parse failure carrying a 1-based line and column."""

    def __init__(self, message: str, line: int = 1, col: int = 1):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError(f"coefficients must be exact rationals, got float {value!r}")
    return Fraction(value)


class ModuliPolynomial:
    """Laurent polynomial over Q in the moduli variables u_1..u_n."""

    __slots__ = ("num_vars", "_terms", "_compiled")

    def __init__(self, num_vars: int, terms: Mapping[tuple, object] | Iterable = ()):
        if num_vars < 1:
            raise ValueError("num_vars must be >= 1")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars:
                raise ValueError(
                    f"exponent tuple {exps} has length {len(exps)}, expected {num_vars}"
                )
            c = _as_fraction(coeff)
            if c:
                c = clean.get(exps, Fraction(0)) + c
                if c:
                    clean[exps] = c
                else:
                    clean.pop(exps, None)
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_compiled", None)

    def __setattr__(self, name, value):  # immutability discipline
        raise AttributeError("ModuliPolynomial is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int) -> "ModuliPolynomial":
        return cls(num_vars)

    @classmethod
    def constant(cls, num_vars: int, value) -> "ModuliPolynomial":
        return cls(num_vars, {(0,) * num_vars: Fraction(value)})

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "ModuliPolynomial":
        """The monomial u_{index}, with 0-based ``index``."""
        if not 0 <= index < num_vars:
            raise ValueError(f"variable index {index} out of range for n={num_vars}")
        exps = tuple(1 if j == index else 0 for j in range(num_vars))
        return cls(num_vars, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, num_vars: int, exponents: Sequence[int], coeff=1) -> "ModuliPolynomial":
        return cls(num_vars, {tuple(exponents): Fraction(coeff)})

    # -- views ------------------------------------------------------------

    @property
    def terms(self) -> Mapping[tuple[int, ...], Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        zero = (0,) * self.num_vars
        return all(e == zero for e in self._terms)

    def is_ordinary(self) -> bool:
        """True when every exponent is nonnegative (no Laurent part)."""
        return all(min(e) >= 0 for e in self._terms) if self._terms else True

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.num_vars, Fraction(0))

    def total_degree(self) -> int:
        if not self._terms:
            return 0
        return max(sum(e) for e in self._terms)

    def support_variables(self) -> frozenset[int]:
        """Indices of variables that actually occur with nonzero exponent."""
        used = set()
        for exps in self._terms:
            for j, e in enumerate(exps):
                if e != 0:
                    used.add(j)
        return frozenset(used)

    # -- ring operations ---------------------------------------------------

    def _check_same(self, other: "ModuliPolynomial"):
        if self.num_vars != other.num_vars:
            raise ValueError(
                f"variable count mismatch: {self.num_vars} vs {other.num_vars}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ModuliPolynomial.constant(self.num_vars, other)
        if not isinstance(other, ModuliPolynomial):
            return NotImplemented
        self._check_same(other)
        out = dict(self._terms)
        for exps, c in other._terms.items():
            s = out.get(exps, Fraction(0)) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return ModuliPolynomial(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return ModuliPolynomial(
            self.num_vars, {e: -c for e, c in self._terms.items()}
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ModuliPolynomial.constant(self.num_vars, other)
        if not isinstance(other, ModuliPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return ModuliPolynomial(
                self.num_vars, {e: c * v for e, v in self._terms.items()}
            )
        if not isinstance(other, ModuliPolynomial):
            return NotImplemented
        self._check_same(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exps, Fraction(0)) + c1 * c2
                if s:
                    out[exps] = s
                else:
                    out.pop(exps, None)
        return ModuliPolynomial(self.num_vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = ModuliPolynomial.constant(self.num_vars, 1)
        base = self
        while k:  # square-and-multiply keeps intermediate blowup down
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, ModuliPolynomial)
            and self.num_vars == other.num_vars
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.num_vars, frozenset(self._terms.items())))

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, values: Sequence):
        """Evaluate at a point.

        Integer/Fraction inputs give an exact Fraction; anything else drops to
        floating point.  Raises ZeroDivisionError when a zero coordinate meets
        a negative exponent.
        """
        if len(values) != self.num_vars:
            raise ValueError(
                f"point has {len(values)} coordinates, expected {self.num_vars}"
            )
        exact = all(isinstance(v, (int, Fraction)) for v in values)
        if exact:
            vals = [Fraction(v) for v in values]
            total = Fraction(0)
        else:
            vals = [float(v) for v in values]
            total = 0.0
        for exps, coeff in self._terms.items():
            term = coeff if exact else float(coeff)
            for v, e in zip(vals, exps):
                if e == 0:
                    continue
                if v == 0 and e < 0:
                    raise ZeroDivisionError(
                        "zero coordinate raised to a negative exponent"
                    )
                term = term * v**e
            total = total + term
        return total

    def _compile(self):
        if self._compiled is None:
            exps = np.array(sorted(self._terms), dtype=np.int64)
            coeffs = np.array(
                [float(self._terms[tuple(e)]) for e in exps], dtype=np.float64
            )
            object.__setattr__(self, "_compiled", (exps, coeffs))
        return self._compiled

    def evaluate_batch(self, points: np.ndarray) -> np.ndarray:
        """Vectorized float evaluation at an (N, n) array of moduli points.

        Intended for ordinary polynomials on nonnegative moduli; negative
        exponents at zero produce inf/nan exactly as numpy does.
        """
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[None, :]
        if pts.shape[1] != self.num_vars:
            raise ValueError("point array has wrong number of columns")
        if not self._terms:
            return np.zeros(pts.shape[0])
        exps, coeffs = self._compile()
        with np.errstate(divide="ignore", invalid="ignore"):
            powers = pts[:, None, :] ** exps[None, :, :]
        return np.prod(powers, axis=2) @ coeffs

    # -- calculus -------------------------------------------------------------

    def gradient(self) -> tuple["ModuliPolynomial", ...]:
        """Partial derivatives (d/du_1, ..., d/du_n), exact."""
        parts = []
        for j in range(self.num_vars):
            out: dict[tuple[int, ...], Fraction] = {}
            for exps, coeff in self._terms.items():
                e = exps[j]
                if e == 0:
                    continue
                dexps = exps[:j] + (e - 1,) + exps[j + 1 :]
                s = out.get(dexps, Fraction(0)) + coeff * e
                if s:
                    out[dexps] = s
                else:
                    out.pop(dexps, None)
            parts.append(ModuliPolynomial(self.num_vars, out))
        return tuple(parts)

    # -- substitution and restriction ------------------------------------------

    def substitute(self, mm: "MonomialMap") -> "ModuliPolynomial":
        """Exact composition self o mm, i.e. substitute u_i -> s_i * u^{A_i}."""
        if mm.n != self.num_vars:
            raise ValueError("monomial map dimension mismatch")
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in self._terms.items():
            new_exps = tuple(
                sum(exps[i] * mm.matrix[i][j] for i in range(mm.n))
                for j in range(mm.n)
            )
            c = coeff
            for e, s in zip(exps, mm.scalars):
                if e:
                    c *= s**e
            total = out.get(new_exps, Fraction(0)) + c
            if total:
                out[new_exps] = total
            else:
                out.pop(new_exps, None)
        return ModuliPolynomial(self.num_vars, out)

    def restrict(self, zero_indices: Iterable[int]) -> "ModuliPolynomial":
        """Set u_i = 0 for each 0-based index; the result keeps all n variables.

        Terms with a positive exponent on a zeroed variable vanish; a negative
        exponent there is an error (the restriction would not be a polynomial).
        """
        zeros = frozenset(zero_indices)
        for i in zeros:
            if not 0 <= i < self.num_vars:
                raise ValueError(f"restriction index {i} out of range")
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in self._terms.items():
            drop = False
            for i in zeros:
                e = exps[i]
                if e < 0:
                    raise ValueError(
                        f"cannot restrict: u{i + 1} has negative exponent {e}"
                    )
                if e > 0:
                    drop = True
                    break
            if not drop:
                out[exps] = coeff
        return ModuliPolynomial(self.num_vars, out)

    def compress(self, keep_indices: Sequence[int]) -> "ModuliPolynomial":
        """Project onto a subset of variables that carries all the support.

        Requires that no term touches a dropped variable (restrict first).
        """
        keep = list(keep_indices)
        dropped = set(range(self.num_vars)) - set(keep)
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in self._terms.items():
            if any(exps[i] != 0 for i in dropped):
                raise ValueError("support touches a dropped variable")
            out[tuple(exps[i] for i in keep)] = coeff
        return ModuliPolynomial(len(keep), out)

    # -- weighted homogeneity ----------------------------------------------------

    def is_weighted_homogeneous(self, weights: "WeightVector") -> bool:
        """True when every monomial has weighted degree exactly 1.

        Only ordinary polynomials are accepted; weights pair with nonnegative
        exponents.
        """
        self._require_ordinary("is_weighted_homogeneous")
        w = weights.as_tuple(self.num_vars)
        return all(
            sum(Fraction(e) * wj for e, wj in zip(exps, w)) == 1
            for exps in self._terms
        )

    def weighted_decompose(
        self, weights: "WeightVector"
    ) -> tuple["ModuliPolynomial", "ModuliPolynomial"]:
        """Split into (weight-one part, remainder); the two add back to self."""
        self._require_ordinary("weighted_decompose")
        w = weights.as_tuple(self.num_vars)
        hom: dict[tuple[int, ...], Fraction] = {}
        rest: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in self._terms.items():
            target = hom if sum(Fraction(e) * wj for e, wj in zip(exps, w)) == 1 else rest
            target[exps] = coeff
        return (
            ModuliPolynomial(self.num_vars, hom),
            ModuliPolynomial(self.num_vars, rest),
        )

    def _require_ordinary(self, op: str):
        if not self.is_ordinary():
            raise ValueError(f"{op} requires an ordinary (non-Laurent) polynomial")

    # -- printing -----------------------------------------------------------------

    @staticmethod
    def _grlex_key(exps: tuple[int, ...]):
        return (sum(exps), exps)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps in sorted(self._terms, key=self._grlex_key, reverse=True):
            coeff = self._terms[exps]
            factors = [
                f"u{j + 1}" if e == 1 else f"u{j + 1}^{e}"
                for j, e in enumerate(exps)
                if e != 0
            ]
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"ModuliPolynomial({self.num_vars}, {self})"


@dataclass(frozen=True)
class WeightVector:
    """Positive rational weights on the moduli variables."""

    weights: tuple[Fraction, ...]

    def __init__(self, weights: Sequence):
        ws = tuple(Fraction(w) for w in weights)
        if not ws or any(w <= 0 for w in ws):
            raise ValueError("weights must be a nonempty sequence of positive rationals")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def from_exponents(cls, exponents: Sequence[int]) -> "WeightVector":
        """Weights 1/m_j from positive integer exponents m_j."""
        return cls([Fraction(1, int(m)) for m in exponents])

    def as_tuple(self, n: int) -> tuple[Fraction, ...]:
        if len(self.weights) != n:
            raise ValueError(f"weight vector has length {len(self.weights)}, expected {n}")
        return self.weights

    def denominator_lcm(self) -> int:
        return math.lcm(*(w.denominator for w in self.weights))

    def __len__(self):
        return len(self.weights)


def _int_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant via fraction-free Gaussian elimination."""
    n = len(matrix)
    m = [list(map(int, row)) for row in matrix]
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


@dataclass(frozen=True)
class MonomialMap:
    """Algebraic map u_i -> scalars[i] * prod_j u_j^{matrix[i][j]}.

    ``scalars`` are the squared magnitudes of the coordinate multipliers, so
    they are positive rationals.  The exponent matrix must be unimodular
    (determinant +-1, checked exactly), which makes the map invertible on the
    algebraic torus.
    """

    scalars: tuple[Fraction, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __init__(self, scalars: Sequence, matrix: Sequence[Sequence[int]]):
        sc = tuple(Fraction(s) for s in scalars)
        mat = tuple(tuple(int(a) for a in row) for row in matrix)
        n = len(sc)
        if len(mat) != n or any(len(row) != n for row in mat):
            raise ValueError("exponent matrix must be n x n")
        if any(s <= 0 for s in sc):
            raise ValueError("scalars must be positive rationals")
        det = _int_det(mat)
        if det not in (1, -1):
            raise ValueError(f"exponent matrix must be unimodular, det = {det}")
        object.__setattr__(self, "scalars", sc)
        object.__setattr__(self, "matrix", mat)

    @property
    def n(self) -> int:
        return len(self.scalars)

    @property
    def determinant(self) -> int:
        return _int_det(self.matrix)

    # -- constructors ------------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "MonomialMap":
        return cls([1] * n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def permutation(cls, sigma: Sequence[int], scalars: Sequence | None = None) -> "MonomialMap":
        """z_i -> lambda_i z_{sigma(i)}; ``sigma`` is a 0-based permutation."""
        n = len(sigma)
        if sorted(sigma) != list(range(n)):
            raise ValueError(f"{sigma} is not a permutation of 0..{n - 1}")
        mat = [[1 if j == sigma[i] else 0 for j in range(n)] for i in range(n)]
        return cls(scalars if scalars is not None else [1] * n, mat)

    @classmethod
    def dilation(cls, scalars: Sequence) -> "MonomialMap":
        n = len(scalars)
        return cls(scalars, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    # -- group structure ------------------------------------------------------------

    def compose(self, other: "MonomialMap") -> "MonomialMap":
        """self o other: apply ``other`` first, then ``self``."""
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        n = self.n
        mat = [
            [
                sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n))
                for j in range(n)
            ]
            for i in range(n)
        ]
        scalars = []
        for i in range(n):
            s = self.scalars[i]
            for j in range(n):
                e = self.matrix[i][j]
                if e:
                    s *= other.scalars[j] ** e
            scalars.append(s)
        return MonomialMap(scalars, mat)

    def inverse(self) -> "MonomialMap":
        n = self.n
        # Fraction Gaussian elimination; entries of the inverse are integers
        # because the determinant is +-1.
        aug = [
            [Fraction(self.matrix[i][j]) for j in range(n)]
            + [Fraction(1 if j == i else 0) for j in range(n)]
            for i in range(n)
        ]
        for col in range(n):
            pivot = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        inv_mat = [[int(aug[i][n + j]) for j in range(n)] for i in range(n)]
        scalars = []
        for i in range(n):
            s = Fraction(1)
            for j in range(n):
                e = inv_mat[i][j]
                if e:
                    s *= self.scalars[j] ** -e
            scalars.append(s)
        return MonomialMap(scalars, inv_mat)

    # -- actions ------------------------------------------------------------

    def apply_moduli(self, u: Sequence):
        """Image of a moduli point; exact on rationals, float otherwise."""
        if len(u) != self.n:
            raise ValueError("moduli point has wrong length")
        exact = all(isinstance(v, (int, Fraction)) for v in u)
        vals = [Fraction(v) for v in u] if exact else [float(v) for v in u]
        out = []
        for i in range(self.n):
            term = self.scalars[i] if exact else float(self.scalars[i])
            for j, e in enumerate(self.matrix[i]):
                if e == 0:
                    continue
                if vals[j] == 0 and e < 0:
                    raise ZeroDivisionError("zero modulus raised to negative exponent")
                term = term * vals[j] ** e
            out.append(term)
        return tuple(out)

    def apply_point(self, z: Sequence[complex]) -> tuple[complex, ...]:
        """Image of a point of C^n, taking the positive real multiplier.

        The map only determines coordinates up to torus rotation; sqrt(scalar)
        is the canonical representative.
        """
        if len(z) != self.n:
            raise ValueError("point has wrong length")
        zs = [complex(v) for v in z]
        out = []
        for i in range(self.n):
            w = complex(math.sqrt(float(self.scalars[i])))
            for j, e in enumerate(self.matrix[i]):
                if e == 0:
                    continue
                if zs[j] == 0 and e < 0:
                    raise ZeroDivisionError("zero coordinate raised to negative exponent")
                w = w * zs[j] ** e
            out.append(w)
        return tuple(out)

    def is_permutation_with_scaling(self) -> bool:
        return all(
            sorted(row) == [0] * (self.n - 1) + [1] for row in self.matrix
        ) and _int_det(self.matrix) in (1, -1)

    def __str__(self) -> str:
        rows = []
        for i in range(self.n):
            factors = [
                f"u{j + 1}" if e == 1 else f"u{j + 1}^{e}"
                for j, e in enumerate(self.matrix[i])
                if e != 0
            ]
            body = "*".join(factors) if factors else "1"
            s = self.scalars[i]
            rows.append(f"u{i + 1} -> {body}" if s == 1 else f"u{i + 1} -> {s}*{body}")
        return "; ".join(rows)


# ---------------------------------------------------------------------------
# Polynomial text grammar
#
#   poly   := [sign] term ((`+` | `-`) term)*
#   term   := factor (`*` factor)*
#   factor := coeff | var
#   coeff  := INT [`/` INT]
#   var    := `u` INT [`^` [`-`] INT]
#
# e.g.  "u1 + u2^2 + u3^2 - u2*u3"  or  "1/2*u1^3 - 7/3"
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<var>u\d+)|(?P<int>\d+)|(?P<op>[+\-*/^]))"
)


def _tokenize(text: str, line: int):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            col = pos + (len(text[pos:]) - len(stripped)) + 1
            raise SpecSyntaxError(
                f"unexpected character {stripped[0]!r} in polynomial", line, col
            )
        kind = m.lastgroup
        value = m.group(m.lastgroup)
        col = m.start(m.lastgroup) + 1
        tokens.append((kind, value, col))
        pos = m.end()
    return tokens


class _PolyParser:
    def __init__(self, tokens, num_vars: int | None, line: int):
        self.tokens = tokens
        self.i = 0
        self.num_vars = num_vars
        self.line = line
        self.max_index = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, None)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, message: str, col=None):
        if col is None:
            col = self.peek()[2]
            if col is None:
                col = self.tokens[-1][2] if self.tokens else 1
        raise SpecSyntaxError(message, self.line, col)

    def parse(self):
        if not self.tokens:
            self.error("empty polynomial", col=1)
        terms = []
        sign = 1
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            if value == "-":
                sign = -1
            self.next()
        terms.append(self.parse_term(sign))
        while self.i < len(self.tokens):
            kind, value, col = self.next()
            if kind != "op" or value not in "+-":
                self.error(f"expected '+' or '-', got {value!r}", col=col)
            terms.append(self.parse_term(-1 if value == "-" else 1))
        return terms

    def parse_term(self, sign: int):
        coeff = Fraction(sign)
        exps: dict[int, int] = {}
        while True:
            kind, value, col = self.peek()
            if kind == "int":
                coeff *= self.parse_coeff()
            elif kind == "var":
                idx, power = self.parse_var()
                exps[idx] = exps.get(idx, 0) + power
            else:
                self.error("expected a coefficient or a variable", col=col)
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.next()
                continue
            return coeff, exps

    def parse_coeff(self) -> Fraction:
        _, value, _ = self.next()
        num = int(value)
        kind, op, _ = self.peek()
        if kind == "op" and op == "/":
            self.next()
            kind, den, col = self.next()
            if kind != "int":
                self.error("expected an integer denominator", col=col)
            if int(den) == 0:
                self.error("zero denominator", col=col)
            return Fraction(num, int(den))
        return Fraction(num)

    def parse_var(self) -> tuple[int, int]:
        _, value, col = self.next()
        idx = int(value[1:])
        if idx < 1:
            self.error("variable indices start at u1", col=col)
        if self.num_vars is not None and idx > self.num_vars:
            self.error(f"variable {value} exceeds declared n={self.num_vars}", col=col)
        self.max_index = max(self.max_index, idx)
        power = 1
        kind, op, _ = self.peek()
        if kind == "op" and op == "^":
            self.next()
            sign = 1
            kind, nxt, col2 = self.peek()
            if kind == "op" and nxt == "-":
                sign = -1
                self.next()
            kind, nxt, col2 = self.next()
            if kind != "int":
                self.error("expected an integer exponent after '^'", col=col2)
            power = sign * int(nxt)
        return idx - 1, power


def parse_polynomial(
    text: str, num_vars: int | None = None, line: int = 1
) -> ModuliPolynomial:
    """Parse the polynomial grammar above into a ModuliPolynomial.

    When ``num_vars`` is None the variable count is inferred from the largest
    index used.  ``line`` shifts error positions for callers parsing larger
    documents.
    """
    parser = _PolyParser(_tokenize(text, line), num_vars, line)
    raw_terms = parser.parse()
    n = num_vars if num_vars is not None else max(parser.max_index, 1)
    terms: dict[tuple[int, ...], Fraction] = {}
    for coeff, exps in raw_terms:
        key = tuple(exps.get(j, 0) for j in range(n))
        total = terms.get(key, Fraction(0)) + coeff
        if total:
            terms[key] = total
        else:
            terms.pop(key, None)
    return ModuliPolynomial(n, terms)
