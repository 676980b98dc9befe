"""Exact signed radicals sign * base**(1/root) with rational base.

Canonical-form dilations divide coefficients by m-th roots of rationals, which
are usually irrational.  Storing them symbolically as (sign, base, root) keeps
canonical comparison exact: products and integer powers stay in this class and
two radicals are equal iff their canonical triples coincide.  There is no
addition here on purpose; nothing in the pipeline ever needs to add radicals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["Radical", "integer_nth_root"]


def integer_nth_root(value: int, k: int) -> tuple[int, bool]:
    """Floor of value**(1/k) for value >= 0, plus an exactness flag."""
    if value < 0 or k < 1:
        raise ValueError("integer_nth_root needs value >= 0 and k >= 1")
    if value in (0, 1) or k == 1:
        return value, True
    # Newton iteration on integers
    x = 1 << (value.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + value // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x, x**k == value


def _fraction_nth_root(q: Fraction, k: int) -> tuple[Fraction, bool]:
    rn, okn = integer_nth_root(q.numerator, k)
    rd, okd = integer_nth_root(q.denominator, k)
    if okn and okd:
        return Fraction(rn, rd), True
    return q, False


def _prime_factors(k: int):
    out = []
    d = 2
    while d * d <= k:
        if k % d == 0:
            out.append(d)
            while k % d == 0:
                k //= d
        d += 1
    if k > 1:
        out.append(k)
    return out


@dataclass(frozen=True)
class Radical:
    """sign * base**(1/root), canonicalized.

    Invariants after construction: sign in {-1, 0, 1}; base is a positive
    Fraction unless sign == 0 (then base == 0, root == 1); base is not an
    exact p-th power for any prime p dividing root.
    """

    sign: int
    base: Fraction
    root: int

    def __init__(self, base, root: int = 1, sign: int | None = None):
        b = Fraction(base)
        if sign is None:
            sign = 1 if b > 0 else (-1 if b < 0 else 0)
            b = abs(b)
        if sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0, or 1")
        if root < 1:
            raise ValueError("root index must be >= 1")
        if sign == 0 or b == 0:
            sign, b, root = 0, Fraction(0), 1
        else:
            if b < 0:
                raise ValueError("base must be positive when sign is nonzero")
            changed = True
            while changed and root > 1:
                changed = False
                for p in _prime_factors(root):
                    reduced, exact = _fraction_nth_root(b, p)
                    if exact:
                        b = reduced
                        root //= p
                        changed = True
                        break
            if b == 1:
                root = 1
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "base", b)
        object.__setattr__(self, "root", root)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_rational(cls, q) -> "Radical":
        return cls(Fraction(q))

    @classmethod
    def nth_root(cls, q, k: int) -> "Radical":
        """Exact k-th root of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("nth_root of a negative rational is not real for even k")
        return cls(q, root=k)

    # -- queries ---------------------------------------------------------------

    def is_rational(self) -> bool:
        return self.root == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.sign * self.base

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * float(self.base) ** (1.0 / self.root)

    def __bool__(self) -> bool:
        return self.sign != 0

    # -- arithmetic (multiplicative only) -----------------------------------------

    def __mul__(self, other) -> "Radical":
        if isinstance(other, (int, Fraction)):
            other = Radical.from_rational(other)
        if not isinstance(other, Radical):
            return NotImplemented
        if self.sign == 0 or other.sign == 0:
            return Radical(0)
        lcm = math.lcm(self.root, other.root)
        base = self.base ** (lcm // self.root) * other.base ** (lcm // other.root)
        return Radical(base, root=lcm, sign=self.sign * other.sign)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Radical":
        if not isinstance(k, int):
            raise TypeError("radical powers must be integers")
        if k == 0:
            return Radical(1)
        if self.sign == 0:
            if k < 0:
                raise ZeroDivisionError("zero radical to a negative power")
            return Radical(0)
        sign = self.sign if k % 2 else 1
        return Radical(self.base**k, root=self.root, sign=sign)

    def inverse(self) -> "Radical":
        return self**-1

    # -- exact total order -----------------------------------------------------

    def _compare(self, other: "Radical") -> int:
        if self.sign != other.sign:
            return -1 if self.sign < other.sign else 1
        if self.sign == 0:
            return 0
        lcm = math.lcm(self.root, other.root)
        a = self.base ** (lcm // self.root)
        b = other.base ** (lcm // other.root)
        if a == b:
            return 0
        smaller = a < b if self.sign > 0 else b < a
        return -1 if smaller else 1

    def _coerced(self, other):
        if isinstance(other, (int, Fraction)):
            return Radical.from_rational(other)
        return other if isinstance(other, Radical) else None

    def __lt__(self, other) -> bool:
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self._compare(o) < 0

    def __le__(self, other) -> bool:
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self._compare(o) <= 0

    def __gt__(self, other) -> bool:
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self._compare(o) > 0

    def __ge__(self, other) -> bool:
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self._compare(o) >= 0

    def __str__(self) -> str:
        if self.sign == 0:
            return "0"
        prefix = "-" if self.sign < 0 else ""
        if self.root == 1:
            return f"{prefix}{self.base}"
        return f"{prefix}({self.base})^(1/{self.root})"

    def __repr__(self) -> str:
        return f"Radical({self})"
