"""Exact scalars and piecewise-polynomial radial profiles.

Values of the polar integrals handled by this package are rational multiples
of a power of pi.  :class:`PiMultiple` keeps them in that form so that
identities between Bergman-space inner products can be checked with zero
error.  :class:`Profile` is a piecewise polynomial in ``r`` with rational
breakpoints; it is used for the cutoff functions applied to ``|z1|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import numpy as np

Number = Union[int, Fraction, float, complex]


class DivergentIntegralError(ArithmeticError):
    """A polar integral does not converge; ``exponent`` is the offending power."""

    def __init__(self, message: str, exponent=None):
        super().__init__(message)
        self.exponent = exponent


class InexactValueError(ArithmeticError):
    """Raised when an exact evaluation would leave the rationals."""


def is_exact(x) -> bool:
    return isinstance(x, Rational)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    raise TypeError(f"expected a rational value, got {type(x).__name__}")


def _int_root(n: int, k: int):
    """Exact integer k-th root of n >= 0, or None."""
    if n < 0:
        return None
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    return None


def rational_power(base: Fraction, exponent: Fraction) -> Fraction:
    """``base**exponent`` for rational inputs when the result is rational."""
    base = as_fraction(base)
    exponent = as_fraction(exponent)
    if base == 0:
        if exponent > 0:
            return Fraction(0)
        raise DivergentIntegralError("0 raised to a non-positive power", exponent)
    if base == 1 or exponent == 0:
        return Fraction(1)
    if exponent.denominator == 1:
        return base ** int(exponent)
    if base < 0:
        raise InexactValueError("fractional power of a negative number")
    k = exponent.denominator
    num = _int_root(base.numerator, k)
    den = _int_root(base.denominator, k)
    if num is None or den is None:
        raise InexactValueError(f"{base}**{exponent} is irrational")
    return Fraction(num, den) ** exponent.numerator


@dataclass(frozen=True)
class PiMultiple:
    """The number ``coeff * pi**power``.

    ``coeff`` is a :class:`~fractions.Fraction` on the exact path and a
    Python ``complex`` once any floating-point data has entered.
    """

    coeff: Number
    power: int = 0

    def __post_init__(self):
        c = self.coeff
        if isinstance(c, Rational) and not isinstance(c, Fraction):
            object.__setattr__(self, "coeff", Fraction(c))

    @property
    def exact(self) -> bool:
        return isinstance(self.coeff, Fraction)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def __complex__(self) -> complex:
        return complex(self.coeff) * math.pi**self.power

    def __float__(self) -> float:
        c = complex(self)
        if c.imag != 0:
            raise TypeError("PiMultiple has a non-zero imaginary part")
        return c.real

    def _coerce(self, other) -> "PiMultiple":
        if isinstance(other, PiMultiple):
            return other
        if other == 0:
            return PiMultiple(Fraction(0), self.power)
        raise TypeError("can only combine PiMultiple with PiMultiple or 0")

    def __add__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.power != self.power:
            raise ValueError("cannot add different powers of pi exactly")
        return PiMultiple(self.coeff + other.coeff, self.power)

    __radd__ = __add__

    def __neg__(self):
        return PiMultiple(-self.coeff, self.power)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, PiMultiple):
            return PiMultiple(self.coeff * other.coeff, self.power + other.power)
        return PiMultiple(self.coeff * other, self.power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiMultiple):
            if other.is_zero():
                raise ZeroDivisionError("division by zero PiMultiple")
            return PiMultiple(self.coeff / other.coeff, self.power - other.power)
        if is_exact(other) and self.exact:
            return PiMultiple(self.coeff / Fraction(other), self.power)
        return PiMultiple(complex(self.coeff) / other, self.power)

    def conjugate(self) -> "PiMultiple":
        if self.exact:
            return self
        return PiMultiple(complex(self.coeff).conjugate(), self.power)

    def __eq__(self, other):
        if isinstance(other, PiMultiple):
            if self.is_zero() and other.is_zero():
                return True
            return self.power == other.power and self.coeff == other.coeff
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.coeff, self.power)) if not self.is_zero() else 0

    def __str__(self):
        if self.is_zero():
            return "0"
        if self.power == 0:
            return str(self.coeff)
        pi = "pi" if self.power == 1 else f"pi^{self.power}"
        return f"({self.coeff})*{pi}"


def _poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tuple(out)


def _poly_strip(p: Iterable[Fraction]) -> tuple:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


@dataclass(frozen=True)
class Profile:
    """Piecewise polynomial on [0, 1], zero outside.

    ``pieces`` is a sorted tuple of ``(lo, hi, coeffs)`` with ascending
    polynomial coefficients in ``r``.  Breakpoints and coefficients are
    rationals so integrals against ``r**s`` stay exact.
    """

    pieces: tuple
    name: str = field(default="profile", compare=False)

    def __post_init__(self):
        clean = []
        prev = Fraction(0)
        for lo, hi, coeffs in self.pieces:
            lo, hi = as_fraction(lo), as_fraction(hi)
            if not (0 <= lo < hi <= 1) or lo < prev:
                raise ValueError(f"bad profile piece [{lo}, {hi}]")
            prev = hi
            clean.append((lo, hi, _poly_strip(as_fraction(c) for c in coeffs)))
        object.__setattr__(self, "pieces", tuple(clean))

    @classmethod
    def one(cls) -> "Profile":
        return cls(((0, 1, (1,)),), name="one")

    @classmethod
    def step(cls, lo=Fraction(1, 2), hi=1) -> "Profile":
        """Indicator of ``[lo, hi]``."""
        lo, hi = as_fraction(lo), as_fraction(hi)
        return cls(((lo, hi, (1,)),), name=f"step[{lo},{hi}]")

    @classmethod
    def smoothstep(cls, lo=Fraction(1, 4), hi=Fraction(1, 2)) -> "Profile":
        """Cubic ``3x^2 - 2x^3`` ramp from 0 at ``lo`` to 1 at ``hi``, then 1."""
        lo, hi = as_fraction(lo), as_fraction(hi)
        w = hi - lo
        # x = (r - lo)/w = c0 + c1 r
        x = (-lo / w, 1 / w)
        x2 = _poly_mul(x, x)
        x3 = _poly_mul(x2, x)
        ramp = [Fraction(0)] * 4
        for i, c in enumerate(x2):
            ramp[i] += 3 * c
        for i, c in enumerate(x3):
            ramp[i] -= 2 * c
        pieces = [(lo, hi, tuple(ramp))]
        if hi < 1:
            pieces.append((hi, Fraction(1), (Fraction(1),)))
        return cls(tuple(pieces), name=f"smoothstep[{lo},{hi}]")

    def breakpoints(self) -> list:
        pts = set()
        for lo, hi, _ in self.pieces:
            pts.update((lo, hi))
        return sorted(pts)

    def vanishes_near_zero(self) -> bool:
        lo, _, coeffs = self.pieces[0]
        return lo > 0 or all(c == 0 for c in coeffs)

    def lowest_power_at_zero(self):
        """Order of vanishing at r = 0, or None when identically zero there."""
        lo, _, coeffs = self.pieces[0]
        if lo > 0:
            return None
        for i, c in enumerate(coeffs):
            if c != 0:
                return i
        return None

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        last = len(self.pieces) - 1
        for idx, (lo, hi, coeffs) in enumerate(self.pieces):
            upper = (r <= float(hi)) if idx == last else (r < float(hi))
            mask = (r >= float(lo)) & upper
            if not mask.any():
                continue
            val = np.zeros(mask.sum())
            for c in reversed(coeffs):
                val = val * r[mask] + float(c)
            out[mask] = val
        return out

    def __mul__(self, other: "Profile") -> "Profile":
        pieces = []
        for lo1, hi1, c1 in self.pieces:
            for lo2, hi2, c2 in other.pieces:
                lo, hi = max(lo1, lo2), min(hi1, hi2)
                if lo < hi:
                    pieces.append((lo, hi, _poly_mul(c1, c2)))
        pieces.sort(key=lambda p: p[0])
        if not pieces:
            # identically zero; keep a valid representation
            pieces = [(Fraction(0), Fraction(1), (Fraction(0),))]
        return Profile(tuple(pieces), name=f"{self.name}*{other.name}")

    def integrate_power(self, s) -> Fraction:
        """Exact ``int_0^1 r**s * profile(r) dr`` for rational ``s``."""
        s = as_fraction(s)
        total = Fraction(0)
        for lo, hi, coeffs in self.pieces:
            for i, c in enumerate(coeffs):
                if c == 0:
                    continue
                e = s + i + 1
                if e == 0:
                    if lo == 0:
                        raise DivergentIntegralError("r^-1 is not integrable at 0", s + i)
                    raise InexactValueError("logarithmic term in profile integral")
                if e < 0 and lo == 0:
                    raise DivergentIntegralError(
                        f"r^{s + i} is not integrable at 0", s + i
                    )
                total += c * (rational_power(hi, e) - rational_power(lo, e)) / e
        return total

    def integrate_power_float(self, s: float) -> float:
        """Floating-point version of :meth:`integrate_power` for real ``s``."""
        total = 0.0
        for lo, hi, coeffs in self.pieces:
            for i, c in enumerate(coeffs):
                if c == 0:
                    continue
                e = s + i + 1
                if lo == 0 and e <= 0:
                    raise DivergentIntegralError(f"r^{s + i} is not integrable at 0", s + i)
                if e == 0:
                    total += float(c) * math.log(float(hi) / float(lo))
                else:
                    total += float(c) * (float(hi) ** e - float(lo) ** e) / e
        return total
