"""Model domains, points in polar form, weights and the map Phi.

The five domains are the disc D, the punctured disc D*, the bidisc D^2,
the product D* x D and the Hartogs triangle H = {|z2| < |z1| < 1}.
``Phi(w1, w2) = (w1, w1*w2)`` maps D* x D biholomorphically onto H.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

TWO_PI = 2.0 * math.pi


class SingularEvaluationError(ValueError):
    """Evaluation at a point where the object is not defined (e.g. z1 = 0)."""


class Domain(enum.Enum):
    DISC = "Disc"
    PUNCTURED_DISC = "PuncturedDisc"
    BIDISC = "Bidisc"
    PUNCTURED_BIDISC = "PuncturedBidisc"
    HARTOGS = "HartogsTriangle"

    @property
    def dim(self) -> int:
        return 1 if self in (Domain.DISC, Domain.PUNCTURED_DISC) else 2

    @classmethod
    def parse(cls, name: str) -> "Domain":
        key = name.strip().lower().replace("_", "").replace("-", "")
        aliases = {
            "disc": cls.DISC,
            "d": cls.DISC,
            "punctureddisc": cls.PUNCTURED_DISC,
            "bidisc": cls.BIDISC,
            "d2": cls.BIDISC,
            "puncturedbidisc": cls.PUNCTURED_BIDISC,
            "dd": cls.PUNCTURED_BIDISC,
            "hartogstriangle": cls.HARTOGS,
            "hartogs": cls.HARTOGS,
            "h": cls.HARTOGS,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown domain {name!r}") from None


# DomainSpec carries nothing beyond the identifier.
DomainSpec = Domain


def _wrap(theta: float) -> float:
    t = math.fmod(theta, TWO_PI)
    if t < 0:
        t += TWO_PI
    # fmod can round a tiny negative up to exactly 2*pi
    return 0.0 if t >= TWO_PI else t


@dataclass(frozen=True)
class Point2C:
    """A point of C or C^2 stored as (radius, angle) pairs.

    Leave ``r2``/``t2`` as ``None`` for a point of the plane.
    """

    r1: float
    t1: float = 0.0
    r2: Optional[float] = None
    t2: Optional[float] = None

    def __post_init__(self):
        if self.r1 < 0 or (self.r2 is not None and self.r2 < 0):
            raise ValueError("radii must be non-negative")
        object.__setattr__(self, "t1", _wrap(float(self.t1)))
        if self.r2 is not None:
            object.__setattr__(self, "t2", _wrap(float(self.t2 or 0.0)))

    @property
    def dim(self) -> int:
        return 1 if self.r2 is None else 2

    @classmethod
    def from_complex(cls, z1: complex, z2: Optional[complex] = None) -> "Point2C":
        r1, t1 = cmath.polar(complex(z1))
        if z2 is None:
            return cls(r1, t1)
        r2, t2 = cmath.polar(complex(z2))
        return cls(r1, t1, r2, t2)

    @property
    def z1(self) -> complex:
        return cmath.rect(self.r1, self.t1)

    @property
    def z2(self) -> complex:
        if self.r2 is None:
            raise ValueError("one-dimensional point has no second coordinate")
        return cmath.rect(self.r2, self.t2)

    def rect(self) -> tuple:
        return (self.z1,) if self.dim == 1 else (self.z1, self.z2)

    def norm(self) -> float:
        return math.hypot(self.r1, self.r2 or 0.0)


def contains(d: Domain, z: Point2C) -> bool:
    """Membership in the open domain ``d``."""
    if z.dim != d.dim:
        raise ValueError(f"{d.value} needs a point of C^{d.dim}, got C^{z.dim}")
    if d is Domain.DISC:
        return z.r1 < 1
    if d is Domain.PUNCTURED_DISC:
        return 0 < z.r1 < 1
    if d is Domain.BIDISC:
        return z.r1 < 1 and z.r2 < 1
    if d is Domain.PUNCTURED_BIDISC:
        return 0 < z.r1 < 1 and z.r2 < 1
    return z.r2 < z.r1 < 1


def delta1(z: Point2C) -> float:
    """The weight |z1|."""
    return z.r1


@dataclass(frozen=True)
class WeightSpec:
    """A weight depending only on ``delta1 = |z1|``.

    ``kind`` is ``"constant"`` (value ``c``), ``"power"`` (``|z1|**exponent``)
    or ``"radial"`` (``profile(|z1|)`` for a caller-supplied positive function).
    """

    kind: str = "constant"
    c: float = 1.0
    exponent: float = 0.0
    profile: Optional[Callable] = field(default=None, compare=False)
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("constant", "power", "radial"):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "constant" and not self.c > 0:
            raise ValueError("constant weight must be positive")
        if self.kind == "radial" and self.profile is None:
            raise ValueError("radial weight needs a profile")

    @classmethod
    def constant(cls, c: float = 1.0) -> "WeightSpec":
        return cls("constant", c=c, label=f"const({c})")

    @classmethod
    def power(cls, exponent: float) -> "WeightSpec":
        return cls("power", exponent=exponent, label=f"delta1^{exponent}")

    @classmethod
    def radial(cls, profile: Callable, label: str = "lambda(delta1)") -> "WeightSpec":
        return cls("radial", profile=profile, label=label)

    @property
    def is_unit(self) -> bool:
        return (self.kind == "constant" and self.c == 1) or (
            self.kind == "power" and self.exponent == 0
        )

    def values(self, r1):
        """Vectorised weight at first radii ``r1``."""
        r1 = np.asarray(r1, dtype=float)
        if self.kind == "constant":
            return np.full_like(r1, self.c)
        if self.kind == "power":
            if self.exponent == 0:
                return np.ones_like(r1)
            with np.errstate(divide="ignore", over="ignore"):
                return r1**self.exponent
        with np.errstate(divide="ignore", over="ignore"):
            return np.asarray(self.profile(r1), dtype=float) * np.ones_like(r1)

    def describe(self) -> str:
        return self.label or self.kind


def weight_at(w: WeightSpec, z: Point2C) -> float:
    r = z.r1
    if r == 0 and (
        (w.kind == "power" and w.exponent < 0) or w.kind == "radial"
    ):
        raise SingularEvaluationError("weight evaluated at |z1| = 0")
    value = float(w.values(np.array([r]))[0])
    if not value > 0 or not math.isfinite(value):
        raise SingularEvaluationError(f"weight value {value} is not positive and finite")
    return value


def phi(w: Point2C) -> Point2C:
    """``(w1, w2) -> (w1, w1*w2)``, from D* x D onto H."""
    if w.dim != 2:
        raise ValueError("phi acts on points of C^2")
    return Point2C(w.r1, w.t1, w.r1 * w.r2, w.t1 + w.t2)


def phi_inverse(z: Point2C) -> Point2C:
    """``(z1, z2) -> (z1, z2/z1)``, from H onto D* x D."""
    if z.dim != 2:
        raise ValueError("phi_inverse acts on points of C^2")
    if z.r1 == 0:
        raise SingularEvaluationError("phi_inverse is undefined at z1 = 0")
    return Point2C(z.r1, z.t1, z.r2 / z.r1, z.t2 - z.t1)


def phi_jacobian_det(w: Point2C) -> complex:
    """det Phi'(w) = w1."""
    return w.z1
