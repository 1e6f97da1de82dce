"""Sparse Laurent-Taylor series and the coefficient operators acting on them.

A :class:`CoeffSeries` stores ``a[m, n]`` for the function
``sum a[m, n] * z1**m * z2**n`` on one of the model domains.  Coefficients
built from rationals stay :class:`~fractions.Fraction`; anything else is
stored as ``complex``.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable, Dict, Iterable, Mapping, Optional, Tuple

import numpy as np

from .geometry import Domain, Point2C, SingularEvaluationError

BiIndex = Tuple[int, int]


class IndexConstraintError(ValueError):
    """A bi-index outside the admissible set of a domain."""


class UnsupportedDomainError(ValueError):
    pass


class DivergentSequenceError(ArithmeticError):
    pass


def index_allowed(domain: Domain, idx: BiIndex) -> bool:
    m, n = idx
    if n < 0:
        return False
    if domain.dim == 1 and n != 0:
        return False
    if domain is Domain.HARTOGS:
        return m >= -(n + 1)
    return m >= 0


def _normalize(value):
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, (float, complex, np.floating, np.complexfloating)):
        return complex(value)
    raise TypeError(f"unsupported coefficient type {type(value).__name__}")


def _add(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a + b
    return complex(a) + complex(b)


def _mul(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a * b
    return complex(a) * complex(b)


@dataclass(frozen=True)
class CoeffSeries:
    """Finite coefficient map ``(m, n) -> a`` tagged with a domain."""

    domain: Domain
    coeffs: Mapping[BiIndex, object] = field(default_factory=dict)

    def __post_init__(self):
        clean: Dict[BiIndex, object] = {}
        for idx, value in dict(self.coeffs).items():
            m, n = int(idx[0]), int(idx[1])
            if not index_allowed(self.domain, (m, n)):
                raise IndexConstraintError(
                    f"index {(m, n)} not admissible on {self.domain.value}"
                )
            value = _normalize(value)
            if value != 0:
                clean[(m, n)] = value
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def monomial(cls, domain: Domain, m: int, n: int = 0, coeff=1) -> "CoeffSeries":
        return cls(domain, {(m, n): coeff})

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.coeffs.values())

    def support(self) -> list:
        return list(self.coeffs)

    def __getitem__(self, idx: BiIndex):
        return self.coeffs.get(tuple(idx), Fraction(0))

    def __iter__(self):
        return iter(self.coeffs.items())

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, CoeffSeries):
            return NotImplemented
        return self.domain is other.domain and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.domain, tuple(self.coeffs.items())))

    def __add__(self, other: "CoeffSeries") -> "CoeffSeries":
        if other.domain is not self.domain:
            raise ValueError("series live on different domains")
        out = dict(self.coeffs)
        for idx, v in other.coeffs.items():
            out[idx] = _add(out.get(idx, Fraction(0)), v)
        return CoeffSeries(self.domain, out)

    def scale(self, c) -> "CoeffSeries":
        c = _normalize(c)
        return CoeffSeries(self.domain, {i: _mul(c, v) for i, v in self.coeffs.items()})

    __rmul__ = scale

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def max_abs_diff(self, other: "CoeffSeries") -> float:
        keys = set(self.coeffs) | set(other.coeffs)
        if not keys:
            return 0.0
        return max(abs(complex(self[k]) - complex(other[k])) for k in keys)

    def evaluate(self, z1, z2=None):
        """Vectorised evaluation at complex arrays ``z1`` (and ``z2``)."""
        z1 = np.asarray(z1, dtype=complex)
        if self.domain.dim == 2:
            z2 = np.asarray(z2, dtype=complex)
        out = np.zeros(np.broadcast(z1, z2).shape if z2 is not None else z1.shape, complex)
        if not self.coeffs:
            return out
        if any(m < 0 for m, _ in self.coeffs) and np.any(z1 == 0):
            raise SingularEvaluationError("negative power of z1 evaluated at z1 = 0")
        pw1: Dict[int, np.ndarray] = {}
        pw2: Dict[int, np.ndarray] = {}
        for (m, n), a in self.coeffs.items():
            if m not in pw1:
                pw1[m] = z1**m
            term = complex(a) * pw1[m]
            if n:
                if n not in pw2:
                    pw2[n] = z2**n
                term = term * pw2[n]
            out = out + term
        return out

    def __call__(self, z1, z2=None):
        return self.evaluate(z1, z2)

    def max_degree(self) -> int:
        return max((m for m, _ in self.coeffs), default=0)


def eval_series(s: CoeffSeries, z: Point2C) -> complex:
    if z.dim != s.domain.dim:
        raise ValueError("point dimension does not match the series domain")
    if z.r1 == 0 and any(m < 0 for m, _ in s.coeffs):
        raise SingularEvaluationError("negative power of z1 evaluated at z1 = 0")
    args = z.rect()
    return complex(s.evaluate(*[np.array([a]) for a in args])[0])


_TAYLOR_DOMAINS = (Domain.BIDISC, Domain.PUNCTURED_BIDISC, Domain.DISC, Domain.PUNCTURED_DISC)


def partial_sum(s: CoeffSeries, N: int) -> CoeffSeries:
    """Keep the coefficients with first index ``m <= N``."""
    if N < 0:
        raise ValueError("N must be non-negative")
    if s.domain not in _TAYLOR_DOMAINS:
        raise UnsupportedDomainError("partial sums are defined for Taylor series on D^2")
    return CoeffSeries(s.domain, {i: v for i, v in s.coeffs.items() if i[0] <= N})


@dataclass(frozen=True)
class MultiplierSeq:
    """A sequence ``t(mu)``, mu >= 0, given by a closed-form rule.

    ``monotone`` together with a known ``limit`` lets :func:`bv_norm` add the
    exact tail ``|limit - t(N)|``.
    """

    rule: Callable[[int], object] = field(compare=False)
    name: str = "t"
    monotone: bool = False
    limit: Optional[object] = None

    def __call__(self, mu: int):
        return _normalize(self.rule(mu))

    @property
    def bv_bound(self) -> float:
        return float(abs(bv_norm(self, 1024).bound))

    @classmethod
    def constant(cls, c=1) -> "MultiplierSeq":
        return cls(lambda mu: c, name=f"const({c})", monotone=True, limit=_normalize(c))

    @classmethod
    def right_inverse(cls) -> "MultiplierSeq":
        """``t(mu) = 1 + 1/(mu + 1)``."""
        return cls(
            lambda mu: 1 + Fraction(1, mu + 1),
            name="1+1/(mu+1)",
            monotone=True,
            limit=Fraction(1),
        )


@dataclass(frozen=True)
class BVResult:
    bound: object
    partial: object
    limit: Optional[object]
    certified: bool
    warning: str = ""


def bv_norm(t: MultiplierSeq, truncation: int, cap: float = 1e6) -> BVResult:
    """Total variation ``sum |t(mu+1) - t(mu)|`` of a multiplier sequence."""
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    values = [t(mu) for mu in range(truncation + 1)]
    diffs = [abs(values[i + 1] - values[i]) for i in range(truncation)]
    exact = all(isinstance(v, Fraction) for v in values)
    partial = sum(diffs, Fraction(0) if exact else 0.0)
    if float(partial) > cap:
        raise DivergentSequenceError(f"variation exceeds cap {cap}")
    half = truncation // 2
    first, second = float(sum(diffs[:half], 0.0)), float(sum(diffs[half:], 0.0))
    if t.monotone and t.limit is not None:
        tail = abs(_normalize(t.limit) - values[-1])
        if exact and isinstance(tail, Fraction):
            bound = partial + tail
        else:
            bound = float(partial) + float(tail)
        return BVResult(bound, partial, t.limit, True)
    if half > 0 and second > 0 and second >= 0.5 * first:
        raise DivergentSequenceError(
            "variation does not decay over the truncation window"
        )
    return BVResult(partial, partial, values[-1], False, "no tail certificate; partial sum only")


def apply_multiplier(s: CoeffSeries, t: MultiplierSeq) -> CoeffSeries:
    """``a[mu, nu] -> t(mu) * a[mu, nu]``."""
    if s.domain not in _TAYLOR_DOMAINS:
        raise UnsupportedDomainError("multipliers act on Taylor series on D^2")
    return CoeffSeries(s.domain, {i: _mul(t(i[0]), v) for i, v in s.coeffs.items()})


H_TO_DD = "H->DD"
DD_TO_H = "DD->H"


def _h_to_dd(idx: BiIndex) -> BiIndex:
    m, n = idx
    return (m + n + 1, n)


def _dd_to_h(idx: BiIndex) -> BiIndex:
    mu, nu = idx
    return (mu - nu - 1, nu)


def _map_indices(s: CoeffSeries, index_map, target: Domain) -> CoeffSeries:
    out = {}
    for idx, v in s.coeffs.items():
        image = index_map(idx)
        if not index_allowed(target, image):
            raise AssertionError(
                f"index map sent {idx} to {image}, outside {target.value}"
            )
        out[image] = v
    return CoeffSeries(target, out)


def bell_transform(s: CoeffSeries, direction: str = H_TO_DD) -> CoeffSeries:
    """Coefficient form of ``h -> det(Phi') * (h o Phi)`` and its inverse.

    ``z1**m z2**n`` on H goes to ``w1**(m+n+1) w2**n`` on D* x D.
    """
    if direction == H_TO_DD:
        if s.domain is not Domain.HARTOGS:
            raise UnsupportedDomainError("H->DD expects a series on the Hartogs triangle")
        return _map_indices(s, _h_to_dd, Domain.PUNCTURED_BIDISC)
    if direction == DD_TO_H:
        if s.domain not in (Domain.PUNCTURED_BIDISC, Domain.BIDISC):
            raise UnsupportedDomainError("DD->H expects a series on D* x D")
        return _map_indices(s, _dd_to_h, Domain.HARTOGS)
    raise ValueError(f"unknown direction {direction!r}")


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


def _parse(tok: str):
    if "/" in tok or tok.lstrip("-").isdigit():
        return Fraction(tok)
    return float(tok)


def dumps(s: CoeffSeries) -> str:
    """Line format: header with the domain tag, then ``m n re im`` per line."""
    buf = io.StringIO()
    buf.write("# coeff-series v1\n")
    buf.write(f"domain {s.domain.value}\n")
    for (m, n), v in s.coeffs.items():
        if isinstance(v, Fraction):
            re, im = v, Fraction(0)
        else:
            re, im = v.real, v.imag
        buf.write(f"{m} {n} {_fmt(re)} {_fmt(im)}\n")
    return buf.getvalue()


def loads(text: str) -> CoeffSeries:
    domain = None
    coeffs = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "domain":
            domain = Domain.parse(parts[1])
            continue
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected 'm n re im'")
        m, n = int(parts[0]), int(parts[1])
        re, im = _parse(parts[2]), _parse(parts[3])
        if isinstance(re, Fraction) and isinstance(im, Fraction) and im == 0:
            coeffs[(m, n)] = re
        else:
            coeffs[(m, n)] = complex(float(re), float(im))
    if domain is None:
        raise ValueError("missing domain header")
    return CoeffSeries(domain, coeffs)
