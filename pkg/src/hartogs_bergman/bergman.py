"""Orthogonal monomial bases, Bergman kernels and projections.

Projections are computed coefficient by coefficient in the monomial basis.
For monomial-type inputs every coefficient is an exact rational multiple of
a power of pi: the polar integral of ``f * conj(z1**m z2**n)`` vanishes
unless the angular frequencies of ``f`` equal ``(m, n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .exact import DivergentIntegralError, PiMultiple, Profile
from .geometry import Domain, Point2C, SingularEvaluationError, contains
from .quadrature import (
    MonomialExpr,
    MonomialTerm,
    QuadratureSpec,
    as_expr,
    graded_rule,
    integrate_exact,
    _cell_rule,
)
from .series import (
    CoeffSeries,
    IndexConstraintError,
    MultiplierSeq,
    apply_multiplier,
    index_allowed,
)

PI = math.pi


def monomial_norm_sq(d: Domain, idx) -> PiMultiple:
    """``||z1**m z2**n||^2`` in ``L^2(d)``, in closed form."""
    m, n = idx
    if not index_allowed(d, (m, n)):
        raise IndexConstraintError(f"z1^{m} z2^{n} is not in A^2({d.value})")
    if d.dim == 1:
        return PiMultiple(Fraction(1, m + 1), 1)
    if d is Domain.HARTOGS:
        return PiMultiple(Fraction(1, (n + 1) * (m + n + 2)), 2)
    return PiMultiple(Fraction(1, (m + 1) * (n + 1)), 2)


@dataclass(frozen=True)
class BasisElement:
    index: tuple
    norm_sq: PiMultiple


def basis_element(d: Domain, idx) -> BasisElement:
    return BasisElement(tuple(idx), monomial_norm_sq(d, idx))


@dataclass(frozen=True)
class ProjectionSpec:
    """Truncation box ``m_min <= m <= m_max, 0 <= n <= n_max`` and backend."""

    m_min: int = -17
    m_max: int = 16
    n_max: int = 16
    backend: str = "exact"
    quadrature: QuadratureSpec = field(
        default_factory=lambda: QuadratureSpec(radial_order=10, grading_levels=30, inner_levels=4)
    )
    tol: float = 1e-8

    def __post_init__(self):
        if self.backend not in ("exact", "numeric"):
            raise ValueError("backend must be 'exact' or 'numeric'")
        if self.m_min < -(self.n_max + 1):
            raise ValueError("m_min below the Hartogs index constraint -(n_max+1)")
        if self.m_max < self.m_min or self.n_max < 0:
            raise ValueError("empty truncation box")

    @classmethod
    def for_domain(cls, d: Domain, size: int = 16, **kw) -> "ProjectionSpec":
        n_max = 0 if d.dim == 1 else size
        m_min = -(n_max + 1) if d is Domain.HARTOGS else 0
        return cls(m_min=m_min, m_max=size, n_max=n_max, **kw)

    def indices(self, d: Domain) -> list:
        n_max = 0 if d.dim == 1 else self.n_max
        return [
            (m, n)
            for n in range(n_max + 1)
            for m in range(self.m_min, self.m_max + 1)
            if index_allowed(d, (m, n))
        ]


@dataclass
class Projection:
    series: CoeffSeries
    # frequencies of f carrying mass onto basis elements outside the box
    omitted: list = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.omitted


def _monomial_expr(idx) -> MonomialExpr:
    m, n = idx
    return MonomialExpr([MonomialTerm(a=m, b=n, k=m, l=n, coefficient=1)])


def _project_exact(expr: MonomialExpr, d: Domain, spec: ProjectionSpec) -> Projection:
    by_freq: dict = {}
    for t in expr.terms:
        by_freq.setdefault((t.k, t.l), []).append(t)
    box = spec.indices(d)
    box_set = set(box)
    coeffs = {}
    for idx in box:
        terms = by_freq.get(idx)
        if not terms:
            # angular integral vanishes: the coefficient is exactly 0
            continue
        ip = integrate_exact(MonomialExpr(terms) * _monomial_expr(idx).conj(), d)
        c = ip / monomial_norm_sq(d, idx)
        assert c.power == 0
        coeffs[idx] = c.coeff
    omitted = sorted(
        k for k in by_freq if k not in box_set and index_allowed(d, k)
    )
    return Projection(CoeffSeries(d, coeffs), omitted)


def _project_numeric(f, d: Domain, spec: ProjectionSpec) -> Projection:
    q = spec.quadrature
    box = spec.indices(d)
    max_freq = max(max(abs(m), n) for m, n in box)
    na = max(q.angular_order, 2 * max_freq + 2)
    na += na % 2
    nr = q.radial_order
    th = 2 * PI * np.arange(na) / na
    acc = np.zeros((len(box),), complex)
    ms = np.array([m for m, _ in box])
    ns = np.array([n for _, n in box])
    if d.dim == 2:
        s, ws = graded_rule(nr, q.inner_levels)
    for j in range(q.grading_levels):
        r1, w1 = _cell_rule(2.0 ** -(j + 1), 2.0**-j, nr)
        if d.dim == 1:
            R, T = np.meshgrid(r1, th, indexing="ij")
            vals = np.asarray(f(R * np.exp(1j * T)), complex)
            ang = np.fft.fft(vals, axis=1) * (2 * PI / na)
            # ang[i, m] = int f(r_i e^{it}) e^{-imt} dt
            rad = (w1 * r1)[:, None] * r1[:, None] ** ms[None, :]
            acc += np.sum(rad * ang[:, ms % na], axis=0)
            continue
        R1, S, T1, T2 = np.meshgrid(r1, s, th, th, indexing="ij")
        R2 = R1 * S if d is Domain.HARTOGS else S
        vals = np.asarray(f(R1 * np.exp(1j * T1), R2 * np.exp(1j * T2)), complex)
        ang = np.fft.fft2(vals, axes=(2, 3)) * (2 * PI / na) ** 2
        ang = ang[:, :, ms % na, ns % na]  # (nr, ns, len(box))
        r1g = r1[:, None, None]
        sg = s[None, :, None]
        if d is Domain.HARTOGS:
            jac = r1g**3 * sg
            r2g = r1g * sg
        else:
            jac = r1g * sg
            r2g = sg + 0 * r1g
        w = w1[:, None, None] * ws[None, :, None] * jac
        with np.errstate(divide="ignore", invalid="ignore"):
            radial = r1g ** ms[None, None, :] * r2g ** ns[None, None, :]
        radial = np.where(np.isfinite(radial), radial, 0.0)
        acc += np.sum(w * radial * ang, axis=(0, 1))
    coeffs = {}
    for i, idx in enumerate(box):
        c = acc[i] / complex(monomial_norm_sq(d, idx))
        coeffs[idx] = c
    return Projection(CoeffSeries(d, coeffs))


def project_with_certificate(f, d: Domain, spec: Optional[ProjectionSpec] = None) -> Projection:
    spec = spec or ProjectionSpec.for_domain(d)
    expr = as_expr(f)
    if spec.backend == "exact":
        if expr is None:
            raise TypeError("the exact backend needs a monomial-type function")
        return _project_exact(expr, d, spec)
    return _project_numeric(expr if expr is not None else f, d, spec)


def project(f, d: Domain, spec: Optional[ProjectionSpec] = None) -> CoeffSeries:
    """Bergman projection of ``f`` onto the monomials in the truncation box.

    Coefficient at ``idx`` is ``<f, e_idx> / ||e_idx||^2``.
    """
    return project_with_certificate(f, d, spec).series


def _disc_kernel(z, w):
    return 1.0 / (PI * (1.0 - z * np.conj(w)) ** 2)


def kernel_values(d: Domain, z1, z2, w1, w2):
    """Vectorised Bergman kernel ``B_d((z1, z2), (w1, w2))``."""
    z1 = np.asarray(z1, complex)
    w1 = np.asarray(w1, complex)
    if d.dim == 1:
        return _disc_kernel(z1, w1)
    z2 = np.asarray(z2, complex)
    w2 = np.asarray(w2, complex)
    if d in (Domain.BIDISC, Domain.PUNCTURED_BIDISC):
        return _disc_kernel(z1, w1) * _disc_kernel(z2, w2)
    if np.any(z1 == 0) or np.any(w1 == 0):
        raise SingularEvaluationError("Hartogs kernel at z1 = 0")
    # pull back along Phi^{-1}(z) = (z1, z2/z1); det Phi' = w1
    a = z2 / z1
    b = w2 / w1
    return _disc_kernel(z1, w1) * _disc_kernel(a, b) / (z1 * np.conj(w1))


def kernel(d: Domain, z: Point2C, w: Point2C) -> complex:
    for p in (z, w):
        if not contains(d, p):
            if d is Domain.HARTOGS and p.dim == 2 and p.r1 == 0:
                raise SingularEvaluationError("Hartogs kernel at z1 = 0")
            raise ValueError("kernel arguments must lie in the domain")
    if d.dim == 1:
        return complex(kernel_values(d, z.z1, None, w.z1, None))
    return complex(kernel_values(d, z.z1, z.z2, w.z1, w.z2))


def kernel_series(d: Domain, z: Point2C, w: Point2C, spec: Optional[ProjectionSpec] = None) -> complex:
    """Truncated basis expansion ``sum e(z) conj(e(w)) / ||e||^2``."""
    spec = spec or ProjectionSpec.for_domain(d)
    total = 0j
    for m, n in spec.indices(d):
        ez = z.z1**m * (z.z2**n if d.dim == 2 else 1)
        ew = w.z1**m * (w.z2**n if d.dim == 2 else 1)
        total += ez * np.conj(ew) / complex(monomial_norm_sq(d, (m, n)))
    return complex(total)


def counterexample_function(chi: Optional[Profile] = None) -> MonomialExpr:
    """``chi(|z1|) * conj(z1)``; ``chi`` defaults to the indicator of [1/2, 1]."""
    chi = chi if chi is not None else Profile.step(Fraction(1, 2), 1)
    return MonomialExpr([MonomialTerm(a=1, k=-1, profile=chi, coefficient=1)])


def counterexample_constant(chi: Optional[Profile] = None) -> Fraction:
    """``2 * int_0^1 chi(r) r^3 dr``, the coefficient of ``1/z1`` in the projection."""
    chi = chi if chi is not None else Profile.step(Fraction(1, 2), 1)
    return 2 * chi.integrate_power(3)


def right_inverse_U(f: CoeffSeries) -> MonomialExpr:
    """``|w1|**2 * (T f)(w)`` with ``t(mu) = 1 + 1/(mu+1)``, as a function on D* x D."""
    if f.domain not in (Domain.BIDISC, Domain.PUNCTURED_BIDISC):
        raise ValueError("right_inverse_U acts on series on the bidisc")
    tf = apply_multiplier(f, MultiplierSeq.right_inverse())
    return MonomialExpr(
        MonomialTerm(a=mu + 2, b=nu, k=mu, l=nu, coefficient=v)
        for (mu, nu), v in tf.coeffs.items()
    )
