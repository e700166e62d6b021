"""Quadrature reconstructions of f and g from their integral representations.

Each routine returns a :class:`QuadratureOutcome` whose value should agree
with the closed forms in :mod:`monofun.scalar`:

* ``ando_average``            -- f as an average over lambda in [0, 1]
* ``canonical_reconstruct``   -- f = p/q + int t/(lambda(t+lambda)) dmu
* ``exponential_reconstruct`` -- f = exp(beta + int (...) h dlambda)
* ``fop_reconstruct``         -- g from its weight on [0, 1]

Integrals over (0, inf) are split at lambda = 1. Near the origin the
canonical measure behaves like lambda^(p-1) and is integrated in the variable
s = lambda^p; the tail decays like lambda^-(1+kappa) with kappa = 1-q+p and is
integrated in v = lambda^-kappa. Both substitutions turn the pieces into
bounded integrands on (0, 1).
"""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from .errors import DomainError
from .quadrature import QuadratureConfig, QuadratureOutcome, integrate_adaptive
from .scalar import (
    ExponentPair,
    _positive,
    canonical_density_near_infinity,
    canonical_density_near_zero,
    fop_weight,
    im_log_parts,
    ComplexPoint,
    weight_h,
)

__all__ = [
    "ando_average",
    "canonical_reconstruct",
    "exponential_reconstruct",
    "fop_reconstruct",
    "extract_weight_numeric",
    "combine",
]


def _scalar_t(t) -> float:
    t = _positive(t, "t")
    if t.ndim:
        raise DomainError("t must be a scalar")
    return float(t)


def combine(*parts: QuadratureOutcome) -> QuadratureOutcome:
    """Sum of independent quadratures, with errors and costs added."""
    return QuadratureOutcome(
        value=math.fsum(o.value for o in parts),
        abs_error_estimate=math.fsum(o.abs_error_estimate for o in parts),
        evaluations=sum(o.evaluations for o in parts),
        converged=all(o.converged for o in parts),
        subdivisions=sum(o.subdivisions for o in parts),
    )


def _split_cfg(cfg: QuadratureConfig) -> QuadratureConfig:
    # two halves share the tolerance budget
    return replace(cfg, target_abs_tol=0.5 * cfg.target_abs_tol)


def ando_average(pq: ExponentPair, t, cfg: QuadratureConfig | None = None) -> QuadratureOutcome:
    """int_0^1 (lambda t^p + 1 - lambda)^((q-p)/p) dlambda, which equals f(t)."""
    cfg = cfg or QuadratureConfig()
    t = _scalar_t(t)
    tp = t**pq.p
    expo = (pq.q - pq.p) / pq.p
    return integrate_adaptive(lambda lam: (lam * tp + (1.0 - lam)) ** expo, (0.0, 1.0), cfg)


def canonical_reconstruct(pq: ExponentPair, t, cfg: QuadratureConfig | None = None) -> QuadratureOutcome:
    """p/q + int_0^inf t/(lambda(t+lambda)) mu'(lambda) dlambda.

    mu' is :func:`monofun.scalar.canonical_density`, which already carries the
    factor p/q; it is not applied a second time here.
    """
    cfg = cfg or QuadratureConfig()
    t = _scalar_t(t)
    p, q = pq.p, pq.q
    kappa = 1.0 - q + p
    half = _split_cfg(cfg)

    def lower(s):
        # lambda = s^(1/p): mu'(lambda) dlambda / lambda = (mu'/lambda^p)(s) ds / p
        lam = s ** (1.0 / p)
        return t / (t + lam) * np.asarray(canonical_density_near_zero(pq, s)) / p

    def upper(v):
        # lambda = v^(-1/kappa); w = 1/lambda
        w = v ** (1.0 / kappa)
        return t / (1.0 + t * w) * np.asarray(canonical_density_near_infinity(pq, w)) / kappa

    body = combine(integrate_adaptive(lower, (0.0, 1.0), half), integrate_adaptive(upper, (0.0, 1.0), half))
    return replace(body, value=pq.ratio + body.value)


def _log_kernel_integral(pq: ExponentPair, t: float, cfg: QuadratureConfig) -> QuadratureOutcome:
    """int_0^inf (lambda/(lambda^2+1) - 1/(lambda+t)) h(lambda) dlambda."""
    half = _split_cfg(cfg)

    def lower(lam):
        return (lam / (lam * lam + 1.0) - 1.0 / (lam + t)) * np.asarray(weight_h(pq, lam))

    def upper(u):
        # lambda = 1/u; kernel * dlambda = (t - u)/((1+u^2)(1+tu)) du
        return (t - u) / ((1.0 + u * u) * (1.0 + t * u)) * np.asarray(weight_h(pq, 1.0 / u))

    return combine(integrate_adaptive(lower, (0.0, 1.0), half), integrate_adaptive(upper, (0.0, 1.0), half))


def exponential_reconstruct(pq: ExponentPair, t, cfg: QuadratureConfig | None = None) -> QuadratureOutcome:
    """(p/q) sqrt((1 - cos(q pi/2))/(1 - cos(p pi/2))) exp(int kernel * h).

    The error estimate is that of the exponent, i.e. a relative error of the
    returned value.
    """
    cfg = cfg or QuadratureConfig()
    t = _scalar_t(t)
    p, q = pq.p, pq.q
    prefactor = pq.ratio * math.sqrt((1.0 - math.cos(q * math.pi / 2)) / (1.0 - math.cos(p * math.pi / 2)))
    body = _log_kernel_integral(pq, t, cfg)
    return replace(body, value=prefactor * math.exp(body.value))


def _fop_kernel(lam, t):
    return (lam * lam - 1.0) * (1.0 - t) ** 2 / ((lam + t) * (1.0 + lam * t) * (1.0 + lam) ** 2)


def fop_reconstruct(pq: ExponentPair, t, cfg: QuadratureConfig | None = None) -> QuadratureOutcome:
    """((1+t)/2) exp int_0^1 K(lambda, t) ((1-q+p)/2 + h(lambda)) dlambda, which equals g(t).

    As with :func:`exponential_reconstruct`, the error estimate refers to the
    exponent.
    """
    cfg = cfg or QuadratureConfig()
    t = _scalar_t(t)
    if t == 1.0:
        return QuadratureOutcome(value=1.0, abs_error_estimate=0.0, evaluations=1)
    body = integrate_adaptive(lambda lam: _fop_kernel(lam, t) * np.asarray(fop_weight(pq, lam)), (0.0, 1.0), cfg)
    return replace(body, value=0.5 * (1.0 + t) * math.exp(body.value))


def extract_weight_numeric(pq: ExponentPair, lam, epsilon) -> float:
    """(1/pi) Im log g(z) at z = lambda e^{i(pi - epsilon)}.

    Im log g(z) = (1-q+p)/2 * theta + atan2(b, a); as epsilon -> 0 the result
    tends to ``fop_weight(pq, lam)``.
    """
    lam = float(lam)
    epsilon = float(epsilon)
    if not (0.0 < lam <= 1.0):
        raise DomainError("lambda must lie in (0, 1]")
    if not (0.0 < epsilon < 0.1):
        raise DomainError("epsilon must lie in (0, 0.1)")
    theta = math.pi - epsilon
    a, b = im_log_parts(pq, ComplexPoint(lam, theta))
    return (pq.sym_exponent * theta + math.atan2(b, a)) / math.pi
