"""Closed-form scalar evaluation of the family

    f(t) = (p/q) (t^q - 1) / (t^p - 1),    0 < p <= q <= 1,

together with its analytic extension to the upper half-plane, the density of
its canonical representing measure, the weight of its exponential
representation, the symmetrised generator g(t) = f(t) t^((1-q+p)/2), the
involution f#(t) = t f(1/t) and the Morozova-Chentsov function built from g.

All functions accept scalars or numpy arrays (broadcast elementwise) and
return a Python float for scalar input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .errors import DomainError

ArrayLike = Union[float, np.ndarray]

__all__ = [
    "ExponentPair",
    "ComplexPoint",
    "ImLogParts",
    "eval_f",
    "eval_f_complex",
    "eval_g_complex",
    "im_log_parts",
    "canonical_density",
    "canonical_density_near_zero",
    "canonical_density_near_infinity",
    "weight_h",
    "beta_closed_form",
    "eval_g",
    "sharp",
    "mc_function",
    "fop_weight",
]

# relative gap below which c(x, y) is evaluated through g on the diagonal
NEAR_DIAGONAL = 1e-8


@dataclass(frozen=True)
class ExponentPair:
    """Exponents (p, q) with 0 < p <= q <= 1."""

    p: float
    q: float

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        if not (math.isfinite(p) and math.isfinite(q)):
            raise DomainError(f"exponents must be finite, got p={p}, q={q}")
        if not (0.0 < p <= q <= 1.0):
            raise DomainError(f"exponents must satisfy 0<p<=q<=1, got p={p}, q={q}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def sym_exponent(self) -> float:
        """(1 - q + p)/2, the power that symmetrises f into g; lies in (0, 1/2]."""
        return 0.5 * (1.0 - self.q + self.p)

    @property
    def ratio(self) -> float:
        return self.p / self.q

    @property
    def is_trivial(self) -> bool:
        """True when p == q, in which case f is identically one."""
        return self.p == self.q


@dataclass(frozen=True)
class ComplexPoint:
    """A point r e^{i theta} of the closed upper half-plane.

    ``r`` and ``theta`` may be broadcastable arrays, which lets grids be
    evaluated in one call.
    """

    r: ArrayLike
    theta: ArrayLike

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        theta = np.asarray(self.theta, dtype=float)
        if not np.all(np.isfinite(r)) or np.any(r <= 0):
            raise DomainError("modulus r must be finite and positive")
        if not np.all(np.isfinite(theta)) or np.any(theta < 0) or np.any(theta > np.pi):
            raise DomainError("argument theta must lie in [0, pi]")
        object.__setattr__(self, "r", _out(r))
        object.__setattr__(self, "theta", _out(theta))

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexPoint":
        z = np.asarray(z, dtype=complex)
        return cls(np.abs(z), np.angle(z))

    def to_complex(self):
        return _out(np.asarray(self.r) * np.exp(1j * np.asarray(self.theta)))


class ImLogParts(NamedTuple):
    """Real part ``a`` and imaginary part ``b`` of (z^q - 1)(conj(z)^p - 1)."""

    a: ArrayLike
    b: ArrayLike


def _out(x):
    x = np.asarray(x)
    return x.item() if x.ndim == 0 else x


def _positive(x, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(x <= 0):
        raise DomainError(f"{name} must be finite and positive")
    return x


def _unit_interval(x, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(x <= 0) or np.any(x > 1):
        raise DomainError(f"{name} must lie in (0, 1]")
    return x


# below this relative gap f - 1 is computed directly, so f stays monotone at ulp level
NEAR_DEGENERATE = 1e-3


def _f(pq: ExponentPair, t: np.ndarray) -> np.ndarray:
    p, q = pq.p, pq.q
    if pq.is_trivial:
        return np.ones_like(t)
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = (pq.ratio) * (t**q - 1.0) / (t**p - 1.0)
        log_t = np.log(t)
        stable = pq.ratio * np.expm1(q * log_t) / np.expm1(p * log_t)
    # the expm1 form is accurate everywhere; the direct form only away from 1
    out = np.where(np.abs(log_t) < 1.0, stable, direct)
    if q - p <= NEAR_DEGENERATE * q:
        out = _f_near_degenerate(p, q, log_t)
    return np.where(t == 1.0, 1.0, out)


def _f_near_degenerate(p: float, q: float, log_t: np.ndarray) -> np.ndarray:
    # f - 1 = (p t^p expm1(d L) - d expm1(p L)) / (q expm1(p L)), d = q - p exact
    d = q - p
    with np.errstate(divide="ignore", invalid="ignore"):
        em = np.expm1(p * log_t)
        return 1.0 + (p * np.exp(p * log_t) * np.expm1(d * log_t) - d * em) / (q * em)


def eval_f(pq: ExponentPair, t: ArrayLike) -> ArrayLike:
    """Evaluate f(t) = (p/q)(t^q - 1)/(t^p - 1), with f(1) = 1.

    For |ln t| < 1 the quotient is evaluated as (p/q) expm1(q ln t)/expm1(p ln t)
    to avoid cancellation. When q - p <= 1e-3 q the small quantity f - 1 is
    formed first, which keeps f within an ulp or so and monotone on any grid.
    """
    return _out(_f(pq, _positive(t, "t")))


def _log_point(z: ComplexPoint, *, open_upper: bool) -> np.ndarray:
    r = np.asarray(z.r, dtype=float)
    theta = np.asarray(z.theta, dtype=float)
    if open_upper and np.any(theta <= 0):
        raise DomainError("theta must lie in (0, pi] for the analytic extension")
    return np.log(r) + 1j * theta


def eval_f_complex(pq: ExponentPair, z: ComplexPoint) -> complex:
    """Principal-branch extension of f to the upper half-plane.

    z^s is taken as r^s e^{i s theta}; the quotient is formed from expm1 of
    s log z so that points close to z = 1 keep their digits.
    """
    w = _log_point(z, open_upper=True)
    if pq.is_trivial:
        return _out(np.ones_like(w))
    return _out(pq.ratio * np.expm1(pq.q * w) / np.expm1(pq.p * w))


def eval_g_complex(pq: ExponentPair, z: ComplexPoint) -> complex:
    """Extension of g(t) = f(t) t^((1-q+p)/2) to the upper half-plane."""
    w = _log_point(z, open_upper=True)
    return _out(np.asarray(eval_f_complex(pq, z)) * np.exp(pq.sym_exponent * w))


def im_log_parts(pq: ExponentPair, z: ComplexPoint) -> ImLogParts:
    """The pair (a, b) with f(z) proportional to a + ib by a positive factor.

        a = r^(p+q) cos((q-p)th) - r^q cos(q th) - r^p cos(p th) + 1
        b = r^(p+q) sin((q-p)th) - r^q sin(q th) + r^p sin(p th)

    so arg f(z) = atan2(b, a).
    """
    p, q = pq.p, pq.q
    r = np.asarray(z.r, dtype=float)
    th = np.asarray(z.theta, dtype=float)
    rp, rq = r**p, r**q
    rpq = rp * rq
    a = rpq * np.cos((q - p) * th) - rq * np.cos(q * th) - rp * np.cos(p * th) + 1.0
    b = rpq * np.sin((q - p) * th) - rq * np.sin(q * th) + rp * np.sin(p * th)
    return ImLogParts(_out(a), _out(b))


def canonical_density_near_zero(pq: ExponentPair, s: ArrayLike) -> ArrayLike:
    """Density of the representing measure divided by lambda^p, as a function
    of s = lambda^p.

    Bounded as s -> 0, so quadrature in the variable s never sees the
    lambda^(p-1) singularity of the measure at the origin.
    """
    p, q = pq.p, pq.q
    s = np.asarray(s, dtype=float)
    k = q / p
    num = s**k * math.sin((q - p) * math.pi) - s ** (k - 1.0) * math.sin(q * math.pi) + math.sin(p * math.pi)
    den = s * s - 2.0 * s * math.cos(p * math.pi) + 1.0
    return _out(pq.ratio * num / (math.pi * den))


def canonical_density_near_infinity(pq: ExponentPair, w: ArrayLike) -> ArrayLike:
    """Density of the representing measure times lambda^(p-q), as a function
    of w = 1/lambda. Bounded as w -> 0."""
    p, q = pq.p, pq.q
    w = np.asarray(w, dtype=float)
    wp = w**p
    num = math.sin((q - p) * math.pi) - wp * math.sin(q * math.pi) + w**q * math.sin(p * math.pi)
    den = 1.0 - 2.0 * wp * math.cos(p * math.pi) + wp * wp
    return _out(pq.ratio * num / (math.pi * den))


def canonical_density(pq: ExponentPair, lam: ArrayLike) -> ArrayLike:
    """Density d mu / d lambda of the canonical representing measure of f.

    This is the only place the leading factor p/q of the measure is applied.
    The value is identically zero when p == q.
    """
    lam = _positive(lam, "lambda")
    p, q = pq.p, pq.q
    lo = np.minimum(lam, 1.0)
    hi = np.maximum(lam, 1.0)
    near_zero = lo**p * np.asarray(canonical_density_near_zero(pq, lo**p))
    near_inf = hi ** (q - p) * np.asarray(canonical_density_near_infinity(pq, 1.0 / hi))
    return _out(np.where(lam <= 1.0, near_zero, near_inf))


def _weight_parts(pq: ExponentPair, lam: np.ndarray):
    """(a, b) at r = lambda, theta = pi, rescaled by lambda^-(p+q) when lambda > 1."""
    p, q = pq.p, pq.q
    cqp, sqp = math.cos((q - p) * math.pi), math.sin((q - p) * math.pi)
    cq, sq = math.cos(q * math.pi), math.sin(q * math.pi)
    cp, sp = math.cos(p * math.pi), math.sin(p * math.pi)
    lo = np.minimum(lam, 1.0)
    lp, lq = lo**p, lo**q
    a_lo = lp * lq * cqp - lq * cq - lp * cp + 1.0
    b_lo = lp * lq * sqp - lq * sq + lp * sp
    w = 1.0 / np.maximum(lam, 1.0)
    wp, wq = w**p, w**q
    a_hi = cqp - wp * cq - wq * cp + wp * wq
    b_hi = sqp - wp * sq + wq * sp
    upper = lam > 1.0
    return np.where(upper, a_hi, a_lo), np.where(upper, b_hi, b_lo)


def weight_h(pq: ExponentPair, lam: ArrayLike) -> ArrayLike:
    """Weight of the exponential representation, (1/pi) atan2(b, a) at z = -lambda.

    atan2 keeps the value continuous where a changes sign. For lambda > 1 the
    pair (a, b) is rescaled by lambda^-(p+q), which leaves the angle unchanged
    and keeps large arguments finite.
    """
    lam = _positive(lam, "lambda")
    if pq.is_trivial:
        return _out(np.zeros_like(lam))
    a, b = _weight_parts(pq, lam)
    return _out(np.arctan2(b, a) / math.pi)


def beta_closed_form(pq: ExponentPair) -> float:
    """Constant of the exponential representation, Re log f(i).

    log p - log q + (1/2) log[(1 - cos(q pi/2)) / (1 - cos(p pi/2))], with
    1 - cos x written as 2 sin^2(x/2) to keep small p accurate.
    """
    p, q = pq.p, pq.q
    return math.log(p) - math.log(q) + math.log(math.sin(q * math.pi / 4) / math.sin(p * math.pi / 4))


def eval_g(pq: ExponentPair, t: ArrayLike) -> ArrayLike:
    """g(t) = f(t) t^((1-q+p)/2); satisfies g(t) = t g(1/t) and g(1) = 1."""
    t = _positive(t, "t")
    return _out(_f(pq, t) * t**pq.sym_exponent)


def sharp(pq: ExponentPair, t: ArrayLike) -> ArrayLike:
    """Involution f#(t) = t f(1/t)."""
    t = _positive(t, "t")
    return _out(t * _f(pq, 1.0 / t))


def mc_function(pq: ExponentPair, x: ArrayLike, y: ArrayLike) -> ArrayLike:
    """Morozova-Chentsov function

        c(x, y) = (q/p) (x^p - y^p)/(x^q - y^q) (xy)^(-(1-q+p)/2),

    which equals 1/(y g(x/y)). The differences are formed as
    y^s expm1(s log(x/y)); within a relative gap of 1e-8 the diagonal form
    1/(y g(x/y)) is used instead.
    """
    x = _positive(x, "x")
    y = _positive(y, "y")
    x, y = np.broadcast_arrays(x, y)
    p, q, sym = pq.p, pq.q, pq.sym_exponent
    u = x / y
    near = np.abs(x - y) < NEAR_DIAGONAL * np.maximum(x, y)
    diag = 1.0 / (y * _f(pq, u) * u**sym)
    if pq.is_trivial:
        off = (x * y) ** -0.5
    else:
        log_u = np.log(u)
        with np.errstate(divide="ignore", invalid="ignore"):
            off = (q / p) * np.expm1(p * log_u) / np.expm1(q * log_u) * y ** (p - q) * (x * y) ** (-sym)
    return _out(np.where(near, diag, off))


def fop_weight(pq: ExponentPair, lam: ArrayLike) -> ArrayLike:
    """Weight of g in the canonical representation of symmetric operator
    monotone functions: (1-q+p)/2 + h(lambda), for lambda in (0, 1]."""
    lam = _unit_interval(lam, "lambda")
    return _out(pq.sym_exponent + np.asarray(weight_h(pq, lam)))
