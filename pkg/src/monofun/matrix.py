"""Dense Hermitian matrices: eigendecomposition, functional calculus, the
Loewner order, and randomised trials of operator monotonicity.

The trial suite works on stacks of matrices and uses LAPACK (numpy) for its
eigensolves; :func:`eigh` defaults to a cyclic Jacobi solver and the two are
cross-checked in the tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Sequence, Union

import numpy as np

from .errors import ConvergenceError, DimensionError, DomainError
from .scalar import ExponentPair, _f, eval_g, sharp

__all__ = [
    "HermitianMatrix",
    "EigenSystem",
    "MonotonicityReport",
    "eigh",
    "jacobi_eigh",
    "apply_function",
    "loewner_leq",
    "sample_ordered_pair",
    "monotonicity_suite",
    "matrix_from_json",
    "matrix_to_json",
    "load_matrix",
    "haar_unitary",
]

Seed = Union[int, Sequence[int]]
ScalarMap = Union[str, Callable[[np.ndarray], np.ndarray]]

# relative Hermiticity defect above which a matrix is rejected outright
MAX_DEFECT = 1e-8
JACOBI_SWEEPS = 30


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Square complex matrix, symmetrised as (M + M*)/2 on construction.

    ``defect`` records max |M - M*| of the input. Inputs whose defect exceeds
    ``1e-8 * max(1, max|M|)`` are rejected as not Hermitian at all.
    """

    entries: np.ndarray
    defect: float = field(init=False)

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
        defect = float(np.max(np.abs(m - m.conj().T)))
        if defect > MAX_DEFECT * max(1.0, float(np.max(np.abs(m)))):
            raise DomainError(f"matrix is not Hermitian (defect {defect:.3e})")
        m = 0.5 * (m + m.conj().T)
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "defect", defect)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __repr__(self):
        return f"HermitianMatrix(dim={self.dim}, defect={self.defect:.1e})"


@dataclass(frozen=True)
class EigenSystem:
    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


@dataclass(frozen=True)
class MonotonicityReport:
    trials: int
    failures: int
    worst_violation: float
    seed: int
    which: str = "f"
    tol: float = 1e-9
    failures_by_dim: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _as_array(A) -> np.ndarray:
    if isinstance(A, HermitianMatrix):
        return A.entries
    return HermitianMatrix(A).entries


def jacobi_eigh(a: np.ndarray, max_sweeps: int = JACOBI_SWEEPS) -> EigenSystem:
    """Cyclic Jacobi diagonalisation of a complex Hermitian matrix.

    Each pivot (p, q) is removed with the unitary P R, where
    P = diag(1, e^{-i phi}) makes the pivot real and R is the real Jacobi
    rotation of the resulting 2x2 block.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    threshold = np.finfo(float).eps * scale
    for _ in range(max_sweeps + 1):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                beta = abs(apq)
                if beta <= 1e-3 * threshold:
                    continue
                alpha, gamma = a[p, p].real, a[q, q].real
                phase = apq / beta
                zeta = (gamma - alpha) / (2.0 * beta)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.sqrt(zeta * zeta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ g
                a[p, q] = a[q, p] = 0.0
                a[p, p] = alpha - t * beta
                a[q, q] = gamma + t * beta
    else:
        raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    return EigenSystem(values[order], v[:, order])


def eigh(A, method: str = "jacobi") -> EigenSystem:
    """Eigenvalues (ascending) and unitary eigenvectors of a Hermitian matrix.

    ``method`` is ``"jacobi"`` (default) or ``"lapack"``.
    """
    a = _as_array(A)
    if method == "jacobi":
        return jacobi_eigh(a)
    if method == "lapack":
        w, v = np.linalg.eigh(a)
        return EigenSystem(w, v)
    raise ValueError(f"unknown eigensolver {method!r}")


def _scalar_map(pq: ExponentPair | None, which: ScalarMap) -> Callable[[np.ndarray], np.ndarray]:
    if callable(which):
        return which
    if which == "f":
        return lambda x: _f(pq, x)
    if which == "g":
        return lambda x: np.asarray(eval_g(pq, x))
    if which == "sharp":
        return lambda x: np.asarray(sharp(pq, x))
    raise ValueError(f"unknown function {which!r}; expected 'f', 'g' or 'sharp'")


def _check_positive(values: np.ndarray):
    norm = np.max(np.abs(values), axis=-1)
    low = values[..., 0]
    bad = ~(low > 1e-12 * norm)
    if np.any(bad):
        worst = float(np.min(low))
        raise DomainError(f"matrix is not positive definite (eigenvalue {worst:.3e})")


def _spectral_map(phi, values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    fv = np.asarray(phi(values), dtype=float)
    out = (vectors * fv[..., None, :]) @ vectors.conj().swapaxes(-1, -2)
    # a constant spectrum maps to an exact multiple of the identity
    flat = np.all(fv == fv[..., :1], axis=-1)
    if np.any(flat):
        n = values.shape[-1]
        out[flat] = fv[flat][:, :1, None] * np.eye(n)
    return 0.5 * (out + out.conj().swapaxes(-1, -2))


def apply_function(pq: ExponentPair, which: ScalarMap, A, method: str = "jacobi") -> HermitianMatrix:
    """phi(A) = U diag(phi(d)) U* for phi in {f, g, sharp} (or a callable).

    A must be positive definite: every eigenvalue above 1e-12 ||A||.
    """
    es = eigh(A, method=method)
    _check_positive(es.values)
    phi = _scalar_map(pq, which)
    return HermitianMatrix(_spectral_map(phi, es.values[None], es.vectors[None])[0])


def _order_bound(diff_values: np.ndarray, operand_norm, tol: float, dim: int):
    """Allowed negativity of the smallest eigenvalue of a difference.

    ``tol`` is relative to the spectral norm of the difference (absolute when
    the difference vanishes); on top of that, a rounding floor of
    ``10 * dim * eps`` times the operands' norm is always granted.
    """
    norm = np.max(np.abs(diff_values), axis=-1)
    rel = np.where(norm > 0, tol * norm, tol)
    return rel + 10.0 * dim * np.finfo(float).eps * operand_norm


def loewner_leq(A, B, tol: float = 0.0, method: str = "jacobi") -> bool:
    """True when B - A is positive semidefinite up to tolerance.

    The smallest eigenvalue of B - A must be at least -tol * ||B - A||
    (spectral norm), or -tol when B == A, less a rounding floor proportional
    to max(||A||, ||B||).
    """
    a, b = _as_array(A), _as_array(B)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if tol < 0:
        raise DomainError("tol must be non-negative")
    values = eigh(b - a, method=method).values
    operand_norm = max(np.linalg.norm(a, 2), np.linalg.norm(b, 2))
    return bool(values[0] >= -_order_bound(values, operand_norm, tol, a.shape[0]))


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    qm, r = np.linalg.qr(z)
    d = np.diag(r)
    return qm * (d / np.abs(d))


def _draw_pair(rng: np.random.Generator, dim: int, scale: float):
    spectrum = rng.uniform(0.1 * scale, scale, dim)
    u = haar_unitary(rng, dim)
    a = (u * spectrum) @ u.conj().T
    rank = int(rng.integers(1, dim + 1))
    c = (rng.standard_normal((rank, dim)) + 1j * rng.standard_normal((rank, dim))) * np.sqrt(scale / (2.0 * dim))
    b = a + c.conj().T @ c
    return 0.5 * (a + a.conj().T), 0.5 * (b + b.conj().T)


def sample_ordered_pair(dim: int, scale: float, rng_seed: Seed) -> tuple[HermitianMatrix, HermitianMatrix]:
    """Random pair A <= B.

    A = U diag(d) U* with U Haar-distributed and d uniform in
    [0.1 scale, scale]; B = A + C*C for a complex Gaussian C of random rank.
    """
    if not 2 <= dim <= 8:
        raise DomainError("dim must lie in [2, 8]")
    if not scale > 0:
        raise DomainError("scale must be positive")
    a, b = _draw_pair(np.random.default_rng(rng_seed), dim, scale)
    return HermitianMatrix(a), HermitianMatrix(b)


@lru_cache(maxsize=64)
def _pair_stack(dim: int, scale: float, rng_seed: int, trials: int):
    pairs = [_draw_pair(np.random.default_rng((rng_seed, dim, k)), dim, scale) for k in range(trials)]
    a = np.stack([x for x, _ in pairs])
    b = np.stack([y for _, y in pairs])
    a.setflags(write=False)
    b.setflags(write=False)
    return a, b


def monotonicity_suite(
    pq: ExponentPair | None,
    which: ScalarMap = "f",
    dims: Sequence[int] = (2, 3, 4, 5, 6),
    trials_per_dim: int = 1000,
    tol: float = 1e-9,
    rng_seed: int = 0,
    scale: float = 1.0,
) -> MonotonicityReport:
    """Check phi(A) <= phi(B) over random ordered pairs A <= B.

    Trial k in dimension n draws its pair from the stream seeded by
    (rng_seed, n, k), so results do not depend on evaluation order. A trial
    fails when phi(A) <= phi(B) is rejected by the rule of :func:`loewner_leq`.
    """
    phi = _scalar_map(pq, which)
    failures = 0
    worst = np.inf
    by_dim = {}
    for dim in dims:
        if not 2 <= dim <= 8:
            raise DomainError("dims must lie in [2, 8]")
        a, b = _pair_stack(int(dim), float(scale), int(rng_seed), int(trials_per_dim))
        wa, va = np.linalg.eigh(a)
        wb, vb = np.linalg.eigh(b)
        _check_positive(wa)
        _check_positive(wb)
        fa, fb = _spectral_map(phi, wa, va), _spectral_map(phi, wb, vb)
        ev = np.linalg.eigvalsh(fb - fa)
        lowest = ev[:, 0]
        operand_norm = np.maximum(np.linalg.norm(fa, 2, axis=(-2, -1)), np.linalg.norm(fb, 2, axis=(-2, -1)))
        bound = _order_bound(ev, operand_norm, tol, int(dim))
        n_fail = int(np.count_nonzero(lowest < -bound))
        by_dim[int(dim)] = n_fail
        failures += n_fail
        worst = min(worst, float(lowest.min()))
    label = which if isinstance(which, str) else getattr(which, "__name__", "callable")
    return MonotonicityReport(
        trials=len(dims) * trials_per_dim,
        failures=failures,
        worst_violation=float(worst),
        seed=int(rng_seed),
        which=label,
        tol=tol,
        failures_by_dim=by_dim,
    )


def matrix_from_json(obj) -> np.ndarray:
    """Parse ``{"dim": n, "re": [[...]], "im": [[...]]}`` into a complex array.

    ``im`` may be omitted for real matrices.
    """
    try:
        n = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros((n, n))), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed matrix object: {exc}") from exc
    if re.shape != (n, n) or im.shape != (n, n):
        raise DimensionError(f"matrix arrays must be {n}x{n}, got {re.shape} and {im.shape}")
    return re + 1j * im


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"dim": m.shape[0], "re": m.real.tolist(), "im": m.imag.tolist()}


def load_matrix(path, hermitian: bool = True):
    """Read a matrix file; returns a :class:`HermitianMatrix` unless
    ``hermitian`` is false, in which case the raw complex array."""
    with open(Path(path)) as fh:
        m = matrix_from_json(json.load(fh))
    return HermitianMatrix(m) if hermitian else m
