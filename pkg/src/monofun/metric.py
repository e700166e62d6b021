"""Monotone metrics K_rho(A, B) = tr A* c(L_rho, R_rho) B on density matrices,
stochastic (CPTP) maps in Kraus form, and a randomised check of the
monotone-metric axioms.

In the eigenbasis rho = U diag(d) U*, the left and right multiplication
operators act on the matrix units E_ij by d_i and d_j, so

    K_rho(A, B) = sum_ij conj(A~_ij) c(d_i, d_j) B~_ij,   X~ = U* X U.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DimensionError, DomainError
from .matrix import HermitianMatrix, eigh, haar_unitary, matrix_to_json
from .scalar import ExponentPair, mc_function

__all__ = [
    "DensityMatrix",
    "MetricValue",
    "StochasticMap",
    "AxiomReport",
    "metric_eval",
    "apply_stochastic",
    "axiom_suite",
    "random_density",
    "load_channel",
]

TRACE_TOL = 1e-12
MIN_EIGENVALUE = 1e-10
CPTP_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Positive definite matrix with unit trace."""

    underlying: HermitianMatrix

    def __post_init__(self):
        h = self.underlying
        if not isinstance(h, HermitianMatrix):
            h = HermitianMatrix(h)
            object.__setattr__(self, "underlying", h)
        trace = np.trace(h.entries).real
        if abs(trace - 1.0) > TRACE_TOL:
            raise DomainError(f"density matrix must have unit trace, got {trace!r}")
        lowest = float(np.linalg.eigvalsh(h.entries)[0])
        if not lowest > MIN_EIGENVALUE:
            raise DomainError(f"density matrix must be positive definite, smallest eigenvalue {lowest:.3e}")

    @property
    def entries(self) -> np.ndarray:
        return self.underlying.entries

    @property
    def dim(self) -> int:
        return self.underlying.dim


@dataclass(frozen=True)
class MetricValue:
    value: complex

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag


def _as_density(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


def _general(x) -> np.ndarray:
    if isinstance(x, HermitianMatrix):
        return x.entries
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {x.shape}")
    return x


class _Kernel:
    """Eigenbasis of rho and the matrix c(d_i, d_j), reusable across calls."""

    def __init__(self, pq: ExponentPair, rho: DensityMatrix, method: str = "jacobi"):
        es = eigh(rho.underlying, method=method)
        d = np.clip(es.values, MIN_EIGENVALUE, None)
        self.u = es.vectors
        self.c = np.asarray(mc_function(pq, d[:, None], d[None, :]))
        self.dim = rho.dim

    def __call__(self, a: np.ndarray, b: np.ndarray) -> complex:
        if a.shape != (self.dim, self.dim) or b.shape != (self.dim, self.dim):
            raise DimensionError(f"operands must be {self.dim}x{self.dim}, got {a.shape} and {b.shape}")
        uh = self.u.conj().T
        at = uh @ a @ self.u
        bt = uh @ b @ self.u
        return complex(np.sum(at.conj() * self.c * bt))


def metric_eval(pq: ExponentPair, rho, A, B=None, method: str = "jacobi") -> MetricValue:
    """K_rho(A, B) for the Morozova-Chentsov function of the pair (p, q).

    A and B may be arbitrary complex matrices; B defaults to A.
    """
    kernel = _Kernel(pq, _as_density(rho), method)
    a = _general(A)
    b = a if B is None else _general(B)
    return MetricValue(kernel(a, b))


@dataclass(frozen=True, eq=False)
class StochasticMap:
    """Completely positive, trace-preserving map X -> sum_k K_k X K_k*.

    Every kind is stored as its Kraus list; ``params`` keeps the parameters
    the map was built from.
    """

    kind: str
    kraus: tuple
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        ops = tuple(np.array(k, dtype=complex) for k in self.kraus)
        if not ops:
            raise DomainError("a stochastic map needs at least one Kraus operator")
        shape = ops[0].shape
        if any(k.ndim != 2 or k.shape != shape for k in ops):
            raise DimensionError("Kraus operators must share one 2-d shape")
        total = sum(k.conj().T @ k for k in ops)
        defect = float(np.max(np.abs(total - np.eye(shape[1]))))
        if defect > CPTP_TOL:
            raise DomainError(f"Kraus operators are not trace preserving (defect {defect:.3e})")
        for k in ops:
            k.setflags(write=False)
        object.__setattr__(self, "kraus", ops)

    @property
    def in_dim(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def out_dim(self) -> int:
        return self.kraus[0].shape[0]

    @classmethod
    def identity(cls, dim: int) -> "StochasticMap":
        return cls("kraus", (np.eye(dim),), {"label": "identity"})

    @classmethod
    def unitary(cls, u) -> "StochasticMap":
        u = np.asarray(u, dtype=complex)
        return cls("unitary_conjugation", (u,), {"unitary": u})

    @classmethod
    def pinching(cls, blocks: Sequence[int], basis=None) -> "StochasticMap":
        """X -> sum_i P_i X P_i for projectors onto consecutive coordinate
        blocks of the given sizes, optionally in the basis given by the
        columns of the unitary ``basis``."""
        n = int(sum(blocks))
        if any(b < 1 for b in blocks):
            raise DomainError("block sizes must be positive")
        v = np.eye(n) if basis is None else np.asarray(basis, dtype=complex)
        ops = []
        start = 0
        for size in blocks:
            cols = v[:, start : start + size]
            ops.append(cols @ cols.conj().T)
            start += size
        return cls("pinching", tuple(ops), {"blocks": list(blocks)})

    @classmethod
    def partial_trace(cls, dims: tuple[int, int], traced: int = 1) -> "StochasticMap":
        """Trace out factor ``traced`` (0 or 1) of C^d0 (x) C^d1."""
        d0, d1 = dims
        if traced == 1:
            ops = [np.kron(np.eye(d0), np.eye(d1)[j][None, :]) for j in range(d1)]
        elif traced == 0:
            ops = [np.kron(np.eye(d0)[j][None, :], np.eye(d1)) for j in range(d0)]
        else:
            raise DomainError("traced must be 0 or 1")
        return cls("partial_trace", tuple(ops), {"dims": [d0, d1], "traced": traced})

    @classmethod
    def from_kraus(cls, ops) -> "StochasticMap":
        return cls("kraus", tuple(ops))

    @classmethod
    def random(cls, rng: np.random.Generator, dim: int, n_ops: int = 2) -> "StochasticMap":
        """Random channel: Gaussian G_k, normalised as K_k = G_k S^(-1/2)
        with S = sum_k G_k* G_k."""
        g = [rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)) for _ in range(n_ops)]
        s = sum(x.conj().T @ x for x in g)
        w, v = np.linalg.eigh(s)
        inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
        return cls("kraus", tuple(x @ inv_sqrt for x in g))

    def to_json(self) -> dict:
        return {"kind": self.kind, "kraus": [matrix_to_json(k) for k in self.kraus]}

    @classmethod
    def from_json(cls, obj) -> "StochasticMap":
        if obj.get("kind") not in {"unitary_conjugation", "pinching", "partial_trace", "kraus"}:
            raise DomainError(f"unknown channel kind {obj.get('kind')!r}")
        ops = []
        for m in obj["kraus"]:
            # Kraus operators may be rectangular, so "dim" is not enforced here
            ops.append(np.asarray(m["re"], dtype=float) + 1j * np.asarray(m.get("im", np.zeros_like(m["re"])), dtype=float))
        return cls(obj["kind"], tuple(ops))


def load_channel(path) -> StochasticMap:
    with open(Path(path)) as fh:
        return StochasticMap.from_json(json.load(fh))


def apply_stochastic(T: StochasticMap, X) -> np.ndarray:
    """sum_k K_k X K_k*."""
    x = _general(X)
    if x.shape[0] != T.in_dim:
        raise DimensionError(f"map acts on {T.in_dim}x{T.in_dim} matrices, got {x.shape}")
    return sum(k @ x @ k.conj().T for k in T.kraus)


def random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Wishart state mixed with the maximally mixed one; the smallest
    eigenvalue is at least 0.05/dim."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    w = g @ g.conj().T
    w /= np.trace(w).real
    eta = rng.uniform(0.05, 0.5)
    rho = (1.0 - eta) * w + eta * np.eye(dim) / dim
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def _random_traceless(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    h = 0.5 * (g + g.conj().T)
    h -= np.trace(h).real / dim * np.eye(dim)
    return h / np.linalg.norm(h, 2)


def _factor(dim: int):
    for d0 in range(2, int(math.isqrt(dim)) + 1):
        if dim % d0 == 0:
            return d0, dim // d0
    return None


@dataclass
class AxiomReport:
    p: float
    q: float
    dim: int
    trials: int
    seed: int
    positivity_violations: int = 0
    symmetry_violations: int = 0
    continuity_violations: int = 0
    contraction_violations: int = 0
    unitary_equality_violations: int = 0
    conjugate_only_symmetry: int = 0
    worst_contraction_excess: float = -math.inf
    channel_kinds: dict = field(default_factory=dict)

    @property
    def violations(self) -> int:
        return (
            self.positivity_violations
            + self.symmetry_violations
            + self.continuity_violations
            + self.contraction_violations
            + self.unitary_equality_violations
        )

    @property
    def passed(self) -> bool:
        return self.violations == 0


CONTINUITY_STEPS = (1e-3, 1e-4, 1e-5)


def axiom_suite(
    pq: ExponentPair,
    dim: int,
    trials: int,
    rng_seed: int = 0,
    contraction_slack: float = 1e-8,
    method: str = "jacobi",
) -> AxiomReport:
    """Randomised check of the four monotone-metric axioms.

    Trial k uses the stream seeded by (rng_seed, dim, k) and cycles through
    unitary conjugation, pinching, partial trace (when dim factorises) and a
    random two-operator channel. Per trial:

    1. K_rho(A, A) is real, and positive for the nonzero draw A.
    2. K_rho(A, B) == K_rho(B*, A*) to 1e-9 relative. If only the
       conjugated identity holds, it is logged in ``conjugate_only_symmetry``
       rather than counted as a violation.
    3. For a unit traceless Hermitian direction H and eps = 1e-3, 1e-4, 1e-5,
       |K_{rho+eps H}(A, A) - K_rho(A, A)| stays below
       10 eps K_rho(A, A)/lambda_min(rho), so it vanishes linearly in eps.
    4. K_{T rho}(TA, TA) <= K_rho(A, A) + slack, with equality to 1e-9
       relative for unitary channels.
    """
    if not 2 <= dim <= 6:
        raise DomainError("dim must lie in [2, 6]")
    kinds = ["unitary", "pinching", "kraus"]
    if _factor(dim):
        kinds.insert(2, "partial_trace")
    report = AxiomReport(pq.p, pq.q, dim, trials, rng_seed)
    seen = Counter()

    zero = np.zeros((dim, dim))
    if metric_eval(pq, np.eye(dim) / dim, zero, method=method).value != 0:
        report.positivity_violations += 1

    for k in range(trials):
        rng = np.random.default_rng((rng_seed, dim, k))
        rho_arr = random_density(rng, dim)
        rho = DensityMatrix(rho_arr)
        a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        b = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        kernel = _Kernel(pq, rho, method)

        kaa = kernel(a, a)
        scale = max(1.0, abs(kaa))
        if not (kaa.real > 0 and abs(kaa.imag) <= 1e-10 * scale):
            report.positivity_violations += 1

        kab = kernel(a, b)
        kba = kernel(b.conj().T, a.conj().T)
        sym_tol = 1e-9 * max(1.0, abs(kab))
        if abs(kab - kba) > sym_tol:
            report.symmetry_violations += 1
            if abs(kab - kba.conjugate()) <= sym_tol:
                report.conjugate_only_symmetry += 1

        h = _random_traceless(rng, dim)
        diffs = []
        for eps in CONTINUITY_STEPS:
            moved = _Kernel(pq, DensityMatrix(rho_arr + eps * h), method)
            diffs.append(abs(moved(a, a) - kaa))
        # Lipschitz-type bound: c(x, y) has log-derivative of order 1/x, so
        # |dK/d eps| is of order K / lambda_min for a unit-norm direction
        lam_min = float(np.linalg.eigvalsh(rho_arr)[0])
        # (a monotone decrease across the steps is not required: first- and
        # second-order terms can cancel at the largest step)
        if not all(d <= 10.0 * eps * scale / lam_min for d, eps in zip(diffs, CONTINUITY_STEPS)):
            report.continuity_violations += 1

        kind = kinds[k % len(kinds)]
        seen[kind] += 1
        if kind == "unitary":
            channel = StochasticMap.unitary(haar_unitary(rng, dim))
        elif kind == "pinching":
            cuts = sorted(rng.choice(np.arange(1, dim), size=rng.integers(1, dim), replace=False))
            blocks = np.diff([0, *cuts, dim]).tolist()
            basis = haar_unitary(rng, dim) if rng.random() < 0.5 else None
            channel = StochasticMap.pinching(blocks, basis)
        elif kind == "partial_trace":
            channel = StochasticMap.partial_trace(_factor(dim), traced=int(rng.integers(0, 2)))
        else:
            channel = StochasticMap.random(rng, dim)
        t_rho = apply_stochastic(channel, rho_arr)
        t_rho = t_rho / np.trace(t_rho).real
        t_a = apply_stochastic(channel, a)
        ktt = _Kernel(pq, DensityMatrix(t_rho), method)(t_a, t_a)
        excess = ktt.real - kaa.real
        report.worst_contraction_excess = max(report.worst_contraction_excess, excess)
        if excess > contraction_slack:
            report.contraction_violations += 1
        if kind == "unitary" and abs(excess) > 1e-9 * scale:
            report.unitary_equality_violations += 1

    report.channel_kinds = dict(sorted(seen.items()))
    return report
