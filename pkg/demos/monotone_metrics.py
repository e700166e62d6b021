"""Monotone metrics built from the Morozova-Chentsov function of (p, q).

Evaluates K_rho(A, A) on a qubit and on a random state, shows that it
shrinks under a few channels, then runs the randomised axiom checks.

    python demos/monotone_metrics.py
"""

import numpy as np

from monofun import ExponentPair, StochasticMap, apply_stochastic, axiom_suite, metric_eval
from monofun.matrix import haar_unitary
from monofun.metric import random_density

sx = np.array([[0.0, 1.0], [1.0, 0.0]])
sz = np.diag([1.0, -1.0])
for pq in (ExponentPair(0.5, 1.0), ExponentPair(0.1, 0.9), ExponentPair(1.0, 1.0)):
    rho = np.diag([0.9, 0.1])
    print(f"p={pq.p}, q={pq.q}: K(sz, sz) = {metric_eval(pq, rho, sz).real:.6f}, K(sx, sx) = {metric_eval(pq, rho, sx).real:.6f}")
print("the commuting direction sz gives the classical value 1/0.9 + 1/0.1 for every pair")

rng = np.random.default_rng(7)
pq = ExponentPair(0.3, 0.8)
rho = random_density(rng, 4)
a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
base = metric_eval(pq, rho, a).real
print(f"\nrandom 4x4 state, K(A, A) = {base:.6f}")
channels = {
    "unitary": StochasticMap.unitary(haar_unitary(rng, 4)),
    "pinching": StochasticMap.pinching([2, 2]),
    "partial trace": StochasticMap.partial_trace((2, 2)),
    "random Kraus": StochasticMap.random(rng, 4),
}
for name, channel in channels.items():
    t_rho = apply_stochastic(channel, rho)
    after = metric_eval(pq, t_rho / np.trace(t_rho).real, apply_stochastic(channel, a)).real
    print(f"  after {name:13s} {after:.6f}  ratio {after / base:.4f}")

for dim in (2, 3, 4):
    rep = axiom_suite(pq, dim, 200, rng_seed=1)
    print(f"dim {dim}: {rep.violations} violations, worst contraction excess {rep.worst_contraction_excess:.2e}, channels {rep.channel_kinds}")
