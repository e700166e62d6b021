"""Randomised operator monotonicity trials.

Draws ordered pairs A <= B and checks f(A) <= f(B). The square map is
monotone on numbers but not on matrices, and the same trials catch it.

    python demos/operator_monotonicity.py
"""

import numpy as np

from monofun import ExponentPair, apply_function, loewner_leq, monotonicity_suite, sample_ordered_pair

a, b = sample_ordered_pair(3, 1.0, rng_seed=2024)
pq = ExponentPair(0.3, 0.9)
fa, fb = apply_function(pq, "f", a), apply_function(pq, "f", b)
print("A <= B:", loewner_leq(a, b))
print("f(A) <= f(B):", loewner_leq(fa, fb))
print("eigenvalues of f(B) - f(A):", np.round(np.linalg.eigvalsh(np.asarray(fb) - np.asarray(fa)), 6))

for pq in (ExponentPair(0.5, 1.0), ExponentPair(0.05, 0.95), ExponentPair(0.9, 1.0)):
    for which in ("f", "g"):
        rep = monotonicity_suite(pq, which, dims=(2, 3, 4, 5, 6), trials_per_dim=1000)
        print(f"p={pq.p}, q={pq.q}, {which}: {rep.failures} failures in {rep.trials}, lowest eigenvalue {rep.worst_violation:.2e}")


def square(t):
    return t * t


rep = monotonicity_suite(None, square, dims=(2,), trials_per_dim=1000)
print(f"t -> t^2: {rep.failures} failures in {rep.trials}, lowest eigenvalue {rep.worst_violation:.3f}")
