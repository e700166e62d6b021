"""Rebuild f and g from their integral representations by quadrature.

Each reconstruction is compared with the closed form; the printed error
estimate is what the adaptive engine reports for the quadrature.

    python demos/integral_representations.py
"""

import numpy as np

from monofun import (
    ExponentPair,
    ando_average,
    canonical_reconstruct,
    eval_f,
    eval_g,
    exponential_reconstruct,
    extract_weight_numeric,
    fop_reconstruct,
    fop_weight,
)

pq = ExponentPair(0.2, 0.9)
print(f"p={pq.p}, q={pq.q}")
print(f"{'t':>8} {'closed form':>18} {'average':>10} {'canonical':>10} {'exponential':>12}")
for t in (1e-3, 0.1, 1.0, 10.0, 1e3):
    ref = float(eval_f(pq, t))
    errs = [abs(rep(pq, t).value - ref) for rep in (ando_average, canonical_reconstruct, exponential_reconstruct)]
    print(f"{t:8.0e} {ref:18.12f} " + " ".join(f"{e:10.1e}" for e in errs[:2]) + f" {errs[2]:12.1e}")

out = canonical_reconstruct(pq, 5.0)
print(f"\ncanonical at t=5: {out.value:.14f} +- {out.abs_error_estimate:.1e} using {out.evaluations} evaluations")

# no linear term: f(t)/t keeps falling
for t in (1e4, 1e6, 1e8):
    print(f"  f({t:.0e})/t = {canonical_reconstruct(pq, t).value / t:.3e}")

print("\ng from its weight on [0, 1]")
for t in (0.01, 0.5, 4.0, 100.0):
    v = fop_reconstruct(pq, t).value
    w = t * fop_reconstruct(pq, 1 / t).value
    print(f"  t={t:6.2f}  rebuilt={v:.12f}  exact={float(eval_g(pq, t)):.12f}  t*g(1/t)={w:.12f}")

print("\nweight recovered from boundary values at lambda = 0.5")
target = float(fop_weight(pq, 0.5))
for eps in 10.0 ** -np.arange(2, 8):
    print(f"  eps={eps:.0e}  error={abs(extract_weight_numeric(pq, 0.5, eps) - target):.2e}")
