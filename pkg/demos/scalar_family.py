"""Tour of the scalar family f(t) = (p/q)(t^q - 1)/(t^p - 1).

Prints f and its relatives for one exponent pair, then looks at the
imaginary part of the analytic extension and at the weight h on the
negative real axis, including the regime q - p > 1/2 where h passes 1/2.

    python demos/scalar_family.py
"""

import numpy as np

from monofun import (
    ComplexPoint,
    ExponentPair,
    beta_closed_form,
    eval_f,
    eval_f_complex,
    eval_g,
    im_log_parts,
    mc_function,
    sharp,
    weight_h,
)

pq = ExponentPair(0.5, 1.0)
print(f"p={pq.p}, q={pq.q}: f = (1 + sqrt t)/2")
for t in (0.25, 1.0, 4.0, 100.0):
    print(f"  t={t:7.2f}  f={eval_f(pq, t):.6f}  g={eval_g(pq, t):.6f}  f#={sharp(pq, t):.6f}")

# g sits between f and f# as their geometric mean
t = 9.0
print(f"\ng(9)^2 = {eval_g(pq, t) ** 2:.12f},  f(9) f#(9) = {eval_f(pq, t) * sharp(pq, t):.12f}")
print(f"c(4, 1) = {mc_function(pq, 4.0, 1.0):.12f}, c(1, 4) = {mc_function(pq, 1.0, 4.0):.12f}")
print(f"beta = {beta_closed_form(pq):.15f} = log|f(i)| = {np.log(abs(eval_f_complex(pq, ComplexPoint(1.0, np.pi / 2)))):.15f}")

# the extension maps the upper half-plane into itself
pq = ExponentPair(0.3, 0.9)
r = np.logspace(-3, 3, 61)
theta = np.linspace(0.05, np.pi - 0.05, 61)
rr, tt = np.meshgrid(r, theta)
z = ComplexPoint(rr, tt)
print(f"\np={pq.p}, q={pq.q}: min Im f over the grid = {np.min(np.imag(eval_f_complex(pq, z))):.3e}")
a, b = im_log_parts(pq, z)
print(f"  min b = {np.min(b):.3e}; a < 0 at {np.count_nonzero(np.asarray(a) <= 0)} of {a.size} points")
print("  arg f stays below (q - p) pi, so a can turn negative once q - p > 1/2")

lam = np.logspace(-4, 8, 7)
for pq in (ExponentPair(0.3, 0.7), ExponentPair(0.05, 1.0)):
    h = weight_h(pq, lam)
    print(f"\nweight h for p={pq.p}, q={pq.q} (q - p = {pq.q - pq.p:.2f})")
    for x, v in zip(lam, h):
        print(f"  lambda={x:9.1e}  h={v:.6f}")
