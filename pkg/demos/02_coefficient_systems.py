"""
One complex, four kinds of coefficients.

Chains assign a value to every cell of a fixed degree.  The value type
is pluggable: reals, integers, integers mod n, or whole functions of
time.  The same boundary and norm machinery runs over each.
"""

import numpy as np

from gssc import (ChainVector, FourierFn, Integer, ModN, Real,
                  apply_boundary, canonical_complex, eval_fn, homology_field,
                  norm_p)

cyc = canonical_complex("cycle(4)")

# Real coefficients: the usual edge flow.
flow = ChainVector(cyc, 1, Real(), [1.0, -0.5, 2.0, 0.25])
print("real flow:", np.asarray(flow.values, dtype=float))
print("  2-norm:", norm_p(flow, 2))
print("  boundary at each vertex:",
      np.asarray(apply_boundary(flow).values, dtype=float))

# Integer coefficients stay exact.  Scaling by 0.5 is refused rather
# than silently rounded.
count = ChainVector(cyc, 1, Integer(), [3, -1, 0, 2])
print("\ninteger chain 1-norm:", norm_p(count, 1))

# Mod-2 coefficients forget orientation: 1 + 1 = 0.
par = ModN(2)
a = ChainVector(cyc, 1, par, [1, 1, 0, 0])
b = ChainVector(cyc, 1, par, [0, 1, 1, 0])
from gssc import add
print("\nmod-2 sum of (1,1,0,0) and (0,1,1,0):",
      list(add(a, b).values))

# Function-valued coefficients: each edge carries a trigonometric
# polynomial stored by its orthonormal Fourier coefficients on
# [-pi, pi].  The chain norm integrates the squared function over time
# and sums across edges.
fn = FourierFn(2)
coeffs = np.zeros((4, fn.n_coeffs))
coeffs[0, 1] = 1.0
wave = ChainVector(cyc, 1, fn, coeffs)
print("\nfunction-valued chain norm:", norm_p(wave, 2))
print("edge 0 evaluated at t = pi/2:",
      eval_fn(fn, coeffs[0], np.pi / 2))

# The coefficient system changes what homology sees.  Over the reals
# the projective plane has no degree-1 homology at all; over Z/2 the
# torsion class becomes an honest dimension.
rp2 = canonical_complex("rp2")
print("\nrp2 dim H_1 over R:   ", homology_field(rp2, 1, Real()))
print("rp2 dim H_1 over Z/2: ", homology_field(rp2, 1, ModN(2)))
