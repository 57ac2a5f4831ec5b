"""
Splitting an edge signal into gradient, curl, and harmonic parts, and
reading the Laplacian spectrum that organizes the split.
"""

import numpy as np

from gssc import (Real, canonical_complex, courant_fischer_check, eig_sym,
                  hodge_decompose, laplacian, random_chain, random_complex,
                  spectral_bases, to_chain_complex)

rng = np.random.default_rng(3)
rep = to_chain_complex(random_complex(9, 0.5, 0.6, seed=5))
print("complex:", [rep.n_cells(k) for k in range(rep.dim + 1)], "cells")

# Any edge chain splits orthogonally into a curl part (boundary of a
# 2-chain), a gradient part (coboundary of a vertex chain), and a
# harmonic remainder that the Laplacian annihilates.
x = random_chain(rep, 1, Real(), rng)
res = hodge_decompose(x)
parts = {name: np.linalg.norm(np.asarray(getattr(res, name).values,
                                         dtype=float))
         for name in ("x1", "x0", "x_neg1")}
total = np.linalg.norm(np.asarray(x.values, dtype=float))
print("\nnorms: curl part %.4f, harmonic %.4f, gradient %.4f"
      % (parts["x1"], parts["x0"], parts["x_neg1"]))
print("pythagoras check: %.4f vs %.4f"
      % (np.sqrt(sum(v * v for v in parts.values())), total))
print("certificate residuals:", {k: f"{v:.1e}"
                                 for k, v in res.residuals.items()})

# The degree-1 Laplacian eigenvalues for the projective plane: no zero
# eigenvalue, so no harmonic edge signals live there.
rp2 = canonical_complex("rp2")
spec = eig_sym(laplacian(rp2, 1))
print("\nrp2 L_1 eigenvalues:", np.round(spec.eigenvalues, 10))
print("zero eigenvalues:", spec.n_zero)

# spectral_bases picks orthonormal bases for the three subspaces,
# sorted by frequency, truncated to a requested budget.
bases = spectral_bases(rep, 1, n_irr=5, n_sol=5)
print("\nbasis sizes: harmonic", bases.U0.shape[1],
      "irrotational", bases.U_irr.shape[1],
      "solenoidal", bases.U_sol.shape[1])
print("lowest irrotational frequencies:",
      np.round(bases.irr_eigenvalues[:3], 6))

# On graphs the vertex Laplacian eigenvalues obey the classical
# min-max variational principle.  courant_fischer_check recomputes
# one eigenvalue both ways and reports the gap.
graph = to_chain_complex(random_complex(10, 0.5, 0.0, seed=1))
lhs, rhs, gap = courant_fischer_check(graph, l=3)
print("\nthird graph frequency: eigensolver %.6f, variational %.6f, "
      "gap %.1e" % (lhs, rhs, gap))
