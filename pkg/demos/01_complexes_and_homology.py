"""
Building simplicial and delta complexes, then reading off their homology.
"""

import numpy as np

from gssc import (SimplicialComplex, canonical_complex, homology_Z,
                  random_complex, smith_normal_form, to_chain_complex,
                  validate)

# A hollow triangle: three vertices, three edges, no filled face.
hollow = SimplicialComplex(3, [[], [(0, 1), (0, 2), (1, 2)]])
rep = to_chain_complex(hollow)
print("hollow triangle boundary matrix B_1:")
print(np.asarray(rep.boundary_matrix(1), dtype=int))

# H_0 counts connected components, H_1 counts independent loops.
print("H_0 =", homology_Z(rep, 0))
print("H_1 =", homology_Z(rep, 1))

# Filling the face kills the loop.
filled = canonical_complex("filled_triangle")
print("after filling: H_1 =", homology_Z(filled, 1))

# Some spaces need explicit boundary matrices because their cells glue
# to themselves.  The projective plane is the classic case: its single
# torsion class is invisible over the reals but shows up as an
# invariant factor of the degree-2 boundary map.
rp2 = canonical_complex("rp2")
print("\nprojective plane, cells per degree:",
      [rp2.n_cells(k) for k in range(rp2.dim + 1)])
for k in range(rp2.dim + 1):
    print(f"H_{k} =", homology_Z(rp2, k))

snf = smith_normal_form(rp2.boundary_matrix(2))
print("invariant factors of B_2:", snf.invariant_factors)
print("certificate check U B V == S:", snf.verify(rp2.boundary_matrix(2)))

# The torus has no torsion, just two independent loops.
torus = canonical_complex("torus")
print("\ntorus:", ", ".join(f"H_{k} = {homology_Z(torus, k)}"
                            for k in range(torus.dim + 1)))

# Random complexes are handy for stress tests.  validate() replays the
# composition law B_k B_{k+1} == 0 entry by entry in exact integers.
sc = random_complex(8, 0.5, 0.6, seed=7)
rep = to_chain_complex(sc)
report = validate(rep)
print("\nrandom complex on 8 vertices:",
      [rep.n_cells(k) for k in range(rep.dim + 1)], "cells,",
      "valid" if report.ok else f"INVALID {report.failures[:3]}")
print("betti numbers:", [homology_Z(rep, k).betti
                         for k in range(rep.dim + 1)])
