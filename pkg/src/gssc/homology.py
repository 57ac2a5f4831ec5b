"""Integer and field homology of chain complexes, and simplicial seminorms.

The integer side is exact: Smith normal form over Z with unimodular
certificates gives ranks, Betti numbers and torsion (invariant factors of
the next boundary map that exceed 1).  All arithmetic uses Python ints, so
entries may grow without overflow.

Field homology is a rank count: dim H_k = dim ker B_k - rank B_{k+1}.  Over
the reals the ranks are numerical (tolerance delegated to `hodge`, the
single source of truth for spectral cutoffs); over Z/p they come from exact
modular elimination.
"""

from __future__ import annotations

import numpy as np

from . import gf2
from .coefficients import (ChainVector, FourierFn, Integer, ModN, Real,
                           norm_p, resolve_weights, zero_chain)
from .errors import UnsupportedError
from .hodge import numerical_rank


def _obj_identity(n):
    eye = np.zeros((n, n), dtype=object)
    for i in range(n):
        eye[i, i] = 1
    return eye


class SNFResult:
    """Diagonal form S = U @ B @ V with U, V unimodular and d_i | d_{i+1}."""

    def __init__(self, S, U, V, rank):
        self.S = S
        self.U = U
        self.V = V
        self.rank = rank

    @property
    def invariant_factors(self):
        return [int(self.S[i, i]) for i in range(self.rank)]

    def verify(self, original):
        """Exact check of the factorization and the divisibility chain."""
        original = np.asarray(original, dtype=object)
        if not np.array_equal(self.U @ original @ self.V, self.S):
            return False
        d = self.invariant_factors
        for a, b in zip(d, d[1:]):
            if b % a != 0:
                return False
        off = self.S.copy()
        for i in range(min(off.shape)):
            off[i, i] = 0
        return not off.any()


def smith_normal_form(matrix):
    """Smith normal form over Z with transformation certificates.

    Pivots are chosen with minimal absolute value, which keeps intermediate
    entries small in practice.  Row operations accumulate in U, column
    operations in V; each is a product of swaps, signed additions and
    negations, so det(U), det(V) are +-1.
    """
    A = np.asarray(matrix, dtype=object).copy()
    if A.ndim != 2:
        raise ValueError("need a 2-d matrix")
    m, n = A.shape
    for i in range(m):
        for j in range(n):
            A[i, j] = int(A[i, j])
    U = _obj_identity(m)
    V = _obj_identity(n)

    def row_add(dst, src, c):
        A[dst, :] += c * A[src, :]
        U[dst, :] += c * U[src, :]

    def col_add(dst, src, c):
        A[:, dst] += c * A[:, src]
        V[:, dst] += c * V[:, src]

    def row_swap(i, j):
        A[[i, j], :] = A[[j, i], :]
        U[[i, j], :] = U[[j, i], :]

    def col_swap(i, j):
        A[:, [i, j]] = A[:, [j, i]]
        V[:, [i, j]] = V[:, [j, i]]

    t = 0
    while t < min(m, n):
        # minimal-absolute-value pivot in the trailing block
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i, j]
                if a != 0 and (best is None or abs(a) < best):
                    best = abs(a)
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            row_swap(t, pivot[0])
        if pivot[1] != t:
            col_swap(t, pivot[1])
        while True:
            # clear the pivot column, swapping a smaller remainder up if any
            for i in range(t + 1, m):
                if A[i, t] != 0:
                    row_add(i, t, -(A[i, t] // A[t, t]))
            residue = [i for i in range(t + 1, m) if A[i, t] != 0]
            if residue:
                row_swap(t, min(residue, key=lambda i: abs(A[i, t])))
                continue
            for j in range(t + 1, n):
                if A[t, j] != 0:
                    col_add(j, t, -(A[t, j] // A[t, t]))
            residue = [j for j in range(t + 1, n) if A[t, j] != 0]
            if residue:
                col_swap(t, min(residue, key=lambda j: abs(A[t, j])))
                continue
            break
        # divisibility: the pivot must divide everything that remains
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i, j] % A[t, t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_add(t, bad, 1)
            continue  # redo elimination at the same t with a smaller pivot
        if A[t, t] < 0:
            A[t, :] = -A[t, :]
            U[t, :] = -U[t, :]
        t += 1

    rank = sum(1 for i in range(min(m, n)) if A[i, i] != 0)
    return SNFResult(A, U, V, rank)


def integer_rank(matrix):
    matrix = np.asarray(matrix, dtype=object)
    if matrix.size == 0:
        return 0
    return smith_normal_form(matrix).rank


def solve_integer(matrix, target):
    """One integer solution z of B z = target, or None when none exists."""
    B = np.asarray(matrix, dtype=object)
    m, n = B.shape
    t = np.asarray(target, dtype=object).reshape(m)
    snf = smith_normal_form(B)
    rhs = snf.U @ t
    y = np.zeros(n, dtype=object)
    for i in range(min(m, n)):
        d = snf.S[i, i]
        if d != 0:
            if rhs[i] % d != 0:
                return None
            y[i] = rhs[i] // d
        elif rhs[i] != 0:
            return None
    for i in range(min(m, n), m):
        if rhs[i] != 0:
            return None
    return snf.V @ y


def mod_p_rank(matrix, p):
    """Rank over Z/p by exact Gaussian elimination."""
    p = int(p)
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise UnsupportedError(f"{p} is not prime")
    B = np.asarray(matrix, dtype=object)
    if B.size == 0:
        return 0
    rows = [[int(x) % p for x in row] for row in B]
    m, n = len(rows), len(rows[0])
    rank = 0
    for col in range(n):
        pivot = next((i for i in range(rank, m) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for i in range(m):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == m:
            break
    return rank


class HomologySummary:
    """Betti number and torsion of one homology group."""

    def __init__(self, betti, torsion, coefficients="Z"):
        self.betti = int(betti)
        self.torsion = tuple(int(d) for d in torsion)
        self.coefficients = coefficients

    def __str__(self):
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append(f"Z^{self.betti}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def __eq__(self, other):
        if not isinstance(other, HomologySummary):
            return NotImplemented
        return (self.betti, self.torsion) == (other.betti, other.torsion)

    def __repr__(self):
        return f"HomologySummary(betti={self.betti}, torsion={list(self.torsion)})"


def homology_Z(rep, k):
    """H_k with integer coefficients: free rank plus invariant factors > 1."""
    if not 0 <= k <= rep.dim:
        raise UnsupportedError(f"degree {k} outside 0..{rep.dim}")
    rank_k = integer_rank(rep.boundary_matrix(k))
    snf_up = smith_normal_form(rep.boundary_matrix(k + 1))
    betti = rep.n_cells(k) - rank_k - snf_up.rank
    torsion = [d for d in snf_up.invariant_factors if d > 1]
    return HomologySummary(betti, torsion)


def homology_field(rep, k, field):
    """dim H_k over a field: Real (numerical ranks) or ModN(p) with p prime."""
    if not 0 <= k <= rep.dim:
        raise UnsupportedError(f"degree {k} outside 0..{rep.dim}")
    if isinstance(field, Real):
        r_down = numerical_rank(rep.boundary_float(k))
        r_up = numerical_rank(rep.boundary_float(k + 1))
    elif isinstance(field, ModN):
        r_down = mod_p_rank(rep.boundary_matrix(k), field.modulus)
        r_up = mod_p_rank(rep.boundary_matrix(k + 1), field.modulus)
    else:
        raise UnsupportedError(f"{field!r} is not a supported field")
    return rep.n_cells(k) - r_down - r_up


# -- simplicial seminorm -------------------------------------------------------

def _require_kernel_chain(x):
    rep = x.complex
    k = x.degree
    if x.system.exact:
        bd = rep.boundary_matrix(k) @ x.values if 1 <= k <= rep.dim else None
        if bd is not None:
            if isinstance(x.system, ModN):
                bd = bd % x.system.modulus
            if any(v != 0 for v in bd):
                raise ValueError("representative is not a cycle (boundary nonzero)")
    else:
        if 1 <= k <= rep.dim:
            B = rep.boundary_float(k)
            flat = np.asarray(x.values, dtype=float)
            resid = np.max(np.abs(B @ flat), initial=0.0)
            scale = max(1.0, float(np.max(np.abs(flat), initial=0.0)))
            if resid > 1e-8 * scale * max(1.0, float(np.max(np.abs(B), initial=0.0))):
                raise ValueError("representative is not a cycle (boundary residual "
                                 f"{resid:.3e})")


def simplicial_seminorm(x, p=2, weights=None):
    """Minimal weighted p-norm over the homology class of a cycle.

    Returns (value, minimizing representative).  Real chains use p = 2 and a
    weighted least-squares projection against im B_{k+1}; Z/2 chains are
    solved by exhaustive enumeration of the image subgroup (2^rank elements,
    rank capped at 24).  Integer chains are answered only when the class is
    trivial; the infimum over an infinite coset is out of scope otherwise.
    """
    rep = x.complex
    k = x.degree
    _require_kernel_chain(x)
    w = resolve_weights(weights, len(x.values))
    B_up = rep.boundary_matrix(k + 1)

    if isinstance(x.system, Real):
        if p != 2:
            raise UnsupportedError("Real seminorm is implemented for p = 2 only")
        flat = np.asarray(x.values, dtype=float)
        Bf = B_up.astype(float)
        if Bf.size:
            W = np.diag(w)
            z, *_ = np.linalg.lstsq(W @ Bf, W @ flat, rcond=None)
            best = flat - Bf @ z
        else:
            best = flat
        mini = x.with_values(best)
        return norm_p(mini, 2, w), mini

    if isinstance(x.system, ModN) and x.system.modulus == 2:
        if p not in (1, 2):
            raise UnsupportedError("only p = 1 and p = 2 are supported")
        masks = gf2.column_masks(B_up)
        gens = [masks[j] for j in gf2.independent_columns(masks)]
        gf2.check_enumeration_bound(len(gens), "Z/2 seminorm")
        target = gf2.vector_to_mask(x.values)
        best_norm = None
        best_mask = None
        for _, (elem,) in gf2.gray_iter([(g,) for g in gens]):
            cand = target ^ elem
            val = gf2.mask_norm_p(cand, p, None if weights is None else w)
            if best_norm is None or val < best_norm or (val == best_norm
                                                        and cand < best_mask):
                best_norm = val
                best_mask = cand
        mini = x.with_values(gf2.mask_to_vector(best_mask, len(x.values)))
        return best_norm, mini

    if isinstance(x.system, Integer):
        if all(int(v) == 0 for v in x.values):
            return 0.0, x
        if B_up.size and solve_integer(B_up, x.values) is not None:
            return 0.0, zero_chain(rep, k, x.system)
        raise UnsupportedError(
            "integer seminorm of a nontrivial class (infimum over an infinite "
            "coset) is out of scope")

    raise UnsupportedError(f"seminorm not defined for {x.system!r}")
