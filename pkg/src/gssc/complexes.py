"""Simplicial complexes, delta-complexes, and their integer boundary matrices.

Conventions fixed here and relied on everywhere else:

* Vertices are 0-based integers.  A k-simplex is a strictly increasing
  (k+1)-tuple of vertex indices, and its increasing vertex order is its
  positive orientation.
* Within each dimension simplexes are listed in lexicographic order.  That
  ordering defines the basis of the chain group C_k, hence every matrix
  column/row layout and every file format.
* The boundary of [v_0, ..., v_k] is the alternating sum over vertex
  deletions, sum_j (-1)^j [..., v_{j-1}, v_{j+1}, ...].
* Boundary matrices are integer matrices kept in object arrays of Python
  ints, so products such as B_k @ B_{k+1} are exact and the chain identity
  can be checked with zero tolerance.
* Out-of-range degrees denote the zero module: C_{-1} = C_{K+1} = 0, and
  boundary matrices off the end have an empty shape instead of raising.

Delta-complexes (cells glued with identifications, e.g. the projective
plane with two triangles, three edges and two vertices) cannot be listed as
vertex tuples;  they are handled directly as a `ChainComplexRep`, the
boundary-matrix presentation shared by both kinds of complex.
"""

from __future__ import annotations

import itertools
import re

import numpy as np

from .errors import FormatError, UnsupportedError


def _int_zeros(rows, cols):
    return np.zeros((rows, cols), dtype=object)


def _as_int_matrix(data, rows=None, cols=None):
    """Copy `data` into an object array of Python ints, checking the shape."""
    arr = np.empty((len(data), len(data[0]) if data else 0), dtype=object)
    for i, row in enumerate(data):
        if len(row) != arr.shape[1]:
            raise ValueError("ragged integer matrix")
        for j, v in enumerate(row):
            arr[i, j] = int(v)
    if rows is not None and arr.shape != (rows, cols):
        raise ValueError(f"expected shape {(rows, cols)}, got {arr.shape}")
    return arr


class SimplicialComplex:
    """A face-closed set of simplexes over vertices 0..n_vertices-1.

    `simplexes_by_dim[k]` is the lexicographically sorted list of
    k-simplexes.  Every vertex is present as a 0-simplex, so isolated
    vertices are allowed and n_0 always equals `n_vertices`.
    """

    def __init__(self, n_vertices, simplexes_by_dim):
        n_vertices = int(n_vertices)
        if n_vertices < 1:
            raise ValueError("a complex needs at least one vertex")
        self.n_vertices = n_vertices

        levels = [list(level) for level in simplexes_by_dim]
        while levels and not levels[-1]:
            levels.pop()
        if not levels:
            levels = [[]]
        stored = set()
        for k, level in enumerate(levels):
            for s in level:
                s = tuple(int(v) for v in s)
                if len(s) != k + 1:
                    raise ValueError(f"{s} listed at dimension {k}")
                if any(a >= b for a, b in zip(s, s[1:])):
                    raise ValueError(f"simplex {s} is not strictly increasing")
                if s[0] < 0 or s[-1] >= n_vertices:
                    raise ValueError(f"simplex {s} has a vertex out of range")
                stored.add(s)
        expected_vertices = {(v,) for v in range(n_vertices)}
        if not expected_vertices <= {s for s in stored if len(s) == 1}:
            stored |= expected_vertices
        # face closure
        for s in stored:
            for j in range(len(s)):
                face = s[:j] + s[j + 1:]
                if face and face not in stored:
                    raise ValueError(f"face {face} of {s} is missing")
        dim = max(len(s) for s in stored) - 1
        self.simplexes_by_dim = [
            sorted(s for s in stored if len(s) == k + 1) for k in range(dim + 1)
        ]

    @classmethod
    def from_maximal(cls, maximal, n_vertices=None):
        """Build the closure of a list of simplexes (any order, any overlap)."""
        stored = set()
        top = 0
        for s in maximal:
            s = tuple(sorted(int(v) for v in s))
            if len(set(s)) != len(s):
                raise ValueError(f"repeated vertex in simplex {s}")
            if s and s[0] < 0:
                raise ValueError(f"negative vertex in simplex {s}")
            top = max(top, s[-1] + 1 if s else 0)
            for r in range(1, len(s) + 1):
                stored.update(itertools.combinations(s, r))
        if n_vertices is None:
            n_vertices = top
        elif n_vertices < top:
            raise ValueError("n_vertices smaller than the largest vertex used")
        by_dim = [[] for _ in range(max((len(s) for s in stored), default=1))]
        for s in stored:
            by_dim[len(s) - 1].append(s)
        return cls(n_vertices, by_dim)

    @property
    def dim(self):
        return len(self.simplexes_by_dim) - 1

    def simplexes(self, k):
        if 0 <= k <= self.dim:
            return self.simplexes_by_dim[k]
        return []

    def n_simplexes(self, k):
        return len(self.simplexes(k))

    def index_of(self, simplex):
        s = tuple(simplex)
        level = self.simplexes(len(s) - 1)
        lo = 0
        hi = len(level)
        while lo < hi:
            mid = (lo + hi) // 2
            if level[mid] < s:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(level) and level[lo] == s:
            return lo
        raise KeyError(f"simplex {s} not in complex")

    def maximal_simplexes(self):
        """Simplexes that are not a face of any other stored simplex."""
        all_faces = set()
        for k in range(1, self.dim + 1):
            for s in self.simplexes(k):
                for j in range(len(s)):
                    all_faces.add(s[:j] + s[j + 1:])
        out = []
        for k in range(self.dim + 1):
            out.extend(s for s in self.simplexes(k) if s not in all_faces)
        return out

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (self.n_vertices == other.n_vertices
                and self.simplexes_by_dim == other.simplexes_by_dim)

    def __repr__(self):
        counts = ", ".join(str(self.n_simplexes(k)) for k in range(self.dim + 1))
        return f"SimplicialComplex(dims=({counts}))"


def build_boundary(complex, k):
    """Integer matrix of the boundary map C_k -> C_{k-1}.

    Column j holds the alternating face signs of the j-th k-simplex; an
    out-of-range k gives the empty matrix of the documented shape.
    """
    rows = complex.n_simplexes(k - 1)
    cols = complex.n_simplexes(k)
    mat = _int_zeros(rows, cols)
    if k < 1 or k > complex.dim:
        return mat
    face_index = {s: i for i, s in enumerate(complex.simplexes(k - 1))}
    for col, simplex in enumerate(complex.simplexes(k)):
        sign = 1
        for j in range(len(simplex)):
            face = simplex[:j] + simplex[j + 1:]
            mat[face_index[face], col] = sign
            sign = -sign
    return mat


class ChainComplexRep:
    """Boundary-matrix presentation of a chain complex.

    dims       -- (n_0, ..., n_K), the rank of each chain group
    boundaries -- [B_1, ..., B_K]; B_k is integer, shape n_{k-1} x n_k
    labels     -- optional per-dimension cell labels (for reports only)
    """

    def __init__(self, dims, boundaries, labels=None, name=None):
        dims = tuple(int(n) for n in dims)
        if not dims or any(n < 0 for n in dims):
            raise ValueError("dims must be a non-empty tuple of sizes >= 0")
        if len(boundaries) != len(dims) - 1:
            raise ValueError("need exactly one boundary matrix per adjacent pair of dims")
        self.dims = dims
        self._boundaries = {}
        for k, mat in enumerate(boundaries, start=1):
            mat = np.asarray(mat, dtype=object)
            if mat.ndim != 2:
                mat = _as_int_matrix([list(r) for r in mat])
            if mat.shape != (dims[k - 1], dims[k]):
                raise ValueError(
                    f"B_{k} has shape {mat.shape}, expected {(dims[k - 1], dims[k])}")
            exact = _int_zeros(*mat.shape)
            for i in range(mat.shape[0]):
                for j in range(mat.shape[1]):
                    exact[i, j] = int(mat[i, j])
            self._boundaries[k] = exact
        self.labels = labels
        self.name = name
        self._float_cache = {}

    @property
    def dim(self):
        return len(self.dims) - 1

    def n_cells(self, k):
        if 0 <= k <= self.dim:
            return self.dims[k]
        return 0

    def boundary_matrix(self, k):
        """Exact integer B_k; off-range degrees give the empty-shaped matrix."""
        if k in self._boundaries:
            return self._boundaries[k]
        return _int_zeros(self.n_cells(k - 1), self.n_cells(k))

    def boundary_float(self, k):
        if k not in self._float_cache:
            self._float_cache[k] = self.boundary_matrix(k).astype(float)
        return self._float_cache[k]

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"ChainComplexRep{tag}(dims={self.dims})"


def to_chain_complex(complex):
    """ChainComplexRep of a simplicial complex, labels = vertex tuples."""
    dims = [complex.n_simplexes(k) for k in range(complex.dim + 1)]
    boundaries = [build_boundary(complex, k) for k in range(1, complex.dim + 1)]
    labels = [list(complex.simplexes(k)) for k in range(complex.dim + 1)]
    return ChainComplexRep(dims, boundaries, labels=labels)


class ValidationReport:
    """Outcome of the chain identity check B_k @ B_{k+1} = 0."""

    def __init__(self, ok, failures):
        self.ok = ok
        self.failures = failures  # list of (k, row, col, value)

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok: boundary of boundary vanishes"
        lines = [f"{len(self.failures)} nonzero entries in boundary-squared products:"]
        for k, i, j, v in self.failures[:20]:
            lines.append(f"  (B_{k} @ B_{k + 1})[{i}, {j}] = {v}")
        if len(self.failures) > 20:
            lines.append(f"  ... and {len(self.failures) - 20} more")
        return "\n".join(lines)


def validate(rep):
    """Check B_k @ B_{k+1} = 0 exactly for every k; list offending entries."""
    failures = []
    for k in range(1, rep.dim):
        a = rep.boundary_matrix(k)
        b = rep.boundary_matrix(k + 1)
        if a.size == 0 or b.size == 0:
            continue
        prod = a @ b
        for i in range(prod.shape[0]):
            for j in range(prod.shape[1]):
                if prod[i, j] != 0:
                    failures.append((k, i, j, prod[i, j]))
    return ValidationReport(not failures, failures)


# -- canonical complexes -----------------------------------------------------

_PARAM_NAME = re.compile(r"(cycle|path)\((\d+)\)")


def canonical_complex(name):
    """Small library of named complexes used throughout tests and demos.

    rp2              projective plane as a delta-complex: the square with
                     both pairs of opposite sides glued in reverse, cut along
                     a diagonal.  Two vertices v, w; edges a, b from v to w
                     and a loop c at v; faces U, L with dU = -a + b + c and
                     dL = a - b + c.
    torus            one vertex, three loop edges a, b, c, two faces with
                     boundary a + b - c each.
    filled_triangle  the full simplex on three vertices.
    cycle(n)         the n-cycle graph, n >= 3.
    path(n)          the path graph on n vertices.
    """
    name = name.strip()
    if name == "rp2":
        b1 = _as_int_matrix([[-1, -1, 0], [1, 1, 0]])
        b2 = _as_int_matrix([[-1, 1], [1, -1], [1, 1]])
        return ChainComplexRep((2, 3, 2), [b1, b2], name="rp2",
                               labels=[["v", "w"], ["a", "b", "c"], ["U", "L"]])
    if name == "torus":
        b1 = _int_zeros(1, 3)
        b2 = _as_int_matrix([[1, 1], [1, 1], [-1, -1]])
        return ChainComplexRep((1, 3, 2), [b1, b2], name="torus",
                               labels=[["v"], ["a", "b", "c"], ["U", "L"]])
    if name == "filled_triangle":
        rep = to_chain_complex(SimplicialComplex.from_maximal([(0, 1, 2)]))
        rep.name = "filled_triangle"
        return rep
    m = _PARAM_NAME.fullmatch(name)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if kind == "cycle":
            if n < 3:
                raise UnsupportedError("cycle(n) needs n >= 3")
            edges = [tuple(sorted((i, (i + 1) % n))) for i in range(n)]
        else:
            if n < 1:
                raise UnsupportedError("path(n) needs n >= 1")
            edges = [(i, i + 1) for i in range(n - 1)]
        sc = SimplicialComplex.from_maximal(edges + [(v,) for v in range(n)])
        rep = to_chain_complex(sc)
        rep.name = name
        return rep
    raise UnsupportedError(
        f"unknown complex {name!r}; known: rp2, torus, filled_triangle, "
        "cycle(n), path(n)")


def random_complex(n_vertices, edge_prob, fill_prob, seed):
    """Random 2-complex: G(n, edge_prob) edges, then each triangle of the
    edge graph kept with probability fill_prob.  Face-closed by construction
    and deterministic for a fixed seed (edges drawn in lexicographic pair
    order, then triangles in lexicographic triple order).
    """
    if not (0.0 <= edge_prob <= 1.0 and 0.0 <= fill_prob <= 1.0):
        raise ValueError("probabilities must be in [0, 1]")
    if n_vertices < 1:
        raise ValueError("need at least one vertex")
    rng = np.random.default_rng(seed)
    edges = set()
    for pair in itertools.combinations(range(n_vertices), 2):
        if rng.random() < edge_prob:
            edges.add(pair)
    triangles = []
    for a, b, c in itertools.combinations(range(n_vertices), 3):
        if {(a, b), (a, c), (b, c)} <= edges and rng.random() < fill_prob:
            triangles.append((a, b, c))
    maximal = triangles + sorted(edges) + [(v,) for v in range(n_vertices)]
    return SimplicialComplex.from_maximal(maximal, n_vertices=n_vertices)


# -- file formats ------------------------------------------------------------

def save_complex(complex, path):
    """Write the `.scx` format: one maximal simplex per line, '#' comments."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# simplicial complex: one maximal simplex per line, "
                 "space-separated vertex indices\n")
        for s in complex.maximal_simplexes():
            fh.write(" ".join(str(v) for v in s) + "\n")


def load_complex(path):
    """Read the `.scx` format and apply face closure.

    Vertex labels are 0-based; the vertex count is max index + 1, so indices
    skipped by every line still exist as isolated vertices.
    """
    maximal = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                vertices = [int(tok) for tok in text.split()]
            except ValueError:
                raise FormatError(f"expected vertex indices, got {text!r}", lineno)
            if any(v < 0 for v in vertices):
                raise FormatError("negative vertex index", lineno)
            if len(set(vertices)) != len(vertices):
                raise FormatError(f"repeated vertex in simplex {vertices}", lineno)
            maximal.append(tuple(vertices))
    if not maximal:
        raise FormatError(f"{path}: no simplexes found")
    return SimplicialComplex.from_maximal(maximal)


def save_delta(rep, path):
    """Write the `.dcx` format: a dims header then one B_k block per degree."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# delta complex: dims header, then boundary matrix blocks\n")
        fh.write("dims " + " ".join(str(n) for n in rep.dims) + "\n")
        for k in range(1, rep.dim + 1):
            fh.write(f"B{k}\n")
            mat = rep.boundary_matrix(k)
            if mat.size == 0:
                continue
            for i in range(mat.shape[0]):
                fh.write(" ".join(str(mat[i, j]) for j in range(mat.shape[1])) + "\n")


def load_delta(path):
    """Read the `.dcx` format; reject it unless boundary-of-boundary vanishes.

    Layout: a `dims n_0 ... n_K` line, then for each k = 1..K a `B<k>` line
    followed by n_{k-1} rows of n_k integers (rows are omitted when the block
    is empty).  Blank lines and '#' comments are ignored.
    """
    lines = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if text:
                lines.append((lineno, text))
    if not lines:
        raise FormatError(f"{path}: empty file")
    pos = 0
    lineno, header = lines[pos]
    if not header.startswith("dims"):
        raise FormatError("expected 'dims n_0 ... n_K' header", lineno)
    try:
        dims = [int(tok) for tok in header.split()[1:]]
    except ValueError:
        raise FormatError("dims header must list integers", lineno)
    if not dims or any(n < 0 for n in dims):
        raise FormatError("dims must be non-negative and non-empty", lineno)
    pos += 1
    boundaries = []
    for k in range(1, len(dims)):
        if pos >= len(lines):
            raise FormatError(f"{path}: missing block B{k}")
        lineno, text = lines[pos]
        if text != f"B{k}":
            raise FormatError(f"expected block header 'B{k}', got {text!r}", lineno)
        pos += 1
        rows, cols = dims[k - 1], dims[k]
        block = []
        if rows * cols > 0:
            for i in range(rows):
                if pos >= len(lines):
                    raise FormatError(f"{path}: block B{k} ends after {i} of {rows} rows")
                lineno, text = lines[pos]
                try:
                    row = [int(tok) for tok in text.split()]
                except ValueError:
                    raise FormatError(f"non-integer entry in block B{k}", lineno)
                if len(row) != cols:
                    raise FormatError(
                        f"block B{k} row has {len(row)} entries, expected {cols}", lineno)
                block.append(row)
                pos += 1
        boundaries.append(_as_int_matrix(block, rows, cols))
    if pos < len(lines):
        lineno, text = lines[pos]
        raise FormatError(f"unexpected trailing content {text!r}", lineno)
    rep = ChainComplexRep(dims, boundaries)
    report = validate(rep)
    if not report.ok:
        raise FormatError(f"{path}: not a chain complex; {report}")
    return rep
