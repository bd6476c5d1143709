"""Finite simplicial complexes with an explicit vertex ordering.

A complex stores its vertices as an ordered sequence of distinct labels and
its faces, per dimension, as strictly increasing tuples of vertex
*positions*.  The ordering is part of the identity of the complex: the same
face sets over differently ordered vertices compare unequal, because all
boundary matrices (and everything built on them) depend on it.
"""

from __future__ import annotations

from itertools import combinations

from .linalg import ExactMatrix


class SimplicialComplex:
    __slots__ = ("vertices", "faces_by_dim")

    def __init__(self, vertices, faces_by_dim):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate label in ordering")
        cleaned = []
        for i, faces in enumerate(faces_by_dim):
            level = sorted(set(map(tuple, faces)))
            for f in level:
                if len(f) != i + 1:
                    raise ValueError(f"face {f} has wrong cardinality for dim {i}")
                if list(f) != sorted(set(f)):
                    raise ValueError(f"face {f} is not strictly increasing")
                if f and (f[0] < 0 or f[-1] >= len(self.vertices)):
                    raise ValueError(f"face {f} uses unknown vertex position")
            cleaned.append(tuple(level))
        while cleaned and not cleaned[-1]:
            cleaned.pop()
        self.faces_by_dim = tuple(cleaned)
        self._check_closed()

    def _check_closed(self):
        for i in range(1, len(self.faces_by_dim)):
            lower = set(self.faces_by_dim[i - 1])
            for f in self.faces_by_dim[i]:
                for sub in combinations(f, i):
                    if sub not in lower:
                        raise ValueError(
                            f"not closed under inclusion: {sub} missing under {f}"
                        )

    @property
    def dim(self):
        return len(self.faces_by_dim) - 1

    def f_count(self, i):
        """Number of i-faces; f_count(-1) == 1 for the implicit empty face."""
        if i == -1:
            return 1
        if 0 <= i <= self.dim:
            return len(self.faces_by_dim[i])
        return 0

    def faces(self, i):
        if 0 <= i <= self.dim:
            return self.faces_by_dim[i]
        return ()

    def is_pure(self):
        top = set(self.faces_by_dim[-1])
        for i in range(self.dim):
            for f in self.faces_by_dim[i]:
                if not any(set(f) <= set(t) for t in top):
                    return False
        return True

    def labels_of(self, face):
        return tuple(self.vertices[p] for p in face)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.faces_by_dim == other.faces_by_dim
        )

    def __hash__(self):
        return hash((self.vertices, self.faces_by_dim))

    def __repr__(self):
        f = tuple(len(level) for level in self.faces_by_dim)
        return f"SimplicialComplex(dim={self.dim}, f={f}, vertices={self.vertices})"


def from_facets(facets, ordering):
    """Inclusion-closure of the given facets, positions taken from `ordering`."""
    ordering = tuple(ordering)
    if len(set(ordering)) != len(ordering):
        raise ValueError("duplicate label in ordering")
    if not facets:
        raise ValueError("facets must be nonempty")
    pos = {label: i for i, label in enumerate(ordering)}
    levels = {}
    for facet in facets:
        try:
            positions = sorted(pos[v] for v in facet)
        except KeyError as exc:
            raise ValueError(f"unknown label {exc.args[0]!r} in facet") from None
        if len(set(positions)) != len(positions):
            raise ValueError(f"facet {facet} has repeated labels")
        for k in range(1, len(positions) + 1):
            levels.setdefault(k - 1, set()).update(combinations(positions, k))
    top = max(levels)
    return SimplicialComplex(
        ordering, [levels.get(i, set()) for i in range(top + 1)]
    )


def boundary_of_simplex(d_plus_1):
    """Boundary complex of the (d+1)-simplex: all proper subsets of [d+2]."""
    if d_plus_1 < 1:
        raise ValueError("need d+1 >= 1")
    n = d_plus_1 + 1
    faces = [combinations(range(n), k + 1) for k in range(n - 1)]
    return SimplicialComplex(range(1, n + 1), faces)


def full_simplex(d):
    """The full d-simplex 2^[d+1] as a complex."""
    n = d + 1
    faces = [combinations(range(n), k + 1) for k in range(n)]
    return SimplicialComplex(range(1, n + 1), faces)


def f_vector(c):
    """(f_-1, f_0, ..., f_dim) as a tuple of integers."""
    return (1,) + tuple(len(level) for level in c.faces_by_dim)


def h_from_f(f):
    """h-vector from an f-vector via the standard polynomial identity.

    For f = (f_-1, ..., f_{d-1}) this expands
    sum_k f_{k-1} (t-1)^(d-k) and reads off h_0..h_d.
    """
    d = len(f) - 1
    # coefficients of sum_k f_{k-1} (t-1)^{d-k}, highest power first
    poly = [0] * (d + 1)  # poly[j] multiplies t^(d-j)
    for k in range(d + 1):
        # (t-1)^(d-k) contributes binomials
        m = d - k
        c = 1
        for j in range(m + 1):
            # coefficient of t^(m-j) in (t-1)^m is C(m,j) * (-1)^j
            poly[d - (m - j)] += f[k] * c * ((-1) ** j)
            c = c * (m - j) // (j + 1)
    return tuple(poly)


def f_from_h(h):
    """Inverse of `h_from_f`: substitute t -> t+1 and read off f."""
    d = len(h) - 1
    f = [0] * (d + 1)
    for k in range(d + 1):
        # h_k t^{d-k} with t -> t+1: sum_j C(d-k, j) t^j; t^{d-m} term: j = d-m
        m = d - k
        c = 1
        for j in range(m + 1):
            f[d - j] += h[k] * c
            c = c * (m - j) // (j + 1)
    return tuple(f)


def f_and_h_vectors(c):
    if c.dim < 0:
        raise ValueError("empty complex has no f/h-vectors here")
    f = f_vector(c)
    return f, h_from_f(f)


def boundary_matrix(c, i):
    """Signed incidence matrix of the i-th boundary map.

    Rows are indexed by the (i-1)-faces, columns by the i-faces, both in
    lexicographic order of position tuples.  The chain groups vanish
    outside 0..dim, so i == 0 yields a 0 x f_0 matrix and i == dim+1 an
    f_dim x 0 matrix.
    """
    if i < 0 or i > c.dim + 1:
        raise IndexError(f"boundary index {i} out of range for dim {c.dim}")
    cols = c.faces(i)
    rows = c.faces(i - 1)
    row_index = {f: r for r, f in enumerate(rows)}
    mat = ExactMatrix.zero(len(rows), len(cols))
    for j, face in enumerate(cols):
        sign = 1
        for k in range(len(face)):
            sub = face[:k] + face[k + 1 :]
            if sub:
                mat.entries[row_index[sub]][j] = sign
            sign = -sign
    return mat


def boundary_face_sign(face, k):
    """Sign of the face obtained by dropping the k-th smallest vertex."""
    return (-1) ** k


def homology_dimension(c, i):
    """dim_Q of the i-th rational homology group, ker(d_i)/im(d_{i+1})."""
    if i < 0 or i > c.dim:
        raise IndexError(f"homology index {i} out of range for dim {c.dim}")
    di = boundary_matrix(c, i)
    di1 = boundary_matrix(c, i + 1)
    kernel_dim = di.cols - di.rank()
    return kernel_dim - di1.rank()


def read_complex_file(path):
    """Parse the complex file format used by the CLI.

    UTF-8 text; `#` starts a comment; the first non-comment line must be
    `order: v1 v2 ... vn`; every following non-empty line is one facet as
    space-separated labels.  Labels are integers.
    """
    ordering = None
    facets = []
    with open(path, "r", encoding="utf-8") as handle:
        for raw in handle:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if ordering is None:
                if not line.startswith("order:"):
                    raise ValueError("first non-comment line must be 'order: ...'")
                ordering = [int(tok) for tok in line[len("order:") :].split()]
                continue
            facets.append([int(tok) for tok in line.split()])
    if ordering is None:
        raise ValueError("missing 'order:' line")
    if not facets:
        raise ValueError("no facets given")
    return from_facets(facets, ordering)
