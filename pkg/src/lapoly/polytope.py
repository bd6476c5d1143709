"""Exact lattice-polytope kernel.

V-representations over the integers with lazily computed exact affine
hulls, vertex sets, irredundant H-representations, facet-ridge graphs,
lattice-point scans, interior polytopes and reflexivity.  All answers are
exact; no floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import lp
from .budgets import BudgetError, point_budget
from .linalg import (
    hnf,
    nullspace,
    primitive_vector,
    rank,
    saturation_basis,
    solve,
)


class Halfspace:
    """Inequality normal . x <= offset with a primitive integer normal."""

    __slots__ = ("normal", "offset")

    def __init__(self, normal, offset):
        normal = tuple(int(x) for x in normal)
        offset = int(offset)
        prim = tuple(primitive_vector(normal))
        if prim != normal:
            raise ValueError("halfspace normal must be primitive")
        self.normal = normal
        self.offset = offset

    def value(self, point):
        return sum(a * x for a, x in zip(self.normal, point))

    def holds(self, point):
        return self.value(point) <= self.offset

    def tight(self, point):
        return self.value(point) == self.offset

    def __eq__(self, other):
        if not isinstance(other, Halfspace):
            return NotImplemented
        return self.normal == other.normal and self.offset == other.offset

    def __hash__(self):
        return hash((self.normal, self.offset))

    def __repr__(self):
        return f"Halfspace({self.normal}.x <= {self.offset})"


class NotFullDimensionalError(ValueError):
    """Operation needs a polytope that spans its ambient space."""


class FacetRidgeGraph:
    """Graph on facets, adjacent when they meet in a ridge."""

    __slots__ = ("nodes", "edges")

    def __init__(self, nodes, edges):
        self.nodes = list(nodes)
        self.edges = sorted(set(tuple(sorted(e)) for e in edges))

    @property
    def edge_count(self):
        return len(self.edges)

    def degrees(self):
        deg = [0] * len(self.nodes)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def is_regular(self, k):
        return all(d == k for d in self.degrees())

    def is_connected(self):
        if not self.nodes:
            return True
        adj = {i: [] for i in range(len(self.nodes))}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == len(self.nodes)


class LatticePolytope:
    """Convex hull of integer points, with exact cached derived data."""

    __slots__ = (
        "points",
        "ambient_dim",
        "_vertex_indices",
        "_affine",
        "_facets",
        "_facet_vertex_sets",
    )

    def __init__(self, points):
        pts = [tuple(int(x) for x in p) for p in points]
        if not pts:
            raise ValueError("a polytope needs at least one point")
        if len(set(pts)) != len(pts):
            raise ValueError("generator points must be distinct")
        self.points = tuple(pts)
        self.ambient_dim = len(pts[0])
        for p in pts:
            if len(p) != self.ambient_dim:
                raise ValueError("points of mixed dimension")
        self._vertex_indices = None
        self._affine = None
        self._facets = None
        self._facet_vertex_sets = None

    # -- basic geometry ----------------------------------------------------

    def dim(self):
        return self.affine_hull()[0]

    def affine_hull(self):
        """(dimension, equations); each equation is (normal, offset) with
        the normals forming a canonical (HNF) basis of the saturated
        equation lattice."""
        if self._affine is None:
            base = self.points[0]
            diffs = [
                [p[i] - base[i] for i in range(self.ambient_dim)]
                for p in self.points[1:]
            ]
            dim = rank(diffs) if diffs else 0
            if diffs:
                kernel = nullspace(diffs)
            else:
                kernel = [
                    [Fraction(int(i == j)) for j in range(self.ambient_dim)]
                    for i in range(self.ambient_dim)
                ]
            normals = [primitive_vector(v) for v in kernel]
            normals = hnf(normals) if normals else []
            equations = [
                (tuple(a), sum(x * y for x, y in zip(a, base))) for a in normals
            ]
            self._affine = (dim, equations)
        return self._affine

    def _lex_extreme(self, functional):
        """Index of the lexicographically largest maximizer of a linear
        functional; always a vertex."""
        best_key = None
        best = None
        for i, p in enumerate(self.points):
            key = (sum(a * x for a, x in zip(functional, p)), p)
            if best_key is None or key > best_key:
                best_key = key
                best = i
        return best

    def vertex_indices(self):
        """Indices of generator points that are genuine vertices.

        Coordinate-wise lexicographic optima seed the vertex set cheaply;
        the remaining points are settled by exact feasibility tests, first
        against the known vertices, then (only if needed) against all
        other generators.
        """
        if self._vertex_indices is None:
            n = len(self.points)
            verts = set()
            for k in range(self.ambient_dim):
                for sgn in (1, -1):
                    f = [0] * self.ambient_dim
                    f[k] = sgn
                    verts.add(self._lex_extreme(f))
            if n == 1:
                verts.add(0)
            for i in range(n):
                if i in verts:
                    continue
                p = self.points[i]
                known = [self.points[j] for j in verts]
                if lp.point_in_hull(p, known):
                    continue
                others = [q for j, q in enumerate(self.points) if j != i]
                if not lp.point_in_hull(p, others):
                    verts.add(i)
            self._vertex_indices = tuple(sorted(verts))
        return self._vertex_indices

    def vertices(self):
        return [self.points[i] for i in self.vertex_indices()]

    def is_full_dimensional(self):
        return self.dim() == self.ambient_dim

    def translate(self, vec):
        return LatticePolytope(
            [tuple(x + v for x, v in zip(p, vec)) for p in self.points]
        )

    def dilate(self, c):
        c = int(c)
        if c < 0:
            raise ValueError("dilation factor must be >= 0")
        if c == 0:
            return LatticePolytope([(0,) * self.ambient_dim])
        return LatticePolytope([tuple(c * x for x in p) for p in self.points])

    # -- H-representation ---------------------------------------------------

    def facets(self):
        """Irredundant H-representation of a full-dimensional polytope.

        Every supporting hyperplane spanned by an affinely independent
        dim-subset of vertices is a facet, so scanning those subsets is
        both the simplicial fast path and the generic fallback.
        """
        if self._facets is None:
            self._compute_facets()
        return self._facets

    def facet_vertex_sets(self):
        """Vertex-index sets, aligned with `facets()`."""
        if self._facet_vertex_sets is None:
            self._compute_facets()
        return self._facet_vertex_sets

    def _compute_facets(self):
        d = self.dim()
        if d != self.ambient_dim:
            raise NotFullDimensionalError(
                f"polytope has dim {d} in ambient {self.ambient_dim}; "
                "reduce to full dimension first"
            )
        if d < 1:
            raise NotFullDimensionalError("no facets in dimension 0")
        verts = self.vertex_indices()
        found = {}
        for subset in combinations(verts, d):
            base = self.points[subset[0]]
            diffs = [
                [self.points[i][k] - base[k] for k in range(d)]
                for i in subset[1:]
            ]
            if diffs:
                kernel = nullspace(diffs)
            else:
                kernel = [[Fraction(1)]]  # d == 1: hyperplane through a point
            if len(kernel) != 1:
                continue
            normal = primitive_vector(kernel[0])
            offset = sum(a * x for a, x in zip(normal, base))
            values = [
                sum(a * x for a, x in zip(normal, p)) for p in self.points
            ]
            if all(v <= offset for v in values):
                pass
            elif all(v >= offset for v in values):
                normal = tuple(-a for a in normal)
                offset = -offset
                values = [-v for v in values]
            else:
                continue
            key = (tuple(normal), offset)
            if key not in found:
                tight = frozenset(
                    i for i in verts if values[i] == offset
                )
                found[key] = tight
        facets = sorted(found)
        self._facets = [Halfspace(n, b) for n, b in facets]
        self._facet_vertex_sets = [found[k] for k in facets]

    def is_simplicial(self):
        d = self.dim()
        return all(len(s) == d for s in self.facet_vertex_sets())

    def facet_ridge_graph(self):
        sets = self.facet_vertex_sets()
        edges = []
        d = self.dim()
        for i, j in combinations(range(len(sets)), 2):
            common = sets[i] & sets[j]
            if len(common) < d - 1:
                continue
            pts = [self.points[k] for k in common]
            base = pts[0]
            diffs = [[p[k] - base[k] for k in range(self.ambient_dim)] for p in pts[1:]]
            if (rank(diffs) if diffs else 0) == d - 2:
                edges.append((i, j))
        return FacetRidgeGraph(sets, edges)

    def contains(self, point):
        """Exact membership for an integer or rational point."""
        dim, equations = self.affine_hull()
        if not all(
            sum(a * x for a, x in zip(n, point)) == b for n, b in equations
        ):
            return False
        if dim == self.ambient_dim:
            return all(h.value(point) <= h.offset for h in self.facets())
        return lp.point_in_hull(point, list(self.points))

    # -- full-dimensional reduction ------------------------------------------

    def full_dimensional(self):
        """Unimodular copy spanning its ambient space.

        Returns (polytope, basis, base) where basis rows generate the
        saturated lattice of the affine hull and base is the translation:
        original point = base + coords . basis.
        """
        base = self.points[0]
        diffs = [
            [p[i] - base[i] for i in range(self.ambient_dim)]
            for p in self.points
        ]
        basis = saturation_basis(diffs)
        if not basis:
            return LatticePolytope([()]), [], base
        coords = []
        for p in self.points:
            target = [p[i] - base[i] for i in range(self.ambient_dim)]
            sol = solve(
                [[row[i] for row in basis] for i in range(self.ambient_dim)],
                target,
            )
            if sol is None or any(x.denominator != 1 for x in sol):
                raise AssertionError("saturated basis must span all points")
            coords.append(tuple(int(x) for x in sol))
        return LatticePolytope(coords), basis, base

    # -- lattice points -------------------------------------------------------

    def bounding_box(self, n=1):
        lo = [min(p[i] for p in self.points) * n for i in range(self.ambient_dim)]
        hi = [max(p[i] for p in self.points) * n for i in range(self.ambient_dim)]
        return lo, hi

    def _scan(self, n, budget=None, parts=1, collect=False, strict=False):
        """Count (or collect) lattice points of the n-th dilation.

        Recursive box scan: coordinates are fixed left to right, pruning
        each inequality by its best possible remaining contribution.  The
        candidate budget is the bounding-box volume, checked up front.
        """
        d = self.ambient_dim
        if d == 0:
            return ([()] if collect else 1)
        if n == 0:
            origin = (0,) * d
            return ([origin] if collect else 1)
        ineqs = [
            (h.normal, n * h.offset - (1 if strict else 0)) for h in self.facets()
        ]
        lo, hi = self.bounding_box(n)
        limit = point_budget(budget)
        volume = 1
        for a, b in zip(lo, hi):
            volume *= max(0, b - a + 1)
        if volume > limit:
            raise BudgetError(
                f"box scan needs {volume} candidate points, budget is {limit}"
            )
        # suffix_min[j][k]: minimal contribution of coordinates k.. to ineq j
        suffix_min = []
        for normal, _ in ineqs:
            s = [0] * (d + 1)
            for k in range(d - 1, -1, -1):
                a = normal[k]
                s[k] = s[k + 1] + min(a * lo[k], a * hi[k])
            suffix_min.append(s)

        out = [] if collect else None
        count = 0
        prefix = [0] * d

        def rec(depth, partial):
            nonlocal count
            lo_k, hi_k = lo[depth], hi[depth]
            for j, (normal, b) in enumerate(ineqs):
                a = normal[depth]
                room = b - partial[j] - suffix_min[j][depth + 1]
                if a > 0:
                    q = room // a  # floor(room / a)
                    if q < hi_k:
                        hi_k = q
                elif a < 0:
                    q = -(room // -a)  # ceil(room / a)
                    if q > lo_k:
                        lo_k = q
                else:
                    if room < 0:
                        return
            if lo_k > hi_k:
                return
            if depth == d - 1:
                if collect:
                    for x in range(lo_k, hi_k + 1):
                        out.append(tuple(prefix[:depth]) + (x,))
                else:
                    count += hi_k - lo_k + 1
                return
            for x in range(lo_k, hi_k + 1):
                prefix[depth] = x
                nxt = [
                    partial[j] + ineqs[j][0][depth] * x for j in range(len(ineqs))
                ]
                rec(depth + 1, nxt)

        if parts <= 1 or d == 0:
            rec(0, [0] * len(ineqs))
        else:
            # deterministic partitioning over the first coordinate
            full_lo, full_hi = lo[0], hi[0]
            width = full_hi - full_lo + 1
            step = max(1, -(-width // parts))
            start = full_lo
            while start <= full_hi:
                end = min(start + step - 1, full_hi)
                saved = (lo[0], hi[0])
                lo[0], hi[0] = start, end
                rec(0, [0] * len(ineqs))
                lo[0], hi[0] = saved
                start = end + 1
        if collect:
            out.sort()
            return out
        return count

    def lattice_point_count(self, n=1, budget=None, parts=1):
        """|nP intersect Z^d| by exact box scan (full-dimensional P)."""
        if n < 0:
            raise ValueError("dilation must be >= 0")
        return self._scan(n, budget=budget, parts=parts, collect=False)

    def lattice_points(self, n=1, budget=None):
        """Sorted list of lattice points of nP (full-dimensional P)."""
        if n < 0:
            raise ValueError("dilation must be >= 0")
        return self._scan(n, budget=budget, collect=True)

    def interior_lattice_points(self, budget=None):
        """Lattice points satisfying every facet inequality strictly."""
        if self.ambient_dim == 0:
            return []
        return self._scan(1, budget=budget, collect=True, strict=True)

    def interior_polytope(self, budget=None):
        """Convex hull of the interior lattice points, or None if empty."""
        if not self.is_full_dimensional():
            raise NotFullDimensionalError("interior polytope needs full dim")
        pts = self.interior_lattice_points(budget=budget)
        if not pts:
            return None
        return LatticePolytope(pts)

    def is_reflexive(self, budget=None):
        """True iff, after translating the unique interior lattice point to
        the origin, every facet inequality has offset exactly 1."""
        if not self.is_full_dimensional():
            raise NotFullDimensionalError("reflexivity needs full dim")
        interior = self.interior_lattice_points(budget=budget)
        if len(interior) != 1:
            return False
        z = interior[0]
        return all(
            h.offset - h.value(z) == 1 for h in self.facets()
        )

    # -- volume ----------------------------------------------------------------

    def fan_triangulation(self):
        """Triangulation of a full-dimensional polytope as point-index
        simplices, by coning a base vertex over the facets avoiding it
        (recursively in each facet)."""
        d = self.dim()
        if d != self.ambient_dim:
            raise NotFullDimensionalError("triangulate the reduced copy instead")
        if d == 0:
            return [(0,)]
        verts = self.vertex_indices()
        apex = verts[0]
        cells = []
        for hs, vset in zip(self.facets(), self.facet_vertex_sets()):
            if apex in vset:
                continue
            fidx = sorted(vset)
            fpoly = LatticePolytope([self.points[i] for i in fidx])
            reduced, _, _ = fpoly.full_dimensional()
            for cell in reduced.fan_triangulation():
                cells.append(tuple(sorted(fidx[i] for i in cell)) + (apex,))
        return cells

    def normalized_volume(self):
        """dim! times the Euclidean volume, via a fan triangulation."""
        from .linalg import det_int

        d = self.dim()
        if d != self.ambient_dim:
            raise NotFullDimensionalError("reduce to full dimension first")
        if d == 0:
            return 1
        total = 0
        for cell in self.fan_triangulation():
            base = self.points[cell[0]]
            mat = [
                [self.points[i][k] - base[k] for k in range(d)] for i in cell[1:]
            ]
            total += abs(det_int(mat))
        return total

    def __repr__(self):
        return (
            f"LatticePolytope({len(self.points)} points, "
            f"ambient={self.ambient_dim})"
        )


def cyclic_polytope(d, n):
    """Cyclic polytope C(d, n) from the moment curve at t = 1..n.

    The computed facets are cross-checked against Gale's evenness
    condition.
    """
    if not (n >= d + 1 >= 2):
        raise ValueError("need n >= d+1 >= 2")
    points = [tuple(t**k for k in range(1, d + 1)) for t in range(1, n + 1)]
    poly = LatticePolytope(points)
    computed = {frozenset(s) for s in poly.facet_vertex_sets()}
    gale = {frozenset(s) for s in gale_evenness_sets(d, n)}
    if computed != gale:
        raise AssertionError("cyclic polytope facets fail Gale's condition")
    return poly


def gale_evenness_sets(d, n):
    """All facet vertex sets (0-based indices) of C(d, n) by Gale evenness."""
    sets = []
    for s in combinations(range(n), d):
        sset = set(s)
        rest = [i for i in range(n) if i not in sset]
        ok = True
        for a, b in combinations(rest, 2):
            if a > b:
                a, b = b, a
            between = sum(1 for k in s if a < k < b)
            if between % 2:
                ok = False
                break
        if ok:
            sets.append(tuple(s))
    return sets


def combinatorially_equivalent(p, q):
    """Vertex bijection carrying the facet hypergraph of `p` onto `q`'s.

    Returns (True, mapping) with mapping as a dict over vertex positions,
    or (False, None).  Both polytopes must be simplicial with equal
    dimension and vertex count; the search is a backtracking matcher
    pruned by facet-degree and pair-degree invariants.
    """
    if p.dim() != q.dim():
        return False, None
    pv = p.vertex_indices()
    qv = q.vertex_indices()
    if len(pv) != len(qv):
        return False, None
    if not (p.is_simplicial() and q.is_simplicial()):
        raise ValueError("combinatorial equivalence expects simplicial input")

    def hypergraph(poly, verts):
        relabel = {v: i for i, v in enumerate(verts)}
        return [frozenset(relabel[v] for v in s) for s in poly.facet_vertex_sets()]

    pf = hypergraph(p, pv)
    qf = hypergraph(q, qv)
    if len(pf) != len(qf):
        return False, None
    m = len(pv)

    def degree(facets, v):
        return sum(1 for f in facets if v in f)

    def pair_degree(facets, u, v):
        return sum(1 for f in facets if u in f and v in f)

    pdeg = [degree(pf, v) for v in range(m)]
    qdeg = [degree(qf, v) for v in range(m)]
    if sorted(pdeg) != sorted(qdeg):
        return False, None
    ppair = [[pair_degree(pf, u, v) for v in range(m)] for u in range(m)]
    qpair = [[pair_degree(qf, u, v) for v in range(m)] for u in range(m)]
    qfacets = set(qf)

    # assign p-vertices in order of decreasing constraint (degree spread)
    order = sorted(range(m), key=lambda v: (-pdeg[v], v))
    assignment = {}
    used = set()

    def consistent(v, image):
        if pdeg[v] != qdeg[image]:
            return False
        for u, iu in assignment.items():
            if ppair[v][u] != qpair[image][iu]:
                return False
        return True

    def fully_mapped_ok():
        for f in pf:
            if all(v in assignment for v in f):
                if frozenset(assignment[v] for v in f) not in qfacets:
                    return False
        return True

    def backtrack(k):
        if k == m:
            return fully_mapped_ok()
        v = order[k]
        for image in range(m):
            if image in used or not consistent(v, image):
                continue
            assignment[v] = image
            used.add(image)
            ok = True
            for f in pf:
                if all(x in assignment for x in f):
                    if frozenset(assignment[x] for x in f) not in qfacets:
                        ok = False
                        break
            if ok and backtrack(k + 1):
                return True
            del assignment[v]
            used.discard(image)
        return False

    if backtrack(0):
        mapping = {pv[v]: qv[i] for v, i in assignment.items()}
        return True, mapping
    return False, None
