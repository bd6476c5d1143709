"""Triangulations: edgewise subdivisions, joins, cones and dilations.

The constructions here assemble the regular unimodular triangulation of the
reduced Laplacian polytope of a simplex boundary: a join of two edgewise
subdivisions for odd d; for even d a triangulation of the interior polytope
(facet joins glued, coned over the unique interior point) refined by a
second edgewise subdivision.  Every triangulation carries proposed lifting
heights; `is_regular` certifies them independently by exact fold checks,
falling back to an exact LP search when no usable heights are present.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

from . import lp
from .budgets import BudgetError, cell_budget
from .complexes import h_from_f
from .laplacian import interior_polytope_vertices, reduce_full_dim
from .linalg import ExactMatrix, det_int, nullspace, primitive_vector, solve
from .polytope import LatticePolytope


class Triangulation:
    """A set of maximal lattice simplices over a shared vertex pool."""

    __slots__ = ("vertex_pool", "cells", "carrier", "heights", "checks")

    def __init__(self, vertex_pool, cells, carrier, heights=None):
        self.vertex_pool = [tuple(int(x) for x in p) for p in vertex_pool]
        self.cells = [tuple(sorted(c)) for c in cells]
        self.carrier = carrier
        self.heights = heights
        self.checks = {}

    @property
    def dim(self):
        return len(self.cells[0]) - 1 if self.cells else -1

    @property
    def cell_count(self):
        return len(self.cells)

    def cell_points(self, cell):
        return [self.vertex_pool[i] for i in cell]

    def used_vertex_indices(self):
        used = set()
        for c in self.cells:
            used.update(c)
        return sorted(used)

    def translate(self, vec):
        pool = [tuple(x + v for x, v in zip(p, vec)) for p in self.vertex_pool]
        carrier = self.carrier.translate(vec) if self.carrier else None
        t = Triangulation(pool, self.cells, carrier, heights=self.heights)
        t.checks = dict(self.checks)
        return t

    def to_json(self):
        payload = {
            "vertices": [list(p) for p in self.vertex_pool],
            "cells": [list(c) for c in self.cells],
            "checks": self.checks,
        }
        return json.dumps(payload, indent=None, separators=(",", ":"))

    @classmethod
    def from_json(cls, text, carrier=None):
        data = json.loads(text)
        t = cls(data["vertices"], data["cells"], carrier)
        t.checks = dict(data.get("checks", {}))
        return t

    def __repr__(self):
        return f"Triangulation({self.cell_count} cells, dim={self.dim})"


# ---------------------------------------------------------------------------
# edgewise subdivision
# ---------------------------------------------------------------------------


def compositions(r, n):
    """All n-part compositions of r, lexicographically."""
    if n == 0:
        return [()] if r == 0 else []
    out = []

    def rec(prefix, rest, parts):
        if parts == 1:
            out.append(prefix + (rest,))
            return
        for v in range(rest + 1):
            rec(prefix + (v,), rest - v, parts - 1)

    rec((), r, n)
    return out


_ESD_CELL_CACHE = {}


def _esd_cells_mu(r, n):
    """Maximal cells of the r-th edgewise subdivision of an (n-1)-simplex.

    Cells are produced in partial-sum coordinates: a cell is a chain of
    n lattice vectors t with 0 <= t_1 <= ... <= t_{n-1} <= r whose
    successive differences are nested 0/1 vectors; equivalently a base
    point plus a permutation telling which coordinate steps up next.
    Exactly r^(n-1) cells come out.  Results are cached per (r, n).
    """
    cached = _ESD_CELL_CACHE.get((r, n))
    if cached is not None:
        return cached
    m = n - 1
    if m == 0:
        return [((),)]
    cells = []

    def valid(t):
        prev = 0
        for x in t:
            if x < prev:
                return False
            prev = x
        return prev <= r

    def rec(base, chain, bumped):
        if len(chain) == n:
            cells.append(tuple(chain))
            return
        for k in range(m):
            if k in bumped:
                continue
            nxt = list(chain[-1])
            nxt[k] += 1
            nxt = tuple(nxt)
            if valid(nxt):
                bumped.add(k)
                chain.append(nxt)
                rec(base, chain, bumped)
                chain.pop()
                bumped.discard(k)

    for base in compositions(r, n):
        # partial sums of the composition, dropping the final fixed r
        t0 = []
        acc = 0
        for x in base[:-1]:
            acc += x
            t0.append(acc)
        t0 = tuple(t0)
        rec(t0, [t0], set())
    _ESD_CELL_CACHE[(r, n)] = cells
    return cells


def _t_to_mu(t, r):
    mu = []
    prev = 0
    for x in t:
        mu.append(x - prev)
        prev = x
    mu.append(r - prev)
    return tuple(mu)


def alcove_height(mu):
    """Lifting height that induces the edgewise subdivision.

    Sum of squares of all proper prefix sums of `mu` and of all their
    pairwise differences.  The walls of the subdivision lie on integer
    levels of exactly these functionals, so the piecewise-linear
    interpolation folds strictly across every wall.  Computed over a fixed
    (possibly zero-padded) coordinate list, the value is invariant under
    restriction to faces, which makes liftings of glued subdivisions agree
    on intersections.
    """
    n = len(mu)
    t = []
    acc = 0
    for x in mu[:-1]:
        acc += x
        t.append(acc)
    total = sum(v * v for v in t)
    for k in range(n - 1):
        for l in range(k + 1, n - 1):
            diff = t[l] - t[k]
            total += diff * diff
    return total


def _pair_rank_height(a, b, m):
    """`alcove_height` of e_a + e_b over m coordinates (1-based, a <= b).

    Closed form for the second edgewise subdivision: prefix sums take the
    value 0 at positions below a, 1 between a and b, 2 from b on.
    """
    c0 = a - 1
    c1 = b - a
    c2 = m - b
    return c1 + 4 * c2 + c0 * c1 + c1 * c2 + 4 * c0 * c2


def edgewise_of_dilated(points, r):
    """Edgewise subdivision of a simplex given as r times a unimodular one.

    `points` are the vertices (in a fixed order that determines the
    triangulation) of r*Gamma for some unimodular simplex Gamma; the
    subdivision triangulates it into r^dim unimodular cells.  Lifting
    heights sum the squares of the composition coordinates, which makes
    restriction to faces consistent.
    """
    n = len(points)
    ambient = len(points[0]) if points else 0
    base = points[0]
    for p in points[1:]:
        if any((x - y) % r for x, y in zip(p, base)):
            raise ValueError("simplex is not an r-fold dilation in its lattice")

    def locate(mu):
        coords = [sum(mu[i] * points[i][k] for i in range(n)) for k in range(ambient)]
        out = []
        for x in coords:
            if x % r:
                raise ValueError("simplex is not unimodular in its lattice")
            out.append(x // r)
        return tuple(out)

    pool = {}
    heights = []

    def index_of(mu):
        pt = locate(mu)
        if pt not in pool:
            pool[pt] = len(pool)
            heights.append(alcove_height(mu))
        return pool[pt]

    cells = []
    for chain in _esd_cells_mu(r, n):
        cells.append(tuple(index_of(_t_to_mu(t, r)) for t in chain))
    points_list = [None] * len(pool)
    for pt, i in pool.items():
        points_list[i] = pt
    carrier = LatticePolytope(list(dict.fromkeys(points))) if ambient else LatticePolytope([()])
    return Triangulation(points_list, cells, carrier, heights=heights)


def edgewise_subdivision(simplex_points, r):
    """Triangulation of r times the given unimodular simplex.

    The simplex is checked for unimodularity in its own lattice; the cell
    count is r^dim.
    """
    if r < 1:
        raise ValueError("dilation parameter must be >= 1")
    pts = [tuple(int(x) for x in p) for p in simplex_points]
    poly = LatticePolytope(pts)
    reduced, _, _ = poly.full_dimensional()
    d = reduced.ambient_dim
    if len(pts) != d + 1:
        raise ValueError("input must be a simplex")
    if d > 0:
        base = reduced.points[0]
        mat = [
            [p[k] - base[k] for k in range(d)] for p in reduced.points[1:]
        ]
        if abs(det_int(mat)) != 1:
            raise ValueError("simplex is not unimodular")
    dilated = [tuple(r * x for x in p) for p in pts]
    return edgewise_of_dilated(dilated, r)


# ---------------------------------------------------------------------------
# joins
# ---------------------------------------------------------------------------


def join(t1, t2):
    """Join of two triangulations via the standard block embedding.

    The first factor lands in coordinates (x, 0, 0), the second in
    (0, y, 1); cells are all unions of a cell from each side.  Heights
    concatenate.
    """
    d1 = len(t1.vertex_pool[0]) if t1.vertex_pool else 0
    d2 = len(t2.vertex_pool[0]) if t2.vertex_pool else 0
    pool = [p + (0,) * d2 + (0,) for p in t1.vertex_pool]
    off = len(pool)
    pool += [(0,) * d1 + q + (1,) for q in t2.vertex_pool]
    cells = [
        tuple(c1) + tuple(off + i for i in c2)
        for c1 in t1.cells
        for c2 in t2.cells
    ]
    carrier_pts = [p + (0,) * d2 + (0,) for p in t1.carrier.points]
    carrier_pts += [(0,) * d1 + q + (1,) for q in t2.carrier.points]
    carrier = LatticePolytope(carrier_pts)
    heights = None
    if t1.heights is not None and t2.heights is not None:
        heights = list(t1.heights) + list(t2.heights)
    return Triangulation(pool, cells, carrier, heights=heights)


# ---------------------------------------------------------------------------
# the facet join partition of the interior polytope (even d)
# ---------------------------------------------------------------------------


def facet_join_partition(d, family, i=None, j=None):
    """Vertex-index split of a facet of the interior polytope into the two
    dilated-simplex factors of its join structure.

    Indices are the 1-based labels of the vertex formula; `family` is one
    of "all" (the facet 1.x <= d+1), "even_skip" (odd-support normal
    missing an even coordinate i), "odd_skip" (even-support normal missing
    an odd coordinate j) and "pair" (x_i + x_j >= 1).  The first factor
    always collects the odd-labelled vertices of the facet, the second the
    even-labelled ones.
    """
    if d < 2 or d % 2:
        raise ValueError("facet joins are defined for even d >= 2")
    odd_all = list(range(1, d + 3, 2))
    even_all = list(range(2, d + 3, 2))
    if family == "all":
        missing = {1, 2}
    elif family == "even_skip":
        if i is None or i % 2 or not (2 <= i <= d):
            raise ValueError("even_skip needs even i in [d]")
        missing = {1, i + 2}
    elif family == "odd_skip":
        if j is None or j % 2 == 0 or not (1 <= j <= d):
            raise ValueError("odd_skip needs odd j in [d]")
        missing = {2, j + 2}
    elif family == "pair":
        if (
            i is None
            or j is None
            or not (1 <= i < j <= d)
            or (i + j) % 2 == 0
        ):
            raise ValueError("pair needs 1 <= i < j <= d with i+j odd")
        missing = {i + 2, j + 2}
    else:
        raise ValueError(f"unknown facet family {family!r}")
    v1 = tuple(l for l in odd_all if l not in missing)
    v2 = tuple(l for l in even_all if l not in missing)
    return v1, v2


def interior_facet_families(d):
    """All facet family descriptors of the interior polytope, with the
    vertex labels attaining equality."""
    fams = [("all", None, None)]
    for i in range(2, d + 1, 2):
        fams.append(("even_skip", i, None))
    for j in range(1, d + 1, 2):
        fams.append(("odd_skip", None, j))
    for a in range(1, d + 1):
        for b in range(a + 1, d + 1):
            if (a + b) % 2:
                fams.append(("pair", a, b))
    return fams


# ---------------------------------------------------------------------------
# the main construction
# ---------------------------------------------------------------------------


def _standard_dilated_simplex(m, r, shift):
    """Vertices of r*Delta_m + shift*1 in R^m, base vertex first."""
    verts = [tuple(shift for _ in range(m))]
    for i in range(m):
        verts.append(tuple(shift + (r if k == i else 0) for k in range(m)))
    return verts


def _affine_match(source_pts, target_pts):
    """Unimodular affine map sending source vertices to target vertices in
    order, or None."""
    d = len(source_pts[0])
    s0 = source_pts[0]
    t0 = target_pts[0]
    cols_s = [[p[k] - s0[k] for p in source_pts[1:]] for k in range(d)]
    cols_t = [[p[k] - t0[k] for p in target_pts[1:]] for k in range(d)]
    # M * S = T with S, T the edge matrices (columns = edges)
    s_mat = ExactMatrix(cols_s)  # rows indexed by coordinate, cols by edges
    t_mat = ExactMatrix(cols_t)
    det_s = s_mat.det()
    if det_s == 0:
        return None
    entries = []
    for k in range(d):
        sol = solve(
            [[s_mat.entries[a][b] for a in range(d)] for b in range(d)],
            [t_mat.entries[k][b] for b in range(d)],
        )
        if sol is None or any(x.denominator != 1 for x in sol):
            return None
        entries.append([int(x) for x in sol])
    mat = ExactMatrix(entries)
    if abs(mat.det()) != 1:
        return None
    shift = tuple(t0[k] - sum(entries[k][a] * s0[a] for a in range(d)) for k in range(d))
    return mat, shift


def _map_triangulation(t, mat, shift):
    pool = [
        tuple(v + s for v, s in zip(mat.matvec(p), shift)) for p in t.vertex_pool
    ]
    carrier_pts = [
        tuple(v + s for v, s in zip(mat.matvec(p), shift)) for p in t.carrier.points
    ]
    out = Triangulation(pool, t.cells, LatticePolytope(carrier_pts), heights=t.heights)
    out.checks = dict(t.checks)
    return out


def _odd_laplacian_triangulation(d):
    r = d + 2
    m1 = (d + 1) // 2
    m2 = (d - 1) // 2
    fac1 = edgewise_of_dilated(_standard_dilated_simplex(m1, r, -2), r)
    fac2 = edgewise_of_dilated(_standard_dilated_simplex(m2, r, -2), r)
    t = join(fac1, fac2)

    target, _ = reduce_full_dim(d)
    verts_target = list(target.points)
    odd_cols = [verts_target[l - 1] for l in range(1, d + 3, 2)]
    even_cols = [verts_target[l - 1] for l in range(2, d + 3, 2)]
    amb = d + 1
    src1 = [p + (0,) * m2 + (0,) for p in fac1.carrier.points]
    src2 = [(0,) * m1 + q + (1,) for q in fac2.carrier.points]
    assert len(src1) == len(odd_cols) and len(src2) == len(even_cols)

    from itertools import permutations

    for perm1 in permutations(range(len(odd_cols))):
        img1 = [odd_cols[k] for k in perm1]
        for perm2 in permutations(range(len(even_cols))):
            img2 = [even_cols[k] for k in perm2]
            match = _affine_match(src1 + src2, img1 + img2)
            if match is not None:
                mapped = _map_triangulation(t, match[0], match[1])
                mapped.carrier = target
                return mapped
    raise AssertionError(
        "no unimodular vertex matching between the join model and the "
        "reduced polytope; ambient dim %d" % amb
    )


def _interior_boundary_triangulation(d):
    """Triangulation of the boundary of the interior polytope (even d).

    Each facet is triangulated as the join of edgewise subdivisions of its
    two dilated-simplex factors; ordering factor vertices by their global
    label makes the facet triangulations agree on intersections.  Returns
    (pool points, per-point square-sum heights, cells).
    """
    r = (d + 2) // 2
    cs = interior_polytope_vertices(d)
    pool = {}
    lam = {}
    points_list = []

    def index_point(pt, height):
        if pt not in pool:
            pool[pt] = len(points_list)
            points_list.append(pt)
            lam[pt] = height
        elif lam[pt] != height:
            raise AssertionError(
                "alcove height is inconsistent across facets"
            )
        return pool[pt]

    cells = []
    seen_cells = set()
    for family, i, j in interior_facet_families(d):
        v1, v2 = facet_join_partition(d, family, i, j)
        parts = []
        for labels in (v1, v2):
            verts = [cs[l - 1] for l in labels]
            n = len(labels)
            # cells of the edgewise subdivision of this factor, as pool ids
            local = []
            for chain in _esd_cells_mu(r, n):
                ids = []
                for t_vec in chain:
                    mu = _t_to_mu(t_vec, r)
                    coords = []
                    for k in range(d):
                        num = sum(mu[a] * verts[a][k] for a in range(n))
                        if num % r:
                            raise AssertionError(
                                "factor simplex not an r-fold dilation"
                            )
                        coords.append(num // r)
                    # heights over the full label list keep facets consistent
                    glob = [0] * (d + 2)
                    for lbl, m in zip(labels, mu):
                        glob[lbl - 1] = m
                    ids.append(index_point(tuple(coords), alcove_height(glob)))
                local.append(tuple(ids))
            parts.append(local)
        for ca in parts[0]:
            for cb in parts[1]:
                cell = tuple(sorted(ca + cb))
                if cell not in seen_cells:
                    seen_cells.add(cell)
                    cells.append(cell)
    heights = [lam[p] for p in points_list]
    return points_list, heights, cells


def _fold_data(vertex_pool, cells):
    """Interior ridge folds of a full-dimensional triangulation.

    Yields (cell, opposite_vertex) pairs, one per interior ridge, plus the
    integer affine-lift machinery for evaluating fold values.
    """
    ridge_map = {}
    for ci, cell in enumerate(cells):
        for drop in range(len(cell)):
            ridge = cell[:drop] + cell[drop + 1 :]
            ridge_map.setdefault(ridge, []).append((ci, cell[drop]))
    folds = []
    for ridge, incident in ridge_map.items():
        if len(incident) > 2:
            raise ValueError("three cells share a ridge; not a triangulation")
        if len(incident) == 2:
            (ca, _), (_, vb) = incident
            folds.append((ca, vb))
    return folds


def _fold_values_multi(vertex_pool, cells, height_vectors, folds):
    """Exact fold values for several height vectors at once.

    For each fold (cell, opposite vertex) and each height vector, the
    value is height(v) - affine_lift_of_cell(v).  Integer pools and
    heights go through a fraction-free determinant identity; otherwise
    one exact affine interpolation per cell and height vector is reused
    across its folds.
    """
    all_int = all(
        isinstance(h, int) for heights in height_vectors for h in heights
    )
    if all_int:
        return _fold_values_multi_int(vertex_pool, cells, height_vectors, folds)
    dim = len(vertex_pool[0])
    by_cell = {}
    for ca, vb in folds:
        by_cell.setdefault(ca, []).append(vb)
    results = [[] for _ in height_vectors]
    order = []
    for ca, opposite in by_cell.items():
        cell = cells[ca]
        mat = [list(vertex_pool[i]) + [1] for i in cell]
        funcs = []
        for heights in height_vectors:
            coef = solve(
                [[Fraction(mat[i][k]) for k in range(dim + 1)] for i in range(dim + 1)],
                [Fraction(heights[i]) for i in cell],
            )
            if coef is None:
                raise ValueError("degenerate cell in fold computation")
            funcs.append(coef)
        for vb in opposite:
            order.append((ca, vb))
            x = vertex_pool[vb]
            for slot, (heights, coef) in enumerate(zip(height_vectors, funcs)):
                lift = sum(coef[k] * x[k] for k in range(dim)) + coef[dim]
                results[slot].append(Fraction(heights[vb]) - lift)
    return order, results


def _fold_values_multi_int(vertex_pool, cells, height_vectors, folds):
    """Integer fold values: value = det(lifted edge matrix) / det(spatial).

    The lifted matrix rows are the cell's edge vectors extended by height
    differences, with the opposite vertex's row appended last; expanding
    along that row shows the determinant equals the fold value times the
    spatial determinant.
    """
    dim = len(vertex_pool[0])
    by_cell = {}
    for ca, vb in folds:
        by_cell.setdefault(ca, []).append(vb)
    results = [[] for _ in height_vectors]
    order = []
    for ca, opposite in by_cell.items():
        cell = cells[ca]
        base = vertex_pool[cell[0]]
        edges = [
            [vertex_pool[i][k] - base[k] for k in range(dim)] for i in cell[1:]
        ]
        det_spatial = det_int(edges)
        if det_spatial == 0:
            raise ValueError("degenerate cell in fold computation")
        lifted_rows = []
        for heights in height_vectors:
            h0 = heights[cell[0]]
            lifted_rows.append(
                [
                    edges[r] + [heights[i] - h0]
                    for r, i in enumerate(cell[1:])
                ]
            )
        for vb in opposite:
            order.append((ca, vb))
            x = [vertex_pool[vb][k] - base[k] for k in range(dim)]
            for slot, heights in enumerate(height_vectors):
                row = x + [heights[vb] - heights[cell[0]]]
                val = det_int(lifted_rows[slot] + [row])
                results[slot].append(Fraction(val, det_spatial))
    return order, results


def _fold_values(vertex_pool, cells, heights, folds):
    """Exact fold values (one height vector)."""
    _, results = _fold_values_multi(vertex_pool, cells, [heights], folds)
    return results[0]


def is_regular(t, heights=None, lp_cell_limit=4000):
    """Regularity test with an exact certificate.

    If heights are supplied (or attached to the triangulation), all
    interior folds of the induced lift are checked for strict convexity;
    strict folds on a valid triangulation certify that the lower envelope
    of the lifted vertices projects exactly onto it.  Without a usable
    witness the strict system is solved as an exact LP maximizing the
    minimum fold slack (positive optimum iff regular).

    Returns (regular, heights_or_none).
    """
    use = heights if heights is not None else t.heights
    folds = _fold_data(t.vertex_pool, t.cells)
    if use is not None:
        values = _fold_values(t.vertex_pool, t.cells, use, folds)
        if all(v > 0 for v in values):
            t.checks["regular"] = {"witness": "heights", "folds": len(folds)}
            return True, list(use)
        if heights is not None:
            return False, None
    if t.cell_count > lp_cell_limit:
        raise BudgetError(
            f"regularity LP over {t.cell_count} cells exceeds the limit "
            f"{lp_cell_limit} and no valid heights witness is attached"
        )
    used = t.used_vertex_indices()
    var = {v: k for k, v in enumerate(used)}
    nvars = len(used) + 1  # heights plus the slack s
    a_ub = []
    b_ub = []
    dim = len(t.vertex_pool[0])
    for ca, vb in folds:
        cell = t.cells[ca]
        lam = solve(
            [
                [Fraction(t.vertex_pool[i][k]) for i in cell]
                for k in range(dim)
            ]
            + [[Fraction(1)] * len(cell)],
            [Fraction(x) for x in t.vertex_pool[vb]] + [Fraction(1)],
        )
        if lam is None:
            raise ValueError("fold vertex outside the cell's affine hull")
        row = [Fraction(0)] * nvars
        row[var[vb]] += 1
        for coef, i in zip(lam, cell):
            row[var[i]] -= coef
        # constraint: fold >= s  <=>  s - fold <= 0
        a_ub.append([-x for x in row[:-1]] + [Fraction(1)])
        b_ub.append(Fraction(0))
    srow = [Fraction(0)] * nvars
    srow[-1] = Fraction(1)
    a_ub.append(srow)
    b_ub.append(Fraction(1))
    objective = [0] * (nvars - 1) + [1]
    res = lp.solve_lp(objective, a_ub, b_ub, maximize=True)
    assert res.status == lp.OPTIMAL
    if res.value <= 0:
        return False, None
    found = [Fraction(0)] * len(t.vertex_pool)
    for v, k in var.items():
        found[v] = res.x[k]
    t.checks["regular"] = {"witness": "lp", "folds": len(folds)}
    return True, found


def _choose_scale(primary, secondary):
    """Smallest positive integer N with N*primary + secondary > 0 per fold."""
    need = 1
    for p, s in zip(primary, secondary):
        if p < 0:
            raise AssertionError("base fold is non-convex; construction bug")
        if p == 0:
            if s <= 0:
                raise AssertionError("flat fold with non-convex refinement")
        elif s <= 0:
            # need N > -s / p
            req = (-s) // p + 1
            need = max(need, int(req))
    return need


def laplacian_triangulation(d, budget=None):
    """Regular unimodular triangulation of the reduced Laplacian polytope.

    Odd d: the join of the edgewise subdivisions of the two dilated
    simplices, mapped onto the polytope by a verified unimodular match.
    Even d: every facet of the interior polytope is triangulated as a join
    of edgewise subdivisions (consistent on intersections), coned over the
    interior point, and the result refined by a second edgewise
    subdivision; the refined copy is translated onto the polytope.

    The number of cells is (d+2)^d; the materialization budget is checked
    up front.  The returned triangulation carries integer lifting heights.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    n_cells = (d + 2) ** d
    limit = cell_budget(budget)
    if n_cells > limit:
        raise BudgetError(
            f"triangulation needs {n_cells} cells, budget is {limit}"
        )
    if d % 2 == 1:
        return _odd_laplacian_triangulation(d)

    points_list, lam_heights, boundary_cells = _interior_boundary_triangulation(d)
    apex = tuple(1 for _ in range(d))
    pool = list(points_list)
    apex_idx = len(pool)
    pool.append(apex)
    cone_cells = [cell + (apex_idx,) for cell in boundary_cells]

    # heights: a large multiple of the boundary indicator (strict convexity
    # across facets) plus the alcove heights (strictness inside facets)
    indicator = [1] * len(points_list) + [0]
    secondary = list(lam_heights) + [0]
    folds = _fold_data(pool, cone_cells)
    _, (prim, sec) = _fold_values_multi(pool, cone_cells, [indicator, secondary], folds)
    n_scale = _choose_scale(prim, sec)
    cone_heights = [
        n_scale * ind + s for ind, s in zip(indicator, secondary)
    ]

    # dilate by 2: edgewise refinement of every cone cell, keyed by the
    # global lexicographic order of the cone's vertex pool
    rank = {}
    for pos, i in enumerate(sorted(range(len(pool)), key=lambda i: pool[i])):
        rank[i] = pos + 1
    m_total = len(pool)
    pool2 = {}
    points2 = []
    base_height = []
    local2 = []

    def index2(pt, omega, lam2):
        if pt not in pool2:
            pool2[pt] = len(points2)
            points2.append(pt)
            base_height.append(omega)
            local2.append(lam2)
        else:
            k = pool2[pt]
            if base_height[k] != omega or local2[k] != lam2:
                raise AssertionError("refinement heights disagree across cells")
        return pool2[pt]

    cells2 = []
    for cell in cone_cells:
        ordered = sorted(cell, key=lambda i: pool[i])
        verts = [pool[i] for i in ordered]
        hts = [cone_heights[i] for i in ordered]
        n = len(ordered)
        for chain in _esd_cells_mu(2, n):
            ids = []
            for t_vec in chain:
                mu = _t_to_mu(t_vec, 2)
                pt = tuple(
                    sum(mu[a] * verts[a][k] for a in range(n)) for k in range(d)
                )
                omega = sum(mu[a] * hts[a] for a in range(n))
                support = [a for a in range(n) if mu[a]]
                if len(support) == 1:
                    ra = rb = rank[ordered[support[0]]]
                else:
                    ra, rb = sorted(rank[ordered[a]] for a in support)
                ids.append(index2(pt, omega, _pair_rank_height(ra, rb, m_total)))
            cells2.append(tuple(ids))

    folds2 = _fold_data(points2, cells2)
    _, (prim2, sec2) = _fold_values_multi(
        points2, cells2, [base_height, local2], folds2
    )
    n2 = _choose_scale(prim2, sec2)
    heights2 = [n2 * b + t for b, t in zip(base_height, local2)]

    target, _ = reduce_full_dim(d)
    shifted = [tuple(x - 1 for x in p) for p in points2]
    out = Triangulation(shifted, cells2, target, heights=heights2)
    return out


def interior_polytope_triangulation(d, budget=None):
    """Cone triangulation of the interior polytope (even d), with heights."""
    if d < 2 or d % 2:
        raise ValueError("defined for even d >= 2")
    n_cells = ((d + 2) // 2) ** d
    limit = cell_budget(budget)
    if n_cells > limit:
        raise BudgetError(
            f"triangulation needs {n_cells} cells, budget is {limit}"
        )
    points_list, lam_heights, boundary_cells = _interior_boundary_triangulation(d)
    apex = tuple(1 for _ in range(d))
    pool = list(points_list) + [apex]
    cone_cells = [cell + (len(pool) - 1,) for cell in boundary_cells]
    indicator = [1] * len(points_list) + [0]
    secondary = list(lam_heights) + [0]
    folds = _fold_data(pool, cone_cells)
    _, (prim, sec) = _fold_values_multi(pool, cone_cells, [indicator, secondary], folds)
    n_scale = _choose_scale(prim, sec)
    heights = [n_scale * ind + s for ind, s in zip(indicator, secondary)]
    carrier = LatticePolytope(interior_polytope_vertices(d))
    return Triangulation(pool, cone_cells, carrier, heights=heights)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify_triangulation(t, pairwise_limit=10**4, sample_pairs=20000):
    """Certify a triangulation: affine independence, containment in the
    carrier, pairwise interior-disjointness, volume sum, unimodularity.

    Disjointness is decided pairwise by exact LP (with bounding-box and
    separating-facet fast paths); above `pairwise_limit` cells a
    deterministic sample is checked and the volume identity carries the
    rest.  Returns a report dict; `ok` is the conjunction of all checks.
    """
    report = {
        "cells": t.cell_count,
        "affinely_independent": True,
        "unimodular": True,
        "contained": True,
        "volume_sum": 0,
        "carrier_nvol": None,
        "volume_ok": False,
        "disjointness": "full" if t.cell_count <= pairwise_limit else "sampled",
        "disjoint_ok": True,
        "failures": [],
    }
    dim = len(t.vertex_pool[0]) if t.vertex_pool else 0
    vol = 0
    for ci, cell in enumerate(t.cells):
        if len(cell) != dim + 1:
            report["affinely_independent"] = False
            report["failures"].append(("cell_size", ci))
            continue
        base = t.vertex_pool[cell[0]]
        mat = [
            [t.vertex_pool[i][k] - base[k] for k in range(dim)] for i in cell[1:]
        ]
        det = abs(det_int(mat))
        if det == 0:
            report["affinely_independent"] = False
            report["failures"].append(("degenerate", ci))
        if det != 1:
            report["unimodular"] = False
        vol += det
    report["volume_sum"] = vol

    carrier = t.carrier
    if carrier is not None:
        if dim == 0:
            for vi in t.used_vertex_indices():
                if t.vertex_pool[vi] != carrier.points[0]:
                    report["contained"] = False
        else:
            halfspaces = carrier.facets()
            for vi in t.used_vertex_indices():
                p = t.vertex_pool[vi]
                if not all(h.holds(p) for h in halfspaces):
                    report["contained"] = False
                    report["failures"].append(("outside_carrier", vi))
                    break
        report["carrier_nvol"] = carrier.normalized_volume()
        report["volume_ok"] = vol == report["carrier_nvol"]

    pairs = _candidate_pairs(t, pairwise_limit, sample_pairs)
    facet_cache = {}
    for a, b in pairs:
        if not _cells_disjoint(t, a, b, facet_cache):
            report["disjoint_ok"] = False
            report["failures"].append(("overlap", a, b))
            break
    report["ok"] = (
        report["affinely_independent"]
        and report["contained"]
        and report["volume_ok"]
        and report["disjoint_ok"]
    )
    t.checks["verify"] = {
        k: v for k, v in report.items() if k != "failures"
    }
    return report


def _cell_bbox(t, ci):
    pts = t.cell_points(t.cells[ci])
    dim = len(pts[0])
    return (
        tuple(min(p[k] for p in pts) for k in range(dim)),
        tuple(max(p[k] for p in pts) for k in range(dim)),
    )


def _boxes_overlap(lo1, hi1, lo2, hi2):
    return all(
        l1 <= h2 and l2 <= h1 for l1, h1, l2, h2 in zip(lo1, hi1, lo2, hi2)
    )


def _candidate_pairs(t, pairwise_limit, sample_pairs):
    n = t.cell_count
    if n <= pairwise_limit:
        boxes = [_cell_bbox(t, i) for i in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                if _boxes_overlap(*boxes[a], *boxes[b]):
                    yield a, b
    else:
        # deterministic sample: consecutive pairs plus hashed long-range
        # partners; the exact volume identity covers global coverage
        emitted = 0
        a = 0
        step = max(1, (2 * (n - 1)) // max(1, sample_pairs))
        while emitted < sample_pairs and a < n - 1:
            yield a, a + 1
            emitted += 1
            partner = (a * 2654435761 + 7) % n
            if partner != a:
                lo, hi = sorted((a, partner))
                yield lo, hi
                emitted += 1
            a += step


def _cell_facet_halfspaces(t, ci, cache):
    """Facet inequalities of one cell, oriented so the cell satisfies <=."""
    if ci in cache:
        return cache[ci]
    pts = t.cell_points(t.cells[ci])
    dim = len(pts[0])
    out = []
    for drop in range(len(pts)):
        face = [p for i, p in enumerate(pts) if i != drop]
        base = face[0]
        mat = [[p[k] - base[k] for k in range(dim)] for p in face[1:]]
        kernel = nullspace(mat) if mat else [[Fraction(1)]]
        if len(kernel) != 1:
            continue
        normal = primitive_vector(kernel[0])
        off = sum(a_ * x for a_, x in zip(normal, base))
        v_in = sum(a_ * x for a_, x in zip(normal, pts[drop]))
        if v_in == off:
            continue
        if v_in > off:
            normal = tuple(-x for x in normal)
            off = -off
        out.append((normal, off))
    cache[ci] = out
    return out


def _cells_disjoint(t, a, b, facet_cache=None):
    """Interiors of two full-dimensional cells do not meet."""
    if facet_cache is None:
        facet_cache = {}
    pa = t.cell_points(t.cells[a])
    pb = t.cell_points(t.cells[b])
    # fast path: a facet hyperplane of one cell separating the other
    for ci, others in ((a, pb), (b, pa)):
        for normal, off in _cell_facet_halfspaces(t, ci, facet_cache):
            if all(
                sum(a_ * x for a_, x in zip(normal, q)) >= off for q in others
            ):
                return True
    return not lp.simplices_interior_overlap(pa, pb)


# ---------------------------------------------------------------------------
# face census, h-vectors, shellings
# ---------------------------------------------------------------------------


def face_census(t, max_in_memory=30_000_000):
    """f-vector of the triangulation as a simplicial complex.

    Every subset of every cell is emitted and deduplicated; the empty face
    is counted once.  Above the in-memory estimate the census streams
    encoded faces through sorted temporary chunks instead.
    """
    k = t.dim + 1
    estimate = t.cell_count * (2**k)
    if estimate <= max_in_memory:
        faces = set()
        for cell in t.cells:
            for size in range(1, k + 1):
                faces.update(combinations(cell, size))
        counts = [0] * (k + 1)
        counts[0] = 1
        for f in faces:
            counts[len(f)] += 1
        return tuple(counts)
    return _face_census_external(t)


def _face_census_external(t):
    import heapq
    import struct
    import tempfile

    k = t.dim + 1
    chunk_limit = 2_000_000
    files = []
    buf = []

    def flush():
        if not buf:
            return
        buf.sort()
        handle = tempfile.TemporaryFile()
        for item in buf:
            handle.write(struct.pack(f">B{len(item)}I", len(item), *item))
        handle.seek(0)
        files.append((handle, None))
        buf.clear()

    for cell in t.cells:
        for size in range(1, k + 1):
            buf.extend(combinations(cell, size))
            if len(buf) >= chunk_limit:
                flush()
    flush()

    def reader(handle):
        while True:
            head = handle.read(1)
            if not head:
                return
            (ln,) = struct.unpack(">B", head)
            yield struct.unpack(f">{ln}I", handle.read(4 * ln))

    counts = [0] * (k + 1)
    counts[0] = 1
    last = None
    for face in heapq.merge(*(reader(h) for h, _ in files)):
        if face != last:
            counts[len(face)] += 1
            last = face
    for h, _ in files:
        h.close()
    return tuple(counts)


def f_vector_of(t, max_in_memory=30_000_000):
    return face_census(t, max_in_memory=max_in_memory)


def h_vector_of(t, max_in_memory=30_000_000):
    """h-vector of the triangulation complex (length dim+2)."""
    return h_from_f(face_census(t, max_in_memory=max_in_memory))


def verify_shelling(p, order):
    """Is `order` (facet vertex sets) a shelling of the simplicial polytope?

    Each facet must meet the union of its predecessors in a nonempty union
    of its own ridges.
    """
    facets = [frozenset(s) for s in p.facet_vertex_sets()]
    seq = [frozenset(s) for s in order]
    if sorted(facets, key=sorted) != sorted(seq, key=sorted):
        raise ValueError("order is not a permutation of the facets")
    d = p.dim()
    for k in range(1, len(seq)):
        current = seq[k]
        ridges = [
            current & prev for prev in seq[:k] if len(current & prev) == d - 1
        ]
        if not ridges:
            return False
        for prev in seq[:k]:
            inter = current & prev
            if not any(inter <= ridge for ridge in ridges):
                return False
    return True


def standard_shelling_order(d):
    """The facet order F, E_2..E_d, O_1..O_{d-1}, then the pair facets in
    lexicographic order, as vertex-index sets of the reduced polytope."""
    if d < 2 or d % 2:
        raise ValueError("defined for even d >= 2")
    everyone = set(range(1, d + 3))
    order = [everyone - {1, 2}]
    for i in range(2, d + 1, 2):
        order.append(everyone - {1, i + 2})
    for j in range(1, d + 1, 2):
        order.append(everyone - {2, j + 2})
    for a in range(1, d + 1):
        for b in range(a + 1, d + 1):
            if (a + b) % 2:
                order.append(everyone - {a + 2, b + 2})
    # translate 1-based labels to point indices of the reduced polytope
    return [frozenset(l - 1 for l in s) for s in order]
