from math import comb

import pytest

from lapoly.budgets import BudgetError
from lapoly.laplacian import interior_polytope_vertices, reduce_full_dim
from lapoly.polytope import (
    Halfspace,
    LatticePolytope,
    NotFullDimensionalError,
    combinatorially_equivalent,
    cyclic_polytope,
    gale_evenness_sets,
)


def unit_square():
    return LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])


def even_facet_families(d):
    """The four halfspace families of the reduced polytope for even d."""
    n = d
    odd = [1 if k % 2 == 1 else 0 for k in range(1, n + 1)]
    even = [1 if k % 2 == 0 else 0 for k in range(1, n + 1)]
    fams = {(tuple([1] * n), d + 2)}
    for i in range(2, d + 1, 2):
        v = list(odd)
        v[i - 1] -= 1
        fams.add((tuple(v), (d + 2) // 2))
    for j in range(1, d + 1, 2):
        v = list(even)
        v[j - 1] -= 1
        fams.add((tuple(v), (d + 2) // 2))
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            if (i + j) % 2:
                v = [0] * n
                v[i - 1] = -1
                v[j - 1] = -1
                fams.add((tuple(v), 0))
    return fams


def test_halfspace_normalization():
    h = Halfspace((1, -2), 3)
    assert h.value((1, 1)) == -1 and h.holds((1, 1))
    with pytest.raises(ValueError):
        Halfspace((2, -4), 6)


def test_vertices():
    seg = LatticePolytope([(0,), (1,), (2,)])
    assert seg.vertices() == [(0,), (2,)]
    sq = unit_square()
    assert len(sq.vertex_indices()) == 4
    point = LatticePolytope([(5, 7)])
    assert point.vertices() == [(5, 7)]
    with pytest.raises(ValueError):
        LatticePolytope([(0, 0), (0, 0)])


def test_affine_hull_simple():
    point = LatticePolytope([(3,)])
    dim, eqs = point.affine_hull()
    assert dim == 0 and eqs == [((1,), 3)]
    diag = LatticePolytope([(0, 0), (1, 1), (2, 2)])
    dim, eqs = diag.affine_hull()
    assert dim == 1 and eqs == [((1, -1), 0)]


def test_facets_unit_square_and_cube():
    sq = unit_square()
    assert {(h.normal, h.offset) for h in sq.facets()} == {
        ((1, 0), 1), ((-1, 0), 0), ((0, 1), 1), ((0, -1), 0)}
    cube = LatticePolytope(
        [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
    assert len(cube.facets()) == 6
    assert not cube.is_simplicial()
    assert cube.normalized_volume() == 6
    with pytest.raises(NotFullDimensionalError):
        LatticePolytope([(0, 0), (1, 1)]).facets()


def test_even_d_facet_description():
    for d in (2, 4, 6, 8):
        p, _ = reduce_full_dim(d)
        got = {(h.normal, h.offset) for h in p.facets()}
        assert got == even_facet_families(d)
        assert len(got) == (d + 2) ** 2 // 4
        assert p.is_simplicial()
        g = p.facet_ridge_graph()
        assert g.is_regular(d)
        assert g.edge_count == d * (d + 2) ** 2 // 8
        assert g.is_connected()


def test_odd_d_facet_count_and_families():
    from math import gcd

    for d in (1, 3, 5):
        p, _ = reduce_full_dim(d)
        facets = p.facets()
        assert len(facets) == d + 2
        n = d + 1
        want = set()

        def add(v, b):
            g = 0
            for x in v:
                g = gcd(g, abs(x))
            want.add((tuple(x // g for x in v), b // g))

        add([1] * n, d + 2)
        odd = [1 if k % 2 == 1 else 0 for k in range(1, n + 1)]
        for i in range(2, d + 2, 2):
            v = [2 * o for o in odd]
            v[i - 1] -= 1
            add(v, d + 2)
        for j in range(1, d + 1, 2):
            v = [-2 * o for o in odd]
            v[j - 1] -= 1
            add(v, -(d + 2))
        assert {(h.normal, h.offset) for h in facets} == want


def test_simplex_facet_ridge_graph_complete():
    tri = LatticePolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    g = tri.facet_ridge_graph()
    assert len(g.nodes) == 4 and g.edge_count == 6
    assert g.is_regular(3)


def test_cyclic_polytopes():
    c24 = cyclic_polytope(2, 4)
    assert len(c24.facets()) == 4
    c46 = cyclic_polytope(4, 6)
    assert len(c46.facets()) == 9
    for d in (2, 4, 6, 8):
        c = cyclic_polytope(d, d + 2)
        assert len(c.facets()) == (d + 2) ** 2 // 4
    assert len(gale_evenness_sets(4, 6)) == 9
    with pytest.raises(ValueError):
        cyclic_polytope(3, 3)


def test_combinatorial_equivalence():
    p2, _ = reduce_full_dim(2)
    eq, mapping = combinatorially_equivalent(p2, cyclic_polytope(2, 4))
    assert eq and sorted(mapping) == list(range(4))
    p4, _ = reduce_full_dim(4)
    eq, mapping = combinatorially_equivalent(p4, cyclic_polytope(4, 6))
    assert eq
    # the witness maps facets onto facets
    c46 = cyclic_polytope(4, 6)
    pf = {frozenset(mapping[v] for v in s) for s in p4.facet_vertex_sets()}
    qf = {frozenset(s) for s in c46.facet_vertex_sets()}
    assert pf == qf
    tri = LatticePolytope([(0, 0), (1, 0), (0, 1)])
    eq, mapping = combinatorially_equivalent(tri, unit_square())
    assert not eq and mapping is None


def test_lattice_point_counts():
    sq = unit_square()
    assert sq.lattice_point_count(2) == 9
    assert sq.lattice_point_count(0) == 1
    p2, _ = reduce_full_dim(2)
    assert p2.lattice_point_count(1) == 13
    # Pick's theorem cross-check: area 8, boundary 8: 8 = 13 - 8/2 - 1
    boundary = sum(
        1 for pt in p2.lattice_points(1)
        if any(h.tight(pt) for h in p2.facets())
    )
    interior = 13 - boundary
    assert p2.normalized_volume() == 2 * (13 - boundary // 2 - 1)
    assert interior == 5


def test_lattice_point_determinism_under_partitioning():
    p2, _ = reduce_full_dim(2)
    reference = p2.lattice_point_count(3)
    for parts in (2, 4, 7, 50):
        assert p2.lattice_point_count(3, parts=parts) == reference


def test_point_budget():
    p4, _ = reduce_full_dim(4)
    with pytest.raises(BudgetError):
        p4.lattice_point_count(4, budget=100)
    assert p4.lattice_point_count(1, budget=10**6) == 136


def test_interior_polytope():
    p2, _ = reduce_full_dim(2)
    q = p2.interior_polytope()
    assert sorted(q.vertices()) == sorted([(0, 1), (1, 0), (2, 1), (1, 2)])
    assert unit_square().interior_polytope() is None


def test_interior_vertices_match_formula():
    for d in (2, 4, 6, 8):
        p, _ = reduce_full_dim(d)
        q = p.interior_polytope()
        assert sorted(q.vertices()) == sorted(interior_polytope_vertices(d))


def test_doubling_identity():
    for d in (2, 4, 6, 8):
        p, _ = reduce_full_dim(d)
        q = p.interior_polytope()
        doubled = sorted(tuple(2 * (x - 1) for x in v) for v in q.vertices())
        shifted = sorted(tuple(x - 1 for x in v) for v in p.vertices())
        assert doubled == shifted


def test_reflexivity():
    p2, _ = reduce_full_dim(2)
    q = p2.interior_polytope().translate((-1, -1))
    assert q.is_reflexive()
    for d in (2, 4, 6, 8):
        p, _ = reduce_full_dim(d)
        qc = p.interior_polytope().translate((-1,) * d)
        assert qc.is_reflexive()
        assert not p.is_reflexive()
    assert not unit_square().is_reflexive()


def test_reflexive_iff_unique_interior_and_palindromic():
    # Hibi criterion spot-check through the ehrhart module
    from lapoly.ehrhart import ehrhart_counts, hstar_from_counts, is_palindromic

    p2, _ = reduce_full_dim(2)
    q = p2.interior_polytope().translate((-1, -1))
    h = hstar_from_counts(ehrhart_counts(q, 2), 2)
    assert is_palindromic(tuple(h), 2)
    assert len(q.interior_lattice_points()) == 1
    ptilde_h = hstar_from_counts(ehrhart_counts(p2, 2), 2)
    assert not is_palindromic(tuple(ptilde_h), 2)


def test_full_dimensional_reduction():
    diag = LatticePolytope([(0, 0, 0), (1, 1, 0), (2, 2, 0), (0, 0, 2)])
    reduced, basis, base = diag.full_dimensional()
    assert reduced.ambient_dim == 2
    assert reduced.dim() == 2
    # coordinates reconstruct the original points
    for orig, red in zip(diag.points, reduced.points):
        rebuilt = [
            base[i] + sum(c * basis[k][i] for k, c in enumerate(red))
            for i in range(3)
        ]
        assert tuple(rebuilt) == orig


def test_contains():
    p2, _ = reduce_full_dim(2)
    assert p2.contains((1, 1))
    assert not p2.contains((3, 3))
    diag = LatticePolytope([(0, 0), (2, 2)])
    assert diag.contains((1, 1))
    assert not diag.contains((1, 0))
