import json

import pytest

from lapoly.budgets import BudgetError
from lapoly.complexes import h_from_f
from lapoly.laplacian import interior_polytope_vertices, reduce_full_dim
from lapoly.polytope import LatticePolytope
from lapoly.triangulate import (
    Triangulation,
    edgewise_subdivision,
    f_vector_of,
    face_census,
    facet_join_partition,
    h_vector_of,
    interior_facet_families,
    interior_polytope_triangulation,
    is_regular,
    join,
    laplacian_triangulation,
    standard_shelling_order,
    verify_shelling,
    verify_triangulation,
)
from lapoly.triangulate import _fold_data, _fold_values


def standard_simplex(m):
    pts = [tuple(0 for _ in range(m))]
    pts += [tuple(1 if k == i else 0 for k in range(m)) for i in range(m)]
    return pts


def folds_strict(t):
    folds = _fold_data(t.vertex_pool, t.cells)
    values = _fold_values(t.vertex_pool, t.cells, t.heights, folds)
    return all(v > 0 for v in values)


# -- edgewise subdivisions ---------------------------------------------------


@pytest.mark.parametrize("m,r", [(1, 2), (2, 3), (2, 5), (3, 2), (3, 4),
                                 (4, 2), (4, 3), (5, 2)])
def test_esd_cell_count_and_validity(m, r):
    t = edgewise_subdivision(standard_simplex(m), r)
    assert t.cell_count == r**m
    report = verify_triangulation(t)
    assert report["ok"] and report["unimodular"]
    # attached heights certify regularity without any LP search
    assert folds_strict(t)
    ok, heights = is_regular(t)
    assert ok and heights is not None


def test_esd_figure_case():
    t = edgewise_subdivision(standard_simplex(2), 3)
    assert t.cell_count == 9
    assert verify_triangulation(t)["volume_sum"] == 9
    assert len(t.vertex_pool) == 10


def test_esd_segment():
    t = edgewise_subdivision(standard_simplex(1), 2)
    assert t.cell_count == 2
    assert sorted(t.vertex_pool) == [(0,), (1,), (2,)]


def test_esd_requires_unimodular():
    with pytest.raises(ValueError):
        edgewise_subdivision([(0, 0), (2, 0), (0, 1)], 2)
    with pytest.raises(ValueError):
        edgewise_subdivision(standard_simplex(2), 0)


def test_esd_translated_dilated_input():
    # a shifted dilated simplex subdivides the same way
    from lapoly.triangulate import edgewise_of_dilated

    pts = [(-2, -2), (1, -2), (-2, 1)]  # 3 * Delta_2 - (2,2)
    t = edgewise_of_dilated(pts, 3)
    assert t.cell_count == 9
    assert verify_triangulation(t)["ok"]


# -- joins --------------------------------------------------------------------


def test_join_small():
    seg = edgewise_subdivision(standard_simplex(1), 1)
    pt = edgewise_subdivision(standard_simplex(0), 1)
    tri = join(seg, pt)
    assert tri.cell_count == 1 and tri.dim == 2
    tetra = join(seg, seg)
    assert tetra.cell_count == 1 and tetra.dim == 3
    assert verify_triangulation(tetra)["ok"]


def test_join_of_subdivided_segment():
    j = join(edgewise_subdivision(standard_simplex(1), 3),
             edgewise_subdivision(standard_simplex(0), 3))
    assert j.cell_count == 3
    assert verify_triangulation(j)["ok"]
    ok, _ = is_regular(j)
    assert ok


def test_join_h_polynomial_multiplicative():
    import random

    rng = random.Random(9)
    for _ in range(6):
        m1, r1 = rng.choice([(1, 2), (1, 3), (2, 2), (2, 3)])
        m2, r2 = rng.choice([(0, 1), (1, 2), (1, 4), (2, 2)])
        t1 = edgewise_subdivision(standard_simplex(m1), r1)
        t2 = edgewise_subdivision(standard_simplex(m2), r2)
        tj = join(t1, t2)
        h1 = h_vector_of(t1)
        h2 = h_vector_of(t2)
        hj = h_vector_of(tj)
        prod = [0] * (len(h1) + len(h2) - 1)
        for i, a in enumerate(h1):
            for k, b in enumerate(h2):
                prod[i + k] += a * b
        assert list(hj) == prod[: len(hj)]
        assert all(c == 0 for c in prod[len(hj):])


# -- facet join partitions -----------------------------------------------------


def test_facet_join_partition_appendix_data():
    assert facet_join_partition(4, "all") == ((3, 5), (4, 6))
    # skips label i+2 = 4 in the even factor
    assert facet_join_partition(4, "even_skip", i=2) == ((3, 5), (2, 6))
    # skips label j+2 = 3 in the odd factor
    assert facet_join_partition(4, "odd_skip", j=1) == ((1, 5), (4, 6))
    # pair facets skip one label in each factor
    assert facet_join_partition(4, "pair", i=1, j=2) == ((1, 5), (2, 6))
    assert facet_join_partition(4, "pair", i=2, j=3) == ((1, 3), (2, 6))


def test_facet_join_partition_structure():
    for d in (2, 4, 6, 8):
        cs = interior_polytope_vertices(d)
        for family, i, j in interior_facet_families(d):
            v1, v2 = facet_join_partition(d, family, i, j)
            assert len(v1) == d // 2 and len(v2) == d // 2
            assert all(l % 2 == 1 for l in v1)
            assert all(l % 2 == 0 for l in v2)
            # the two factors span the facet's vertex set
            labels = set(v1) | set(v2)
            assert len(labels) == d


def test_facet_join_partition_d2_singletons():
    for family, i, j in interior_facet_families(2):
        v1, v2 = facet_join_partition(2, family, i, j)
        assert len(v1) == 1 and len(v2) == 1


def test_facet_join_partition_errors():
    with pytest.raises(ValueError):
        facet_join_partition(4, "even_skip", i=3)
    with pytest.raises(ValueError):
        facet_join_partition(4, "pair", i=1, j=3)
    with pytest.raises(ValueError):
        facet_join_partition(4, "nonsense")
    with pytest.raises(ValueError):
        facet_join_partition(3, "all")


def test_partition_matches_computed_facets():
    # family vertex sets coincide with the exact H-representation of the
    # interior polytope
    for d in (2, 4, 6):
        p, _ = reduce_full_dim(d)
        q = LatticePolytope(interior_polytope_vertices(d))
        computed = {frozenset(s) for s in q.facet_vertex_sets()}
        declared = set()
        for family, i, j in interior_facet_families(d):
            v1, v2 = facet_join_partition(d, family, i, j)
            declared.add(frozenset(l - 1 for l in v1 + v2))
        assert computed == declared


# -- gluing consistency ---------------------------------------------------------


def test_facet_triangulations_agree_on_intersections():
    # restriction of two facet triangulations to the common face must
    # coincide cell-for-cell
    d = 4
    from lapoly.triangulate import _interior_boundary_triangulation

    points, _, cells = _interior_boundary_triangulation(d)
    q = LatticePolytope(interior_polytope_vertices(d))
    halfspaces = q.facets()

    def on_facet(h):
        return frozenset(
            i for i, p in enumerate(points) if h.value(p) == h.offset
        )

    per_facet = []
    for h in halfspaces:
        members = on_facet(h)
        per_facet.append(
            (members, [c for c in cells if set(c) <= members])
        )
    for a in range(len(per_facet)):
        for b in range(a + 1, len(per_facet)):
            common = per_facet[a][0] & per_facet[b][0]
            if not common:
                continue
            restrict_a = {
                frozenset(c) & common for c in per_facet[a][1]
            }
            restrict_b = {
                frozenset(c) & common for c in per_facet[b][1]
            }
            maximal_a = {
                s for s in restrict_a
                if not any(s < t for t in restrict_a)
            }
            maximal_b = {
                s for s in restrict_b
                if not any(s < t for t in restrict_b)
            }
            assert maximal_a == maximal_b


# -- the main construction -------------------------------------------------------


def test_laplacian_triangulation_small(triangulation_cache):
    t1 = triangulation_cache(1)
    assert t1.cell_count == 3
    t2 = triangulation_cache(2)
    assert t2.cell_count == 16
    t3 = triangulation_cache(3)
    assert t3.cell_count == 125
    for t in (t1, t2, t3):
        report = verify_triangulation(t)
        assert report["ok"] and report["unimodular"]
        assert folds_strict(t)


def test_interior_triangulation_d2():
    q2 = interior_polytope_triangulation(2)
    assert q2.cell_count == 4
    assert verify_triangulation(q2)["ok"]
    h = h_vector_of(q2)
    assert h[:3] == (1, 2, 1)


def test_laplacian_triangulation_census_rows(triangulation_cache):
    assert h_vector_of(triangulation_cache(1))[:3] == (1, 2, 0)
    assert h_vector_of(triangulation_cache(2))[:3] == (1, 10, 5)
    assert h_vector_of(triangulation_cache(3))[:5] == (1, 22, 78, 24, 0)


def test_laplacian_triangulation_budget():
    with pytest.raises(BudgetError):
        laplacian_triangulation(8)
    with pytest.raises(BudgetError):
        laplacian_triangulation(3, budget=100)
    with pytest.raises(ValueError):
        laplacian_triangulation(0)


def test_verify_rejects_overlap():
    # two unit triangles overlapping in an open region
    t = Triangulation(
        [(0, 0), (1, 0), (0, 1), (1, 1)],
        [(0, 1, 2), (0, 1, 3)],
        LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)]),
    )
    report = verify_triangulation(t)
    assert not report["disjoint_ok"]
    assert not report["ok"]
    assert any(f[0] == "overlap" for f in report["failures"])


def test_verify_rejects_degenerate_cell():
    t = Triangulation(
        [(0, 0), (1, 0), (2, 0), (0, 1)],
        [(0, 1, 2), (0, 2, 3)],
        LatticePolytope([(0, 0), (2, 0), (0, 1)]),
    )
    report = verify_triangulation(t)
    assert not report["affinely_independent"]
    assert not report["ok"]


def nonregular_fixture():
    """The classical non-regular triangulation: a big triangle with an
    inner rotated triangle, spiral cells."""
    points = [(4, 0), (0, 4), (0, 0), (2, 1), (1, 2), (1, 1)]
    cells = [
        (0, 1, 3), (1, 3, 4), (1, 2, 4), (2, 4, 5), (0, 2, 5), (0, 3, 5),
        (3, 4, 5),
    ]
    carrier = LatticePolytope(points)
    return Triangulation(points, cells, carrier)


def test_nonregular_fixture_is_valid_but_not_regular():
    t = nonregular_fixture()
    report = verify_triangulation(t)
    assert report["ok"], report
    ok, heights = is_regular(t)
    assert not ok and heights is None


def test_is_regular_lp_witness_roundtrip():
    t = edgewise_subdivision(standard_simplex(2), 3)
    t.heights = None
    ok, heights = is_regular(t)
    assert ok
    # the found heights themselves certify
    assert is_regular(t, heights=heights)[0]


def test_is_regular_budget_gate():
    t = edgewise_subdivision(standard_simplex(2), 2)
    t.heights = None
    with pytest.raises(BudgetError):
        is_regular(t, lp_cell_limit=1)


# -- census, export, shelling ----------------------------------------------------


def test_face_census_matches_external_sort(triangulation_cache):
    t3 = triangulation_cache(3)
    in_memory = face_census(t3)
    external = face_census(t3, max_in_memory=10)
    assert in_memory == external
    assert f_vector_of(t3) == in_memory
    assert h_vector_of(t3) == h_from_f(in_memory)


def test_json_round_trip(triangulation_cache):
    t1 = triangulation_cache(1)
    t1.checks = {"verified": True}
    text = t1.to_json()
    data = json.loads(text)
    assert set(data) == {"vertices", "cells", "checks"}
    back = Triangulation.from_json(text, carrier=t1.carrier)
    assert back.cells == t1.cells
    assert back.vertex_pool == t1.vertex_pool
    assert back.checks == {"verified": True}


def test_shelling_of_reduced_polytope():
    for d in (2, 4):
        p, _ = reduce_full_dim(d)
        order = standard_shelling_order(d)
        assert verify_shelling(p, order)


def test_shelling_simplex_any_order():
    import itertools

    simplex = LatticePolytope(standard_simplex(3))
    sets = simplex.facet_vertex_sets()
    for perm in itertools.permutations(range(len(sets))):
        assert verify_shelling(simplex, [sets[i] for i in perm])


def test_shelling_negative_and_errors():
    p, _ = reduce_full_dim(4)
    order = standard_shelling_order(4)
    # start with F followed by a pair facet meeting it in only d-2 vertices
    f_facet = order[0]
    pair_facet = next(s for s in order if len(f_facet & s) == 2)
    rest = [s for s in order if s not in (f_facet, pair_facet)]
    assert not verify_shelling(p, [f_facet, pair_facet] + rest)
    with pytest.raises(ValueError):
        verify_shelling(p, order[:-1])
