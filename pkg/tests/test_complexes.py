import pytest
from hypothesis import given, strategies as st

from lapoly.complexes import (
    boundary_matrix,
    boundary_of_simplex,
    f_and_h_vectors,
    f_from_h,
    f_vector,
    from_facets,
    full_simplex,
    h_from_f,
    homology_dimension,
    read_complex_file,
)


def four_cycle(ordering=(1, 2, 3, 4)):
    return from_facets([{1, 2}, {2, 3}, {3, 4}, {1, 4}], ordering)


def test_from_facets_examples():
    c = four_cycle()
    assert f_vector(c) == (1, 4, 4)
    pt = from_facets([{1}], [1])
    assert f_vector(pt) == (1, 1)
    b3 = from_facets(
        [s for s in map(set, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)])],
        [1, 2, 3, 4],
    )
    assert f_vector(b3) == (1, 4, 6, 4)
    assert b3 == boundary_of_simplex(3)


def test_from_facets_errors():
    with pytest.raises(ValueError):
        from_facets([{1, 5}], [1, 2])
    with pytest.raises(ValueError):
        from_facets([{1}], [1, 1])
    with pytest.raises(ValueError):
        from_facets([], [1])


def test_ordering_is_part_of_identity():
    assert four_cycle((1, 2, 3, 4)) != four_cycle((1, 2, 4, 3))


def test_boundary_of_simplex():
    assert f_vector(boundary_of_simplex(3)) == (1, 4, 6, 4)
    assert f_vector(boundary_of_simplex(1)) == (1, 2)
    assert boundary_of_simplex(5).f_count(4) == 6
    b = boundary_of_simplex(4)
    assert b.is_pure() and b.dim == 3


def test_f_and_h_vectors():
    f, h = f_and_h_vectors(boundary_of_simplex(3))
    assert f == (1, 4, 6, 4)
    assert h == (1, 1, 1, 1)
    f, h = f_and_h_vectors(four_cycle())
    assert f == (1, 4, 4)
    assert h == (1, 2, 1)
    for d in range(1, 6):
        f, h = f_and_h_vectors(full_simplex(d))
        assert h == (1,) + (0,) * (d + 1)


@given(st.lists(st.integers(min_value=0, max_value=50), min_size=1, max_size=8))
def test_h_f_round_trip(tail):
    h = tuple([1] + tail)
    assert h_from_f(f_from_h(h)) == h
    f = f_from_h(h)
    assert f[0] == 1


def test_boundary_matrix_examples():
    c = four_cycle()
    m = boundary_matrix(c, 1)
    j = list(c.faces(1)).index((0, 1))
    assert m.column(j) == [-1, 1, 0, 0]
    b3 = boundary_of_simplex(3)
    assert (boundary_matrix(b3, 1) * boundary_matrix(b3, 2)).is_zero()
    b2 = boundary_of_simplex(2)
    m1 = boundary_matrix(b2, 1)
    assert all(sum(m1.column(j)) == 0 for j in range(m1.cols))


def test_boundary_matrix_chain_convention():
    c = four_cycle()
    m0 = boundary_matrix(c, 0)
    assert (m0.rows, m0.cols) == (0, 4)
    m2 = boundary_matrix(c, 2)
    assert (m2.rows, m2.cols) == (4, 0)
    with pytest.raises(IndexError):
        boundary_matrix(c, 3)
    with pytest.raises(IndexError):
        boundary_matrix(c, -1)


def test_chain_identity_everywhere():
    for c in [four_cycle(), boundary_of_simplex(3), boundary_of_simplex(4),
              full_simplex(3)]:
        for i in range(0, c.dim + 1):
            assert (boundary_matrix(c, i) * boundary_matrix(c, i + 1)).is_zero()


def test_homology_dimensions():
    for d in range(1, 5):
        assert homology_dimension(boundary_of_simplex(d + 1), d) == 1
    assert homology_dimension(four_cycle(), 1) == 1
    assert homology_dimension(full_simplex(3), 3) == 0
    # two isolated points: 0-th homology has dimension 2
    assert homology_dimension(boundary_of_simplex(1), 0) == 2


def test_rank_laplacian_equals_f_minus_homology():
    # rank L_d = f_d - dim H_d on pure complexes
    from lapoly.laplacian import laplacian_matrix

    corpus = [
        four_cycle(),
        boundary_of_simplex(2),
        boundary_of_simplex(3),
        boundary_of_simplex(4),
        full_simplex(2),
        full_simplex(3),
        from_facets([{1, 2, 3}, {2, 3, 4}], [1, 2, 3, 4]),
    ]
    for c in corpus:
        d = c.dim
        lap = laplacian_matrix(c, d)
        assert lap.matrix.rank() == c.f_count(d) - homology_dimension(c, d)


def test_read_complex_file(tmp_path):
    path = tmp_path / "cycle4.cplx"
    path.write_text(
        "# a four-cycle\norder: 1 2 3 4\n1 2\n2 3\n3 4\n1 4  # last facet\n",
        encoding="utf-8",
    )
    c = read_complex_file(path)
    assert c == four_cycle()
    bad = tmp_path / "bad.cplx"
    bad.write_text("1 2\n", encoding="utf-8")
    with pytest.raises(ValueError):
        read_complex_file(bad)
    empty = tmp_path / "empty.cplx"
    empty.write_text("order: 1 2\n", encoding="utf-8")
    with pytest.raises(ValueError):
        read_complex_file(empty)
