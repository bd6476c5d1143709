import pytest

from lapoly.triangulate import laplacian_triangulation

_CACHE = {}


@pytest.fixture(scope="session")
def triangulation_cache():
    """Shared laplacian_triangulation results; the larger ones are expensive
    enough that every module should reuse them."""

    def get(d):
        if d not in _CACHE:
            _CACHE[d] = laplacian_triangulation(d)
        return _CACHE[d]

    return get
