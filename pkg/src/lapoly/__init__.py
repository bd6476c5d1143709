"""Exact-arithmetic toolkit for Laplacian polytopes of simplicial complexes.

Simplicial complexes with ordered vertices, their Laplacian matrices and
polytopes, exact lattice-polytope geometry (facets, interior polytopes,
reflexivity), regular unimodular triangulations built from edgewise
subdivisions, and Ehrhart/h* machinery with independent cross-checking
oracles.  No floating point anywhere.
"""

from .budgets import BudgetError
from .complexes import (
    SimplicialComplex,
    boundary_of_simplex,
    f_and_h_vectors,
    from_facets,
)
from .ehrhart import (
    IntPolynomial,
    hstar_double,
    hstar_from_counts,
    hstar_simplex_fundamental,
    hstar_structural,
    is_palindromic,
    is_real_rooted,
    is_unimodal,
    normalized_volume,
)
from .laplacian import (
    LaplacianMatrix,
    laplacian_boundary_simplex,
    laplacian_matrix,
    laplacian_polytope,
    reduce_full_dim,
)
from .polytope import (
    Halfspace,
    LatticePolytope,
    combinatorially_equivalent,
    cyclic_polytope,
)
from .triangulate import (
    Triangulation,
    edgewise_subdivision,
    facet_join_partition,
    h_vector_of,
    is_regular,
    join,
    laplacian_triangulation,
    verify_shelling,
    verify_triangulation,
)

__all__ = [
    "BudgetError",
    "SimplicialComplex",
    "boundary_of_simplex",
    "f_and_h_vectors",
    "from_facets",
    "IntPolynomial",
    "hstar_double",
    "hstar_from_counts",
    "hstar_simplex_fundamental",
    "hstar_structural",
    "is_palindromic",
    "is_real_rooted",
    "is_unimodal",
    "normalized_volume",
    "LaplacianMatrix",
    "laplacian_boundary_simplex",
    "laplacian_matrix",
    "laplacian_polytope",
    "reduce_full_dim",
    "Halfspace",
    "LatticePolytope",
    "combinatorially_equivalent",
    "cyclic_polytope",
    "Triangulation",
    "edgewise_subdivision",
    "facet_join_partition",
    "h_vector_of",
    "is_regular",
    "join",
    "laplacian_triangulation",
    "verify_shelling",
    "verify_triangulation",
    "__version__",
]

__version__ = "0.1.0"
