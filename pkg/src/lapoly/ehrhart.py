"""Ehrhart counting, h*-vectors and polynomial property checks.

Four independent routes to the same h*-vector:

* interpolation from exact lattice-point counts of the first dilations;
* the h-vector of a certified unimodular triangulation (census);
* the half-open-parallelepiped enumeration for full-dimensional simplices;
* the structural route: for odd d a product of h-polynomials of edgewise
  subdivisions, for even d an inclusion-exclusion over the face poset of
  the interior polytope followed by the dilation transform.

All arithmetic is exact; real-rootedness uses Sturm sequences over the
rationals.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb, gcd

from .budgets import BudgetError, point_budget
from .complexes import h_from_f
from .linalg import det_int, snf_with_transform
from .polytope import LatticePolytope
from .triangulate import (
    Triangulation,
    _esd_cells_mu,
    facet_join_partition,
    interior_facet_families,
)


class IntPolynomial:
    """Polynomial with exact coefficients, low degree first.

    The coefficient sequence keeps its declared length (h*-vectors retain
    trailing zeros); `degree` ignores them.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        d = len(self.coeffs) - 1
        while d > 0 and self.coeffs[d] == 0:
            d -= 1
        return d

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            other = other.coeffs
        if isinstance(other, (tuple, list)):
            return list(self.coeffs) == list(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    def __call__(self, x):
        val = 0
        for c in reversed(self.coeffs):
            val = val * x + c
        return val

    def trimmed(self):
        return IntPolynomial(self.coeffs[: self.degree + 1])

    def padded(self, length):
        if len(self.coeffs) >= length:
            return self
        return IntPolynomial(self.coeffs + (0,) * (length - len(self.coeffs)))

    def sum(self):
        return sum(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


class EhrhartProfile:
    """Counts of the first dilations with interpolated polynomial and h*."""

    __slots__ = ("counts", "polynomial", "hstar")

    def __init__(self, counts, polynomial, hstar):
        self.counts = tuple(counts)
        self.polynomial = polynomial
        self.hstar = hstar


def hstar_from_counts(counts, dim):
    """h* from the exact counts E(0..dim) of a dim-polytope.

    h*_i = sum_j (-1)^j C(dim+1, j) E(i-j); integrality and non-negativity
    are enforced (a violation means the counts are wrong).
    """
    counts = list(counts)
    if len(counts) != dim + 1:
        raise ValueError(f"need exactly {dim + 1} counts")
    if counts[0] != 1:
        raise ValueError("E(0) must be 1")
    hstar = []
    for i in range(dim + 1):
        v = sum(
            (-1) ** j * comb(dim + 1, j) * counts[i - j]
            for j in range(i + 1)
        )
        if v < 0:
            raise ValueError(f"negative h*_{i} = {v}: bad counts")
        hstar.append(v)
    return IntPolynomial(hstar)


def ehrhart_counts(p, dim=None, budget=None):
    """Exact |nP| for n = 0..dim by pruned box scans."""
    if dim is None:
        dim = p.dim()
    if dim != p.ambient_dim:
        raise ValueError("count the full-dimensional copy")
    return [p.lattice_point_count(n, budget=budget) for n in range(dim + 1)]


def ehrhart_polynomial(counts):
    """Interpolating polynomial through (n, E(n)), rational coefficients."""
    n = len(counts)
    # Newton's divided differences on the integer grid 0..n-1
    table = [Fraction(c) for c in counts]
    coeffs_newton = [table[0]]
    for level in range(1, n):
        table = [
            (table[i + 1] - table[i]) / level for i in range(len(table) - 1)
        ]
        coeffs_newton.append(table[0])
    # expand sum_k newton_k * x(x-1)...(x-k+1)/1 (falling factorial basis)
    poly = [Fraction(0)] * n
    basis = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for k, cn in enumerate(coeffs_newton):
        for i, b in enumerate(basis):
            poly[i] += cn * b
        # multiply basis by (x - k)
        nxt = [Fraction(0)] * n
        for i in range(n - 1):
            nxt[i + 1] += basis[i]
        for i in range(n):
            nxt[i] -= k * basis[i]
        basis = nxt
    return poly


def ehrhart_profile(p, budget=None):
    dim = p.dim()
    counts = ehrhart_counts(p, dim, budget=budget)
    return EhrhartProfile(
        counts, ehrhart_polynomial(counts), hstar_from_counts(counts, dim)
    )


def hstar_simplex_fundamental(simplex_points, budget=None):
    """h* of a full-dimensional lattice simplex by direct enumeration of
    the half-open fundamental parallelepiped.

    The lattice points of the parallelepiped are one per residue class of
    Z^(d+1) modulo the column lattice of the homogenized vertices; the
    classes are walked through the Smith normal form group structure and
    each contributes at the height given by its last coordinate.
    """
    pts = [tuple(int(x) for x in p) for p in simplex_points]
    d = len(pts[0])
    if len(pts) != d + 1:
        raise ValueError("need a full-dimensional simplex")
    w = [list(p) + [1] for p in pts]  # rows are homogenized vertices
    cols = [[w[j][i] for j in range(d + 1)] for i in range(d + 1)]
    volume = abs(det_int(cols))
    if volume == 0:
        raise ValueError("degenerate simplex")
    limit = point_budget(budget)
    if volume > limit:
        raise BudgetError(
            f"parallelepiped needs {volume} points, budget is {limit}"
        )
    u, s, _ = snf_with_transform(cols)
    diag = [s[i][i] for i in range(d + 1)]
    # fractional parts of W^{-1} z tracked as residues modulo the volume:
    # nu_i = volume * frac(lambda_i); z walks U times the SNF residue grid.
    # After `order` additions of a generator's step the state returns to
    # its entry value (order * step == 0 mod volume), so no reset needed.
    from .linalg import solve

    gens = []
    for j in range(d + 1):
        if diag[j] == 1:
            continue
        col_u = [u[i][j] for i in range(d + 1)]
        lam = solve(cols, col_u)
        step = [int(x * volume) % volume for x in lam]
        gens.append((diag[j], step))
    gens.sort()  # largest order innermost
    h = [0] * (d + 1)
    nu = [0] * (d + 1)

    def walk(g):
        if g == len(gens):
            h[sum(nu) // volume] += 1
            return
        order, step = gens[g]
        for _ in range(order):
            walk(g + 1)
            for i in range(d + 1):
                v = nu[i] + step[i]
                nu[i] = v - volume if v >= volume else v

    walk(0)
    if sum(h) != volume:
        raise AssertionError("parallelepiped enumeration lost points")
    return IntPolynomial(h)


def hstar_double(h, dim):
    """h* of the second dilation from the h* of a dim-polytope.

    Out-of-range binomials are zero."""
    h = list(h)
    out = []
    for i in range(dim + 1):
        out.append(
            sum(
                comb(dim + 1, 2 * i - j) * h[j]
                for j in range(len(h))
                if 0 <= 2 * i - j <= dim + 1
            )
        )
    return IntPolynomial(out)


def dilation_coefficient(d, i, j):
    """r_j = C(d+1, 2i+2-j) - C(d+1, 2i-j), defined for any integer j."""

    def c(n, k):
        return comb(n, k) if 0 <= k <= n else 0

    return c(d + 1, 2 * i + 2 - j) - c(d + 1, 2 * i - j)


def dilation_coefficients(d, i):
    """The sequence r_0..r_d of dilation coefficients."""
    return tuple(dilation_coefficient(d, i, j) for j in range(d + 1))


def dilation_antisymmetry_holds(d, i, k):
    """-r_{ceil(2i+2-(d+3)/2)-k} == r_{floor(2i+2-(d+3)/2)+k}."""
    center = Fraction(2 * i + 2) - Fraction(d + 3, 2)
    lo = center.__ceil__()
    hi = center.__floor__()
    return -dilation_coefficient(d, i, lo - k) == dilation_coefficient(
        d, i, hi + k
    )


# ---------------------------------------------------------------------------
# structural h* computation
# ---------------------------------------------------------------------------


def _esd_face_enumerator(r, nverts):
    """Face enumerator F(t) = sum over faces of t^|face| of the r-th
    edgewise subdivision of a simplex with `nverts` vertices (empty face
    included)."""
    if nverts == 0:
        return IntPolynomial([1])
    faces = set()
    for chain in _esd_cells_mu(r, nverts):
        cell = tuple(sorted(set(chain)))
        for size in range(1, len(cell) + 1):
            faces.update(combinations(cell, size))
    counts = [1] + [0] * nverts
    for f in faces:
        counts[len(f)] += 1
    return IntPolynomial(counts)


def _esd_h_polynomial(r, nverts):
    """h-polynomial of the edgewise subdivision complex of a simplex."""
    enum = _esd_face_enumerator(r, nverts)
    return IntPolynomial(h_from_f(tuple(enum)))


def _interior_hstar_structural(d):
    """h* of the interior polytope (even d) without materializing its
    triangulation: faces of the boundary complex are grouped by the sizes
    of their two join factors and counted by inclusion-exclusion."""
    r = (d + 2) // 2
    # interior face enumerators per factor size
    enum = {a: _esd_face_enumerator(r, a) for a in range(0, d // 2 + 1)}
    interior = {}
    for a in range(0, d // 2 + 1):
        acc = [0] * (a + 1)
        for i in range(a + 1):
            sign = (-1) ** (a - i)
            for k, c in enumerate(enum[i]):
                acc[k] += sign * comb(a, i) * c
        interior[a] = acc

    # classify faces of the boundary complex by factor-size signature
    signature_counts = {}
    faces = set()
    for family, i, j in interior_facet_families(d):
        v1, v2 = facet_join_partition(d, family, i, j)
        labels = tuple(sorted(v1 + v2))
        for size in range(0, len(labels) + 1):
            faces.update(combinations(labels, size))
    for f in faces:
        a1 = sum(1 for l in f if l % 2 == 1)
        a2 = len(f) - a1
        signature_counts[(a1, a2)] = signature_counts.get((a1, a2), 0) + 1

    # boundary census from interior contributions of each polytope face
    max_len = d + 2
    boundary = [0] * max_len
    for (a1, a2), mult in signature_counts.items():
        part = [0] * (a1 + a2 + 1)
        for x, cx in enumerate(interior[a1]):
            for y, cy in enumerate(interior[a2]):
                part[x + y] += cx * cy
        for k, c in enumerate(part):
            boundary[k] += mult * c
    # cone with the interior point, then read off h
    coned = [0] * (max_len + 1)
    for k, c in enumerate(boundary):
        coned[k] += c
        coned[k + 1] += c
    h = h_from_f(tuple(coned[: d + 2]))
    if h[d + 1] != 0:
        raise AssertionError("cone triangulation h-vector must end in 0")
    return IntPolynomial(h[: d + 1])


def hstar_structural(d):
    """h* of the reduced Laplacian polytope by the scalable structural
    route: a product of edgewise h-polynomials for odd d; for even d the
    interior polytope's h* (inclusion-exclusion census of its cone
    triangulation) pushed through the dilation transform."""
    if d < 1:
        raise ValueError("d must be >= 1")
    length = d + 2 if d % 2 else d + 1
    if d % 2 == 1:
        r = d + 2
        h1 = _esd_h_polynomial(r, (d + 1) // 2 + 1)
        h2 = _esd_h_polynomial(r, (d - 1) // 2 + 1)
        prod = (h1 * h2).padded(length)
        if any(prod.coeffs[length:]):
            raise AssertionError("structural h* exceeds the expected degree")
        return IntPolynomial(prod.coeffs[:length])
    hq = _interior_hstar_structural(d)
    return hstar_double(hq, d).padded(length)


def normalized_volume(obj):
    """dim! times the volume: determinant sum for triangulations, fan
    triangulation for polytopes."""
    if isinstance(obj, Triangulation):
        total = 0
        dim = obj.dim
        for cell in obj.cells:
            pts = obj.cell_points(cell)
            base = pts[0]
            mat = [
                [p[k] - base[k] for k in range(dim)] for p in pts[1:]
            ]
            total += abs(det_int(mat))
        return total
    if isinstance(obj, LatticePolytope):
        return obj.normalized_volume()
    raise TypeError("expected a LatticePolytope or Triangulation")


# ---------------------------------------------------------------------------
# polynomial property checks
# ---------------------------------------------------------------------------


def is_unimodal(h):
    """(unimodal, peak index): weakly rising then weakly falling."""
    h = list(h)
    if not h:
        raise ValueError("empty sequence")
    peak = max(range(len(h)), key=lambda i: (h[i], -i))
    for i in range(peak):
        if h[i] > h[i + 1]:
            return False, None
    for i in range(peak, len(h) - 1):
        if h[i] < h[i + 1]:
            return False, None
    return True, peak


def is_palindromic(h, dim):
    h = list(h) + [0] * (dim + 1 - len(h))
    return all(h[i] == h[dim - i] for i in range(dim + 1))


def _sturm_chain(p):
    """Sturm chain of a squarefree rational polynomial, content-normalized
    at every step to keep coefficients small."""

    def content_normalize(poly):
        num = 0
        den = 1
        for c in poly:
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        if num == 0:
            return poly
        scale = Fraction(den, num)
        return [c * scale for c in poly]

    def derivative(poly):
        return [poly[i] * i for i in range(1, len(poly))]

    def rem(a, b):
        a = list(a)
        while len(a) >= len(b) and any(a):
            if a[-1] == 0:
                a.pop()
                continue
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] -= f * c
            a.pop()
        while a and a[-1] == 0:
            a.pop()
        return a

    chain = [content_normalize(p), content_normalize(derivative(p))]
    while len(chain[-1]) > 1:
        r = rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(content_normalize([-c for c in r]))
    return [c for c in chain if c]


def _sign_variations_at_infinity(chain, positive):
    signs = []
    for poly in chain:
        lead = poly[-1]
        s = 1 if lead > 0 else -1
        if not positive and (len(poly) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    variations = 0
    for a, b in zip(signs, signs[1:]):
        if a != b:
            variations += 1
    return variations


def is_real_rooted(h):
    """All roots real?  Exact Sturm count on the squarefree part.

    Trailing zero coefficients (factors of t) are stripped first; the
    zero polynomial is rejected.
    """
    coeffs = [Fraction(c) for c in h]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial")
    if len(coeffs) == 1:
        return True

    def poly_gcd(a, b):
        a, b = list(a), list(b)
        while b and any(b):
            a, b = b, _poly_mod(a, b)
        return a

    def _poly_mod(a, b):
        a = list(a)
        while len(a) >= len(b):
            if a[-1] == 0:
                a.pop()
                continue
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] -= f * c
            a.pop()
        while a and a[-1] == 0:
            a.pop()
        return a

    deriv = [coeffs[i] * i for i in range(1, len(coeffs))]
    g = poly_gcd(coeffs, deriv)
    if len(g) > 1:
        # squarefree part = p / gcd(p, p')
        sf = _poly_div(coeffs, g)
    else:
        sf = coeffs
    chain = _sturm_chain(sf)
    count = _sign_variations_at_infinity(chain, False) - _sign_variations_at_infinity(chain, True)
    return count == len(sf) - 1


def _poly_div(a, b):
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        out[shift] = f
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
    return out
