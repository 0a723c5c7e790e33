"""Bigraded model of the knot complex for the Borromean-type knot.

A generator sits at a lattice point (i, j) and carries a blade of grade
p = g + j - i; the group at (i, j) is Lambda^p tensor U^(-i), and the total
degree is i + j = 2i + p - g.  Elements are stored sparsely as
{(i, mask): coefficient}; i is the U-coordinate (the term is blade * U^-i).

The flip automorphism acts on a grade-p term at U-coordinate i by

    J(xi * U^-i) = eps * (-1)^p * sum_n 2^n (eta_n |_ star(xi)) * U^-(i+p-g+n)

with eps = (-1)^(g-1); the sign is pinned by freeness of the middle-degree
cokernel (see the sign suite).  The star lands at the mirrored lattice point
and the eta_n terms smear it down the antidiagonal.
"""

from functools import lru_cache
from itertools import combinations

from .errors import DomainError, GenusMismatch
from .exterior import (blade_grade, blades_of_grade, contract_blades,
                       pair_mask, star_blade)
from .linalg import SparseExactMatrix
from .rings import ZZ


def epsilon(g):
    """Global sign of the flip map: (-1)^(g-1)."""
    return -1 if g % 2 == 0 else 1


# ---------------------------------------------------------------------------
# regions of the (i, j) plane
# ---------------------------------------------------------------------------

class Region:
    """Membership predicate for a sub/quotient region of the plane."""

    __slots__ = ("kind", "s")

    KINDS = ("full", "b", "j_geq", "corner", "hook", "row_i0", "min_zero")

    def __init__(self, kind, s=0):
        if kind not in self.KINDS:
            raise DomainError(f"unknown region kind {kind!r}")
        self.kind = kind
        self.s = s

    def contains(self, i, j):
        k, s = self.kind, self.s
        if k == "full":
            return True
        if k == "b":
            return i >= 0
        if k == "j_geq":
            return j >= s
        if k == "corner":
            return i >= 0 and j >= s
        if k == "hook":
            return i >= 0 or j >= s
        if k == "row_i0":
            return i == 0
        # min_zero: min(i, j - s) == 0
        return i >= 0 and j >= s and (i == 0 or j == s)

    def __repr__(self):
        return f"Region({self.kind}, s={self.s})" if self.s else f"Region({self.kind})"

    def __eq__(self, other):
        return isinstance(other, Region) and (self.kind, self.s) == (other.kind, other.s)

    def __hash__(self):
        return hash((self.kind, self.s))


FULL = Region("full")
B_PLUS = Region("b")
J_GEQ0 = Region("j_geq", 0)


def corner(s=0):
    return Region("corner", s)


def hook(s=0):
    return Region("hook", s)


def row_i0():
    return Region("row_i0")


def min_zero(s=0):
    return Region("min_zero", s)


# ---------------------------------------------------------------------------
# slice bases
# ---------------------------------------------------------------------------

class SliceBasis:
    """Ordered basis of the degree-d slice of a region.

    Cells are (i, p) with p = g + d - 2i, listed with i ascending; within a
    cell the blades of grade p run in ascending mask order.  The enumeration
    is deterministic, so matrices are reproducible bit for bit.
    """

    __slots__ = ("genus", "region", "degree", "cells", "index", "elements")

    def __init__(self, genus, region, degree):
        g = genus
        self.genus = g
        self.region = region
        self.degree = degree
        self.cells = []
        self.index = {}
        self.elements = []
        d = degree
        # p = g + d - 2i must lie in [0, 2g]
        i_lo = -((g - d) // 2)  # ceil((d-g)/2)
        i_hi = (d + g) // 2
        for i in range(i_lo, i_hi + 1):
            p = g + d - 2 * i
            if p < 0 or p > 2 * g:
                continue
            if not region.contains(i, d - i):
                continue
            self.cells.append((i, p))
            for mask in blades_of_grade(g, p):
                self.index[(i, mask)] = len(self.elements)
                self.elements.append((i, mask))

    @property
    def size(self):
        return len(self.elements)

    def __repr__(self):
        return (f"<slice g={self.genus} {self.region!r} d={self.degree} "
                f"cells={self.cells} dim={self.size}>")


@lru_cache(maxsize=None)
def slice_basis(g, region, d):
    return SliceBasis(g, region, d)


# ---------------------------------------------------------------------------
# plane elements
# ---------------------------------------------------------------------------

class GradedElement:
    """Finite formal sum of blade * U^-i terms, stored as {(i, mask): coeff}."""

    __slots__ = ("genus", "terms")

    def __init__(self, genus, terms=None):
        self.genus = genus
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if c:
                    self.terms[key] = c

    @classmethod
    def from_multivector(cls, mv, i=0):
        return cls(mv.genus, {(i, m): c for m, c in mv.coeffs.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, GradedElement) and self.genus == other.genus
                and self.terms == other.terms)

    def __add__(self, other):
        if self.genus != other.genus:
            raise GenusMismatch(f"genus {self.genus} vs {other.genus}")
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return GradedElement(self.genus, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if c == 0:
            return GradedElement(self.genus)
        return GradedElement(self.genus, {k: v * c for k, v in self.terms.items()})

    def u_power(self, n):
        """Multiply by U^n (n may be negative): i -> i - n."""
        return GradedElement(self.genus, {(i - n, m): c for (i, m), c in self.terms.items()})

    def project(self, region):
        g = self.genus
        out = {}
        for (i, m), c in self.terms.items():
            j = i + blade_grade(m) - g
            if region.contains(i, j):
                out[(i, m)] = c
        return GradedElement(g, out)

    def degrees(self):
        g = self.genus
        return sorted({2 * i + blade_grade(m) - g for (i, m) in self.terms})

    def degree_part(self, d):
        g = self.genus
        out = {k: c for k, c in self.terms.items()
               if 2 * k[0] + blade_grade(k[1]) - g == d}
        return GradedElement(g, out)

    def positions(self):
        """Set of occupied lattice points (i, j)."""
        g = self.genus
        return {(i, i + blade_grade(m) - g) for (i, m) in self.terms}

    def __repr__(self):
        items = sorted(self.terms.items())
        return f"GradedElement({self.genus}, {items!r})"


# ---------------------------------------------------------------------------
# the flip map and the H_1-action on the plane
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _flip_blade(g, mask):
    """J of a grade-p blade at U-coordinate 0: tuple of (di, mask', coeff).

    di is the shift of the U-coordinate; the actual term for input at i
    lands at i + di.
    """
    p = blade_grade(mask)
    s_coeff, s_mask = star_blade(mask, g)
    base = epsilon(g) * (1 if p % 2 == 0 else -1) * s_coeff
    pairs = [j for j in range(g) if s_mask & pair_mask(j) == pair_mask(j)]
    out = []
    for n in range(0, g + 1):
        if n > len(pairs):
            break
        weight = base * (1 << n)  # 2^n
        for sub in combinations(pairs, n):
            zmask = 0
            for j in sub:
                zmask |= pair_mask(j)
            hit = contract_blades(zmask, s_mask)
            if hit is None:
                continue
            cc, m2 = hit
            out.append((p - g + n, m2, weight * cc))
    return tuple(out)


def j_infinity(x):
    """The flip automorphism of the full plane; degree preserving."""
    g = x.genus
    out = {}
    for (i, mask), c in x.terms.items():
        for di, m2, w in _flip_blade(g, mask):
            key = (i + di, m2)
            v = out.get(key, 0) + c * w
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return GradedElement(g, out)


def j_plus(x):
    """The flip on the i >= 0 quotient, landing in the j >= 0 quotient.

    Well defined because the full flip carries {i < 0} into {j < 0}; the
    projection must be applied before any later U-shift re-enters the
    retained region.
    """
    return j_infinity(x.project(B_PLUS)).project(J_GEQ0)


def gamma_action(gamma_star_index, x, truncate=True):
    """H_1 action of the class dual to e_{gamma_star_index} on a plane element:

        gamma . (m * U^-i) = (e |_ m) * U^-i + (e ^ m) * U^-(i-1)

    With truncate=True terms pushed to i < 0 die (the U^0-row truncation of
    the i >= 0 quotient).
    """
    from .exterior import contract_vector_blade, wedge_blades
    g = x.genus
    vbit = gamma_star_index - 1
    out = {}

    def bump(key, v):
        w = out.get(key, 0) + v
        if w:
            out[key] = w
        else:
            out.pop(key, None)

    for (i, mask), c in x.terms.items():
        hit = contract_vector_blade(vbit, mask)
        if hit is not None:
            s, m2 = hit
            bump((i, m2), s * c)
        hit = wedge_blades(1 << vbit, mask)
        if hit is not None and (i - 1 >= 0 or not truncate):
            s, m2 = hit
            bump((i - 1, m2), s * c)
    return GradedElement(g, out)


# ---------------------------------------------------------------------------
# slice maps
# ---------------------------------------------------------------------------

class SliceMap:
    """A slice matrix together with its source and target bases."""

    __slots__ = ("matrix", "source", "target", "op", "s")

    def __init__(self, matrix, source, target, op, s=0):
        self.matrix = matrix
        self.source = source
        self.target = target
        self.op = op
        self.s = s

    def __repr__(self):
        return f"<SliceMap {self.op} d={self.source.degree} {self.matrix!r}>"


class UnionBasis:
    """Concatenation of slice bases of distinct degrees (target of h/F when
    s != 0, where the two summands land on different antidiagonals)."""

    __slots__ = ("genus", "slices", "index", "elements")

    def __init__(self, slices):
        self.genus = slices[0].genus
        self.slices = slices
        self.index = {}
        self.elements = []
        for sl in slices:
            for key in sl.elements:
                if key in self.index:
                    continue
                self.index[key] = len(self.elements)
                self.elements.append(key)

    @property
    def size(self):
        return len(self.elements)

    @property
    def degree(self):
        return self.slices[0].degree


OPS = ("v", "h", "F", "F_hat", "one_plus_J")


def _apply_op(g, op, s, i, mask):
    """Image terms of a source basis element under the chosen map, before the
    target-region projection: list of (i', mask', coeff).

    h is pr . U^{-s} . (flip with its j >= 0 projection); for s <= 0 a term
    with j < 0 before the shift sits below j = s afterwards, so the final
    corner projection subsumes the intermediate one and the flip can be
    applied raw here.
    """
    if s > 0:
        raise DomainError("slice maps are built for s <= 0; use conjugation")
    out = []
    if op in ("v", "F", "F_hat"):
        out.append((i, mask, 1))
    if op in ("h", "F", "F_hat", "one_plus_J"):
        shift = s if op != "one_plus_J" else 0
        for di, m2, w in _flip_blade(g, mask):
            out.append((i + di + shift, m2, w))
    if op == "one_plus_J":
        out.append((i, mask, 1))
    return out


def slice_map(g, op, d, ring=ZZ, s=0):
    """Matrix of one structure map on the degree-d slice.

    Ops and their regions:
      v, h, F      : quotient {i >= 0}  ->  corner {i >= 0, j >= s}
      F_hat        : row {i = 0}        ->  L-shape {min(i, j - s) = 0}
      one_plus_J   : quotient {i >= 0}  ->  itself (1 + J, with the i >= 0
                     truncation; for d >= g-1 nothing is truncated)

    For s != 0 the h summand shifts the antidiagonal by 2s, so the target
    basis is the union of the degree-d and degree-(d+2s) slices of the
    corner; the relative grading is only preserved mod 2|s| there.
    """
    if op not in OPS:
        raise DomainError(f"unknown slice op {op!r}")
    if op == "one_plus_J":
        src = slice_basis(g, B_PLUS, d)
        tgt = src
    elif op == "F_hat":
        src = slice_basis(g, row_i0(), d)
        tgt = slice_basis(g, min_zero(s), d)
        if s != 0:
            tgt = UnionBasis([slice_basis(g, min_zero(s), d),
                              slice_basis(g, min_zero(s), d + 2 * s)])
    else:
        src = slice_basis(g, B_PLUS, d)
        if s == 0:
            tgt = slice_basis(g, corner(s), d)
        else:
            degs = []
            if op in ("v", "F"):
                degs.append(d)
            if op in ("h", "F"):
                degs.append(d + 2 * s)
            tgt = UnionBasis([slice_basis(g, corner(s), dd) for dd in degs])
    mat = SparseExactMatrix(tgt.size, src.size, ring)
    for c, (i, mask) in enumerate(src.elements):
        for i2, m2, w in _apply_op(g, op, s, i, mask):
            key = (i2, m2)
            r = tgt.index.get(key)
            if r is None:
                continue
            mat[r, c] = mat[r, c] + w
    return SliceMap(mat, src, tgt, op, s)


def u_slice_map(g, region, d, ring=ZZ):
    """Matrix of U: degree-d slice -> degree-(d-2) slice of the same region."""
    src = slice_basis(g, region, d)
    tgt = slice_basis(g, region, d - 2)
    mat = SparseExactMatrix(tgt.size, src.size, ring)
    for c, (i, mask) in enumerate(src.elements):
        r = tgt.index.get((i - 1, mask))
        if r is not None:
            mat[r, c] = 1
    return SliceMap(mat, src, tgt, "U")


def u_chain_map(g, region, d_hi, steps, ring=ZZ):
    """Matrix of U^steps from the degree-d_hi slice down to d_hi - 2*steps."""
    src = slice_basis(g, region, d_hi)
    tgt = slice_basis(g, region, d_hi - 2 * steps)
    mat = SparseExactMatrix(tgt.size, src.size, ring)
    for c, (i, mask) in enumerate(src.elements):
        r = tgt.index.get((i - steps, mask))
        if r is not None:
            mat[r, c] = 1
    return SliceMap(mat, src, tgt, f"U^{steps}")


def element_to_column(x, basis):
    """Coordinates of a plane element in a slice basis; terms outside the
    basis raise, use project() first if clipping is intended."""
    col = {}
    for key, c in x.terms.items():
        idx = basis.index.get(key)
        if idx is None:
            raise DomainError(f"term {key} outside the slice basis")
        col[idx] = c
    return col


def column_to_element(col, basis):
    g = basis.genus
    return GradedElement(g, {basis.elements[i]: c for i, c in col.items() if c})
