"""Assembly of the Floer homology tables of (genus-g surface) x (circle).

Everything is mapping-cone homology of the structure map F = v + h between
the i >= 0 quotient and a corner region of the bigraded model: the group in
half-integer degree d + 1/2 is Ker(F_d) (+) Coker(F_{d+1}).  The complexes
carry no differential, so U acts blockwise and reduced parts are honest
lattice quotients by high U-powers.

Degree conventions: torsion tables live in half-integer degrees; the
nontorsion sector is reported in the integer grading of the triangle model
X(g, d), which lifts its relative Z/2|k| grading.
"""

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .cfk import (B_PLUS, GradedElement, J_GEQ0, corner, gamma_action,
                  j_infinity, slice_basis, slice_map, u_chain_map,
                  u_slice_map, _flip_blade)
from .errors import DomainError, UnsupportedOperation
from .exterior import Multivector, blade_grade, blades_of_grade, eta, omega
from .lefschetz import coprimitive_dim, primitive_dim, self_dual_rank
from .linalg import (GroupPresentation, SparseExactMatrix, cokernel,
                     integer_kernel_lattice, kernel_basis, lattice_quotient,
                     rank, smith_normal_form)
from .rings import QQ, ZZ


def matrix_hash(m):
    payload = json.dumps(m.to_json(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

BASIS_ORDER = "cells by U-coordinate ascending, blades by mask ascending"


@dataclass
class FloerTable:
    genus: int
    spinc: int
    ring: object
    flavor: str  # hat | plus | plus_red | infinity | nontorsion
    entries: dict = field(default_factory=dict)  # degree -> GroupPresentation
    towers: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.metadata.setdefault("basis_order", BASIS_ORDER)

    def rank_at(self, degree):
        grp = self.entries.get(degree)
        return grp.free_rank if grp else 0

    def support(self):
        return sorted(d for d, grp in self.entries.items() if not grp.is_trivial())

    def all_invariant_factors(self):
        out = []
        for d in sorted(self.entries):
            out.extend(self.entries[d].invariant_factors)
        return out

    def to_json(self):
        ents = [{"deg": _deg_str(d), "group": self.entries[d].to_json()}
                for d in sorted(self.entries)]
        return {"genus": self.genus, "spinc": self.spinc, "ring": self.ring.tag,
                "flavor": self.flavor, "entries": ents, "towers": self.towers,
                "metadata": self.metadata}


def _deg_str(d):
    return str(Fraction(d))


def half(n):
    """Degree n + 1/2 as a Fraction."""
    return Fraction(2 * n + 1, 2)


# ---------------------------------------------------------------------------
# shared slice-map cache
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _fmap(g, op, d, s=0):
    return slice_map(g, op, d, ZZ, s)


@lru_cache(maxsize=None)
def _kernel_lattice(g, op, d, s=0):
    return tuple(tuple(sorted(c.items()))
                 for c in integer_kernel_lattice(_fmap(g, op, d, s).matrix))


def _kernel_cols(g, op, d, s=0):
    return [dict(items) for items in _kernel_lattice(g, op, d, s)]


def _cone_group(g, op, d, ring, s=0):
    """Ker(op_d) (+) Coker(op_{d+1}) over the ring, as a presentation."""
    lo = _fmap(g, op, d, s).matrix
    hi = _fmap(g, op, d + 1, s).matrix
    if ring == ZZ:
        krank = lo.cols - rank(lo, QQ)
        cok = cokernel(hi)
        return GroupPresentation(krank + cok.free_rank, cok.invariant_factors)
    krank = lo.cols - rank(lo, ring)
    cokrank = hi.rows - rank(hi, ring)
    return GroupPresentation(krank + cokrank)


# ---------------------------------------------------------------------------
# hat flavor
# ---------------------------------------------------------------------------

def hf_hat(g, ring=ZZ, window=None):
    """The finitely generated flavor in the torsion spin-c structure.

    Nonzero only in degrees |d| <= g - 1/2; free of rank C(2g, g-|d|-1/2)
    away from the middle, with the star-fixed lattice adding
    2^(g-1) + C(2g,g)/2 at d = +-1/2.
    """
    if window is None:
        window = (-g - 1, g + 1)
    table = FloerTable(g, 0, ring, "hat")
    for d in range(window[0], window[1] + 1):
        table.entries[half(d)] = _cone_group(g, "F_hat", d, ring)
    table.metadata["matrix_hash_d0"] = matrix_hash(_fmap(g, "F_hat", 0).matrix)
    return table


def hf_hat_closed_form_rank(g, degree):
    """Rank predicted by the closed form, degree a half-integer Fraction."""
    ai = abs(Fraction(degree))
    if ai * 2 % 2 == 0:
        return 0
    if Fraction(3, 2) <= ai <= Fraction(2 * g - 1, 2):
        return comb(2 * g, g - int(ai + Fraction(1, 2)))
    if ai == Fraction(1, 2):
        return comb(2 * g, g - 1) + self_dual_rank(g)
    return 0


def sign_choice_cokernels(g):
    """Cokernels of 1 + (-1)^g * eps * star on the middle exterior power for
    eps = +-1; only the bundled sign (-1)^(g-1) gives a torsion-free one."""
    from .exterior import star_blade
    blades = blades_of_grade(g, g)
    idx = {m: i for i, m in enumerate(blades)}
    out = {}
    for eps in (1, -1):
        m = SparseExactMatrix(len(blades), len(blades), ZZ)
        for c, mask in enumerate(blades):
            m[idx[mask], c] = m[idx[mask], c] + 1
            sc, smk = star_blade(mask, g)
            m[idx[smk], c] = m[idx[smk], c] + ((-1) ** g) * eps * sc
        out[eps] = cokernel(m)
    return out


# ---------------------------------------------------------------------------
# infinity flavor
# ---------------------------------------------------------------------------

def hf_infinity(g, ring=ZZ, deadline=None):
    """The fully U-inverted flavor, computed at the stable degrees g, g+1
    (one per parity); entries repeat with period 2 in the degree.
    """
    table = FloerTable(g, 0, ring, "infinity")
    for d in (g, g + 1):
        lo = _fmap(g, "one_plus_J", d).matrix
        hi = _fmap(g, "one_plus_J", d + 1).matrix
        if ring == ZZ:
            krank = lo.cols - rank(lo, QQ)
            fs = smith_normal_form(hi, deadline=deadline)
            cok = GroupPresentation(hi.rows - len(fs), fs)
            grp = GroupPresentation(krank + cok.free_rank, cok.invariant_factors)
        else:
            grp = GroupPresentation((lo.cols - rank(lo, ring))
                                    + (hi.rows - rank(hi, ring)))
        table.entries[half(d)] = grp
        table.metadata.setdefault("matrix_hashes", {})[_deg_str(d)] = matrix_hash(lo)
    table.metadata["periodic"] = True
    table.metadata["parity_degrees"] = [_deg_str(half(g)), _deg_str(half(g + 1))]
    return table


# ---------------------------------------------------------------------------
# plus flavor at the torsion structure
# ---------------------------------------------------------------------------

def default_plus_window(g):
    return (-g - 2, g + 2)


def hf_plus_torsion(g, ring=ZZ, window=None):
    """The plus flavor at the torsion spin-c structure, per half-integer
    degree over the window; degrees past g - 1/2 repeat the infinity table."""
    if window is None:
        window = default_plus_window(g)
    table = FloerTable(g, 0, ring, "plus")
    for d in range(window[0], window[1] + 1):
        table.entries[half(d)] = _cone_group(g, "F", d, ring)
    table.towers = theorem_towers(g)
    table.metadata["stable_from"] = _deg_str(half(g - 1))
    return table


def theorem_towers(g):
    """U-tower summands of the plus flavor over the rationals: one for each
    primitive degree j (starting at j - g + 1/2) and each coprimitive degree
    (starting at j - g - 1/2), with computed dimensions."""
    towers = []
    for j in range(0, g + 1):
        r = primitive_dim(g, j)
        if r:
            towers.append({"start_degree": _deg_str(Fraction(2 * (j - g) + 1, 2)),
                           "rank": r, "kind": "primitive", "j": j})
    for j in range(g, 2 * g + 1):
        r = coprimitive_dim(g, j)
        if r:
            towers.append({"start_degree": _deg_str(Fraction(2 * (j - g) - 1, 2)),
                           "rank": r, "kind": "coprimitive", "j": j})
    return towers


def _stable_hi(g, d):
    """A degree of the same parity as d from which U^N has stabilized."""
    hi = max(g + 1, d + 2)
    if (hi - d) % 2:
        hi += 1
    return hi


def _reduced_summands(g, d, ring):
    """Reduced pieces of the degree d+1/2 group: the kernel-side lattice
    quotient and the cokernel-side quotient by the image of a high U-power."""
    hi = _stable_hi(g, d)
    steps = (hi - d) // 2
    if ring == ZZ or ring == QQ:
        k_lo = _kernel_cols(g, "F", d)
        k_hi = _kernel_cols(g, "F", hi)
        un = u_chain_map(g, B_PLUS, hi, steps).matrix
        img = [un.mul_vector(v) for v in k_hi]
        img = [v for v in img if v]
        if k_lo:
            red_k = lattice_quotient(k_lo, img, _fmap(g, "F", d).matrix.cols)
        else:
            red_k = GroupPresentation(0, [])
        f1 = _fmap(g, "F", d + 1).matrix
        un1 = u_chain_map(g, corner(0), hi + 1, steps).matrix
        red_c = cokernel(SparseExactMatrix.hstack(f1, un1))
        if ring == QQ:
            red_k = GroupPresentation(red_k.free_rank)
            red_c = GroupPresentation(red_c.free_rank)
        return red_k, red_c
    # prime fields: ranks of the same quotients
    p = ring.p
    lo = _fmap(g, "F", d).matrix.convert(ring)
    hi_m = _fmap(g, "F", hi).matrix.convert(ring)
    un = u_chain_map(g, B_PLUS, hi, steps).matrix.convert(ring)
    klo = kernel_basis(lo)
    khi = kernel_basis(hi_m)
    img = [un.mul_vector(v) for v in khi]
    n_rows = un.rows
    red_k_rank = (len(klo)
                  - _span_rank([c for c in img if c], n_rows, ring))
    f1 = _fmap(g, "F", d + 1).matrix.convert(ring)
    un1 = u_chain_map(g, corner(0), hi + 1, steps).matrix.convert(ring)
    stack = SparseExactMatrix.hstack(f1, un1)
    red_c_rank = f1.rows - rank(stack)
    return GroupPresentation(red_k_rank), GroupPresentation(red_c_rank)


def _span_rank(cols, nrows, ring):
    if not cols:
        return 0
    return rank(SparseExactMatrix.from_columns(nrows, cols, ring))


def hf_plus_reduced(g, ring=ZZ, window=None):
    """Reduced part of the plus flavor: the quotient by the image of every
    sufficiently high U-power, degree by degree."""
    if window is None:
        window = default_plus_window(g)
    table = FloerTable(g, 0, ring, "plus_red")
    for d in range(window[0], window[1] + 1):
        red_k, red_c = _reduced_summands(g, d, ring)
        table.entries[half(d)] = red_k.direct_sum(red_c)
    return table


def x_model_dims(g, d):
    """Per-degree ranks of X(g, d): Lambda^m tensor U^-c for 0 <= c <= d-m,
    graded by m - g + 2c."""
    dims = {}
    if d is None or d < 0:
        return dims
    for m in range(0, d + 1):
        for c in range(0, d - m + 1):
            deg = m - g + 2 * c
            dims[deg] = dims.get(deg, 0) + comb(2 * g, m)
    return dims


class XModel:
    """The triangle model: Lambda^m H^1 tensor Z[U^-1]/U^(m-d-1), graded so
    U has degree -2 and Lambda^m sits in degree m - g."""

    __slots__ = ("genus", "d")

    def __init__(self, genus, d):
        self.genus = genus
        self.d = d

    def dims(self):
        return x_model_dims(self.genus, self.d)

    def total_rank(self):
        if self.d is None or self.d < 0:
            return 0
        return sum(comb(2 * self.genus, m) * (self.d - m + 1)
                   for m in range(0, self.d + 1))

    def basis(self):
        """Plane keys (i=c, mask) of the embedded copy inside the i >= 0
        quotient; position (c, m - g + c)."""
        out = []
        if self.d is None or self.d < 0:
            return out
        for m in range(0, self.d + 1):
            for c in range(0, self.d - m + 1):
                for mask in blades_of_grade(self.genus, m):
                    out.append((c, mask))
        return out

    def degree_of(self, key):
        c, mask = key
        return blade_grade(mask) - self.genus + 2 * c

    def min_degree(self):
        return -self.genus if (self.d is not None and self.d >= 0) else None

    def max_degree(self):
        if self.d is None or self.d < 0:
            return None
        return 2 * self.d - self.genus  # m=0, c=d

    def to_json(self):
        return {"genus": self.genus, "d": self.d,
                "dims": {str(k): v for k, v in sorted(self.dims().items())},
                "total_rank": self.total_rank()}


# ---------------------------------------------------------------------------
# nontorsion spin-c structures
# ---------------------------------------------------------------------------

class _TriangleRegion:
    """{i >= 0, j <= -|k|-1}: the embedded triangle carrying X(g, d)."""

    __slots__ = ("kk",)

    def __init__(self, kk):
        self.kk = kk

    def contains(self, i, j):
        return i >= 0 and j <= -self.kk - 1


def chain_matrix(g, kk, degrees):
    """Matrix of F = v + h over the listed source degrees of one residue
    class mod 2|k|; h drops the antidiagonal by 2|k|, so rows span the
    corner slices of the source degrees and one step below.

    Returns (matrix, column key list, row offset map).
    """
    s = -kk
    degrees = sorted(degrees)
    rowdegs = sorted(set(degrees) | {d - 2 * kk for d in degrees})
    rowbases = {d: slice_basis(g, corner(s), d) for d in rowdegs}
    rowoff = {}
    nrows = 0
    for d in rowdegs:
        rowoff[d] = nrows
        nrows += rowbases[d].size
    cols = []
    colkeys = []
    for d in degrees:
        sb = slice_basis(g, B_PLUS, d)
        for (i, mask) in sb.elements:
            col = {}
            tb = rowbases[d]
            idx = tb.index.get((i, mask))
            if idx is not None:
                col[rowoff[d] + idx] = col.get(rowoff[d] + idx, 0) + 1
            tb2 = rowbases[d - 2 * kk]
            for di, m2, w in _flip_blade(g, mask):
                idx2 = tb2.index.get((i + di - kk, m2))
                if idx2 is not None:
                    r = rowoff[d - 2 * kk] + idx2
                    col[r] = col.get(r, 0) + w
            cols.append(col)
            colkeys.append((d, i, mask))
    return SparseExactMatrix.from_columns(nrows, cols, ZZ), colkeys, rowoff


def phi_series(xi, kk, max_iter=200):
    """The kernel embedding: alternating sum of (pr_{i>=0} U^|k| J+)^n."""
    out = GradedElement(xi.genus)
    term = xi
    sign = 1
    for _ in range(max_iter):
        if term.is_zero():
            return out
        out = out + term.scale(sign)
        term = (j_infinity(term).project(J_GEQ0)
                .u_power(kk).project(B_PLUS))
        sign = -sign
    raise AssertionError("phi series did not terminate")


def apply_F(y, g, kk):
    """F = v + h on the i >= 0 quotient, into the corner at j >= -|k|."""
    s = -kk
    return (y.project(corner(s))
            + j_infinity(y).u_power(kk).project(corner(s)))


def hf_plus_nontorsion(g, k, cross_check=True):
    """Plus flavor for spin-c structures with nonzero first Chern class.

    Zero once |k| >= g; otherwise free with the per-degree ranks of
    X(g, g-1-|k|), computed two ways: windowed chain-matrix kernels and the
    phi-series image (cross-checked when cross_check is set).
    """
    if k == 0:
        raise DomainError("k = 0 is the torsion sector; use hf_plus_torsion")
    kk = abs(k)
    if kk >= g:
        model = XModel(g, -1)
        table = FloerTable(g, k, ZZ, "nontorsion")
        table.metadata["vanishes"] = True
        return table, model
    d = g - 1 - kk
    model = XModel(g, d)
    dims = model.dims()
    table = FloerTable(g, k, ZZ, "nontorsion")
    per_degree = {}
    for r in range(2 * kk):
        degs = [n for n in range(-g, model.max_degree() + 1)
                if (n - r) % (2 * kk) == 0]
        if not degs:
            continue
        prev = 0
        for top_idx, top in enumerate(degs):
            m, _, _ = _chain_cached(g, kk, tuple(degs[:top_idx + 1]))
            kr = m.cols - rank(m, QQ)
            per_degree[top] = kr - prev
            prev = kr
    for n, v in sorted(per_degree.items()):
        table.entries[n] = GroupPresentation(v)
    if cross_check:
        phi_rank = phi_image_rank(g, kk)
        direct = sum(per_degree.values())
        if phi_rank != direct or direct != model.total_rank():
            raise AssertionError(
                f"kernel rank mismatch: chain {direct}, phi {phi_rank}, "
                f"model {model.total_rank()}")
        for n, v in dims.items():
            if per_degree.get(n, 0) != v:
                raise AssertionError(f"degree {n}: rank {per_degree.get(n, 0)} "
                                     f"!= model {v}")
        table.metadata["phi_rank_checked"] = True
    return table, model


@lru_cache(maxsize=None)
def _chain_cached(g, kk, degrees):
    return chain_matrix(g, kk, list(degrees))


def phi_image_rank(g, kk):
    """Rank of the phi image over Q (all basis elements of the model)."""
    model = XModel(g, g - 1 - kk)
    keys = {}
    cols = []
    for (c, mask) in model.basis():
        xi = GradedElement(g, {(c, mask): 1})
        ph = phi_series(xi, kk)
        if not apply_F(ph, g, kk).is_zero():
            raise AssertionError("phi image escaped the kernel")
        col = {}
        for key, v in ph.terms.items():
            col[keys.setdefault(key, len(keys))] = v
        cols.append(col)
    if not cols:
        return 0
    return rank(SparseExactMatrix.from_columns(len(keys), cols, QQ))


def f_restriction_surjective(g, kk, d_lo=None, d_hi=None):
    """Check that F restricted to the corner part of the source hits every
    row of the corner target inside the window (extra source degrees above
    the window feed the top rows)."""
    s = -kk
    if d_lo is None:
        d_lo = -g
    if d_hi is None:
        d_hi = g
    coldegs = list(range(d_lo, d_hi + 2 * kk + 1))
    rowdegs = list(range(d_lo, d_hi + 1))
    rowbases = {d: slice_basis(g, corner(s), d) for d in rowdegs}
    rowoff = {}
    nrows = 0
    for d in rowdegs:
        rowoff[d] = nrows
        nrows += rowbases[d].size
    cols = []
    for d in coldegs:
        sb = slice_basis(g, corner(s), d)  # source restricted to the corner
        for (i, mask) in sb.elements:
            col = {}
            tb = rowbases.get(d)
            if tb is not None:
                idx = tb.index.get((i, mask))
                if idx is not None:
                    col[rowoff[d] + idx] = 1
            tb2 = rowbases.get(d - 2 * kk)
            if tb2 is not None:
                for di, m2, w in _flip_blade(g, mask):
                    idx2 = tb2.index.get((i + di - kk, m2))
                    if idx2 is not None:
                        r = rowoff[d - 2 * kk] + idx2
                        col[r] = col.get(r, 0) + w
            if col:
                cols.append(col)
    m = SparseExactMatrix.from_columns(nrows, cols, ZZ)
    return rank(m, QQ) == nrows


# ---------------------------------------------------------------------------
# H_1 action on the nontorsion sector
# ---------------------------------------------------------------------------

@dataclass
class CorrectionTerm:
    ell: int
    value: GradedElement
    exterior_power: int
    u_exponent: int
    degree: int

    def to_json(self):
        return {"ell": self.ell, "exterior_power": self.exterior_power,
                "u_exponent": self.u_exponent, "degree": self.degree,
                "terms": {f"{i},{m}": str(c)
                          for (i, m), c in sorted(self.value.terms.items())}}


def h1_action(g, k, gamma_star_index, xi):
    """Action of the homology class dual to e_{gamma_star_index} on a
    homogeneous model element xi (a plane GradedElement supported in the
    embedded triangle, or a single (c, mask) pair).

    Returns (standard part, corrections): the standard part is the interior
    product plus Poincare-dual wedge with the U-shift, and each correction is
    homogeneous of degree n - 1 - 2*ell*|k| pinned to a single lattice cell.
    """
    if k == 0:
        raise UnsupportedOperation(
            "the torsion sector has an unresolved module-structure extension; "
            "only the nonzero-Chern-class action is provided")
    kk = abs(k)
    if isinstance(xi, tuple):
        xi = GradedElement(g, {xi: 1})
    tri = _TriangleRegion(kk)
    if xi.project(tri) != xi:
        raise DomainError("xi must be supported in the model triangle")
    degs = xi.degrees()
    if len(degs) != 1:
        raise DomainError("xi must be homogeneous")
    n = degs[0]
    ph = phi_series(xi, kk)
    y = gamma_action(gamma_star_index, ph, truncate=True)
    if not apply_F(y, g, kk).is_zero():
        raise AssertionError("the action left the kernel")
    full = y.project(tri)
    std = gamma_action(gamma_star_index, xi, truncate=True)
    corr = full - std
    buckets = {}
    for (i, m), v in corr.terms.items():
        deg = 2 * i + blade_grade(m) - g
        buckets.setdefault(deg, {})[(i, m)] = v
    corrections = []
    for deg in sorted(buckets, reverse=True):
        ell = Fraction(n - 1 - deg, 2 * kk)
        if ell.denominator != 1 or ell <= 0:
            raise AssertionError(f"correction at unexplained degree {deg}")
        ell = int(ell)
        value = GradedElement(g, buckets[deg])
        powers = {blade_grade(m) for (_i, m) in value.terms}
        us = {-i for (i, _m) in value.terms}
        if len(powers) != 1 or len(us) != 1:
            raise AssertionError("correction not pinned to one cell")
        corrections.append(CorrectionTerm(ell, value, powers.pop(), us.pop(), deg))
    return std, corrections


def correction_location(g, k, n, ell):
    """Predicted cell of the ell-th correction for a degree-n input:
    (exterior power, U exponent) and its degree."""
    kk = abs(k)
    a = g - 2 - 2 * kk - n
    b = -kk - 1 - n
    return (a + 2 * ell * kk + 1, b + 2 * ell * kk + 1, n - 1 - 2 * ell * kk)


# ---------------------------------------------------------------------------
# U-action on the reduced part
# ---------------------------------------------------------------------------

def unexpected_u_kernel_dim(g):
    """Count of non-primitive star-self-dual middle-degree classes:
    2^(g-1) - C(2g,g)/2 + C(2g,g-2); the U-kernel of the reduced part one
    step above its middle degree."""
    return 2 ** (g - 1) - comb(2 * g, g) // 2 + comb(2 * g, g - 2)


def _q_cols(cols):
    return [{r: Fraction(v) for r, v in c.items()} for c in cols if c]


def _rank_cols_q(cols, nrows):
    if not cols:
        return 0
    return rank(SparseExactMatrix.from_columns(nrows, cols, QQ))


def _quotient_map_dims(T, v1_cols, w1_cols, w2_cols):
    """For T: V1 -> V2 with subspaces W1, W2 (T W1 <= W2): dimensions of
    V1/W1, of the kernel and of the image of the induced quotient map."""
    tv1 = _q_cols([T.mul_vector(c) for c in v1_cols])
    rw1 = _rank_cols_q(_q_cols(w1_cols), T.cols)
    rw2 = _rank_cols_q(_q_cols(w2_cols), T.rows)
    dim_v1 = _rank_cols_q(_q_cols(v1_cols), T.cols)
    r_all = _rank_cols_q(tv1 + _q_cols(w2_cols), T.rows)
    dim_red = dim_v1 - rw1
    ker = dim_v1 + rw2 - r_all - rw1
    img = r_all - rw2
    return dim_red, ker, img


def u_action_red(g, window=None):
    """The U endomorphism of the reduced plus flavor, degree by degree.

    Reports, for each half-integer degree delta in the window: the reduced
    dimension, the kernel dimension of U: red_delta -> red_(delta-2), and
    whether the map is onto/injective.  Checks bundled in the report:
      (1) U is onto red_(delta-2) for every in-support delta <= -1/2;
      (2) U is injective for delta > 3/2;
      (3) the kernel in degree 1/2 has dimension
          2^(g-1) - C(2g,g)/2 + C(2g,g-2), matching the count of
          non-primitive star-self-dual middle classes.
    """
    if g < 3:
        return {"genus": g, "per_degree": {}, "checks": {}, "empty": True}
    if window is None:
        window = (-g, g - 1)

    @lru_cache(maxsize=None)
    def kdata(d):
        hi = _stable_hi(g, d)
        steps = (hi - d) // 2
        klo = _q_cols(_kernel_cols(g, "F", d))
        khi = _kernel_cols(g, "F", hi)
        un = u_chain_map(g, B_PLUS, hi, steps).matrix
        w = _q_cols([un.mul_vector(v) for v in khi])
        return klo, w

    @lru_cache(maxsize=None)
    def cdata(d1):
        hi1 = _stable_hi(g, d1)
        steps = (hi1 - d1) // 2
        f1 = _fmap(g, "F", d1).matrix
        un1 = u_chain_map(g, corner(0), hi1, steps).matrix
        w = [f1.column(c) for c in range(f1.cols)]
        w += [un1.column(c) for c in range(un1.cols)]
        v = [{i: Fraction(1)} for i in range(f1.rows)]
        return v, _q_cols(w)

    per_degree = {}
    for d in range(window[0], window[1] + 1):
        klo, w1k = kdata(d)
        _, w2k = kdata(d - 2)
        u_b = u_slice_map(g, B_PLUS, d).matrix
        dim_k, ker_k, img_k = _quotient_map_dims(u_b, klo, w1k, w2k)
        vc, w1c = cdata(d + 1)
        _, w2c = cdata(d - 1)
        u_c = u_slice_map(g, corner(0), d + 1).matrix
        dim_c, ker_c, img_c = _quotient_map_dims(u_c, vc, w1c, w2c)
        per_degree[half(d)] = {"dim": dim_k + dim_c, "ker": ker_k + ker_c,
                               "img": img_k + img_c}
    checks = {}
    for delta, row in per_degree.items():
        target = per_degree.get(delta - 2)
        row["surjective"] = target is None or row["img"] == target["dim"]
        row["injective"] = row["ker"] == 0
    support = [delta for delta, row in per_degree.items() if row["dim"]]
    checks["surjective_at_and_below_middle"] = all(
        per_degree[delta]["surjective"]
        for delta in support if delta <= Fraction(-1, 2))
    checks["injective_above"] = all(
        per_degree[delta]["injective"]
        for delta in per_degree if delta > Fraction(3, 2))
    formula = unexpected_u_kernel_dim(g)
    got = per_degree.get(Fraction(1, 2), {"ker": 0})["ker"]
    checks["unexpected_kernel_formula"] = formula
    checks["unexpected_kernel_computed"] = got
    checks["unexpected_kernel_matches"] = (got == formula)
    return {"genus": g,
            "per_degree": {_deg_str(k): v for k, v in sorted(per_degree.items())},
            "checks": checks}


# ---------------------------------------------------------------------------
# circle-bundle cohomology cross-checks
# ---------------------------------------------------------------------------

def _wedge_omega_matrix(g, j):
    """Matrix of wedging with the symplectic form, grade j-2 -> grade j."""
    src = blades_of_grade(g, j - 2)
    tgt = blades_of_grade(g, j)
    idx = {m: i for i, m in enumerate(tgt)}
    m = SparseExactMatrix(len(tgt), len(src), ZZ)
    w = omega(g)
    for c, mask in enumerate(src):
        img = w.wedge(Multivector.from_blade(g, mask))
        for m2, v in img.coeffs.items():
            m[idx[m2], c] = m[idx[m2], c] + v
    return m


def eg_cohomology(g, ring=ZZ):
    """Cohomology of the circle bundle over the Jacobian torus with Euler
    class the intersection form, via its Gysin sequence: degree j gives
    Coker(wedge: j-2 -> j) (+) Ker(wedge: j-1 -> j+1)."""
    out = {}
    for j in range(0, 2 * g + 2):
        cok_m = _wedge_omega_matrix(g, j)
        ker_m = _wedge_omega_matrix(g, j + 1)
        if ring == ZZ:
            cok = cokernel(cok_m)
            krank = ker_m.cols - rank(ker_m, QQ)
        else:
            cok = GroupPresentation(cok_m.rows - rank(cok_m, ring))
            krank = ker_m.cols - rank(ker_m, ring)
        out[j] = GroupPresentation(cok.free_rank + krank, cok.invariant_factors)
    return out


def eg_rank_prediction(g, j):
    """Rational rank of the bundle cohomology: primitive dimension up to the
    middle, coprimitive above."""
    if j <= g:
        return primitive_dim(g, j)
    return coprimitive_dim(g, j - 1)


def _one_minus_exp_contraction_matrix(g, parity):
    """Matrix of contraction by (1 - exp(-omega)) = sum_{n>=1} (-1)^(n+1) eta_n
    on the even or odd half of the exterior algebra."""
    src = [m for p in range(parity, 2 * g + 1, 2) for m in blades_of_grade(g, p)]
    idx = {m: i for i, m in enumerate(src)}
    mat = SparseExactMatrix(len(src), len(src), ZZ)
    op = Multivector.zero(g)
    for n in range(1, g + 1):
        op = op + eta(n, g).scale((-1) ** (n + 1))
    for c, mask in enumerate(src):
        img = op.contract(Multivector.from_blade(g, mask))
        for m2, v in img.coeffs.items():
            mat[idx[m2], c] = mat[idx[m2], c] + v
    return mat


def contraction_cokernel_comparison(g):
    """Per parity: presentation of the cokernel of contraction by
    1 - exp(-omega) next to the direct sum of the per-degree cokernels of
    wedging with omega (the two agree for every genus computed here)."""
    out = {}
    for parity in (0, 1):
        lhs = cokernel(_one_minus_exp_contraction_matrix(g, parity))
        rhs = GroupPresentation(0, [])
        for j in range(parity, 2 * g + 1, 2):
            rhs = rhs.direct_sum(cokernel(_wedge_omega_matrix(g, j)))
        out[parity] = (lhs, rhs)
    return out


# ---------------------------------------------------------------------------
# triple cup products
# ---------------------------------------------------------------------------

def triple_cup_beta(g, s):
    """The triple-cup homomorphism on the s-th exterior power of the rank
    2g+1 first cohomology of the product (basis e_1..e_2g, t): contract out
    ordered triples against <a . b . t> = omega(a, b), with the alternating
    position sign."""
    n = 2 * g + 1
    src = [sum(1 << b for b in bits) for bits in _combinations_sorted(n, s)]
    tgt = [sum(1 << b for b in bits) for bits in _combinations_sorted(n, s - 3)] if s >= 3 else []
    src.sort()
    tgt.sort()
    idx = {m: i for i, m in enumerate(tgt)}
    mat = SparseExactMatrix(len(tgt), len(src), ZZ)
    tbit = 2 * g
    for c, mask in enumerate(src):
        bits = []
        b = mask
        while b:
            low = b & -b
            bits.append(low.bit_length() - 1)
            b ^= low
        if tbit not in bits:
            continue
        t_pos = bits.index(tbit)  # always the last position
        for a_pos in range(len(bits)):
            for b_pos in range(a_pos + 1, len(bits)):
                if b_pos == t_pos or a_pos == t_pos:
                    continue
                ba, bb = bits[a_pos], bits[b_pos]
                if (ba ^ bb) != 1:
                    continue  # omega vanishes off symplectic partners
                val = 1 if ba % 2 == 0 else -1  # omega(e_a, e_b), a < b
                sign = (-1) ** ((a_pos + 1) + (b_pos + 1) + (t_pos + 1))
                rest = mask & ~((1 << ba) | (1 << bb) | (1 << tbit))
                r = idx[rest]
                mat[r, c] = mat[r, c] + sign * val
    return mat


def _combinations_sorted(n, k):
    from itertools import combinations
    if k < 0:
        return []
    return combinations(range(n), k)


def beta_quotient_dims(g):
    """dim over Q of Ker(beta_s)/Im(beta_(s+3)) for each s, with the
    composition check beta_s . beta_(s+3) = 0."""
    n = 2 * g + 1
    mats = {s: triple_cup_beta(g, s) for s in range(0, n + 4)}
    out = {}
    for s in range(0, n + 1):
        m = mats[s]
        m3 = mats[s + 3]
        comp_zero = True
        for c in range(m3.cols):
            col = m3.column(c)
            if m.mul_vector(col):
                comp_zero = False
                break
        if not comp_zero:
            raise AssertionError(f"beta_{s} . beta_{s+3} != 0")
        ker = m.cols - rank(m, QQ) if m.rows else m.cols
        out[s] = ker - rank(m3, QQ)
    return out
