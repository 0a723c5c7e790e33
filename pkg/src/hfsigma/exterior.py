"""Exact multilinear algebra on the exterior algebra of a symplectic lattice.

Basis covectors e_1, ..., e_{2g} pair off symplectically:
omega(e_{2i-1}, e_{2i}) = 1 = -omega(e_{2i}, e_{2i-1}), all other pairs 0.
A basis blade is a bitmask over 2g bits, bit b standing for e_{b+1}; masks
are canonical by construction, and the grade is the popcount.

Contraction x|_a follows the signed rule

    v |_ (w_1 ^ ... ^ w_k) = sum_l (-1)^(l-1) omega(w_l, v) w_1 ^ ... w^_l ... ^ w_k

for a single vector v, extended to blades by nesting from the right:
(v_1 ^ ... ^ v_p) |_ a = v_1 |_ (v_2 |_ (... (v_p |_ a))).
"""

from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import DomainError, GenusMismatch
from .rings import ZZ

_popcount = int.bit_count


def blade_grade(mask):
    return _popcount(mask)


def wedge_blades(a, b):
    """Wedge of two blades: (sign, mask), or None when they share a vector.

    The sign counts the transpositions needed to merge the two ascending
    index lists: for each vector of b, the vectors of a above it.
    """
    if a & b:
        return None
    inversions = 0
    bb = b
    while bb:
        low = bb & -bb
        # vectors of a with higher index than this vector of b
        inversions += _popcount(a & ~(low | (low - 1)))
        bb ^= low
    return (-1 if inversions & 1 else 1), a | b


def contract_vector_blade(vbit, mask):
    """e_{vbit+1} |_ blade: (coeff, mask) or None.

    Only the symplectic partner of v can be removed; partner bits differ in
    the lowest bit (2i <-> 2i+1, zero-based).
    """
    partner = vbit ^ 1
    pbit = 1 << partner
    if not mask & pbit:
        return None
    # position of the partner inside the ascending blade, and omega value
    sign = -1 if _popcount(mask & (pbit - 1)) & 1 else 1
    # v = e_{2i-1} (even bit): omega(e_{2i}, e_{2i-1}) = -1; v = e_{2i}: +1
    if not vbit & 1:
        sign = -sign
    return sign, mask ^ pbit


def contract_blades(xmask, amask):
    """x |_ a for blades x, a: (coeff, mask) or None.

    Vectors of x apply right-to-left, so the highest-index vector hits first.
    """
    coeff = 1
    bits = []
    xx = xmask
    while xx:
        low = xx & -xx
        bits.append(low.bit_length() - 1)
        xx ^= low
    for vbit in reversed(bits):
        hit = contract_vector_blade(vbit, amask)
        if hit is None:
            return None
        s, amask = hit
        coeff *= s
    return coeff, amask


def full_blade(g):
    return (1 << (2 * g)) - 1


def star_blade(mask, g):
    """Hodge-Lefschetz star of a blade: contraction into the volume blade."""
    hit = contract_blades(mask, full_blade(g))
    return hit  # the volume blade contains every partner, so never None


def pair_mask(j):
    """Mask of z_{j+1} = e_{2j+1} ^ e_{2j+2} (j zero-based)."""
    return 0b11 << (2 * j)


def blade_indices(mask):
    """1-based covector indices of a blade, ascending."""
    out = []
    b = mask
    while b:
        low = b & -b
        out.append(low.bit_length())
        b ^= low
    return out


def mask_from_indices(indices, g):
    mask = 0
    for i in indices:
        if not 1 <= i <= 2 * g:
            raise DomainError(f"index {i} out of range for genus {g}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise DomainError(f"repeated index {i} in blade")
        mask |= bit
    return mask


class Multivector:
    """Sparse element of the exterior algebra over H^1 of a genus-g surface."""

    __slots__ = ("genus", "ring", "coeffs")

    def __init__(self, genus, coeffs=None, ring=ZZ, _clean=False):
        self.genus = genus
        self.ring = ring
        if coeffs is None:
            self.coeffs = {}
        elif _clean:
            self.coeffs = coeffs
        else:
            clean = {}
            for mask, c in coeffs.items():
                c = ring.coerce(c)
                if c != 0:
                    clean[mask] = c
            self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, g, ring=ZZ):
        return cls(g, {}, ring, _clean=True)

    @classmethod
    def unit(cls, g, ring=ZZ):
        return cls(g, {0: ring.coerce(1)}, ring, _clean=True)

    @classmethod
    def basis_vector(cls, g, i, ring=ZZ):
        """e_i, 1-based."""
        return cls(g, {mask_from_indices([i], g): ring.coerce(1)}, ring, _clean=True)

    @classmethod
    def z(cls, g, j, ring=ZZ):
        """z_j = e_{2j-1} ^ e_{2j}, 1-based."""
        if not 1 <= j <= g:
            raise DomainError(f"z_{j} undefined for genus {g}")
        return cls(g, {pair_mask(j - 1): ring.coerce(1)}, ring, _clean=True)

    @classmethod
    def from_blade(cls, g, mask, coeff=1, ring=ZZ):
        return cls(g, {mask: coeff}, ring)

    # -- basics ------------------------------------------------------------

    def _check(self, other):
        if self.genus != other.genus:
            raise GenusMismatch(f"genus {self.genus} vs {other.genus}")
        if self.ring != other.ring:
            raise DomainError(f"ring {self.ring.tag} vs {other.ring.tag}")

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, Multivector)
                and self.genus == other.genus
                and self.ring == other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.genus, self.ring, tuple(sorted(self.coeffs.items()))))

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        p = self.ring.p
        for mask, c in other.coeffs.items():
            v = out.get(mask, 0) + c
            if p is not None:
                v %= p
            if v:
                out[mask] = v
            else:
                out.pop(mask, None)
        return Multivector(self.genus, out, self.ring, _clean=True)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.ring.coerce(c)
        if c == 0:
            return Multivector.zero(self.genus, self.ring)
        p = self.ring.p
        out = {}
        for mask, v in self.coeffs.items():
            w = v * c
            if p is not None:
                w %= p
                if w == 0:
                    continue
            out[mask] = w
        return Multivector(self.genus, out, self.ring, _clean=True)

    def __rmul__(self, c):
        return self.scale(c)

    def grades(self):
        return sorted({blade_grade(m) for m in self.coeffs})

    def grade_part(self, p):
        out = {m: c for m, c in self.coeffs.items() if blade_grade(m) == p}
        return Multivector(self.genus, out, self.ring, _clean=True)

    def is_homogeneous(self):
        return len(self.grades()) <= 1

    def convert(self, ring):
        return Multivector(self.genus, dict(self.coeffs), ring)

    # -- products ----------------------------------------------------------

    def wedge(self, other):
        self._check(other)
        p = self.ring.p
        out = {}
        for ma, ca in self.coeffs.items():
            for mb, cb in other.coeffs.items():
                hit = wedge_blades(ma, mb)
                if hit is None:
                    continue
                s, m = hit
                v = out.get(m, 0) + s * ca * cb
                if p is not None:
                    v %= p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Multivector(self.genus, out, self.ring, _clean=True)

    def contract(self, other):
        """self |_ other."""
        self._check(other)
        p = self.ring.p
        out = {}
        for mx, cx in self.coeffs.items():
            for ma, ca in other.coeffs.items():
                hit = contract_blades(mx, ma)
                if hit is None:
                    continue
                s, m = hit
                v = out.get(m, 0) + s * cx * ca
                if p is not None:
                    v %= p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Multivector(self.genus, out, self.ring, _clean=True)

    def star(self):
        """Hodge-Lefschetz star: contraction into eta_g."""
        out = {}
        g = self.genus
        for m, c in self.coeffs.items():
            s, m2 = star_blade(m, g)
            out[m2] = s * c
        return Multivector(self.genus, out, self.ring)

    def to_terms(self):
        return sorted(self.coeffs.items())

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for mask, c in self.to_terms():
            name = "1" if mask == 0 else "e" + "e".join(str(i) for i in blade_indices(mask))
            bits.append(f"{c}*{name}")
        return " + ".join(bits)

    # -- JSON --------------------------------------------------------------

    def to_json(self):
        return [{"blade": blade_indices(m), "coeff": str(c)}
                for m, c in self.to_terms()]

    @classmethod
    def from_json(cls, g, data, ring=ZZ):
        coeffs = {}
        for term in data:
            mask = mask_from_indices(term["blade"], g)
            text = term["coeff"]
            val = Fraction(text) if "/" in text else int(text)
            coeffs[mask] = coeffs.get(mask, 0) + val
        return cls(g, coeffs, ring)


def omega(g, ring=ZZ):
    """The symplectic form as a 2-form: sum of the z_j."""
    return Multivector(g, {pair_mask(j): 1 for j in range(g)}, ring)


def eta(k, g, ring=ZZ):
    """Divided power omega^k/k!: the sum of all k-fold products of distinct z_j.

    Defined over the integers; C(g, k) terms, every coefficient 1.
    """
    if k < 0 or k > g:
        return Multivector.zero(g, ring)
    coeffs = {}
    for subset in combinations(range(g), k):
        m = 0
        for j in subset:
            m |= pair_mask(j)
        coeffs[m] = 1
    return Multivector(g, coeffs, ring)


def wedge(a, b):
    return a.wedge(b)


def contract(x, a):
    """x |_ a, bilinear in both slots."""
    return x.contract(a)


def hodge_lefschetz_star(a):
    return a.star()


def interior(gamma_star, a):
    """Interior product by a homology class, given its Poincare dual 1-form."""
    if blade_grade_max(gamma_star) > 1:
        raise DomainError("interior wants a 1-form (the Poincare dual)")
    return gamma_star.contract(a)


def blade_grade_max(mv):
    return max((blade_grade(m) for m in mv.coeffs), default=0)


def all_blades(g, p=None):
    """All blade masks of genus g (of grade p if given), ascending."""
    n = 1 << (2 * g)
    if p is None:
        return list(range(n))
    return [m for m in range(n) if _popcount(m) == p]


def blades_of_grade(g, p):
    """Masks of grade p in ascending order, without scanning all 4^g masks."""
    if p < 0 or p > 2 * g:
        return []
    masks = [sum(1 << b for b in bits) for bits in combinations(range(2 * g), p)]
    masks.sort()
    return masks


def dim_lambda(g, p):
    if p < 0 or p > 2 * g:
        return 0
    return comb(2 * g, p)


def random_multivector(g, grade, rng, ring=ZZ, density=0.5, span=9):
    """Seeded random homogeneous element, for property sweeps."""
    coeffs = {}
    for m in blades_of_grade(g, grade):
        if rng.random() < density:
            c = rng.randint(-span, span)
            if c:
                coeffs[m] = c
    return Multivector(g, coeffs, ring)
