"""Sparse exact linear algebra over Z, Q and F_p.

Everything is arbitrary precision: integer matrices use Python ints, rational
ones Fractions, prime fields ints reduced mod p.  The Smith normal form runs
a sparse pre-elimination on +-1 pivots (fill-minimizing pivot choice) before
falling back to general gcd pivoting on the residual block; the invariant
factors of the diagonalized matrix are then normalized into a divisibility
chain by pairwise gcd/lcm.
"""

from fractions import Fraction
from math import gcd

from .errors import DomainError, UnsupportedOperation
from .rings import QQ, ZZ, parse_ring


class GroupPresentation:
    """Finitely generated abelian group: free rank plus invariant factors.

    Factors form a divisibility chain d_1 | d_2 | ..., each >= 2; factors
    equal to 1 are never stored.
    """

    __slots__ = ("free_rank", "invariant_factors")

    def __init__(self, free_rank=0, invariant_factors=()):
        factors = [int(d) for d in invariant_factors if int(d) not in (0, 1)]
        factors = normalize_divisibility_chain(factors)
        self.free_rank = int(free_rank)
        self.invariant_factors = tuple(f for f in factors if f != 1)

    def __eq__(self, other):
        return (isinstance(other, GroupPresentation)
                and self.free_rank == other.free_rank
                and self.invariant_factors == other.invariant_factors)

    def __hash__(self):
        return hash((self.free_rank, self.invariant_factors))

    def is_trivial(self):
        return self.free_rank == 0 and not self.invariant_factors

    def is_free(self):
        return not self.invariant_factors

    def direct_sum(self, other):
        return GroupPresentation(self.free_rank + other.free_rank,
                                 list(self.invariant_factors) + list(other.invariant_factors))

    def torsion_order(self):
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def __str__(self):
        from collections import Counter
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        for d, count in sorted(Counter(self.invariant_factors).items()):
            parts.append(f"Z/{d}" if count == 1 else f"(Z/{d})^{count}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"GroupPresentation({self.free_rank}, {list(self.invariant_factors)})"

    def to_json(self):
        return {"free_rank": self.free_rank,
                "invariant_factors": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, data):
        return cls(data["free_rank"], data["invariant_factors"])


def normalize_divisibility_chain(factors):
    """Rewrite a multiset of nonzero moduli as a divisibility chain.

    diag(a, b) is unimodularly equivalent to diag(gcd(a,b), lcm(a,b)), so
    pairwise passes converge to the invariant factors.  Factors equal to 1
    are kept: the chain length equals the input length.
    """
    fs = sorted(abs(f) for f in factors)
    if any(f == 0 for f in fs):
        raise DomainError("divisibility chain wants nonzero factors")
    changed = True
    while changed:
        changed = False
        for i in range(len(fs)):
            if fs[i] == 1:
                continue
            for j in range(i + 1, len(fs)):
                a, b = fs[i], fs[j]
                if b % a:
                    g = gcd(a, b)
                    fs[i], fs[j] = g, a * b // g
                    changed = True
        fs.sort()
    return fs


class SparseExactMatrix:
    """Sparse matrix with exact entries over a tagged ring."""

    __slots__ = ("rows", "cols", "ring", "entries")

    def __init__(self, rows, cols, ring=ZZ, entries=None):
        self.rows = rows
        self.cols = cols
        self.ring = ring
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                self[r, c] = v

    def __setitem__(self, key, v):
        r, c = key
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise DomainError(f"entry ({r},{c}) out of range")
        v = self.ring.coerce(v)
        if v == 0:
            self.entries.pop((r, c), None)
        else:
            self.entries[(r, c)] = v

    def __getitem__(self, key):
        return self.entries.get(key, self.ring.coerce(0))

    def nnz(self):
        return len(self.entries)

    def copy(self):
        m = SparseExactMatrix(self.rows, self.cols, self.ring)
        m.entries = dict(self.entries)
        return m

    def convert(self, ring):
        m = SparseExactMatrix(self.rows, self.cols, ring)
        for (r, c), v in self.entries.items():
            m[r, c] = v
        return m

    def transpose(self):
        m = SparseExactMatrix(self.cols, self.rows, self.ring)
        for (r, c), v in self.entries.items():
            m.entries[(c, r)] = v
        return m

    def column(self, c):
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def col_dicts(self):
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def mul_vector(self, vec):
        """Matrix times a sparse column {index: value}."""
        out = {}
        cols = self.col_dicts()
        for c, x in vec.items():
            if x == 0:
                continue
            for r, v in cols[c].items():
                out[r] = out.get(r, 0) + v * x
        return {r: v for r, v in out.items() if v != 0}

    @classmethod
    def from_columns(cls, rows, columns, ring=ZZ):
        m = cls(rows, len(columns), ring)
        for c, coldict in enumerate(columns):
            for r, v in coldict.items():
                m[r, c] = v
        return m

    @classmethod
    def hstack(cls, a, b):
        if a.rows != b.rows or a.ring != b.ring:
            raise DomainError("hstack wants equal row counts and rings")
        m = cls(a.rows, a.cols + b.cols, a.ring)
        m.entries = dict(a.entries)
        for (r, c), v in b.entries.items():
            m.entries[(r, a.cols + c)] = v
        return m

    def to_json(self):
        ents = sorted(((r, c, str(v)) for (r, c), v in self.entries.items()))
        return {"rows": self.rows, "cols": self.cols, "ring": self.ring.tag,
                "entries": [[r, c, s] for r, c, s in ents]}

    @classmethod
    def from_json(cls, data):
        ring = parse_ring(data["ring"])
        m = cls(data["rows"], data["cols"], ring)
        for r, c, s in data["entries"]:
            val = Fraction(s) if "/" in s else int(s)
            m[r, c] = m[r, c] + val
        return m

    def __eq__(self, other):
        return (isinstance(other, SparseExactMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.ring == other.ring
                and self.entries == other.entries)

    def __repr__(self):
        return f"<{self.rows}x{self.cols} {self.ring.tag} matrix, {self.nnz()} nnz>"


# ---------------------------------------------------------------------------
# elimination over fields
# ---------------------------------------------------------------------------

def _rank_f2(m):
    # rows as bitmasks over columns; XOR elimination
    rows = {}
    for (r, c), v in m.entries.items():
        if int(v) % 2:
            rows[r] = rows.get(r, 0) ^ (1 << c)
    pivots = {}  # leading column -> row bitmask
    rank = 0
    for vec in rows.values():
        while vec:
            lead = vec.bit_length() - 1
            if lead in pivots:
                vec ^= pivots[lead]
            else:
                pivots[lead] = vec
                rank += 1
                break
    return rank


def _field_eliminate(m, want_kernel=False):
    """Sparse Gaussian elimination over Q or F_p.

    Returns (rank, kernel_columns).  Pivots favour short rows crossed with
    short columns to limit fill.
    """
    ring = m.ring
    p = ring.p
    if ring == ZZ:
        ring = QQ

    def inv(x):
        if p is None:
            return Fraction(1) / x
        return pow(x, -1, p)

    cols = [dict() for _ in range(m.cols)]  # col -> {row: val}
    for (r, c), v in m.entries.items():
        cols[c][r] = ring.coerce(v)
    # record of column operations for the kernel: start from identity
    ops = [dict({c: ring.coerce(1)}) for c in range(m.cols)] if want_kernel else None

    live_rows = set(r for (r, _c) in m.entries)
    done_cols = set()
    rank = 0
    while True:
        best = None
        for c in range(m.cols):
            if c in done_cols or not cols[c]:
                continue
            cl = len(cols[c])
            for r, v in cols[c].items():
                if r not in live_rows:
                    continue
                cost = (cl - 1)
                if best is None or cost < best[0]:
                    best = (cost, r, c)
            if best and best[0] == 0:
                break
        if best is None:
            break
        _, pr, pc = best
        pval = cols[pc][pr]
        rank += 1
        done_cols.add(pc)
        live_rows.discard(pr)
        ipv = inv(pval)
        # clear row pr from every other live column
        for c in range(m.cols):
            if c == pc or c in done_cols:
                continue
            v = cols[c].get(pr)
            if v is None:
                continue
            factor = v * ipv
            if p is not None:
                factor %= p
            for r, w in cols[pc].items():
                nv = cols[c].get(r, 0) - factor * w
                if p is not None:
                    nv %= p
                if nv:
                    cols[c][r] = nv
                else:
                    cols[c].pop(r, None)
            if want_kernel:
                for r, w in ops[pc].items():
                    nv = ops[c].get(r, 0) - factor * w
                    if p is not None:
                        nv %= p
                    if nv:
                        ops[c][r] = nv
                    else:
                        ops[c].pop(r, None)
    kernel = []
    if want_kernel:
        for c in range(m.cols):
            if c in done_cols:
                continue
            if cols[c]:
                raise AssertionError("non-pivot column not fully eliminated")
            kernel.append(dict(ops[c]))
    return rank, kernel


def rank(m, ring=None):
    """Exact rank of m over the given ring (default: the matrix's own ring;
    Z matrices are ranked over Q)."""
    mm = m if ring is None or ring == m.ring else m.convert(ring)
    r = mm.ring
    if r.kind == "Fp" and r.p == 2:
        return _rank_f2(mm)
    if r.kind == "Fp" or r.kind == "Q" or r.kind == "Z":
        return _field_eliminate(mm, want_kernel=False)[0]
    raise DomainError(f"rank over {r.tag} unsupported")


def kernel_rank(m, ring=None):
    mm = m if ring is None else m.convert(ring) if ring != m.ring else m
    return mm.cols - rank(mm)


def kernel_basis(m, ring=None):
    """Kernel basis over a field, as a list of sparse columns.

    Over Z this is deliberately not provided here; the engine works with
    integer kernel lattices via integer_kernel_lattice.
    """
    mm = m if ring is None else (m.convert(ring) if ring != m.ring else m)
    if not mm.ring.is_field:
        raise UnsupportedOperation("kernel_basis is only provided over fields; "
                                   "Z matrices expose kernel_rank only")
    _, basis = _field_eliminate(mm, want_kernel=True)
    return basis


def solve_columns(basis_columns, rhs_columns, nrows):
    """Solve B y = x over Q for several right-hand sides at once.

    basis_columns is a list of sparse columns with full column rank; returns
    one coordinate dict per rhs, raising if a rhs is outside the span.
    Gauss-Jordan on rows of the augmented system [B | X].
    """
    k = len(basis_columns)
    rows = {}
    for j, col in enumerate(basis_columns):
        for r, v in col.items():
            rows.setdefault(r, {})[j] = Fraction(v)
    for j, col in enumerate(rhs_columns):
        for r, v in col.items():
            rows.setdefault(r, {})[k + j] = Fraction(v)
    pivot_row_of = {}
    used = set()
    for c in range(k):
        prow = None
        for r, rd in rows.items():
            if r not in used and rd.get(c):
                prow = r
                break
        if prow is None:
            raise DomainError("basis columns are dependent")
        pivot_row_of[c] = prow
        used.add(prow)
        pd = rows[prow]
        pval = pd[c]
        for r, rd in rows.items():
            if r == prow:
                continue
            v = rd.get(c)
            if not v:
                continue
            f = v / pval
            for cc, w in pd.items():
                nv = rd.get(cc, 0) - f * w
                if nv:
                    rd[cc] = nv
                else:
                    rd.pop(cc, None)
    # consistency: rows without pivots must carry no rhs entries
    pivot_rows = set(pivot_row_of.values())
    for r, rd in rows.items():
        if r not in pivot_rows and any(cc >= k and v for cc, v in rd.items()):
            raise DomainError("right-hand side outside the span")
    sols = []
    for j in range(len(rhs_columns)):
        sol = {}
        for c in range(k):
            rd = rows[pivot_row_of[c]]
            v = rd.get(k + j)
            if v:
                sol[c] = v / rd[c]
        sols.append(sol)
    return sols


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------

def smith_normal_form(m, deadline=None):
    """Invariant factors of an integer matrix (nonzero diagonal of the SNF).

    Sparse phase: eliminate on +-1 pivots chosen by least fill (Markowitz
    cost), which keeps everything integral and unimodular.  Residual phase:
    general gcd pivoting until diagonal, then chain normalization.
    """
    if m.ring != ZZ:
        raise DomainError("smith_normal_form wants a Z matrix")
    rows = {}
    cols = {}
    for (r, c), v in m.entries.items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, {})[r] = v
    factors = []

    def check_deadline():
        if deadline is not None:
            deadline.tick()

    def remove(r, c):
        rows[r].pop(c, None)
        cols[c].pop(r, None)
        if not rows[r]:
            del rows[r]
        if not cols[c]:
            del cols[c]

    def put(r, c, v):
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, {})[r] = v
        else:
            if r in rows and c in rows[r]:
                remove(r, c)

    def add_row(dst, src, factor):
        # row_dst += factor * row_src
        for c, v in list(rows.get(src, {}).items()):
            put(dst, c, rows.get(dst, {}).get(c, 0) + factor * v)

    def add_col(dst, src, factor):
        for r, v in list(cols.get(src, {}).items()):
            put(r, dst, rows.get(r, {}).get(dst, 0) + factor * v)

    # --- phase 1: unit pivots, least fill first
    while True:
        check_deadline()
        best = None
        for r, rd in rows.items():
            lr = len(rd)
            for c, v in rd.items():
                if v == 1 or v == -1:
                    cost = (lr - 1) * (len(cols[c]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, r, c)
                        if cost == 0:
                            break
            if best and best[0] == 0:
                break
        if best is None:
            break
        _, pr, pc = best
        pv = rows[pr][pc]
        for r in list(cols[pc].keys()):
            if r == pr:
                continue
            add_row(r, pr, -cols[pc][r] * pv)  # pv is +-1, its own inverse
        for c in list(rows[pr].keys()):
            if c == pc:
                continue
            add_col(c, pc, -rows[pr][c] * pv)
        remove(pr, pc)
        factors.append(1)

    # --- phase 2: gcd pivoting on the residual
    while rows:
        check_deadline()
        pr, pc, _ = min(((r, c, abs(v)) for r, rd in rows.items() for c, v in rd.items()),
                        key=lambda t: (t[2], len(rows[t[0]]) + len(cols[t[1]])))
        # shrink the pivot until it divides its whole row and column
        while True:
            pv = rows[pr][pc]
            off = None
            for r, v in cols[pc].items():
                if r != pr and v % pv:
                    off = ("row", r, v)
                    break
            if off is None:
                for c, v in rows[pr].items():
                    if c != pc and v % pv:
                        off = ("col", c, v)
                        break
            if off is None:
                break
            kind, idx, v = off
            q = v // pv
            if kind == "row":
                add_row(idx, pr, -q)
                if abs(rows.get(idx, {}).get(pc, 0)) < abs(pv) and rows.get(idx, {}).get(pc, 0):
                    pr = idx
            else:
                add_col(idx, pc, -q)
                if abs(rows.get(pr, {}).get(idx, 0)) < abs(pv) and rows.get(pr, {}).get(idx, 0):
                    pc = idx
        pv = rows[pr][pc]
        for r in list(cols[pc].keys()):
            if r != pr:
                add_row(r, pr, -cols[pc][r] // pv)
        for c in list(rows[pr].keys()):
            if c != pc:
                add_col(c, pc, -rows[pr][c] // pv)
        remove(pr, pc)
        factors.append(abs(pv))

    return normalize_divisibility_chain(factors)


def cokernel(m):
    """Presentation of Z^rows / column span of m."""
    if m.ring != ZZ:
        raise DomainError("cokernel wants a Z matrix")
    factors = smith_normal_form(m)
    return GroupPresentation(m.rows - len(factors), factors)


def integer_kernel_lattice(m):
    """Z-basis of the kernel lattice {x : m x = 0}, as sparse columns.

    Column-echelon reduction of m stacked over the identity: columns whose
    top block vanishes carry a basis of the (saturated) kernel in the bottom
    block.  All column operations are unimodular.
    """
    if m.ring != ZZ:
        raise DomainError("integer_kernel_lattice wants a Z matrix")
    ncols = m.cols
    top = [dict() for _ in range(ncols)]    # column -> {row: val} in m
    bot = [{c: 1} for c in range(ncols)]    # identity below
    for (r, c), v in m.entries.items():
        top[c][r] = v
    live = list(range(ncols))
    # process rows by increasing fill to limit growth
    row_occupancy = {}
    for c in live:
        for r in top[c]:
            row_occupancy[r] = row_occupancy.get(r, 0) + 1
    for prow in sorted(row_occupancy, key=lambda r: (row_occupancy[r], r)):
        carriers = [c for c in live if prow in top[c]]
        if not carriers:
            continue
        while len(carriers) > 1:
            carriers.sort(key=lambda c: abs(top[c][prow]))
            c0 = carriers[0]
            a = top[c0][prow]
            nxt = []
            for c in carriers[1:]:
                b = top[c][prow]
                q = b // a
                if q:
                    for r, v in top[c0].items():
                        nv = top[c].get(r, 0) - q * v
                        if nv:
                            top[c][r] = nv
                        else:
                            top[c].pop(r, None)
                    for r, v in bot[c0].items():
                        nv = bot[c].get(r, 0) - q * v
                        if nv:
                            bot[c][r] = nv
                        else:
                            bot[c].pop(r, None)
                if prow in top[c]:
                    nxt.append(c)
            carriers = [c0] + nxt
        live.remove(carriers[0])
    return [bot[c] for c in live]


def lattice_quotient(basis_columns, subgroup_columns, ambient_rows):
    """Presentation of (lattice spanned by basis) / (subgroup of it).

    basis_columns must be a Z-basis of a saturated lattice containing the
    subgroup generators; coordinates are solved exactly over Q and are then
    integral.
    """
    k = len(basis_columns)
    if k == 0:
        return GroupPresentation(0, [])
    coords = solve_columns(basis_columns, subgroup_columns, ambient_rows)
    pres = SparseExactMatrix(k, len(subgroup_columns), ZZ)
    for j, sol in enumerate(coords):
        for i, v in sol.items():
            if Fraction(v).denominator != 1:
                raise DomainError("subgroup generator outside the lattice")
            pres[i, j] = Fraction(v).numerator
    return cokernel(pres)
