"""Exact coefficient rings: the integers, the rationals, and prime fields.

Coefficients are plain Python objects (int for Z and F_p, Fraction for Q),
so all arithmetic is arbitrary precision.  A Ring instance only carries the
tag and knows how to coerce/normalize values.
"""

from fractions import Fraction

from .errors import DomainError


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Ring:
    __slots__ = ("kind", "p")

    def __init__(self, kind, p=None):
        if kind not in ("Z", "Q", "Fp"):
            raise DomainError(f"unknown ring kind {kind!r}")
        if kind == "Fp":
            if p is None or not _is_prime(p):
                raise DomainError(f"F_p needs a prime modulus, got {p!r}")
        else:
            p = None
        self.kind = kind
        self.p = p

    @property
    def is_field(self):
        return self.kind != "Z"

    def coerce(self, x):
        """Bring x into canonical form for this ring; reject lossy input."""
        if self.kind == "Fp":
            if isinstance(x, Fraction):
                num, den = x.numerator % self.p, x.denominator % self.p
                if den == 0:
                    raise DomainError(f"denominator not invertible mod {self.p}")
                return num * pow(den, -1, self.p) % self.p
            return int(x) % self.p
        if self.kind == "Q":
            return Fraction(x)
        # Z: allow integral Fractions through.
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise DomainError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def is_zero(self, x):
        return self.coerce(x) == 0

    @property
    def tag(self):
        if self.kind == "Fp":
            return f"F{self.p}"
        return self.kind

    def __repr__(self):
        return f"Ring({self.tag})"

    def __eq__(self, other):
        return isinstance(other, Ring) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))


ZZ = Ring("Z")
QQ = Ring("Q")


def GF(p):
    return Ring("Fp", p)


def parse_ring(text):
    """Parse a CLI ring tag: Z, Q, F2, F7, or Fp:7."""
    t = text.strip()
    if t == "Z":
        return ZZ
    if t == "Q":
        return QQ
    if t.startswith("Fp:"):
        return GF(int(t[3:]))
    if t.startswith("F") and t[1:].isdigit():
        return GF(int(t[1:]))
    raise DomainError(f"cannot parse ring {text!r} (expected Z, Q, F2, Fp:<p>)")
