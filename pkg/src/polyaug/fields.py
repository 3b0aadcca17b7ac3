"""Exact scalar domains: the integers, the rationals and prime fields.

Scalars are plain Python objects (``int`` / ``fractions.Fraction``); a domain
object carries the arithmetic so the linear-algebra layer can stay generic.
Residues mod p are kept reduced to 0..p-1, rationals are Fractions (always in
lowest terms with positive denominator).
"""

from __future__ import annotations

from fractions import Fraction


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class IntegerRing:
    """The ring of arbitrary-precision integers (no division)."""

    name = "ZZ"
    char = 0
    is_field = False

    def of(self, x):
        return int(x)

    def __repr__(self):
        return "ZZ"


class RationalField:
    name = "QQ"
    char = 0
    is_field = True

    def of(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return Fraction(1) / a

    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"


class PrimeField:
    """F_p with elements represented as ints in 0..p-1."""

    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1

    def of(self, x):
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return self.name


ZZ = IntegerRing()
QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def parse_field(text: str):
    """Parse a CLI field spec: ``Q`` for the rationals, ``Fp:5`` or ``F5``."""
    t = text.strip()
    if t in ("Q", "QQ"):
        return QQ
    if t.startswith("Fp:"):
        return GF(int(t[3:]))
    if t.startswith("F") and t[1:].isdigit():
        return GF(int(t[1:]))
    raise ValueError(f"unknown field spec {text!r} (expected Q or Fp:<prime>)")
