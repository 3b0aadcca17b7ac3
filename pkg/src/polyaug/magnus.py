"""Truncated noncommutative power-series model of free nilpotent groups and
mod-p dimension quotients.

Each generator x_i embeds as 1 + X_i in the free associative algebra on
noncommuting X_1..X_n truncated above degree D; inverses embed as truncated
geometric series.  Over the integers the kernel of the degree-c truncation is
the (c+1)-st lower central subgroup, over F_p it is the (c+1)-st dimension
subgroup, which makes the model an exact equality test for both families of
quotient groups without any collection algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import is_prime
from .freegroup import Word


@dataclass(frozen=True)
class GroupModel:
    """Target quotient: free nilpotent of class c (over Z) or the class-c
    mod-p dimension quotient (over F_p)."""

    kind: str  # "nilpotent" | "dim"
    c: int
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("nilpotent", "dim"):
            raise ValueError("kind must be 'nilpotent' or 'dim'")
        if self.c < 0:
            raise ValueError("class must be >= 0")
        if self.kind == "dim" and not is_prime(self.p):
            raise ValueError("dimension quotients need a prime p")

    @property
    def cap(self) -> int:
        return self.c

    @property
    def charp(self) -> int:
        return self.p if self.kind == "dim" else 0


class TruncatedSeries:
    """Finitely supported map from monomials (index tuples, length <= cap)
    to nonzero coefficients; charp = 0 means integer coefficients."""

    __slots__ = ("n", "cap", "charp", "terms")

    def __init__(self, n: int, cap: int, charp: int = 0, terms=None):
        self.n = n
        self.cap = cap
        self.charp = charp
        self.terms: dict[tuple[int, ...], int] = {}
        if terms:
            for mono, c in terms.items():
                self._add(mono, c)

    def _add(self, mono, c):
        if len(mono) > self.cap:
            return
        if self.charp:
            c %= self.charp
        c += self.terms.get(mono, 0)
        if self.charp:
            c %= self.charp
        if c:
            self.terms[mono] = c
        else:
            self.terms.pop(mono, None)

    @classmethod
    def one(cls, n, cap, charp=0):
        return cls(n, cap, charp, {(): 1})

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries) and self.n == other.n
                and self.cap == other.cap and self.charp == other.charp
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.cap, self.charp,
                     tuple(sorted(self.terms.items()))))

    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def min_degree(self):
        """Least degree >= 1 carrying a nonzero term, or None."""
        degs = [len(m) for m in self.terms if m]
        return min(degs) if degs else None

    def __str__(self):
        if not self.terms:
            return "0"
        def mono_str(m):
            return "1" if not m else "".join(f"X{i}" for i in m)
        parts = [f"{mono_str(m)}:{c}" for m, c in sorted(self.terms.items())]
        return " + ".join(parts)


def truncated_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Concatenation product, discarding terms above the cap."""
    if (a.n, a.cap, a.charp) != (b.n, b.cap, b.charp):
        raise ValueError("series kind mismatch")
    out = TruncatedSeries(a.n, a.cap, a.charp)
    for ma, ca in a.terms.items():
        room = a.cap - len(ma)
        for mb, cb in b.terms.items():
            if len(mb) <= room:
                out._add(ma + mb, ca * cb)
    return out


def _generator_series(i: int, n: int, cap: int, charp: int) -> TruncatedSeries:
    return TruncatedSeries(n, cap, charp, {(): 1, (i,): 1})


def _inverse_generator_series(i, n, cap, charp):
    # geometric series: (1 + X_i)^-1 truncated
    terms = {tuple([i] * k): (-1) ** k for k in range(cap + 1)}
    return TruncatedSeries(n, cap, charp, terms)


def magnus_embed(w: Word, model: GroupModel) -> TruncatedSeries:
    """Multiplicative image of a reduced word; the empty word maps to 1."""
    n, cap, charp = w.ngens, model.cap, model.charp
    out = TruncatedSeries.one(n, cap, charp)
    for x in w.letters:
        fac = _generator_series(x, n, cap, charp) if x > 0 else \
            _inverse_generator_series(-x, n, cap, charp)
        out = truncated_mul(out, fac)
    return out


def apply_substitution(w: Word, images: list[Word], model: GroupModel) -> TruncatedSeries:
    """Image of w under the homomorphism x_i -> images[i-1], evaluated in the
    series model over the target generators."""
    from .freegroup import word_inv

    if len(images) != w.ngens:
        raise ValueError(f"need {w.ngens} images, got {len(images)}")
    m = images[0].ngens if images else 0
    if any(im.ngens != m for im in images):
        raise ValueError("images must share one generator count")
    out = TruncatedSeries.one(m, model.cap, model.charp)
    cache: dict[int, TruncatedSeries] = {}
    for x in w.letters:
        if x not in cache:
            img = images[x - 1] if x > 0 else word_inv(images[-x - 1])
            cache[x] = magnus_embed(img, model)
        out = truncated_mul(out, cache[x])
    return out


def gamma_weight(w: Word, c_max: int):
    """Lower-central weight of a word: k means w lies in gamma_k but not
    gamma_(k+1) of the free group.  Returns None when the weight exceeds
    c_max (image is 1 in the class-c_max model); the empty word also gives
    None."""
    img = magnus_embed(w, GroupModel("nilpotent", c_max))
    return img.min_degree()


def dim_subgroup_member(w: Word, c: int, p: int) -> bool:
    """Is w in the c-th mod-p dimension subgroup of the free group?  True
    iff the F_p series image has no terms in degrees 1..c-1."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if c < 1:
        raise ValueError("c must be >= 1")
    img = magnus_embed(w, GroupModel("dim", c - 1, p))
    return img.is_one()


def series_equal_in_model(u: Word, v: Word, model: GroupModel) -> bool:
    """Do two words represent the same element of the model quotient?"""
    return magnus_embed(u, model) == magnus_embed(v, model)
