"""Finite substitution theories: concrete single-sorted algebraic theories
whose arity-n operations form a finite set C_n with substitution composition.

A morphism n -> m is an m-tuple of C_n elements; composition substitutes.
Three families ship:

* ``ModRTheory(r)``    - linear forms over Z/r (the theory of Z/r-modules);
* ``CommBandTheory``   - subsets of {1..n} under union (free commutative
  idempotent monoids);
* ``FreeBandTheory``   - free idempotent monoids on <= 3 generators, backed
  by the congruence-closure tables from ``finmonoid``.

Each theory carries a zero object (arity 0 has a single operation), and the
multiplication on C_1 induced by ``nabla`` makes every C_n a monoid under the
pointwise product f * g = nabla(f, g); the projected copies of C_1 generate
C_n.  These structural facts are validated, not assumed.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

Morphism = tuple  # m-tuple of C_n elements


class Theory:
    name: str = "theory"
    n_cap: int = 9

    # -- concrete theories implement these ------------------------------------
    def elements(self, n: int) -> list:
        raise NotImplementedError

    def size(self, n: int) -> int:
        return len(self.elements(n))

    def subst(self, f, args: tuple, k: int):
        """Substitute: f in C_n, args an n-tuple over C_k; result in C_k."""
        raise NotImplementedError

    def unit(self, n: int):
        raise NotImplementedError

    def proj(self, n: int, k: int):
        raise NotImplementedError

    def nabla(self):
        """The binary operation in C_2 inducing the monoid structure."""
        raise NotImplementedError

    # -- derived structure -----------------------------------------------------
    def index_map(self, n: int) -> dict:
        cache = getattr(self, "_index_cache", None)
        if cache is None:
            cache = self._index_cache = {}
        if n not in cache:
            cache[n] = {e: i for i, e in enumerate(self.elements(n))}
        return cache[n]

    def star(self, n: int, f, g):
        """Pointwise monoid product on C_n."""
        return self.subst(self.nabla(), (f, g), n)

    def one_gens(self) -> list:
        return [u for u in self.elements(1) if u != self.unit(1)]

    def star_generators(self, n: int) -> list:
        """Monoid generators of (C_n, star): projected copies of C_1."""
        gens = []
        for k in range(1, n + 1):
            pk = self.proj(n, k)
            for u in self.one_gens():
                g = self.subst(u, (pk,), n)
                if g != self.unit(n) and g not in gens:
                    gens.append(g)
        return gens

    def compose(self, g: Morphism, h: Morphism, k: int) -> Morphism:
        """g after h: h is a morphism k -> n, g a morphism n -> m."""
        return tuple(self.subst(gi, h, k) for gi in g)

    def zero_morphism(self, n: int, m: int) -> Morphism:
        return tuple(self.unit(n) for _ in range(m))

    def identity_morphism(self, n: int) -> Morphism:
        return tuple(self.proj(n, k) for k in range(1, n + 1))

    def __repr__(self):
        return f"<theory {self.name}>"


class ModRTheory(Theory):
    """Operations n -> 1 are linear forms sum a_i x_i with a_i in Z/r."""

    def __init__(self, r: int, n_cap: int = 9):
        if r < 2:
            raise ValueError("modulus must be >= 2")
        self.r = r
        self.n_cap = n_cap
        self.name = f"mod{r}"
        self._elems: dict[int, list] = {}

    def elements(self, n: int) -> list:
        if n not in self._elems:
            if n > self.n_cap:
                raise ValueError(f"arity {n} exceeds cap {self.n_cap}")
            self._elems[n] = list(itertools.product(range(self.r), repeat=n))
        return self._elems[n]

    def size(self, n: int) -> int:
        return self.r ** n

    def subst(self, f, args, k):
        out = [0] * k
        for a, g in zip(f, args):
            if a:
                for j in range(k):
                    out[j] += a * g[j]
        return tuple(x % self.r for x in out)

    def unit(self, n):
        return (0,) * n

    def proj(self, n, k):
        return tuple(1 if j == k - 1 else 0 for j in range(n))

    def nabla(self):
        return (1, 1)

    def star_generators(self, n):
        # the unit forms generate (C_n, +) already
        return [self.proj(n, k) for k in range(1, n + 1)]


class CommBandTheory(Theory):
    """Operations n -> 1 are subsets of {1..n}; substitution takes unions."""

    def __init__(self, n_cap: int = 9):
        self.n_cap = n_cap
        self.name = "free_comm_band"
        self._elems: dict[int, list] = {}

    def elements(self, n: int) -> list:
        if n not in self._elems:
            if n > self.n_cap:
                raise ValueError(f"arity {n} exceeds cap {self.n_cap}")
            out = []
            for mask in range(1 << n):
                out.append(frozenset(i + 1 for i in range(n) if mask >> i & 1))
            self._elems[n] = out
        return self._elems[n]

    def size(self, n: int) -> int:
        return 1 << n

    def subst(self, f, args, k):
        out: frozenset = frozenset()
        for i in f:
            out |= args[i - 1]
        return out

    def unit(self, n):
        return frozenset()

    def proj(self, n, k):
        return frozenset({k})

    def nabla(self):
        return frozenset({1, 2})


class FreeBandTheory(Theory):
    """Operations n -> 1 are elements of the free idempotent monoid on n
    generators; substitution folds the representative word through the
    target band."""

    def __init__(self, n_cap: int = 3):
        from ..finmonoid import free_band

        if n_cap > 3:
            raise ValueError("free band theory supports arities <= 3")
        self.n_cap = n_cap
        self.name = "free_band"
        self._bands = {n: free_band(n) for n in range(1, n_cap + 1)}

    def _band(self, n: int):
        if n == 0:
            return None
        if n not in self._bands:
            raise ValueError(f"arity {n} exceeds cap {self.n_cap}")
        return self._bands[n]

    def elements(self, n: int) -> list:
        if n == 0:
            return [0]
        return list(range(self._band(n).size))

    def size(self, n: int) -> int:
        return 1 if n == 0 else self._band(n).size

    def subst(self, f, args, k):
        if k == 0:
            return 0
        src_arity = len(args)
        word = (self._band(src_arity).meta["rep_words"][f]
                if src_arity else ())
        band = self._band(k)
        out = band.identity
        for letter in word:
            out = band.mul(out, args[letter - 1])
        return out

    def unit(self, n):
        return 0 if n == 0 else self._band(n).identity

    def proj(self, n, k):
        return self._band(n).meta["generators"][k - 1]

    def nabla(self):
        b2 = self._band(2)
        g1, g2 = b2.meta["generators"]
        return b2.mul(g1, g2)

    def star_generators(self, n):
        return list(self._band(n).meta["generators"])


class TheoryMap:
    """Arity-preserving full map of theories, given elementwise on each C_n.

    Surjectivity on every enumerated arity is validated: the induced map on
    linearized hom sets must be onto for its kernel to behave like a
    two-sided ideal with quotient the target theory.
    """

    def __init__(self, source: Theory, target: Theory, elem_map, name=""):
        self.source = source
        self.target = target
        self.elem_map = elem_map
        self.name = name or f"{source.name}->{target.name}"

    def map_element(self, n: int, e):
        return self.elem_map(n, e)

    def map_morphism(self, n: int, g: Morphism) -> Morphism:
        return tuple(self.map_element(n, gi) for gi in g)

    def check_full(self, n_max: int):
        for n in range(0, n_max + 1):
            image = {self.map_element(n, e) for e in self.source.elements(n)}
            if image != set(self.target.elements(n)):
                raise ValueError(f"{self.name} is not surjective at arity {n}")


def mod_reduction_map(r_src: int, r_tgt: int) -> TheoryMap:
    if r_src % r_tgt:
        raise ValueError("target modulus must divide source modulus")
    src, tgt = get_theory(f"mod{r_src}"), get_theory(f"mod{r_tgt}")
    return TheoryMap(src, tgt, lambda n, e: tuple(x % r_tgt for x in e))


def hom_elements(theory: Theory, n: int, m: int, limit: int | None = None) -> list[Morphism]:
    """All morphisms n -> m in canonical (product) order."""
    count = theory.size(n) ** m
    if limit is not None and count > limit:
        raise ValueError(f"hom set of size {count} exceeds cap {limit}")
    return list(itertools.product(theory.elements(n), repeat=m))


def star_product(theory: Theory, n: int, f, g):
    return theory.star(n, f, g)


def validate_theory(theory: Theory, n_max: int = 3, samples: int = 40,
                    seed: int = 7) -> None:
    """Check the substitution axioms, the zero object, the monoid structure
    on each C_n and that projected copies of C_1 generate it.  Raises on the
    first violation."""
    rng = random.Random(seed)
    if theory.size(0) != 1:
        raise AssertionError("arity 0 must have exactly one operation")

    def rand_elem(n):
        elems = theory.elements(n)
        return elems[rng.randrange(len(elems))]

    for n in range(0, n_max + 1):
        ident = theory.identity_morphism(n)
        for _ in range(samples // (n_max + 1) + 1):
            f = rand_elem(n)
            if theory.subst(f, ident, n) != f:
                raise AssertionError(f"identity substitution fails at {n}")
            k = rng.randrange(0, n_max + 1)
            args = tuple(rand_elem(k) for _ in range(n))
            for j, a in enumerate(args, start=1):
                if n and theory.subst(theory.proj(n, j), args, k) != a:
                    raise AssertionError("projection substitution fails")
            # associativity of substitution
            l = rng.randrange(0, n_max + 1)
            brgs = tuple(rand_elem(l) for _ in range(k))
            lhs = theory.subst(theory.subst(f, args, k), brgs, l)
            rhs = theory.subst(f, tuple(theory.subst(a, brgs, l) for a in args), l)
            if lhs != rhs:
                raise AssertionError(f"substitution not associative at {n}")
    for n in range(1, n_max + 1):
        e = theory.unit(n)
        for _ in range(samples // n_max + 1):
            f, g, h = (rand_elem(n) for _ in range(3))
            if theory.star(n, f, e) != f or theory.star(n, e, f) != f:
                raise AssertionError(f"star unit law fails at arity {n}")
            if theory.star(n, theory.star(n, f, g), h) != \
               theory.star(n, f, theory.star(n, g, h)):
                raise AssertionError(f"star not associative at arity {n}")
        # projected copies of C_1 generate (C_n, star)
        gens = theory.star_generators(n)
        seen = {e, *gens}
        frontier = list(seen)
        while frontier:
            a = frontier.pop()
            for g in gens:
                b = theory.star(n, a, g)
                if b not in seen:
                    seen.add(b)
                    frontier.append(b)
        if len(seen) != theory.size(n):
            raise AssertionError(f"projected C_1 does not generate C_{n}")


@lru_cache(maxsize=None)
def get_theory(name: str) -> Theory:
    """Shared theory instances (mod<r>, free_comm_band, free_band), with the
    structural axioms validated once on first construction."""
    if name.startswith("mod") and name[3:].isdigit():
        theory = ModRTheory(int(name[3:]))
    elif name == "free_comm_band":
        theory = CommBandTheory()
    elif name == "free_band":
        theory = FreeBandTheory()
    else:
        raise ValueError(f"unknown theory {name!r}")
    validate_theory(theory, n_max=min(3, theory.n_cap))
    return theory
