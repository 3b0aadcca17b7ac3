"""Finite monoids by multiplication table and their group-ring filtrations.

This is the brute-force side of every oracle in the package: augmentation
ideal powers by exact row reduction in the monoid algebra, integral graded
pieces presented by Smith invariants, lower central and Jennings series by
subgroup closure, and Quillen's theorem checked numerically on small
p-groups.

A power of the augmentation ideal is generated, as a module over the algebra,
by right translates: Aug^(d+1) is spanned by v * (s - e) with v running over
a basis of Aug^d and s over a monoid *generating set*.  (Induction on word
length: v * (s1 s2 - e) = (v * s1)(s2 - e) + v * (s1 - e) and Aug^d is a
right ideal.)  This keeps the chain computation proportional to the rank
rather than the monoid order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exactla import quotient_invariants
from .fields import GF, is_prime
from .spans import ZLattice, make_span


class FiniteMonoid:
    """Element list 0..k-1, dense multiplication table, identity index.

    Associativity and identity laws are validated eagerly; the group flag is
    set when every element has a two-sided inverse.
    """

    def __init__(self, table, identity: int, name: str = "", labels=None,
                 meta=None):
        self.table = [list(map(int, row)) for row in table]
        self.size = len(self.table)
        self.identity = identity
        self.name = name or f"monoid{self.size}"
        self.labels = list(labels) if labels else [str(i) for i in range(self.size)]
        self.meta = dict(meta or {})
        self._validate()
        self.inverse = self._inverse_table()
        self.is_group = self.inverse is not None

    def _validate(self):
        k = self.size
        t = np.array(self.table, dtype=np.int64)
        if t.shape != (k, k) or t.min() < 0 or t.max() >= k:
            raise ValueError("malformed multiplication table")
        e = self.identity
        if not (np.array_equal(t[e], np.arange(k)) and
                np.array_equal(t[:, e], np.arange(k))):
            raise ValueError("identity laws fail")
        for i in range(k):  # chunked associativity: (i*j)*l == i*(j*l)
            if not np.array_equal(t[t[i], :], t[i][t]):
                raise ValueError("multiplication table is not associative")
        self._np_table = t

    def _inverse_table(self):
        inv = [None] * self.size
        for i, row in enumerate(self.table):
            for j, x in enumerate(row):
                if x == self.identity and self.table[j][i] == self.identity:
                    inv[i] = j
                    break
            if inv[i] is None:
                return None
        return inv

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def power(self, a: int, k: int) -> int:
        out = self.identity
        while k:
            if k & 1:
                out = self.table[out][a]
            a = self.table[a][a]
            k >>= 1
        return out

    def generating_set(self) -> list[int]:
        if "generators" in self.meta:
            return list(self.meta["generators"])
        gens: list[int] = []
        closed = {self.identity}
        for x in range(self.size):
            if x not in closed:
                gens.append(x)
                closed = self.closure(gens)
                if len(closed) == self.size:
                    break
        return gens

    def closure(self, gens) -> set[int]:
        seen = {self.identity, *gens}
        queue = deque(seen)
        while queue:
            a = queue.popleft()
            for g in gens:
                for b in (self.table[a][g], self.table[g][a]):
                    if b not in seen:
                        seen.add(b)
                        queue.append(b)
        return seen

    def __repr__(self):
        kind = "group" if self.is_group else "monoid"
        return f"FiniteMonoid({self.name}: {kind} of order {self.size})"


# -- constructors -------------------------------------------------------------

def cyclic(r: int) -> FiniteMonoid:
    if r < 1:
        raise ValueError("order must be >= 1")
    table = [[(i + j) % r for j in range(r)] for i in range(r)]
    return FiniteMonoid(table, 0, name=f"cyclic{r}",
                        meta={"generators": [1 % r]} if r > 1 else {})


def elementary_abelian(p: int, k: int) -> FiniteMonoid:
    if not is_prime(p) or k < 0:
        raise ValueError("need a prime p and k >= 0")
    size = p ** k
    def add(i, j):
        out, mul = 0, 1
        for _ in range(k):
            out += ((i + j) % p) * mul
            i //= p
            j //= p
            mul *= p
        return out
    table = [[add(i, j) for j in range(size)] for i in range(size)]
    gens = [p ** t for t in range(k)]
    return FiniteMonoid(table, 0, name=f"elem_ab({p},{k})",
                        meta={"generators": gens})


def free_comm_band(n: int) -> FiniteMonoid:
    """Free commutative idempotent monoid on n generators: subsets of
    {1..n} under union (2^n elements)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    size = 1 << n
    table = [[i | j for j in range(size)] for i in range(size)]
    labels = ["{" + ",".join(str(t + 1) for t in range(n) if i >> t & 1) + "}"
              for i in range(size)]
    return FiniteMonoid(table, 0, name=f"free_comm_band{n}", labels=labels,
                        meta={"generators": [1 << t for t in range(n)]})


def unitriangular3(p: int) -> FiniteMonoid:
    """Upper unitriangular 3x3 matrices over F_p (Heisenberg group, p^3)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    elems = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]
    index = {e: i for i, e in enumerate(elems)}
    def mul(x, y):
        a, b, c = x
        d, e_, f = y
        return ((a + d) % p, (b + e_ + a * f) % p, (c + f) % p)
    table = [[index[mul(x, y)] for y in elems] for x in elems]
    gens = [index[(1, 0, 0)], index[(0, 0, 1)]]
    return FiniteMonoid(table, index[(0, 0, 0)], name=f"ut3({p})",
                        labels=[str(e) for e in elems],
                        meta={"generators": gens})


def direct_product(a: FiniteMonoid, b: FiniteMonoid) -> FiniteMonoid:
    ka, kb = a.size, b.size
    table = [[(a.table[i // kb][j // kb]) * kb + b.table[i % kb][j % kb]
              for j in range(ka * kb)] for i in range(ka * kb)]
    gens = [g * kb + b.identity for g in a.generating_set()] + \
           [a.identity * kb + g for g in b.generating_set()]
    return FiniteMonoid(table, a.identity * kb + b.identity,
                        name=f"{a.name}x{b.name}", meta={"generators": gens})


def free_band(n: int) -> FiniteMonoid:
    """Free idempotent monoid on n generators (n <= 3; sizes 2, 7, 160).

    Elements are canonical words under the classical content recursion
    (Green-Rees): a word with at least two distinct letters is determined by
    its content, its longest proper-content prefix with the letter completing
    it, and the mirror data on the right; the recursion bottoms out at single
    letters.  Words are band-equal iff their canonical forms coincide, so the
    monoid is the closure of the letter classes under concatenate-and-
    canonicalize.

    The result is certified: the table is validated associative, every
    element is idempotent, and the letters generate; any such monoid is a
    quotient of the free band, and canonicalization only uses consequences
    of ww = w, so equality of sizes pins the construction down.

    (A bounded congruence closure of the instances ww = w was tried first
    and abandoned: its quotient provably stops depending on the bound while
    still over-counting, because band identities need rewriting chains
    through words far beyond any enumerable length.)
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > 3:
        raise ValueError("free band on more than 3 generators is not "
                         "supported (size explosion)")
    reps: list[tuple[int, ...]] = [()]
    index: dict[tuple[int, ...], int] = {(): 0}
    queue = deque()
    for x in range(1, n + 1):
        w = (x,)
        index[w] = len(reps)
        reps.append(w)
        queue.append(w)
    while queue:
        w = queue.popleft()
        for x in range(1, n + 1):
            c = _band_canon(w + (x,))
            if c not in index:
                index[c] = len(reps)
                reps.append(c)
                queue.append(c)
    size = len(reps)
    table = [[index[_band_canon(reps[i] + reps[j])] for j in range(size)]
             for i in range(size)]
    labels = ["".join(_LETTERS[x - 1] for x in w) or "1" for w in reps]
    mon = FiniteMonoid(table, 0, name=f"free_band{n}", labels=labels,
                       meta={"generators": list(range(1, n + 1)),
                             "rep_words": list(reps)})
    for i in range(size):  # certify the band identity
        if mon.mul(i, i) != i:
            raise RuntimeError("free band construction produced a non-band")
    if mon.closure(mon.meta["generators"]) != set(range(size)):
        raise RuntimeError("letters do not generate the free band")
    return mon


_LETTERS = "abc"


@lru_cache(maxsize=200000)
def _band_canon(w: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical form of a word modulo the idempotent law.

    Two words are equal in the free band iff they have the same content and,
    recursively, the same (prefix before the letter completing the content,
    that letter) from the left and the mirror pair from the right.  The
    canonical form concatenates the canonicalized pieces; the decomposition
    is recoverable from the concatenation, so equality of canonical forms is
    exactly band equality."""
    content = set(w)
    if len(content) <= 1:
        return w[:1]
    need = len(content)
    seen: set[int] = set()
    for i, x in enumerate(w):
        seen.add(x)
        if len(seen) == need:
            break
    left, a = w[:i], w[i]
    seen = set()
    for j in range(len(w) - 1, -1, -1):
        seen.add(w[j])
        if len(seen) == need:
            break
    b, right = w[j], w[j + 1:]
    return _band_canon(left) + (a, b) + _band_canon(right)


_KINDS = {}


def construct(kind: str, params: dict) -> FiniteMonoid:
    """Build a named monoid: cyclic r / elementary_abelian p,k / free_band n
    / free_comm_band n / unitriangular3 p / direct_product of two specs."""
    if kind == "cyclic":
        return cyclic(int(params["r"]))
    if kind == "elementary_abelian":
        return elementary_abelian(int(params["p"]), int(params["k"]))
    if kind == "free_band":
        return free_band(int(params["n"]))
    if kind == "free_comm_band":
        return free_comm_band(int(params["n"]))
    if kind == "unitriangular3":
        return unitriangular3(int(params["p"]))
    if kind == "direct_product":
        return direct_product(construct(params["a"]["kind"], params["a"]),
                              construct(params["b"]["kind"], params["b"]))
    raise ValueError(f"unknown monoid kind {kind!r}")


# -- augmentation filtration over a field -------------------------------------

def _aug_first_span(m: FiniteMonoid, fieldobj):
    span = make_span(fieldobj, m.size)
    for g in range(m.size):
        if g != m.identity:
            span.insert({g: 1, m.identity: -1})
    return span


def _aug_next_span(m: FiniteMonoid, fieldobj, prev, gens):
    nxt = make_span(fieldobj, m.size)
    for row in prev.row_list():
        for s in gens:
            vec: dict[int, int] = {}
            for idx, c in row.items():
                t = m.table[idx][s]
                vec[t] = vec.get(t, 0) + c
            for idx, c in row.items():
                vec[idx] = vec.get(idx, 0) - c
            nxt.insert(vec)
    return nxt


def aug_span_chain(m: FiniteMonoid, fieldobj, upto: int):
    """Echelon bases of Aug^1 .. Aug^upto inside the monoid algebra; once
    the chain stabilizes the tail entries repeat."""
    gens = m.generating_set()
    chain = [_aug_first_span(m, fieldobj)]
    while len(chain) < upto:
        if len(chain) >= 2 and chain[-1].rank == chain[-2].rank:
            chain.append(chain[-1])
            continue
        chain.append(_aug_next_span(m, fieldobj, chain[-1], gens))
    return chain


def aug_power_dims(m: FiniteMonoid, fieldobj, cap: int) -> list[int]:
    """Entry d = dim Aug^d - dim Aug^(d+1) for d <= cap (entry 0 is 1)."""
    if cap < 0:
        raise ValueError("cap must be >= 0")
    dims = [1]
    if cap == 0:
        return dims
    chain = aug_span_chain(m, fieldobj, cap + 1)
    for d in range(1, cap + 1):
        dims.append(chain[d - 1].rank - chain[d].rank)
    return dims


def stabilization_index(m: FiniteMonoid, fieldobj) -> int:
    """Least d with Aug^d = Aug^(d+1); finite by finite dimension."""
    gens = m.generating_set()
    prev = _aug_first_span(m, fieldobj)
    d = 1
    while True:
        nxt = _aug_next_span(m, fieldobj, prev, gens)
        if nxt.rank == prev.rank:
            return d
        prev = nxt
        d += 1


# -- integral filtration -------------------------------------------------------

def aug_lattice_chain(m: FiniteMonoid, upto: int) -> list[ZLattice]:
    gens = m.generating_set()
    first = ZLattice(m.size)
    for g in range(m.size):
        if g != m.identity:
            vec = [0] * m.size
            vec[g] = 1
            vec[m.identity] = -1
            first.insert(vec)
    chain = [first]
    while len(chain) < upto:
        prev = chain[-1]
        nxt = ZLattice(m.size)
        for row in prev.row_list():
            for s in gens:
                vec = [0] * m.size
                for idx, c in enumerate(row):
                    if c:
                        vec[m.table[idx][s]] += c
                        vec[idx] -= c
                nxt.insert(vec)
        chain.append(nxt)
    return chain


def q_invariants_integral(m: FiniteMonoid, d: int) -> list[int]:
    """Invariant factors of Aug_Z^d / Aug_Z^(d+1): entries > 1 are torsion,
    each 0 a free summand, trivial factors dropped."""
    if d < 1:
        raise ValueError("d must be >= 1")
    chain = aug_lattice_chain(m, d + 1)
    return quotient_invariants(chain[d - 1], chain[d])


# -- group series --------------------------------------------------------------

def _require_group(g: FiniteMonoid):
    if not g.is_group:
        raise ValueError(f"{g.name} is not a group")


def subgroup_closure(g: FiniteMonoid, gens) -> frozenset[int]:
    seen = {g.identity, *gens}
    queue = deque(seen)
    while queue:
        a = queue.popleft()
        for b in list(seen):
            for c in (g.table[a][b], g.table[b][a]):
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
    return frozenset(seen)


def commutator_subgroup(g: FiniteMonoid, h_set, k_set) -> frozenset[int]:
    gens = set()
    inv = g.inverse
    for h in h_set:
        for k in k_set:
            gens.add(g.table[g.table[inv[h]][inv[k]]][g.table[h][k]])
    return subgroup_closure(g, gens)


def lower_central_series(g: FiniteMonoid) -> list[frozenset[int]]:
    """gamma_1 = G, gamma_(c+1) = [gamma_c, G]; stops at trivial or stable."""
    _require_group(g)
    whole = frozenset(range(g.size))
    chain = [whole]
    while True:
        nxt = commutator_subgroup(g, chain[-1], whole)
        if nxt == chain[-1]:
            break
        chain.append(nxt)
        if len(nxt) == 1:
            break
    return chain


@dataclass
class JenningsSeries:
    subgroups: list[frozenset[int]]
    factor_dims: list[int] = field(default_factory=list)
    degenerate: bool = False

    @property
    def orders(self):
        return [len(s) for s in self.subgroups]


def jennings_series(g: FiniteMonoid, p: int) -> JenningsSeries:
    """Mod-p dimension series from the product formula
    D_c = prod over i p^j >= c of gamma_i(G)^(p^j); each factor D_c/D_(c+1)
    is elementary abelian.  When p does not divide |G| the series never
    reaches the trivial subgroup and is reported degenerate."""
    _require_group(g)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    gammas = lower_central_series(g)

    def gamma(i):
        return gammas[i - 1] if i <= len(gammas) else gammas[-1]

    def dim_subgroup(c: int) -> frozenset[int]:
        gens = set()
        for i in range(1, max(len(gammas), c) + 1):
            pj = 1
            while i * pj < c:
                pj *= p
            gens.update(g.power(x, pj) for x in gamma(i))
        return subgroup_closure(g, gens)

    chain = [frozenset(range(g.size))]
    c = 2
    degenerate = False
    while True:
        nxt = dim_subgroup(c)
        if nxt == chain[-1]:
            degenerate = len(nxt) > 1
            chain.append(nxt)
            break
        chain.append(nxt)
        if len(nxt) == 1:
            break
        c += 1
    return JenningsSeries(chain, _jennings_dims(chain, p), degenerate)


def _jennings_dims(chain, p: int) -> list[int]:
    dims = []
    for a, b in zip(chain, chain[1:]):
        quo, d = len(a) // len(b), 0
        while quo % p == 0:
            quo //= p
            d += 1
        if quo != 1:
            raise ArithmeticError("dimension factor is not a p-group")
        dims.append(d)
    return dims


def quillen_check(g: FiniteMonoid, p: int, cap: int):
    """Compare graded group-algebra dimensions over F_p with the restricted
    enveloping algebra of the Jennings factors; exact equality expected for
    p-groups."""
    from .gradeds import restricted_pbw_dims

    _require_group(g)
    size = g.size
    while size % p == 0:
        size //= p
    if size != 1:
        raise ValueError(f"{g.name} is not a p-group for p={p}")
    lhs = aug_power_dims(g, GF(p), cap)
    js = jennings_series(g, p)
    ranks = [0] * cap
    for deg, d in enumerate(js.factor_dims, start=1):
        if deg <= cap:
            ranks[deg - 1] += d
    rhs = restricted_pbw_dims(ranks, p, cap)
    return lhs == rhs, lhs, rhs


# -- text format ----------------------------------------------------------------

def monoid_to_text(m: FiniteMonoid) -> str:
    lines = [f"{m.size} {m.identity}"]
    lines += [" ".join(map(str, row)) for row in m.table]
    return "\n".join(lines) + "\n"


def monoid_from_text(text: str) -> FiniteMonoid:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    k, identity = map(int, lines[0].split())
    table = [list(map(int, ln.split())) for ln in lines[1:k + 1]]
    if len(table) != k:
        raise ValueError("table row count mismatch")
    return FiniteMonoid(table, identity, name="from_text")
