"""Per-cell ideals of a linearized substitution theory.

The cell (m, n) is the free module on the hom set C(n, m) over an exact
field.  This module computes echelon bases for:

* the degree-d ideal cell: the span of g o probe for g in C(n(d+1), m),
  where the degree probe at arity n is the alternating sum of the partial
  diagonal morphisms n -> n(d+1); its left ideal kills exactly the modules
  of polynomial degree <= d (and it is two-sided, which the tests verify by
  random right-composition probes);
* the (d+1)-st power of the augmentation ideal of the pointwise monoid on
  C(n, m); the classical identification of the two spans is what the
  ideal-equality oracle checks cell by cell;
* kernel cells of full theory maps and the cell of morphisms factoring
  through the zero object.

Cells and generator enumerations are refused above explicit work guards;
reports must always state which cells actually ran.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from ..fields import QQ
from ..spans import Bit2Span, FpSpan, make_ideal_span, spans_equal
from .theory import Morphism, Theory, TheoryMap


class CapExceeded(Exception):
    """A cell or generator enumeration exceeded the configured guards."""


@dataclass
class Guards:
    enum_limit: int = 10 ** 6       # morphisms enumerated as generators
    entry_limit: int = 10 ** 6      # (cell dimension)^2
    work_limit: int = 3 * 10 ** 7   # enumerated rows x estimated row cost

    def row_cost(self, field, dim: int) -> int:
        # packed-bit batch elimination makes F_2 rows far cheaper than the
        # dense mod-p path; exact rational rows cost roughly twice dense
        if getattr(field, "char", 0) == 2:
            return max(8, dim // 64)
        if field is QQ:
            return 2 * dim
        return dim

    def check_arity(self, theory: Theory, arity: int):
        if arity > theory.n_cap:
            raise CapExceeded(
                f"object {arity} exceeds the arity cap of {theory.name}")

    def check_cell(self, theory: Theory, m: int, n: int):
        self.check_arity(theory, n)
        dim = theory.size(n) ** m
        if dim * dim > self.entry_limit:
            raise CapExceeded(
                f"cell ({m},{n}) of {theory.name}: dimension {dim} exceeds "
                f"the entry guard")

    def check_enum(self, theory: Theory, field, m: int, n: int, arity: int):
        self.check_arity(theory, arity)
        count = theory.size(arity) ** m
        if count > self.enum_limit:
            raise CapExceeded(
                f"cell ({m},{n}) of {theory.name}: {count} generator "
                f"morphisms exceed the enumeration guard")
        dim = theory.size(n) ** m
        if count * self.row_cost(field, dim) > self.work_limit:
            raise CapExceeded(
                f"cell ({m},{n}) of {theory.name}: estimated work "
                f"{count * self.row_cost(field, dim)} exceeds the work guard")


DEFAULT_GUARDS = Guards()


@dataclass
class IdealCell:
    theory_name: str
    m: int
    n: int
    field: object
    span: object

    @property
    def dim(self) -> int:
        return self.span.rank

    def contains(self, vec) -> bool:
        return self.span.contains(vec)


def cell_dim(theory: Theory, m: int, n: int) -> int:
    return theory.size(n) ** m


def morphism_index(theory: Theory, n: int, g: Morphism) -> int:
    """Canonical index of a morphism in the product order on C(n, m)."""
    idx = 0
    imap = theory.index_map(n)
    for gi in g:
        idx = idx * theory.size(n) + imap[gi]
    return idx


def degree_probe(theory: Theory, d: int, n: int) -> list[tuple[Morphism, int]]:
    """Signed morphisms n -> n(d+1): for each subset T of the d+1 diagonal
    blocks, the morphism whose block k is the projection tuple when k is in
    T and the constant-unit tuple otherwise, with sign (-1)^(d+1-|T|).
    The coefficients always sum to zero."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    big = n * (d + 1)
    DEFAULT_GUARDS.check_arity(theory, big)
    proj_block = tuple(theory.proj(n, k) for k in range(1, n + 1))
    unit_block = tuple(theory.unit(n) for _ in range(n))
    acc: dict[Morphism, int] = {}
    for bits in range(1 << (d + 1)):
        blocks = []
        size_t = 0
        for k in range(d + 1):
            if bits >> k & 1:
                blocks.extend(proj_block)
                size_t += 1
            else:
                blocks.extend(unit_block)
        sign = -1 if (d + 1 - size_t) % 2 else 1
        key = tuple(blocks)
        acc[key] = acc.get(key, 0) + sign
    return [(g, c) for g, c in acc.items() if c]


def degree_ideal_cell(theory: Theory, d: int, m: int, n: int, field,
                      guards: Guards = DEFAULT_GUARDS) -> IdealCell:
    """Echelon basis of the (m, n) cell of the degree-d ideal: the span of
    all left composites of the arity-n degree probe.

    A composite with g = (g_1..g_m) acts coordinatewise, so only arity-1
    composition tables are needed; the m-fold index grids are assembled with
    numpy and deduplicated before row reduction (morphisms with identical
    index profiles give identical vectors)."""
    guards.check_cell(theory, m, n)
    big = n * (d + 1)
    guards.check_arity(theory, big)
    guards.check_enum(theory, field, m, n, big)
    probe = degree_probe(theory, d, n)
    s_small = theory.size(n)
    imap_small = theory.index_map(n)
    elems_big = theory.elements(big)
    tabs = np.array(
        [[imap_small[theory.subst(f, g_term, n)] for f in elems_big]
         for g_term, _ in probe], dtype=np.int64)
    grid = np.zeros((len(probe), 1), dtype=np.int64)
    for _ in range(m):
        grid = (grid[:, :, None] * s_small + tabs[:, None, :]).reshape(
            len(probe), -1)
    dim = s_small ** m
    char = getattr(field, "char", 0)
    if char == 2:
        odd = [t for t, (_, c) in enumerate(probe) if c % 2]
        span = _batch_f2_span(grid[odd], dim)
    elif char > 2:
        span = _batch_fp_span(grid, [c for _, c in probe], dim, char)
    else:
        rows = np.unique(grid.T, axis=0)
        span = make_ideal_span(field, dim)
        for row in rows:
            vec: dict[int, int] = {}
            for t, (_, c) in enumerate(probe):
                idx = int(row[t])
                vec[idx] = vec.get(idx, 0) + c
            span.insert({i: c for i, c in vec.items() if c})
    return IdealCell(theory.name, m, n, field, span)


def _batch_fp_span(grid, coeffs, dim: int, p: int) -> FpSpan:
    """Span of the encoded generator rows over F_p (p odd), eliminated in
    bulk with vectorized row operations."""
    count = grid.shape[1]
    mat = np.zeros((count, dim), dtype=np.int64)
    ar = np.arange(count)
    for t in range(grid.shape[0]):
        np.add.at(mat, (ar, grid[t]), coeffs[t] % p)
    mat %= p
    live = np.unique(mat, axis=0)
    span = FpSpan(p, dim)
    for pos in range(dim):
        if live.shape[0] == 0 or span.rank == dim:
            break
        col = live[:, pos]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        inv = pow(int(col[nz[0]]), p - 2, p)
        pivot = (live[nz[0]] * inv) % p
        live[nz] = (live[nz] - np.outer(col[nz], pivot)) % p
        span.insert(pivot)
        if pos % 64 == 63:
            live = live[np.any(live != 0, axis=1)]
    return span


def _batch_f2_span(grid, dim: int) -> Bit2Span:
    """Span of the columns of an encoding grid over F_2: row r is the XOR of
    unit vectors at grid[t, r]; eliminated in bulk on packed 64-bit words."""
    nwords = (dim + 63) // 64
    count = grid.shape[1]
    rows = np.zeros((count, nwords), dtype=np.uint64)
    ar = np.arange(count)
    for t in range(grid.shape[0]):
        w = grid[t] >> 6
        b = np.uint64(1) << (grid[t] & 63).astype(np.uint64)
        np.bitwise_xor.at(rows, (ar, w), b)
    rows = np.unique(rows, axis=0)
    span = Bit2Span(dim)
    live = rows
    for pos in range(dim):
        if live.shape[0] == 0 or span.rank == dim:
            break
        w, b = pos >> 6, np.uint64(pos & 63)
        mask = (live[:, w] >> b) & np.uint64(1) != 0
        idx = np.flatnonzero(mask)
        if idx.size == 0:
            continue
        pivot = live[idx[0]].copy()
        live[idx] ^= pivot
        span._store(int.from_bytes(pivot.tobytes(), "little"))
        if pos % 64 == 63:  # drop rows that have fully reduced
            live = live[np.any(live != 0, axis=1)]
    return span


# cached augmentation chains per (theory, field, cell)
_AUG_CHAINS: dict[tuple, list] = {}


def _aug_chain(theory: Theory, m: int, n: int, field, upto: int,
               guards: Guards) -> list:
    """Echelon bases of Aug^1..Aug^upto for the pointwise monoid C(n, m)."""
    guards.check_cell(theory, m, n)
    key = (theory.name, repr(field), m, n)
    chain = _AUG_CHAINS.setdefault(key, [])
    dim = theory.size(n) ** m
    s_small = theory.size(n)
    if not chain:
        span = make_ideal_span(field, dim)
        unit_idx = morphism_index(theory, n, theory.zero_morphism(n, m))
        for idx in range(dim):
            if idx != unit_idx:
                span.insert({idx: 1, unit_idx: -1})
        chain.append(span)
    if len(chain) >= upto:
        return chain[:upto]
    # right-translation index tables for star generators in each coordinate
    star_tabs = []
    elems = theory.elements(n)
    imap = theory.index_map(n)
    tab1 = {u: [imap[theory.star(n, f, u)] for f in elems]
            for u in theory.star_generators(n)}
    for j in range(m):
        shift = s_small ** (m - 1 - j)
        for u, t1 in tab1.items():
            star_tabs.append((j, shift, t1))
    while len(chain) < upto:
        prev = chain[-1]
        if len(chain) >= 2 and prev.rank == chain[-2].rank:
            chain.append(prev)
            continue
        nxt = make_ideal_span(field, dim)
        for row in prev.row_list():
            for j, shift, t1 in star_tabs:
                vec: dict[int, object] = {}
                for idx, c in row.items():
                    digit = (idx // shift) % s_small
                    tgt = idx + (t1[digit] - digit) * shift
                    vec[tgt] = vec.get(tgt, 0) + c
                for idx, c in row.items():
                    vec[idx] = vec.get(idx, 0) - c
                nxt.insert({i: c for i, c in vec.items() if c})
        chain.append(nxt)
    return chain[:upto]


def aug_power_cell(theory: Theory, d: int, m: int, n: int, field,
                   guards: Guards = DEFAULT_GUARDS) -> IdealCell:
    """Echelon basis of Aug(C(n,m))^(d+1) under the pointwise monoid."""
    chain = _aug_chain(theory, m, n, field, d + 1, guards)
    return IdealCell(theory.name, m, n, field, chain[d])


def ideal_equality_check(theory: Theory, d: int, m_max: int, n_max: int,
                         field, guards: Guards = DEFAULT_GUARDS) -> dict:
    """Compare the degree-d ideal with the (d+1)-st augmentation power on
    every cell within caps and guards; exact span equality per cell."""
    cells = []
    for n in range(1, n_max + 1):
        for m in range(1, m_max + 1):
            entry = {"m": m, "n": n}
            try:
                ideal = degree_ideal_cell(theory, d, m, n, field, guards)
                aug = aug_power_cell(theory, d, m, n, field, guards)
            except CapExceeded as exc:
                entry.update(skipped=str(exc))
                cells.append(entry)
                continue
            entry.update(dimIdeal=ideal.dim, dimAug=aug.dim,
                         equal=spans_equal(ideal.span, aug.span))
            cells.append(entry)
    ran = [c for c in cells if "equal" in c]
    return {"theory": theory.name, "field": repr(field), "d": d,
            "cells": cells,
            "cells_compared": len(ran),
            "verdict": bool(ran) and all(c["equal"] for c in ran)}


def kernel_ideal_cell(xi: TheoryMap, m: int, n: int, field,
                      guards: Guards = DEFAULT_GUARDS) -> IdealCell:
    """Kernel of the induced map on (m, n) cells of a full theory map;
    spanned by differences within each fiber."""
    src, tgt = xi.source, xi.target
    guards.check_cell(src, m, n)
    span = make_ideal_span(field, cell_dim(src, m, n))
    fibers: dict[Morphism, int] = {}
    for idx, g in enumerate(itertools.product(src.elements(n), repeat=m)):
        image = xi.map_morphism(n, g)
        first = fibers.get(image)
        if first is None:
            fibers[image] = idx
        else:
            span.insert({idx: 1, first: -1})
    return IdealCell(src.name, m, n, field, span)


def zero_ideal_cell(theory: Theory, m: int, n: int, field) -> IdealCell:
    """Cell of the ideal generated by morphisms factoring through the zero
    object; every such composite equals the unique zero morphism, so the
    cell is one-dimensional."""
    span = make_ideal_span(field, cell_dim(theory, m, n))
    span.insert({morphism_index(theory, n, theory.zero_morphism(n, m)): 1})
    return IdealCell(theory.name, m, n, field, span)


def gamma_membership(xi: TheoryMap, d: int, m_max: int, n_max: int, field,
                     guards: Guards = DEFAULT_GUARDS) -> dict:
    """Is the kernel of the theory map contained in the degree-d ideal of
    the source, on every cell within caps?  Cellwise containment of echelon
    bases; refused cells are reported."""
    cells = []
    for n in range(1, n_max + 1):
        for m in range(1, m_max + 1):
            entry = {"m": m, "n": n}
            try:
                ker = kernel_ideal_cell(xi, m, n, field, guards)
                ideal = degree_ideal_cell(xi.source, d, m, n, field, guards)
            except CapExceeded as exc:
                entry.update(skipped=str(exc))
                cells.append(entry)
                continue
            ok = all(ideal.span.contains(row) for row in ker.span.row_list())
            entry.update(dimKernel=ker.dim, dimIdeal=ideal.dim, contained=ok)
            cells.append(entry)
    ran = [c for c in cells if "contained" in c]
    return {"map": xi.name, "field": repr(field), "d": d, "cells": cells,
            "cells_compared": len(ran),
            "verdict": bool(ran) and all(c["contained"] for c in ran)}


def right_closure_probe(theory: Theory, d: int, m: int, n: int, k: int, field,
                        rng: random.Random,
                        guards: Guards = DEFAULT_GUARDS) -> bool:
    """Two-sidedness probe: compose the arity-n degree probe with a random
    g on the left and a random h: k -> n on the right; the result must lie
    in the (m, k) cell of the degree-d ideal."""
    ideal = degree_ideal_cell(theory, d, m, k, field, guards)
    big = n * (d + 1)
    elems_big = theory.elements(big)
    g = tuple(rng.choice(elems_big) for _ in range(m))
    elems_k = theory.elements(k)
    h = tuple(rng.choice(elems_k) for _ in range(n))
    vec: dict[int, object] = {}
    for term, coeff in degree_probe(theory, d, n):
        comp = theory.compose(theory.compose(g, term, n), h, k)
        idx = morphism_index(theory, k, comp)
        vec[idx] = vec.get(idx, 0) + field.of(coeff)
    return ideal.span.contains({i: c for i, c in vec.items() if c})
