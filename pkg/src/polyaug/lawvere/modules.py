"""Finite modules over a linearized substitution theory.

A module assigns to each arity n <= n_cap a finite-dimensional space over a
fixed field and to each morphism a matrix, functorially.  Matrices are dense
row lists (rows index the output space); dimensions stay small, so the
linear algebra here is plain field arithmetic.

Builders: the constant module, the tautological module of a mod-p theory,
its tensor square, representable cells and their quotients by a degree
ideal.  On top of these sit the degree tests (probe action / cross-effect
vanishing), the largest submodule killed by an ideal, the largest quotient
on which it acts trivially, and per-cell annihilators.
"""

from __future__ import annotations

import itertools

from ..spans import make_span, nullspace
from .ideals import (DEFAULT_GUARDS, CapExceeded, IdealCell,
                     degree_ideal_cell, degree_probe)
from .theory import Morphism, Theory


def mat_mul(field, a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[field.zero] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            c = ai[k]
            if c != field.zero:
                bk = b[k]
                oi = out[i]
                for j in range(cols):
                    oi[j] = field.add(oi[j], field.mul(c, bk[j]))
        out[i] = out[i]
    return out


def mat_add_scaled(field, a, b, c):
    return [[field.add(x, field.mul(c, y)) for x, y in zip(ra, rb)]
            for ra, rb in zip(a, b)]


def mat_zero(field, rows, cols):
    return [[field.zero] * cols for _ in range(rows)]


def mat_is_zero(field, a) -> bool:
    return all(x == field.zero for row in a for x in row)


def mat_apply(field, a, v):
    return [sum_field(field, (field.mul(c, x) for c, x in zip(row, v)))
            for row in a]


def sum_field(field, items):
    out = field.zero
    for x in items:
        out = field.add(out, x)
    return out


class FiniteModule:
    """dims: arity -> dimension; action(g, n, m) -> matrix for a morphism
    n -> m given as a tuple of C_n elements."""

    def __init__(self, theory: Theory, field, dims, action, name=""):
        self.theory = theory
        self.field = field
        self.dims = dict(dims)
        self._action = action
        self.name = name or "module"

    def dim(self, n: int) -> int:
        if n not in self.dims:
            raise ValueError(f"module {self.name} not defined at arity {n}")
        return self.dims[n]

    def arities(self):
        return sorted(self.dims)

    def action(self, g: Morphism, n: int, m: int):
        return self._action(g, n, m)

    def combo_action(self, combo, n: int, m: int):
        """Matrix of a linear combination of morphisms (sparse dict or list
        of (morphism, coeff))."""
        items = combo.items() if hasattr(combo, "items") else combo
        out = mat_zero(self.field, self.dim(m), self.dim(n))
        for g, c in items:
            out = mat_add_scaled(self.field, out,
                                 self.action(g, n, m), self.field.of(c))
        return out

    def spot_check(self, samples: int = 12, seed: int = 3):
        """Functoriality on sampled pairs: action respects composition and
        identities."""
        import random

        rng = random.Random(seed)
        ars = [n for n in self.arities() if self.theory.size(n) ** 2 < 10 ** 6]
        for n in ars:
            ident = self.theory.identity_morphism(n)
            mat = self.action(ident, n, n)
            expect = [[self.field.one if i == j else self.field.zero
                       for j in range(self.dim(n))] for i in range(self.dim(n))]
            if mat != expect:
                raise AssertionError(f"identity action fails at arity {n}")
        for _ in range(samples):
            k, n, m = (rng.choice(ars) for _ in range(3))
            h = tuple(rng.choice(self.theory.elements(k)) for _ in range(n))
            g = tuple(rng.choice(self.theory.elements(n)) for _ in range(m))
            lhs = self.action(self.theory.compose(g, h, k), k, m)
            rhs = mat_mul(self.field, self.action(g, n, m), self.action(h, k, n))
            if lhs != rhs:
                raise AssertionError("composition action fails")


def constant_module(theory: Theory, field, n_max: int) -> FiniteModule:
    dims = {n: 1 for n in range(0, n_max + 1)}
    one = [[field.one]]
    return FiniteModule(theory, field, dims, lambda g, n, m: one, "constant")


def tautological_module(theory, field, n_max: int) -> FiniteModule:
    """For the mod-r theory with r = char(field): M(n) = field^n, a linear
    form acting by its coefficient row."""
    if getattr(theory, "r", None) != field.char:
        raise ValueError("tautological module needs theory modulus = field "
                         "characteristic")
    dims = {n: n for n in range(0, n_max + 1)}

    def action(g, n, m):
        return [[field.of(gi[j]) for j in range(n)] for gi in g]

    return FiniteModule(theory, field, dims, action, "tautological")


def tensor_square_module(theory, field, n_max: int) -> FiniteModule:
    """M(n) = field^(n^2) with a morphism acting by the Kronecker square of
    its coefficient matrix."""
    if getattr(theory, "r", None) != field.char:
        raise ValueError("tensor square needs theory modulus = field "
                         "characteristic")
    dims = {n: n * n for n in range(0, n_max + 1)}

    def action(g, n, m):
        base = [[field.of(gi[j]) for j in range(n)] for gi in g]
        out = mat_zero(field, m * m, n * n)
        for i1 in range(m):
            for i2 in range(m):
                for j1 in range(n):
                    c = base[i1][j1]
                    if c == field.zero:
                        continue
                    row = out[i1 * m + i2]
                    for j2 in range(n):
                        row[j1 * n + j2] = field.add(
                            row[j1 * n + j2], field.mul(c, base[i2][j2]))
        return out

    return FiniteModule(theory, field, dims, action, "tensor_square")


def representable_module(theory: Theory, field, k0: int, n_max: int) -> FiniteModule:
    """M(n) = free module on hom(k0, n); morphisms act by post-composition."""
    homs = {n: list(itertools.product(theory.elements(k0), repeat=n))
            for n in range(0, n_max + 1)}
    index = {n: {h: i for i, h in enumerate(homs[n])} for n in homs}
    dims = {n: len(homs[n]) for n in homs}

    def action(g, n, m):
        out = mat_zero(field, dims[m], dims[n])
        for j, h in enumerate(homs[n]):
            out[index[m][theory.compose(g, h, k0)]][j] = field.one
        return out

    return FiniteModule(theory, field, dims, action, f"representable({k0})")


def representable_quotient_module(theory: Theory, field, k0: int, d: int,
                                  n_max: int,
                                  guards=DEFAULT_GUARDS) -> FiniteModule:
    """Quotient of the representable at k0 by the degree-d ideal cells: the
    canonical small projective generator of degree <= d modules."""
    homs = {}
    cells = {}
    basis_cols = {}
    for n in range(0, n_max + 1):
        homs[n] = list(itertools.product(theory.elements(k0), repeat=n))
        cells[n] = degree_ideal_cell(theory, d, n, k0, field, guards)
        pivots = set(cells[n].span.pivots())
        basis_cols[n] = [i for i in range(len(homs[n])) if i not in pivots]
    col_of = {n: {c: i for i, c in enumerate(basis_cols[n])} for n in homs}
    index = {n: {h: i for i, h in enumerate(homs[n])} for n in homs}
    dims = {n: len(basis_cols[n]) for n in homs}

    def action(g, n, m):
        out = mat_zero(field, dims[m], dims[n])
        for j, col in enumerate(basis_cols[n]):
            h = homs[n][col]
            image = theory.compose(g, h, k0)
            res = cells[m].span.residual({index[m][image]: 1})
            if hasattr(res, "items"):
                items = res.items()
            else:  # bit residual from the F_2 span
                items, bits, c = [], res, 0
                while bits:
                    if bits & 1:
                        items.append((c, 1))
                    bits >>= 1
                    c += 1
            for cidx, val in items:
                out[col_of[m][cidx]][j] = field.of(val)
        return out

    return FiniteModule(theory, field, dims, action,
                        f"representable({k0})/degree_ideal({d})")


# -- degree tests --------------------------------------------------------------

def probe_action_is_zero(module: FiniteModule, d: int, n: int) -> bool:
    probe = degree_probe(module.theory, d, n)
    big = n * (d + 1)
    mat = module.combo_action(probe, n, big)
    return mat_is_zero(module.field, mat)


def module_poly_degree(module: FiniteModule, d_max: int) -> int | None:
    """Least d <= d_max such that the degree probe acts as zero at every
    testable arity (n(d+1) within the module's range); None when every
    d <= d_max fails.  The answer is relative to the available arities."""
    ars = set(module.arities())
    for d in range(0, d_max + 1):
        testable = [n for n in sorted(ars) if n * (d + 1) in ars and n >= 1]
        if not testable:
            return None
        if all(probe_action_is_zero(module, d, n) for n in testable):
            return d
    return None


def cross_effect_dim(module: FiniteModule, parts: list[int]) -> int:
    """Dimension of the multilinear kernel at a tuple of arities: the joint
    kernel of the block-collapse maps from M(sum parts)."""
    theory = module.theory
    total = sum(parts)
    if total not in module.dims:
        raise CapExceeded(f"object {total} outside module range")
    offs = [0]
    for p in parts:
        offs.append(offs[-1] + p)
    columns = [[] for _ in range(module.dim(total))]
    for drop in range(len(parts)):
        kept = [i for i in range(total)
                if not (offs[drop] <= i < offs[drop + 1])]
        face = tuple(theory.proj(total, i + 1) for i in kept)
        mat = module.action(face, total, total - parts[drop])
        for j in range(module.dim(total)):
            columns[j].extend(row[j] for row in mat)
    width = len(columns[0]) if columns else 0
    rows = [{i: c for i, c in enumerate(col) if c != module.field.zero}
            for col in columns]
    return len(nullspace(rows, width, module.field))


# -- vanishing, covanishing, annihilator ---------------------------------------

def _kernel_basis(field, mats, dim_in):
    """Joint kernel of a list of matrices acting on field^dim_in."""
    cols = []
    for j in range(dim_in):
        col = []
        for mat in mats:
            col.extend(row[j] for row in mat)
        cols.append(col)
    width = len(cols[0]) if cols else 0
    rows = [{i: c for i, c in enumerate(col) if c != field.zero} for col in cols]
    combos = nullspace(rows, width, field)
    basis = []
    for combo in combos:
        vec = [field.zero] * dim_in
        for j, c in combo.items():
            vec[j] = field.of(c)
        basis.append(vec)
    return basis


def _ideal_action_matrices(module: FiniteModule, ideal_cells: dict, n: int):
    """(target arity, action matrix) for every ideal basis row sourced at n."""
    mats = []
    for (m, nn), cell in ideal_cells.items():
        if nn != n or m not in module.dims:
            continue
        homs = list(itertools.product(module.theory.elements(n), repeat=m))
        for row in cell.span.row_list():
            combo = [(homs[i], c) for i, c in row.items()]
            mats.append((m, module.combo_action(combo, n, m)))
    return mats


def _express_in_rows(field, rows, width, vec):
    """Coefficients writing ``vec`` in the given independent rows, or None."""
    span = make_span(field, width + len(rows), main_cols=width)
    for i, r in enumerate(rows):
        v = {c: x for c, x in enumerate(r) if x != field.zero}
        v[width + i] = field.one
        span.insert(v)
    res = span.residual({c: x for c, x in enumerate(vec) if x != field.zero})
    if any(c < width for c in res):
        return None
    return [field.neg(field.of(res.get(width + i, field.zero)))
            for i in range(len(rows))]


def vanishing_submodule(module: FiniteModule, ideal_cells: dict) -> FiniteModule:
    """Largest submodule killed by the given ideal cells, with the induced
    action.  With the degree-d ideal cells this is the d-th polynomial
    approximation; the chosen basis is exposed as ``.basis``."""
    field = module.field
    basis: dict[int, list] = {}
    for n in module.arities():
        mats = [mat for _, mat in _ideal_action_matrices(module, ideal_cells, n)]
        if not mats:
            basis[n] = [[field.one if i == j else field.zero
                         for j in range(module.dim(n))]
                        for i in range(module.dim(n))]
        else:
            basis[n] = _kernel_basis(field, mats, module.dim(n))
    dims = {n: len(b) for n, b in basis.items()}

    def action(g, n, m):
        out = mat_zero(field, dims[m], dims[n])
        if dims[n] == 0 or dims[m] == 0:
            return out
        big = module.action(g, n, m)
        for j, vec in enumerate(basis[n]):
            image = mat_apply(field, big, vec)
            coeffs = _express_in_rows(field, basis[m], module.dim(m), image)
            if coeffs is None:
                raise ArithmeticError("vanishing submodule is not invariant")
            for i, c in enumerate(coeffs):
                out[i][j] = c
        return out

    sub = FiniteModule(module.theory, field, dims, action,
                       f"V({module.name})")
    sub.basis = basis
    return sub


def covanishing_quotient(module: FiniteModule, ideal_cells: dict) -> FiniteModule:
    """Largest quotient on which the ideal cells act as zero: each M(m) is
    divided by the span of ideal-action images, with the induced action on
    non-pivot coordinates."""
    field = module.field
    spans = {}
    coords = {}
    for m in module.arities():
        span = make_span(field, module.dim(m))
        for n in module.arities():
            for target, mat in _ideal_action_matrices(module, ideal_cells, n):
                if target != m:
                    continue
                for j in range(module.dim(n)):
                    span.insert({i: mat[i][j] for i in range(module.dim(m))
                                 if mat[i][j] != field.zero})
        spans[m] = span
        pivots = set(span.pivots())
        coords[m] = [c for c in range(module.dim(m)) if c not in pivots]
    dims = {m: len(coords[m]) for m in coords}
    col_of = {m: {c: i for i, c in enumerate(coords[m])} for m in coords}

    def action(g, n, m):
        out = mat_zero(field, dims[m], dims[n])
        big = module.action(g, n, m)
        for j, col in enumerate(coords[n]):
            image = [big[i][col] for i in range(module.dim(m))]
            res = spans[m].residual(
                {i: x for i, x in enumerate(image) if x != field.zero})
            for cidx, val in res.items():
                out[col_of[m][cidx]][j] = field.of(val)
        return out

    quo = FiniteModule(module.theory, field, dims, action,
                       f"Lambda({module.name})")
    quo.quotient_coords = coords
    return quo


def annihilator_cell(module: FiniteModule, m: int, n: int,
                     guards=DEFAULT_GUARDS) -> IdealCell:
    """Combinations of morphisms n -> m acting as zero on the module."""
    theory, field = module.theory, module.field
    guards.check_cell(theory, m, n)
    homs = list(itertools.product(theory.elements(n), repeat=m))
    rows = []
    for g in homs:
        mat = module.action(g, n, m)
        flat = {i: c for i, c in
                enumerate(x for row in mat for x in row) if c != field.zero}
        rows.append(flat)
    width = module.dim(m) * module.dim(n)
    combos = nullspace(rows, width, field)
    span = make_span(field, len(homs))
    for combo in combos:
        span.insert(combo)
    return IdealCell(theory.name, m, n, field, span)


def direct_sum_modules(modules: list[FiniteModule]) -> FiniteModule:
    """Direct sum on a common arity range."""
    m0 = modules[0]
    ars = set(m0.arities())
    for mod in modules[1:]:
        ars &= set(mod.arities())
    dims = {n: sum(mod.dim(n) for mod in modules) for n in ars}
    field = m0.field

    def action(g, n, m):
        out = mat_zero(field, dims[m], dims[n])
        ro = co = 0
        for mod in modules:
            mat = mod.action(g, n, m)
            for i, row in enumerate(mat):
                for j, c in enumerate(row):
                    out[ro + i][co + j] = c
            ro += mod.dim(m)
            co += mod.dim(n)
        return out

    return FiniteModule(m0.theory, field, dims, action,
                        "(+)".join(mod.name for mod in modules))
