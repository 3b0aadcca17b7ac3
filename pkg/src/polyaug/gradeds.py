"""Closed-form graded ranks of augmentation filtrations.

For products of free nilpotent groups the graded pieces Aug^d/Aug^(d+1) of
the integral group ring are free abelian with ranks given by the symmetric
power of the lower-central Lie ring (Sandling-Tahara); over a field of
characteristic p they are the restricted enveloping algebra of the Jennings
Lie algebra (Quillen).  Both reduce rank questions to generating-function
coefficient extraction, which is how infinite base categories are compared
here: degreewise rank agreement within explicit caps, never hom enumeration.

A value of ``c = None`` (or any c >= the series cap) encodes class infinity,
i.e. the free group itself; degrees above the cap never influence lower
coefficients, so truncating the Lie ranks at the cap is exact.
"""

from __future__ import annotations

import math

from .exactla import series_expand
from .fields import is_prime
from .freegroup import witt_rank

GradedRanks = list  # degree-indexed ranks r_1..r_C (index 0 = degree 1)


def _cap_class(c, cap: int) -> int:
    if c is None or c == math.inf:
        return cap
    c = int(c)
    if c < 1:
        raise ValueError("class must be >= 1 (or None for infinity)")
    return min(c, cap)


def free_nilpotent_lie_ranks(n: int, c: int, cap: int | None = None) -> GradedRanks:
    """Ranks of the lower-central factors of the free class-c nilpotent
    group on n generators: Witt numbers through degree c, zero above."""
    if cap is None and (c is None or c == math.inf):
        raise ValueError("class infinity needs an explicit cap")
    top = int(c) if cap is None else cap
    c_eff = _cap_class(c, top)
    return [witt_rank(n, i) if i <= c_eff else 0 for i in range(1, top + 1)]


def product_scale(ranks: GradedRanks, m: int) -> GradedRanks:
    """Lie ranks of an m-fold direct product: entrywise scaling."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return [m * r for r in ranks]


def symmetric_power_dims(ranks: GradedRanks, cap: int) -> list[int]:
    """Graded ranks of the symmetric algebra on a graded free abelian group
    with the given ranks: coefficients of prod_i (1 - t^i)^(-r_i)."""
    factors = [(i + 1, r) for i, r in enumerate(ranks) if r]
    return series_expand(factors, cap)


def q_ranks_nilpotent(n: int, m: int, c, cap: int) -> list[int]:
    """Ranks of Aug^d/Aug^(d+1) of the integral group ring of the m-fold
    product of free class-c nilpotent groups on n generators, d <= cap."""
    ranks = product_scale(free_nilpotent_lie_ranks(n, c, cap), m)
    return symmetric_power_dims(ranks, cap)


def free_restricted_lie_dims(n: int, p: int, cap: int) -> GradedRanks:
    """Jennings factor dimensions of the free group on n generators at the
    prime p: dim at degree d = sum of witt_rank(n, i) over i * p^j = d."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return [_jennings_dim(n, d, p, None) for d in range(1, cap + 1)]


def nilpotent_jennings_dims(n: int, c, p: int, cap: int) -> GradedRanks:
    """Jennings factor dimensions of the free class-c nilpotent group on n
    generators: only basic commutators of weight i <= c survive, so the sum
    runs over i * p^j = d with i <= c."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    c_eff = None if c is None or c == math.inf else int(c)
    return [_jennings_dim(n, d, p, c_eff) for d in range(1, cap + 1)]


def dim_quotient_jennings_dims(n: int, c, p: int, cap: int) -> GradedRanks:
    """Jennings factor dimensions of the class-c mod-p dimension quotient of
    the free group: the free dimensions through degree c, zero above."""
    free = free_restricted_lie_dims(n, p, cap)
    c_eff = _cap_class(c, cap)
    return [r if d + 1 <= c_eff else 0 for d, r in enumerate(free)]


def _jennings_dim(n: int, d: int, p: int, c_max) -> int:
    total = 0
    i = d
    while i >= 1:
        if d % i == 0:
            q = d // i
            if _is_power_of(q, p) and (c_max is None or i <= c_max):
                total += witt_rank(n, i)
        i -= 1
    return total


def _is_power_of(q: int, p: int) -> bool:
    while q % p == 0:
        q //= p
    return q == 1


def restricted_pbw_dims(ranks: GradedRanks, p: int, cap: int) -> list[int]:
    """Graded dimensions of the p-restricted enveloping algebra of a graded
    restricted Lie algebra with the given dims: coefficients of
    prod_i ((1 - t^(i p)) / (1 - t^i))^(r_i); p = 0 gives the symmetric case.
    For finite total dimension at p > 0 the coefficients sum to p^(sum r_i).
    """
    if p == 0:
        return symmetric_power_dims(ranks, cap)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    factors = []
    for i, r in enumerate(ranks):
        if r:
            factors.append((i + 1, r))          # divide by (1-t^i)^r
            factors.append(((i + 1) * p, -r))   # multiply by (1-t^(ip))^r
    return series_expand(factors, cap)


# -- graded-rank comparison across a base change ------------------------------

def _side_series(setting: str, side: str, n: int, m: int, params: dict,
                 cap: int) -> list[int]:
    if setting == "nilpotent":
        c = params["c1"] if side == "source" else params["c0"]
        return q_ranks_nilpotent(n, m, c, cap)
    if setting == "dim":
        p = params["p"]
        if p == 0:
            return _side_series("nilpotent", side, n, m, params, cap)
        c = params["c1"] if side == "source" else params["c0"]
        ranks = product_scale(dim_quotient_jennings_dims(n, c, p, cap), m)
        return restricted_pbw_dims(ranks, p, cap)
    if setting == "nil-to-dim":
        p, c0 = params["p"], params["c0"]
        if p == 0:
            # mod-0 dimension quotients coincide with the nilpotent tower
            return q_ranks_nilpotent(n, m, c0, cap)
        if side == "source":
            ranks = product_scale(nilpotent_jennings_dims(n, c0, p, cap), m)
        else:
            ranks = product_scale(dim_quotient_jennings_dims(n, c0, p, cap), m)
        return restricted_pbw_dims(ranks, p, cap)
    raise ValueError(f"unknown setting {setting!r}")


def gamma_interval(setting: str, params: dict, caps: dict) -> dict:
    """Degrees (within caps) at which source and target graded ranks agree
    for every n <= n_max, m <= m_max, reported as the maximal interval of
    consecutive integers starting at 0 together with the first witness of
    failure.  Membership above the caps is only *consistent with* the data,
    never certified; the report carries the caps verbatim.

    Settings: ``nilpotent`` (params c0 < c1, classes with None = infinity),
    ``dim`` (c0 < c1 at prime p), ``nil-to-dim`` (c0 at prime p).
    """
    n_max, m_max, cap = caps["n_max"], caps["m_max"], caps["D"]
    _check_params(setting, params)
    per_degree = []
    witness = None
    interval = []
    broken = False
    for d in range(cap + 1):
        agree = True
        wit = None
        for n in range(1, n_max + 1):
            for m in range(1, m_max + 1):
                src = _side_series(setting, "source", n, m, params, cap)
                tgt = _side_series(setting, "target", n, m, params, cap)
                if src[d] != tgt[d]:
                    agree = False
                    wit = {"n": n, "m": m, "d": d,
                           "source_rank": src[d], "target_rank": tgt[d]}
                    break
            if not agree:
                break
        per_degree.append({"d": d, "agree": agree,
                           **({"witness": wit} if wit else {})})
        if agree and not broken:
            interval.append(d)
        if not agree:
            broken = True
            if witness is None:
                witness = wit
    return {"setting": setting, "params": dict(params), "caps": dict(caps),
            "perDegree": per_degree, "interval": interval,
            "witness": witness,
            "note": "agreement certified within caps only"}


def _check_params(setting: str, params: dict):
    if setting in ("nilpotent", "dim"):
        c0, c1 = params["c0"], params["c1"]
        v0 = math.inf if c0 is None else c0
        v1 = math.inf if c1 is None else c1
        if not v0 < v1:
            raise ValueError("need c0 < c1")
    if setting in ("dim", "nil-to-dim"):
        p = params["p"]
        if p != 0 and not is_prime(p):
            raise ValueError(f"{p} is not prime")


def strictness_from_ranks(series: list[int], cap: int) -> list[dict]:
    """Degrees realized by one rank sequence: degree d is realized exactly
    when the rank at d is positive (degree 0 carries the constants, so a
    well-formed sequence starts with 1).  The all-but-constant-degenerate
    sequence [1, 0, 0, ...] is realized only at 0."""
    out = []
    for d in range(cap + 1):
        r = series[d] if d < len(series) else 0
        out.append({"d": d, "strict": r > 0, "rank": r})
    return out


def dset_probe(setting: str, params: dict, caps: dict) -> dict:
    """For each degree d <= D, does some (n, m) within caps have a strictly
    positive graded rank at degree d + 1?  A positive rank certifies that
    polynomial functors of degree exactly d + 1 exist on the corresponding
    base category (strict filtration step); within caps only.

    Settings: ``nilpotent`` (params c) and ``dim`` (params c, p).
    """
    n_max, m_max, cap = caps["n_max"], caps["m_max"], caps["D"]
    per_degree = []
    for d in range(cap + 1):
        found = None
        for n in range(1, n_max + 1):
            for m in range(1, m_max + 1):
                if setting == "nilpotent":
                    series = q_ranks_nilpotent(n, m, params["c"], cap + 1)
                elif setting == "dim":
                    p = params["p"]
                    if p == 0:
                        series = q_ranks_nilpotent(n, m, params["c"], cap + 1)
                    else:
                        ranks = product_scale(
                            dim_quotient_jennings_dims(n, params["c"], p, cap + 1), m)
                        series = restricted_pbw_dims(ranks, p, cap + 1)
                else:
                    raise ValueError(f"unknown setting {setting!r}")
                if series[d + 1] > 0:
                    found = {"n": n, "m": m, "rank_next": series[d + 1]}
                    break
            if found:
                break
        per_degree.append({"d": d, "strict": found is not None,
                           **({"witness": found} if found else {})})
    return {"setting": setting, "params": dict(params), "caps": dict(caps),
            "perDegree": per_degree,
            "strict_all": all(e["strict"] for e in per_degree)}
