"""Brute-force oracles over bounded enumerations.

These never call a family's ``_lcm``: common right multiples are found by
multiplying out ``s·x`` and ``t·y`` over a finite pool of cofactors and
intersecting the results.  A verdict is ``None`` when the pool is too small
to decide.
"""
from __future__ import annotations

from collections import Counter
from typing import Iterable

from genscale.kernel import Element, LcmOutcome, Monoid


def right_multiples(S: Monoid, s: Element, pool: Iterable[Element]) -> dict:
    return {S.multiply(s, x): x for x in pool}


def check_lcm(S: Monoid, s: Element, t: Element, outcome: LcmOutcome, pool: list[Element]) -> bool | None:
    """True if ``outcome`` is consistent with the enumeration, False on a
    definite contradiction, None if the pool cannot witness either way."""
    ms = right_multiples(S, s, pool)
    mt = right_multiples(S, t, pool)
    common = ms.keys() & mt.keys()
    if not outcome.is_meet:
        return False if common else None
    r = outcome.lcm
    if S.multiply(s, outcome.cofactor_left) != r or S.multiply(t, outcome.cofactor_right) != r:
        return False
    mr = right_multiples(S, r, pool)
    # every common multiple found must lie in rS
    if any(u not in mr for u in common):
        return _refine(S, r, common, pool)
    return True


def _refine(S: Monoid, r: Element, common: set, pool: list[Element]) -> bool | None:
    # a common multiple outside r·pool may still be in rS with a cofactor beyond
    # the pool; one more multiplication layer settles most of these cases
    layer = {S.multiply(S.multiply(r, x), y) for x in pool[:64] for y in pool[:64]}
    layer |= {S.multiply(r, x) for x in pool}
    missing = [u for u in common if u not in layer]
    return None if missing else True


def brute_intersects(S: Monoid, s: Element, t: Element, pool: list[Element]) -> bool:
    """s ⋒ t as witnessed inside the pool (False may mean 'not found')."""
    return bool(right_multiples(S, s, pool).keys() & right_multiples(S, t, pool).keys())


def brute_core_equivalent(S: Monoid, s: Element, t: Element, core_pool: list[Element]) -> bool:
    """∃ core a, b in the pool with s·a = t·b."""
    return bool(right_multiples(S, s, core_pool).keys() & right_multiples(S, t, core_pool).keys())


def brute_is_irreducible(S: Monoid, s: Element, pool: list[Element], core_pool: list[Element]) -> bool | None:
    """Definitional check: s noncore and s·a = t·r with a core forces t or r core.

    Returns False on a witness of reducibility, True when no witness exists in
    the pool.  Core-ness of s itself is read off ``S.is_core``.
    """
    if S.is_core(s):
        return False
    noncore = [x for x in pool if not S.is_core(x)]
    targets = {S.multiply(s, a) for a in core_pool}
    for t in noncore:
        for r in noncore:
            if S.multiply(t, r) in targets:
                return False
    return True


# -- N^x ---------------------------------------------------------------------


def products_upto(gens: list[int], bound: int) -> Counter:
    """Multiset count of factorizations n = g_1·…·g_k (as multisets of generators) for n ≤ bound."""
    counts: Counter = Counter({1: 1})
    for g in sorted(set(gens)):
        new = Counter()
        for n, c in counts.items():
            m = n
            while m <= bound:
                new[m] += c
                m *= g
        counts = new
    return counts


def brute_factorizations(n: int, gens: list[int]) -> list[tuple[int, ...]]:
    """Every multiset of generators (sorted tuple) multiplying to n."""
    gens = sorted(set(gens))
    out = []

    def rec(rest: int, start: int, acc: list[int]):
        if rest == 1:
            out.append(tuple(acc))
            return
        for i in range(start, len(gens)):
            g = gens[i]
            if rest % g == 0:
                acc.append(g)
                rec(rest // g, i, acc)
                acc.pop()

    rec(n, 0, [])
    return out

