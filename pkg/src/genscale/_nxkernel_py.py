"""Pure-Python sieve kernels over multiplicative subsemigroups of ℕ^×.

Same signatures as the compiled ``_nxkernel`` module; selected by
:mod:`genscale.nx` when the extension is unavailable.
"""
from __future__ import annotations

import math


def product_counts(gens, bound: int, saturate: int = 2) -> bytearray:
    """counts[n] = number of multisets of gens with product n, capped at ``saturate``."""
    counts = bytearray(bound + 1)
    if bound >= 1:
        counts[1] = 1
    for g in sorted(set(gens)):
        if g < 2:
            raise ValueError("generators must be at least 2")
        # ascending n lets g be used repeatedly (unbounded multiplicative knapsack)
        for n in range(1, bound // g + 1):
            c = counts[n]
            if c:
                m = n * g
                counts[m] = min(saturate, counts[m] + c)
    return counts


def first_collision(gens, bound: int) -> int:
    """Smallest n ≤ bound with two distinct generator multisets of product n, else 0."""
    counts = product_counts(gens, bound)
    idx = counts.find(2)
    return idx if idx >= 0 else 0


def membership(gens, bound: int) -> bytearray:
    member = bytearray(bound + 1)
    if bound >= 1:
        member[1] = 1
    for g in sorted(set(gens)):
        for n in range(1, bound // g + 1):
            if member[n]:
                member[n * g] = 1
    return member


def zeta_sum(gens, beta: float, cutoff: int) -> float:
    """Σ n^{1-β} over the distinct n ≤ cutoff in the subsemigroup generated by gens."""
    member = membership(gens, cutoff)
    e = 1.0 - beta
    return math.fsum(n**e for n in range(1, cutoff + 1) if member[n])
