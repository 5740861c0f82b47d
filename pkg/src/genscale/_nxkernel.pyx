# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sieve kernels over multiplicative subsemigroups of ℕ^×.

Mirrors ``_nxkernel_py``; the loops are the only hot paths in the package.
"""
from libc.math cimport pow


def product_counts(gens, Py_ssize_t bound, int saturate=2):
    cdef bytearray counts = bytearray(bound + 1)
    cdef unsigned char[:] c = counts
    cdef Py_ssize_t g, n, m, top
    cdef int v
    if bound >= 1:
        c[1] = 1
    for g in sorted(set(gens)):
        if g < 2:
            raise ValueError("generators must be at least 2")
        top = bound // g
        for n in range(1, top + 1):
            if c[n]:
                m = n * g
                v = c[m] + c[n]
                c[m] = saturate if v > saturate else v
    return counts


def first_collision(gens, Py_ssize_t bound):
    counts = product_counts(gens, bound)
    idx = counts.find(2)
    return idx if idx >= 0 else 0


def membership(gens, Py_ssize_t bound):
    cdef bytearray member = bytearray(bound + 1)
    cdef unsigned char[:] mb = member
    cdef Py_ssize_t g, n, top
    if bound >= 1:
        mb[1] = 1
    for g in sorted(set(gens)):
        top = bound // g
        for n in range(1, top + 1):
            if mb[n]:
                mb[n * g] = 1
    return member


def zeta_sum(gens, double beta, Py_ssize_t cutoff):
    member = membership(gens, cutoff)
    cdef unsigned char[:] mb = member
    cdef double e = 1.0 - beta
    cdef double total = 0.0, comp = 0.0, y, t
    cdef Py_ssize_t n
    # Kahan summation keeps agreement with math.fsum in the fallback
    for n in range(1, cutoff + 1):
        if mb[n]:
            y = pow(<double>n, e) - comp
            t = total + y
            comp = (t - total) - y
            total = t
    return total
