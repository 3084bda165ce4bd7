# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset-scan kernels.

Each constraint group is a pair ``(p, r)`` of bit masks: a subset ``s`` violates
it when ``s`` contains every bit of ``p`` but misses some bit of ``r``.
"""
from libc.stdint cimport uint64_t

import numpy as np


def count_closed(const uint64_t[::1] pairs, const uint64_t[::1] results,
                 uint64_t lo, uint64_t hi):
    cdef Py_ssize_t k, m = pairs.shape[0]
    cdef uint64_t s, p, r, total = 0
    cdef bint ok
    with nogil:
        s = lo
        while s < hi:
            ok = True
            for k in range(m):
                p = pairs[k]
                if (s & p) == p:
                    r = results[k]
                    if (s & r) != r:
                        ok = False
                        break
            if ok:
                total += 1
            s += 1
    return total


def closed_masks(const uint64_t[::1] pairs, const uint64_t[::1] results,
                 uint64_t lo, uint64_t hi):
    cdef Py_ssize_t k, m = pairs.shape[0], j = 0
    cdef uint64_t s, p, r
    cdef bint ok
    out = np.empty(hi - lo, dtype=np.uint64)
    cdef uint64_t[::1] buf = out
    with nogil:
        s = lo
        while s < hi:
            ok = True
            for k in range(m):
                p = pairs[k]
                if (s & p) == p:
                    r = results[k]
                    if (s & r) != r:
                        ok = False
                        break
            if ok:
                buf[j] = s
                j += 1
            s += 1
    return out[:j]
