# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled row reduction over prime fields.

Entries are int64 residues in [0, p) with p < 2**24, so every product
fits comfortably in 64 bits.
"""

from libc.stdint cimport int64_t


cdef inline int64_t _inverse(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_modp(int64_t[:, ::1] a, int64_t p, Py_ssize_t ncols=-1):
    """Reduce ``a`` in place to reduced row echelon form mod ``p``.

    Pivots are searched only in the first ``ncols`` columns (all columns
    when negative); row operations always span the full width.
    Returns the list of pivot columns.
    """
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, tmp
    cdef list pivots = []
    if ncols < 0 or ncols > n:
        ncols = n
    for c in range(ncols):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        with nogil:
            if piv != r:
                for j in range(c, n):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            inv = _inverse(a[r, c], p)
            if inv != 1:
                for j in range(c, n):
                    a[r, j] = (a[r, j] * inv) % p
            for i in range(m):
                if i == r:
                    continue
                f = a[i, c]
                if f == 0:
                    continue
                f = p - f
                for j in range(c, n):
                    if a[r, j] != 0:
                        a[i, j] = (a[i, j] + f * a[r, j]) % p
        pivots.append(c)
        r += 1
    return pivots


def matmul_modp(const int64_t[:, ::1] a, const int64_t[:, ::1] b, int64_t p):
    """Return ``a @ b mod p`` as a new int64 array."""
    import numpy as np
    cdef Py_ssize_t m = a.shape[0], k = a.shape[1], n = b.shape[1]
    out = np.zeros((m, n), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    cdef Py_ssize_t i, j, t
    cdef int64_t x
    with nogil:
        for i in range(m):
            for t in range(k):
                x = a[i, t]
                if x == 0:
                    continue
                for j in range(n):
                    o[i, j] += x * b[t, j]
            # p < 2**24 and k modest: reduce once per row is overflow-safe
            # only while k * p**2 < 2**63, i.e. k < 2**15.
            for j in range(n):
                o[i, j] %= p
    return out
