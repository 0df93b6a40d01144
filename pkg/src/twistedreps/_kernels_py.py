"""Pure-Python (numpy) versions of the compiled kernels in ``_kernels.pyx``.

Same signatures and in-place semantics; used when the extension is not
built or when ``TWISTEDREPS_PURE=1`` is set.
"""

import numpy as np


def rref_modp(a, p, ncols=-1):
    m, n = a.shape
    if ncols < 0 or ncols > n:
        ncols = n
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv], c:] = a[[piv, r], c:]
        inv = pow(int(a[r, c]), -1, int(p))
        if inv != 1:
            a[r, c:] = a[r, c:] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[rows, c:] = (a[rows, c:] - np.outer(col[rows], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return pivots


def matmul_modp(a, b, p):
    return (a @ b) % p
