"""Standard small algebras and modules used by presets and tests."""

import numpy as np

from twistedreps.algebra.core import (
    Algebra,
    Bimodule,
    Module,
    free_module,
    quotient_module,
)
from twistedreps.linalg import Matrix


def ground_field(field):
    """``k`` itself, with basis ``[1]``."""
    return Algebra(field, [[[1]]], [1], labels=["1"], radical=[], name="k", check=False)


def truncated_polynomial(field, n):
    """``k[t]/(t^n)`` with basis ``1, t, ..., t^(n-1)``; radical ``(t)``."""
    c = np.zeros((n, n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            if i + j < n:
                c[i, j, i + j] = 1
    unit = [1] + [0] * (n - 1)
    rad = [[1 if k == i else 0 for k in range(n)] for i in range(1, n)]
    return Algebra(
        field, c, unit, labels=["1"] + [f"t^{i}" for i in range(1, n)], radical=rad,
        name=f"k[t]/t^{n}",
    )


def dual_numbers(field):
    return truncated_polynomial(field, 2)


def upper_triangular(field, n=2):
    """Upper triangular ``n x n`` matrices; basis ``E_ij`` (i <= j) in row order."""
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    index = {p: t for t, p in enumerate(pairs)}
    d = len(pairs)
    c = np.zeros((d, d, d), dtype=object)
    for s, (i, j) in enumerate(pairs):
        for t, (k, l) in enumerate(pairs):
            if j == k:
                c[s, t, index[(i, l)]] = 1
    unit = [1 if i == j else 0 for (i, j) in pairs]
    rad = [[1 if u == t else 0 for u in range(d)] for t, (i, j) in enumerate(pairs) if i < j]
    idems = [[1 if u == index[(i, i)] else 0 for u in range(d)] for i in range(n)]
    return Algebra(field, c, unit, labels=[f"E{i}{j}" for i, j in pairs], radical=rad,
                   name=f"T{n}", idempotents=idems)


def product_algebra(A, B):
    """``A x B`` with the basis of ``A`` followed by that of ``B``."""
    f = A.field
    d = A.dim + B.dim
    c = f.zeros((d, d, d))
    c[: A.dim, : A.dim, : A.dim] = A.structure
    c[A.dim :, A.dim :, A.dim :] = B.structure
    unit = list(A.unit.a[:, 0]) + list(B.unit.a[:, 0])
    rad = None
    if A.radical is not None and B.radical is not None:
        cols = [list(A.radical.a[:, t]) + [0] * B.dim for t in range(A.radical.cols)]
        cols += [[0] * A.dim + list(B.radical.a[:, t]) for t in range(B.radical.cols)]
        rad = cols
    idems = [list(e.a[:, 0]) + [0] * B.dim for e in A.idempotents]
    idems += [[0] * A.dim + list(e.a[:, 0]) for e in B.idempotents]
    return Algebra(f, c, unit, labels=A.labels + B.labels, radical=rad, name=f"{A.name}x{B.name}",
                   idempotents=idems)


def vector_space(k, n, label=None):
    """``k^n`` as a right module over the ground field ``k``."""
    return Module(k, [Matrix.identity(k.field, n)], label=label, check=False)


def simple_top(A):
    """``A / rad A`` as a right module (requires a declared radical)."""
    P = free_module(A, 1)
    if A.radical is None:
        raise ValueError("algebra has no declared radical")
    Q, _ = quotient_module(P, A.radical)
    return Q


def residue_field_module(A):
    """``k = A/(t)`` over a truncated polynomial algebra (1-dimensional, t acts by 0)."""
    return simple_top(A)


def matrix_bimodule(k, m, label=None):
    """``k^m`` as a ``k``-``k`` bimodule."""
    eye = [Matrix.identity(k.field, m)]
    return Bimodule(k, k, eye, eye, label=label, check=False)
