"""Exact matrices over the rationals or a prime field.

Every matrix carries its :class:`Field`.  Prime-field matrices with a small
modulus are stored as ``int64`` residue arrays and reduced by the compiled
kernel in :mod:`twistedreps._kernels` (or its numpy twin when the extension
is unavailable); rational matrices and large primes use ``object`` arrays
of :class:`fractions.Fraction` / ``int``.  Nothing here ever touches a float.

Basis conventions are fixed so that results are reproducible:

* ``rref`` is the usual reduced row echelon form with leftmost pivots;
* ``kernel_basis`` has one column per free column, with a 1 in that
  position and zeros in the other free positions;
* ``solve`` sets free variables to zero;
* ``cokernel_projection`` expresses the quotient in the coordinates that are
  *not* pivots of the row-reduced column space;
* ``kron`` indexes ``(i, j)`` as ``i * b.rows + j`` (row-major).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from twistedreps.errors import DimensionMismatch, FieldMismatch

if os.environ.get("TWISTEDREPS_PURE"):
    from twistedreps import _kernels_py as _kern

    BACKEND = "python"
else:
    try:
        from twistedreps import _kernels as _kern

        BACKEND = "cython"
    except ImportError:  # extension not built
        from twistedreps import _kernels_py as _kern

        BACKEND = "python"

# int64 storage is safe while inner dimension * p**2 < 2**63.
_SMALL_PRIME_LIMIT = 1 << 24


def _is_prime(n):
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p == 0``) or the prime field of order ``p``."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_rational(self):
        return self.p == 0

    @property
    def uses_int64(self):
        return 0 < self.p < _SMALL_PRIME_LIMIT

    @property
    def dtype(self):
        return np.int64 if self.uses_int64 else object

    def __str__(self):
        return "Q" if self.p == 0 else f"F{self.p}"

    # -- scalars -----------------------------------------------------------
    def __call__(self, x):
        """Canonical representative of ``x`` (int, Fraction or "a/b" string)."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def neg(self, x):
        return -x if self.p == 0 else (-int(x)) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def to_json(self, x):
        if self.p == 0:
            x = Fraction(x)
            return f"{x.numerator}/{x.denominator}"
        return int(x)

    # -- arrays ------------------------------------------------------------
    def array(self, data, shape=None):
        """Normalized ndarray from nested sequences (or another array)."""
        if self.uses_int64:
            arr = np.array(data, dtype=object)
            if shape is not None:
                arr = arr.reshape(shape)
            out = np.empty(arr.shape, dtype=np.int64)
            flat = out.reshape(-1)
            for t, x in enumerate(arr.reshape(-1)):
                flat[t] = self(x)
            return out
        arr = np.array(data, dtype=object)
        if shape is not None:
            arr = arr.reshape(shape)
        out = np.empty(arr.shape, dtype=object)
        flat = out.reshape(-1)
        for t, x in enumerate(arr.reshape(-1)):
            flat[t] = self(x)
        return out

    def reduce(self, arr):
        """Bring an array produced by ring arithmetic back to canonical form."""
        if self.p == 0:
            return arr
        if self.uses_int64:
            return np.mod(arr, self.p)
        return np.mod(arr, self.p).astype(object)

    def zeros(self, shape):
        if self.uses_int64:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0) if self.p == 0 else 0)
        return out

    def random_array(self, rng, shape, low=-3, high=3):
        """Uniform residues (prime field) or small integers (rationals)."""
        n = int(np.prod(shape)) if shape else 1
        if self.p:
            vals = [rng.randrange(self.p) for _ in range(n)]
        else:
            vals = [rng.randint(low, high) for _ in range(n)]
        return self.array(vals, shape=shape)


QQ = Field(0)


def GF(p):
    return Field(p)


class Matrix:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("field", "a")

    def __init__(self, field, a, *, normalized=True):
        if not normalized:
            a = field.array(a)
        a = np.asarray(a)
        if a.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d array, got shape {a.shape}")
        if a.dtype != field.dtype:
            a = field.array(a)
        a.flags.writeable = False
        self.field = field
        self.a = a

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_rows(cls, field, rows, ncols=None):
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zeros(field, 0, ncols or 0)
        return cls(field, field.array(rows))

    @classmethod
    def zeros(cls, field, m, n):
        return cls(field, field.zeros((m, n)))

    @classmethod
    def identity(cls, field, n):
        z = field.zeros((n, n))
        one = field(1)
        for i in range(n):
            z[i, i] = one
        return cls(field, z)

    @classmethod
    def column(cls, field, entries):
        entries = list(entries)
        return cls(field, field.array(entries, shape=(len(entries), 1)))

    @classmethod
    def unit_columns(cls, field, n, indices):
        z = field.zeros((n, len(indices)))
        one = field(1)
        for t, i in enumerate(indices):
            z[i, t] = one
        return cls(field, z)

    # -- basics ------------------------------------------------------------
    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    def __repr__(self):
        return f"Matrix<{self.field}>({self.tolist()})"

    def tolist(self):
        return [[self.field.to_json(x) for x in row] for row in self.a]

    def _same(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self.a == other.a))
        )

    __hash__ = None

    def is_zero(self):
        return not np.any(self.a != 0)

    def __getitem__(self, key):
        sub = self.a[key]
        if sub.ndim != 2:
            raise IndexError("matrix indexing must keep two dimensions")
        return Matrix(self.field, sub)

    def col(self, j):
        return Matrix(self.field, self.a[:, j : j + 1])

    def select_columns(self, idx):
        return Matrix(self.field, self.a[:, list(idx)])

    def select_rows(self, idx):
        return Matrix(self.field, self.a[list(idx), :])

    # -- arithmetic --------------------------------------------------------
    def __matmul__(self, other):
        self._same(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        f = self.field
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return Matrix.zeros(f, self.rows, other.cols)
        if f.uses_int64:
            return Matrix(
                f,
                _kern.matmul_modp(
                    np.ascontiguousarray(self.a), np.ascontiguousarray(other.a), f.p
                ),
            )
        return Matrix(f, f.reduce(self.a @ other.a))

    def __add__(self, other):
        self._same(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix(self.field, self.field.reduce(self.a + other.a))

    def __sub__(self, other):
        self._same(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Matrix(self.field, self.field.reduce(self.a - other.a))

    def __neg__(self):
        return Matrix(self.field, self.field.reduce(-self.a))

    def scale(self, c):
        c = self.field(c)
        return Matrix(self.field, self.field.reduce(self.a * c))

    @property
    def T(self):
        return Matrix(self.field, np.ascontiguousarray(self.a.T))

    def rank(self):
        return rref(self)[2]


def _check_fields(mats):
    fields = {m.field for m in mats}
    if len(fields) > 1:
        raise FieldMismatch(", ".join(sorted(str(f) for f in fields)))


def hstack(mats, field=None, rows=None):
    mats = list(mats)
    if not mats:
        return Matrix.zeros(field, rows or 0, 0)
    _check_fields(mats)
    if len({m.rows for m in mats}) > 1:
        raise DimensionMismatch("hstack with differing row counts")
    return Matrix(mats[0].field, np.hstack([m.a for m in mats]))


def vstack(mats, field=None, cols=None):
    mats = list(mats)
    if not mats:
        return Matrix.zeros(field, 0, cols or 0)
    _check_fields(mats)
    if len({m.cols for m in mats}) > 1:
        raise DimensionMismatch("vstack with differing column counts")
    return Matrix(mats[0].field, np.vstack([m.a for m in mats]))


def block_diag(mats, field=None):
    mats = list(mats)
    if not mats:
        return Matrix.zeros(field, 0, 0)
    _check_fields(mats)
    f = mats[0].field
    out = f.zeros((sum(m.rows for m in mats), sum(m.cols for m in mats)))
    r = c = 0
    for m in mats:
        out[r : r + m.rows, c : c + m.cols] = m.a
        r += m.rows
        c += m.cols
    return Matrix(f, out)


def linear_combination(coeffs, mats, shape, field):
    """``sum(c * m)`` for scalars ``coeffs`` and equally-shaped ``mats``."""
    out = field.zeros(shape)
    for c, m in zip(coeffs, mats):
        if c != 0:
            out = out + m.a * c
    return Matrix(field, field.reduce(out))


def kron(a, b):
    """Kronecker product; row ``(i, k)`` of the result is ``i * b.rows + k``."""
    a._same(b)
    f = a.field
    if f.uses_int64:
        return Matrix(f, np.kron(a.a, b.a) % f.p)
    return Matrix(f, f.reduce(np.kron(a.a, b.a)))


# -- row reduction -----------------------------------------------------------


def _rref_array(arr, field, ncols=-1):
    """Row-reduce an owned, writable array in place; return pivots."""
    if field.uses_int64:
        return list(_kern.rref_modp(arr, field.p, ncols))
    return _rref_object(arr, field, ncols)


def _rref_object(a, field, ncols=-1):
    m, n = a.shape
    if ncols < 0 or ncols > n:
        ncols = n
    p = field.p
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[[r, piv], c:] = a[[piv, r], c:]
        inv = field.inv(a[r, c])
        a[r, c:] = a[r, c:] * inv
        if p:
            a[r, c:] = np.mod(a[r, c:], p)
        for i in range(m):
            if i != r and a[i, c] != 0:
                a[i, c:] = a[i, c:] - a[i, c] * a[r, c:]
                if p:
                    a[i, c:] = np.mod(a[i, c:], p)
        pivots.append(c)
        r += 1
    return pivots


def _owned(m):
    return np.array(m.a, dtype=m.field.dtype, order="C", copy=True)


def rref(m):
    """Return ``(R, pivot_columns, rank)`` with ``R`` in reduced row echelon form."""
    arr = _owned(m)
    piv = _rref_array(arr, m.field)
    return Matrix(m.field, arr), piv, len(piv)


def rank(m):
    return rref(m)[2]


def kernel_basis(m):
    """Columns spanning ``{x : m x = 0}`` (one per free column, in order)."""
    f = m.field
    R, piv, r = rref(m)
    n = m.cols
    free = [j for j in range(n) if j not in set(piv)]
    out = f.zeros((n, len(free)))
    one = f(1)
    for t, j in enumerate(free):
        out[j, t] = one
        for row, pc in enumerate(piv):
            if R.a[row, j] != 0:
                out[pc, t] = f.neg(R.a[row, j])
    return Matrix(f, out)


def solve(A, b):
    """Particular solution of ``A X = b`` with free variables zero, or ``None``."""
    A._same(b)
    if A.rows != b.rows:
        raise DimensionMismatch(f"solve: {A.shape} vs {b.shape}")
    f = A.field
    n, k = A.cols, b.cols
    aug = np.hstack([A.a, b.a]).astype(f.dtype)
    aug = np.ascontiguousarray(aug)
    piv = _rref_array(aug, f, ncols=n)
    r = len(piv)
    if r < aug.shape[0] and np.any(aug[r:, n:] != 0):
        return None
    out = f.zeros((n, k))
    for row, pc in enumerate(piv):
        out[pc, :] = aug[row, n:]
    return Matrix(f, out)


def column_space_data(m):
    """Row-reduced basis of the column space: ``(R, pivots)`` of ``rref(m.T)``."""
    R, piv, r = rref(m.T)
    return R[:r, :], piv


def cokernel_projection(m):
    """Surjection ``C`` with ``C m = 0`` onto ``F^rows / col(m)``.

    The quotient is written in the coordinates that are not pivots of the
    row-reduced column space, so ``C`` restricted to those coordinates is the
    identity.
    """
    return _cokernel(m)[0]


def _cokernel(m):
    """``(C, free)`` where the unit vectors at ``free`` form a section of ``C``."""
    f = m.field
    n = m.rows
    R, piv = column_space_data(m)
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    C = f.zeros((len(free), n))
    one = f(1)
    for t, j in enumerate(free):
        C[t, j] = one
        for k, pc in enumerate(piv):
            if R.a[k, j] != 0:
                C[t, pc] = f.neg(R.a[k, j])
    return Matrix(f, C), free


def image_basis(m):
    """Linearly independent columns of ``m`` spanning its image (pivot columns)."""
    _, piv, _ = rref(m)
    return m.select_columns(piv)


def independent_columns(m):
    return rref(m)[1]


def inverse(m):
    if m.rows != m.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    x = solve(m, Matrix.identity(m.field, m.rows))
    if x is None or m.rank() != m.rows:
        raise ZeroDivisionError("singular matrix")
    return x


class Coordinates:
    """Coordinates with respect to a basis given by independent columns.

    ``coords(v)`` returns ``c`` with ``basis @ c == v``; with ``check`` it
    raises ``ValueError`` when a column of ``v`` is outside the span.
    """

    def __init__(self, basis):
        self.basis = basis
        self.field = basis.field
        n, r = basis.shape
        if r == 0:
            self.rows_sel = []
            self.inv = Matrix.zeros(basis.field, 0, 0)
            return
        # rank(basis) == r; choose r independent rows and invert that block
        _, piv, rk = rref(basis.T)
        if rk != r:
            raise ValueError("basis columns are dependent")
        self.rows_sel = piv
        self.inv = inverse(basis.select_rows(piv))

    def __call__(self, v, check=True):
        r = self.basis.cols
        if r == 0:
            c = Matrix.zeros(self.field, 0, v.cols)
        else:
            c = self.inv @ v.select_rows(self.rows_sel)
        if check and not (self.basis @ c) == v:
            raise ValueError("vector not in the span of the basis")
        return c

    def contains(self, v):
        try:
            self(v, check=True)
        except ValueError:
            return False
        return True


def random_matrix(field, rng, m, n):
    return Matrix(field, field.random_array(rng, (m, n)))
