"""The adjoint pair ``- (x)_A N`` and ``Hom_B(N, -)`` for an ``A``-``B`` bimodule ``N``.

``M (x)_A N`` is computed as the cokernel of the balancing map
``x (x) a (x) n  |->  x a (x) n - x (x) a n`` on ``M (x)_k N`` (coordinates
``(x, n) -> x * N.dim + n``).  Because the cokernel is written in
non-pivot coordinates, the unit vectors at those coordinates form a
section and every basis element of the tensor product is the image of a
pure tensor of basis vectors.

``Hom_B(N, Y)`` is the kernel of the ``B``-linearity system, with right
``A`` action ``(f . a)(n) = f(a n)``.
"""

from __future__ import annotations

import numpy as np

from twistedreps.algebra.core import Bimodule, Module, hom_basis_matrix
from twistedreps.errors import AlgebraMismatch, DimensionMismatch
from twistedreps.linalg import Coordinates, Matrix, _cokernel, hstack, kron


class TensorProduct:
    """``M (x)_A N`` with its quotient map from ``M (x)_k N``.

    ``M`` may be a :class:`Module` over ``A`` or a :class:`Bimodule` whose
    right algebra is ``A``; in the latter case the result keeps the left
    structure and ``self.module`` is a :class:`Bimodule`.
    """

    def __init__(self, M, N):
        if isinstance(M, Bimodule):
            A = M.right
            m_right = M.right_action
        else:
            A = M.algebra
            m_right = M.action
        if A != N.left:
            raise AlgebraMismatch(f"tensor over {A.name} with a {N.left.name}-bimodule")
        f = N.field
        self.left_factor = M
        self.bimodule = N
        m, n = M.dim, N.dim
        self.m, self.n = m, n
        eye_m = Matrix.identity(f, m)
        eye_n = Matrix.identity(f, n)
        if m * n == 0:
            bal = Matrix.zeros(f, m * n, 0)
        else:
            bal = hstack(
                [
                    kron(Matrix(f, m_right[i]), eye_n) - kron(eye_m, N.lam(i))
                    for i in range(A.dim)
                ]
            )
        C, free = _cokernel(bal)
        self.proj = C
        self.free = free
        self.dim = len(free)
        right = [(C @ kron(eye_m, N.rho(j))).select_columns(free) for j in range(N.right.dim)]
        if not right:
            right = np.zeros((0, self.dim, self.dim))
        if isinstance(M, Bimodule):
            left = [
                (C @ kron(M.lam(i), eye_n)).select_columns(free) for i in range(M.left.dim)
            ]
            self.module = Bimodule(M.left, N.right, left, right, check=False)
        else:
            self.module = Module(N.right, right, check=False)

    @property
    def section(self):
        return Matrix.unit_columns(self.proj.field, self.m * self.n, self.free)

    def pure(self, x, y):
        """Coordinates of ``x (x) y`` for columns ``x`` in ``M`` and ``y`` in ``N``."""
        return self.proj @ kron(x, y)

    def preimage_index(self, t):
        """Basis element ``t`` is the class of ``e_x (x) e_n``; returns ``(x, n)``."""
        return divmod(self.free[t], self.n)

    def map_left(self, f, target):
        """``f (x) N : self -> target`` for a module map ``f`` of the left factors."""
        if target.bimodule is not self.bimodule and target.bimodule.dim != self.n:
            raise DimensionMismatch("tensor products with different bimodules")
        if f.shape != (target.m, self.m):
            raise DimensionMismatch(f"map {f.shape} for {self.m} -> {target.m}")
        eye_n = Matrix.identity(f.field, self.n)
        return (target.proj @ kron(f, eye_n)).select_columns(self.free)


def tensor_over(M, N):
    """``M (x)_A N`` as a :class:`TensorProduct` (use ``.module`` for the module)."""
    return TensorProduct(M, N)


def tensor_bimodules(N1, N2):
    """``N1 (x)_B N2`` for an ``A``-``B`` and a ``B``-``C`` bimodule."""
    return TensorProduct(N1, N2)


class HomModule:
    """``Hom_B(N, Y)`` as a right ``A``-module.

    Elements are coordinate columns with respect to ``basis``, whose columns
    are row-major vectorized ``Y.dim x N.dim`` matrices.
    """

    def __init__(self, N, Y):
        if N.right != Y.algebra:
            raise AlgebraMismatch(f"Hom from a {N.right.name}-module into a {Y.algebra.name}-module")
        f = N.field
        self.bimodule = N
        self.target = Y
        self.n, self.y = N.dim, Y.dim
        self.basis = hom_basis_matrix(N.right_module(), Y)
        self.coords = Coordinates(self.basis)
        self.dim = self.basis.cols
        eye_y = Matrix.identity(f, Y.dim)
        stack = []
        for i in range(N.left.dim):
            # vec(F lam) = (I_y (x) lam^T) vec F
            moved = kron(eye_y, N.lam(i).T) @ self.basis
            stack.append(self.coords(moved))
        if not stack:
            stack = np.zeros((0, self.dim, self.dim))
        self.module = Module(N.left, stack, check=False)

    def element(self, c):
        """The ``Y.dim x N.dim`` matrix of the element with coordinates ``c``."""
        v = self.basis @ c
        return Matrix(v.field, np.ascontiguousarray(v.a[:, 0].reshape(self.y, self.n)))

    def coordinates_of(self, F):
        return self.coords(Matrix(F.field, np.ascontiguousarray(F.a.reshape(-1, 1))))

    def map_right(self, g, target):
        """``Hom(N, g) : self -> target`` for a module map ``g : Y -> Y'``."""
        if g.shape != (target.y, self.y):
            raise DimensionMismatch(f"map {g.shape} for {self.y} -> {target.y}")
        eye_n = Matrix.identity(g.field, self.n)
        return target.coords(kron(g, eye_n) @ self.basis)


def hom_from(N, Y):
    """``Hom_B(N, Y)`` as a :class:`HomModule` (use ``.module`` for the module)."""
    return HomModule(N, Y)


def adjoint_flat_to_sharp(T, H, g):
    """``g : M (x) N -> Y``  |->  ``g# : M -> Hom_B(N, Y)`` (matrix ``H.dim x M.dim``)."""
    f = g.field
    m, n, y = T.m, T.n, H.y
    if g.shape != (y, T.dim):
        raise DimensionMismatch(f"map {g.shape} from a {T.dim}-dim tensor product into {y}")
    if m == 0:
        return Matrix.zeros(f, H.dim, 0)
    G = (g @ T.proj).a  # y x (m n)
    V = np.ascontiguousarray(G.reshape(y, m, n).transpose(1, 0, 2).reshape(m, y * n).T)
    return H.coords(Matrix(f, V))


def adjoint_sharp_to_flat(T, H, h):
    """Inverse of :func:`adjoint_flat_to_sharp`."""
    f = h.field
    m, n, y = T.m, T.n, H.y
    if h.shape != (H.dim, m):
        raise DimensionMismatch(f"map {h.shape} into a {H.dim}-dim Hom module")
    V = (H.basis @ h).a  # (y n) x m
    G = np.ascontiguousarray(V.T.reshape(m, y, n).transpose(1, 0, 2).reshape(y, m * n))
    return Matrix(f, G).select_columns(T.free)


def adjoint_transpose(T, H, g=None, *, sharp=None):
    """Either direction of ``Hom_B(M (x)_A N, Y) = Hom_A(M, Hom_B(N, Y))``."""
    if (g is None) == (sharp is None):
        raise ValueError("give exactly one of g (tensor form) or sharp (hom form)")
    if g is not None:
        return adjoint_flat_to_sharp(T, H, g)
    return adjoint_sharp_to_flat(T, H, sharp)


def counit(H):
    """Evaluation ``Hom_B(N, Y) (x)_A N -> Y`` as a matrix on the tensor product."""
    T = TensorProduct(H.module, H.bimodule)
    ident = Matrix.identity(H.basis.field, H.dim)
    return T, adjoint_sharp_to_flat(T, H, ident)


def unit(T):
    """Coevaluation ``M -> Hom_B(N, M (x)_A N)``."""
    H = HomModule(T.bimodule, T.module)
    return H, adjoint_flat_to_sharp(T, H, Matrix.identity(T.proj.field, T.dim))


class TensorFunctor:
    """``- (x)_A N : Mod-A -> Mod-B``."""

    kind = "psi"

    def __init__(self, N):
        self.bimodule = N
        self.source = N.left
        self.target = N.right

    def obj(self, M):
        return TensorProduct(M, self.bimodule)

    def mor(self, f, src, tgt):
        return src.map_left(f, tgt)


class HomFunctor:
    """``Hom_B(N, -) : Mod-B -> Mod-A``."""

    kind = "phi"

    def __init__(self, N):
        self.bimodule = N
        self.source = N.right
        self.target = N.left

    def obj(self, Y):
        return HomModule(self.bimodule, Y)

    def mor(self, g, src, tgt):
        return src.map_right(g, tgt)


def associator(M, N1, N2):
    """Explicit isomorphism ``(M (x) N1) (x) N2 -> M (x) (N1 (x) N2)``.

    Returns ``(left, right, matrix)`` where ``left``/``right`` are the two
    :class:`TensorProduct` objects.
    """
    T1 = TensorProduct(M, N1)
    left = TensorProduct(T1.module, N2)
    N12 = TensorProduct(N1, N2)
    right = TensorProduct(M, N12.module)
    f = N1.field
    cols = []
    for t in range(left.dim):
        s, n2 = left.preimage_index(t)
        x, n1 = T1.preimage_index(s)
        inner = N12.pure(Matrix.unit_columns(f, N1.dim, [n1]), Matrix.unit_columns(f, N2.dim, [n2]))
        cols.append(right.pure(Matrix.unit_columns(f, right.m, [x]), inner))
    mat = hstack(cols, field=f, rows=right.dim)
    return left, right, mat
