"""Finite-dimensional algebras, right modules, bimodules and their morphisms.

Conventions (fixed once, used everywhere):

* An algebra ``A`` has basis ``b_0..b_{d-1}`` and structure constants
  ``c[i, j, k]`` with ``b_i b_j = sum_k c[i, j, k] b_k``.
* Modules are *right* modules.  Elements are column vectors and the action
  matrix ``rho(b)`` sends ``x`` to ``x . b``, so
  ``rho(b_j) rho(b_i) = sum_k c[i, j, k] rho(b_k)``.
* A bimodule ``N`` over ``A``-``B`` has a left ``A`` action ``lam`` with
  ``lam(a_i) lam(a_j) = sum_k c[i, j, k] lam(a_k)`` commuting with a right
  ``B`` action.  A left ``A``-module is the same data as a right module over
  ``A.opposite()``.
* A morphism ``M -> N`` is a ``N.dim x M.dim`` matrix ``F`` with
  ``F rho_M(b) = rho_N(b) F``.
"""

from __future__ import annotations

import numpy as np

from twistedreps.errors import AlgebraMismatch, DimensionMismatch, LawViolation
from twistedreps.linalg import (
    Coordinates,
    Matrix,
    block_diag,
    column_space_data,
    hstack,
    kernel_basis,
    kron,
    rref,
    solve,
)


def _as_stack(field, mats, n=None):
    """Normalize a list of square matrices into a ``(d, n, n)`` array."""
    if isinstance(mats, np.ndarray) and mats.ndim == 3:
        arr = mats if mats.dtype == field.dtype else field.array(mats)
        return arr
    mats = [m.a if isinstance(m, Matrix) else field.array(m) for m in mats]
    if not mats:
        return field.zeros((0, n or 0, n or 0))
    return np.stack(mats).astype(field.dtype)


def _combine(field, coeffs, stack):
    """``sum_i coeffs[i] * stack[i]`` reduced into the field."""
    coeffs = np.asarray(coeffs, dtype=field.dtype)
    if stack.shape[0] == 0:
        return Matrix(field, field.zeros(stack.shape[1:]))
    out = np.tensordot(coeffs, stack, axes=([0], [0]))
    return Matrix(field, field.reduce(out))


def _law_holds(field, struct, stack, left):
    """Check the action law for ``stack`` against structure constants."""
    d = struct.shape[0]
    for i in range(d):
        for j in range(d):
            lhs = (
                Matrix(field, stack[i]) @ Matrix(field, stack[j])
                if left
                else Matrix(field, stack[j]) @ Matrix(field, stack[i])
            )
            rhs = _combine(field, struct[i, j, :], stack)
            if not lhs == rhs:
                return False, (i, j)
    return True, None


class Algebra:
    """Associative unital algebra given by structure constants."""

    def __init__(
        self, field, structure, unit, labels=None, radical=None, name=None, check=True,
        idempotents=None,
    ):
        self.field = field
        c = field.array(structure)
        d = c.shape[0] if c.ndim == 3 else 0
        if c.ndim != 3 or c.shape != (d, d, d):
            raise DimensionMismatch(f"structure constants must be d x d x d, got {c.shape}")
        c.flags.writeable = False
        self.structure = c
        self.dim = d
        self.unit = Matrix(field, field.array(list(unit), shape=(d, 1)))
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(d)]
        self.name = name or f"algebra{d}"
        # right regular action: R_j[k, i] = c[i, j, k]
        self._right = np.ascontiguousarray(np.transpose(c, (1, 2, 0)))
        # left regular action: L_i[k, j] = c[i, j, k]
        self._left = np.ascontiguousarray(np.transpose(c, (0, 2, 1)))
        self.radical = None
        if radical is not None:
            rad = radical if isinstance(radical, Matrix) else _columns(field, radical, d)
            self.radical = rad
        # complete set of orthogonal idempotents; projective covers use e A
        if idempotents is None:
            self.idempotents = [self.unit]
        else:
            self.idempotents = [
                e if isinstance(e, Matrix) else Matrix(field, field.array(list(e), shape=(d, 1)))
                for e in idempotents
            ]
        self._summands = {}
        self._opposite = None
        self._key = None
        self._auto_radical = False
        if check:
            self.check()

    def __repr__(self):
        return f"Algebra({self.name!r}, dim={self.dim}, field={self.field})"

    # -- identity ------------------------------------------------------------
    @property
    def key(self):
        if self._key is None:
            self._key = (
                self.field,
                tuple(self.field.to_json(x) for x in self.structure.reshape(-1)),
                tuple(self.field.to_json(x) for x in self.unit.a.reshape(-1)),
            )
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.dim == other.dim and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    # -- structure -----------------------------------------------------------
    def right_regular(self):
        return self._right

    def left_regular(self):
        return self._left

    def element(self, coeffs):
        return Matrix(self.field, self.field.array(list(coeffs), shape=(self.dim, 1)))

    def basis_element(self, i):
        return Matrix.unit_columns(self.field, self.dim, [i])

    def mul(self, x, y):
        """Product ``x y`` of two algebra elements given as columns."""
        return _combine(self.field, y.a[:, 0], self._right) @ x

    def opposite(self):
        if self._opposite is None:
            c = np.ascontiguousarray(np.transpose(self.structure, (1, 0, 2)))
            op = Algebra(
                self.field,
                c,
                self.unit.a[:, 0],
                labels=self.labels,
                radical=self.radical,
                name=f"{self.name}^op",
                check=False,
                idempotents=self.idempotents,
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def effective_radical(self):
        """Declared radical, else the trace-form radical when that is valid."""
        if self.radical is not None:
            return self.radical
        if self._auto_radical is False:
            self._auto_radical = trace_radical(self)
        return self._auto_radical

    def check(self):
        f = self.field
        ok, where = _law_holds(f, self.structure, self._right, left=False)
        if not ok:
            raise LawViolation(f"{self.name}: associativity fails at basis pair {where}")
        eye = Matrix.identity(f, self.dim)
        u = self.unit.a[:, 0]
        if not (_combine(f, u, self._right) == eye and _combine(f, u, self._left) == eye):
            raise LawViolation(f"{self.name}: unit is not a two-sided identity")
        if self.radical is not None:
            self._check_radical()
        self._check_idempotents()

    def _check_idempotents(self):
        es = self.idempotents
        total = es[0]
        for e in es[1:]:
            total = total + e
        if not total == self.unit:
            raise LawViolation(f"{self.name}: idempotents do not sum to 1")
        for s, e in enumerate(es):
            for t, e2 in enumerate(es):
                prod = self.mul(e, e2)
                want = e if s == t else Matrix.zeros(self.field, self.dim, 1)
                if not prod == want:
                    raise LawViolation(f"{self.name}: idempotents {s}, {t} are not orthogonal")

    def summand(self, t):
        """``(basis of e_t A inside A, e_t A as a right module)``."""
        if t not in self._summands:
            f = self.field
            e = self.idempotents[t]
            Le = _combine(f, e.a[:, 0], self._left)
            B = _independent(Le)
            coords = Coordinates(B)
            stack = [coords(Matrix(f, self._right[j]) @ B) for j in range(self.dim)]
            self._summands[t] = (B, Module(self, stack, label=f"e{t}{self.name}", check=False))
        return self._summands[t]

    def _check_radical(self):
        """The declared radical must be a nilpotent two-sided ideal."""
        f = self.field
        J = self.radical
        if J.cols == 0:
            return
        coords = Coordinates(_independent(J))
        for i in range(self.dim):
            for t in range(J.cols):
                left = Matrix(f, self._left[i]) @ J.col(t)
                right = Matrix(f, self._right[i]) @ J.col(t)
                if not (coords.contains(left) and coords.contains(right)):
                    raise LawViolation(f"{self.name}: declared radical is not an ideal")
        power = J
        for _ in range(self.dim + 1):
            if power.cols == 0 or power.is_zero():
                return
            prods = [self.mul(power.col(s), J.col(t)) for s in range(power.cols) for t in range(J.cols)]
            power = _independent(hstack(prods))
        raise LawViolation(f"{self.name}: declared radical is not nilpotent")


def trace_radical(A):
    """Radical as the kernel of ``(x, y) -> tr(x y)`` on the regular module.

    Valid over fields of characteristic 0 or larger than ``dim A``; returns
    ``None`` otherwise.
    """
    f = A.field
    d = A.dim
    if not f.is_rational and f.p <= d:
        return None
    if d == 0:
        return Matrix.zeros(f, 0, 0)
    traces = f.reduce(np.array([np.trace(A.right_regular()[k]) for k in range(d)], dtype=f.dtype))
    G = f.reduce(np.tensordot(A.structure, traces, axes=([2], [0])))
    return kernel_basis(Matrix(f, np.ascontiguousarray(G.T)))


def _columns(field, vectors, d):
    vectors = list(vectors)
    if not vectors:
        return Matrix.zeros(field, d, 0)
    return Matrix(field, field.array(vectors).T.reshape(d, len(vectors)))


def _independent(m):
    _, piv, _ = rref(m)
    return m.select_columns(piv)


class Module:
    """Right module over an :class:`Algebra`, given by action matrices."""

    def __init__(self, algebra, action, label=None, check=True):
        self.algebra = algebra
        self.field = algebra.field
        stack = _as_stack(self.field, action)
        if stack.shape[0] != algebra.dim and not (stack.shape[0] == 0 and algebra.dim == 0):
            raise DimensionMismatch(
                f"{stack.shape[0]} action matrices for an algebra of dim {algebra.dim}"
            )
        if stack.ndim != 3 or stack.shape[1] != stack.shape[2]:
            raise DimensionMismatch("action matrices must be square")
        stack.flags.writeable = False
        self.action = stack
        self.dim = stack.shape[1]
        self.label = label
        if check:
            self.check()

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"Module{name}(dim={self.dim} over {self.algebra.name})"

    def rho(self, element):
        """Action matrix of an algebra element given as a column."""
        return _combine(self.field, element.a[:, 0], self.action)

    def act(self, i):
        return Matrix(self.field, self.action[i])

    def actions(self):
        return [Matrix(self.field, self.action[i]) for i in range(self.algebra.dim)]

    def violations(self):
        out = []
        ok, where = _law_holds(self.field, self.algebra.structure, self.action, left=False)
        if not ok:
            out.append(f"module law fails at basis pair {where}")
        if not self.rho(self.algebra.unit) == Matrix.identity(self.field, self.dim):
            out.append("unit does not act as identity")
        return out

    def check(self):
        bad = self.violations()
        if bad:
            raise LawViolation("; ".join(bad))

    def same_as(self, other):
        return (
            self.algebra == other.algebra
            and self.dim == other.dim
            and bool(np.all(self.action == other.action))
        )


class Bimodule:
    """``A``-``B`` bimodule: left ``A`` action commuting with right ``B`` action."""

    def __init__(self, left_algebra, right_algebra, left_action, right_action, label=None, check=True):
        if left_algebra.field != right_algebra.field:
            raise AlgebraMismatch("bimodule sides over different fields")
        self.left = left_algebra
        self.right = right_algebra
        self.field = left_algebra.field
        self.left_action = _as_stack(self.field, left_action)
        self.right_action = _as_stack(self.field, right_action)
        dims = {self.left_action.shape[1], self.right_action.shape[1]}
        if len(dims) != 1:
            raise DimensionMismatch("left and right actions have different sizes")
        self.dim = dims.pop()
        self.label = label
        self.left_action.flags.writeable = False
        self.right_action.flags.writeable = False
        if check:
            self.check()

    def __repr__(self):
        return f"Bimodule({self.label!r}, dim={self.dim}, {self.left.name}-{self.right.name})"

    def right_module(self):
        return Module(self.right, self.right_action, label=self.label, check=False)

    def left_module(self):
        """The left ``A`` structure as a right ``A^op``-module."""
        return Module(self.left.opposite(), self.left_action, label=self.label, check=False)

    def lam(self, i):
        return Matrix(self.field, self.left_action[i])

    def rho(self, j):
        return Matrix(self.field, self.right_action[j])

    def opposite(self):
        """The same space as a ``B^op``-``A^op`` bimodule (sides swapped)."""
        return Bimodule(
            self.right.opposite(),
            self.left.opposite(),
            self.right_action,
            self.left_action,
            label=self.label,
            check=False,
        )

    def violations(self):
        out = []
        ok, where = _law_holds(self.field, self.left.structure, self.left_action, left=True)
        if not ok:
            out.append(f"left action law fails at basis pair {where}")
        ok, where = _law_holds(self.field, self.right.structure, self.right_action, left=False)
        if not ok:
            out.append(f"right action law fails at basis pair {where}")
        eye = Matrix.identity(self.field, self.dim)
        if not _combine(self.field, self.left.unit.a[:, 0], self.left_action) == eye:
            out.append("left unit does not act as identity")
        if not _combine(self.field, self.right.unit.a[:, 0], self.right_action) == eye:
            out.append("right unit does not act as identity")
        for i in range(self.left.dim):
            for j in range(self.right.dim):
                if not self.lam(i) @ self.rho(j) == self.rho(j) @ self.lam(i):
                    out.append(f"left and right actions do not commute at ({i}, {j})")
                    return out
        return out

    def check(self):
        bad = self.violations()
        if bad:
            raise LawViolation(f"bimodule {self.label!r}: " + "; ".join(bad))

    @classmethod
    def regular(cls, algebra, label=None):
        return cls(algebra, algebra, algebra.left_regular(), algebra.right_regular(), label=label, check=False)

    @classmethod
    def from_right_module(cls, ground, module, label=None):
        """View a right ``B``-module as a ``k``-``B`` bimodule (``ground`` = k)."""
        if ground.dim != 1:
            raise AlgebraMismatch("left side must be the ground field")
        left = [Matrix.identity(module.field, module.dim)]
        return cls(ground, module.algebra, left, module.action, label=label, check=False)

    @classmethod
    def from_left_module(cls, algebra, ground, module, label=None):
        """View a right ``A^op``-module (a left ``A``-module) as an ``A``-``k`` bimodule."""
        if ground.dim != 1:
            raise AlgebraMismatch("right side must be the ground field")
        right = [Matrix.identity(module.field, module.dim)]
        return cls(algebra, ground, module.action, right, label=label, check=False)


class ModuleMorphism:
    """Module map given by a ``target.dim x source.dim`` matrix."""

    def __init__(self, source, target, matrix, check=True):
        if source.algebra != target.algebra:
            raise AlgebraMismatch("morphism between modules over different algebras")
        if matrix.shape != (target.dim, source.dim):
            raise DimensionMismatch(f"matrix {matrix.shape} for {source.dim} -> {target.dim}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and not is_module_map(source, target, matrix):
            raise LawViolation("matrix is not linear over the algebra")

    def __matmul__(self, other):
        return ModuleMorphism(other.source, self.target, self.matrix @ other.matrix, check=False)

    def __repr__(self):
        return f"ModuleMorphism({self.source.dim} -> {self.target.dim})"

    @classmethod
    def identity(cls, M):
        return cls(M, M, Matrix.identity(M.field, M.dim), check=False)

    @classmethod
    def zero(cls, M, N):
        return cls(M, N, Matrix.zeros(M.field, N.dim, M.dim), check=False)


def is_module_map(source, target, matrix):
    f = source.field
    for i in range(source.algebra.dim):
        if not matrix @ Matrix(f, source.action[i]) == Matrix(f, target.action[i]) @ matrix:
            return False
    return True


# -- constructions -------------------------------------------------------------


def free_module(A, n):
    """The right regular module ``A^n``; coordinate ``(l, i)`` is ``l * d + i``."""
    f = A.field
    eye = Matrix.identity(f, n)
    stack = [kron(eye, Matrix(f, A.right_regular()[j])) for j in range(A.dim)]
    return Module(A, stack, label=f"{A.name}^{n}", check=False)


def free_generators(A, n):
    """Columns ``e_l (x) 1`` generating ``A^n``."""
    return kron(Matrix.identity(A.field, n), A.unit)


def free_map(A, target, images):
    """Matrix of the map ``A^n -> target`` sending generator ``l`` to ``images[:, l]``."""
    f = A.field
    n = images.cols
    d = A.dim
    if n == 0 or target.dim == 0:
        return Matrix.zeros(f, target.dim, n * d)
    # stacked[i] = rho(b_i) @ images : (d, t, n)
    stacked = np.tensordot(target.action, images.a, axes=([2], [0]))
    stacked = f.reduce(stacked)
    # column l*d + i  <-  stacked[i, :, l]
    out = np.transpose(stacked, (1, 2, 0)).reshape(target.dim, n * d)
    return Matrix(f, np.ascontiguousarray(out))


class ProjectiveTerm:
    """``(+)_g e_{idx[g]} A``: one summand per generator, in order.

    With the single idempotent ``1`` this is the free module ``A^n`` with the
    coordinates of :func:`free_module`.
    """

    def __init__(self, A, idx):
        self.algebra = A
        self.idx = list(idx)
        self.bases = [A.summand(t)[0] for t in self.idx]
        if len(A.idempotents) == 1:
            self.module = free_module(A, len(self.idx))
            self.offsets = [g * A.dim for g in range(len(self.idx))]
        else:
            S = DirectSum([A.summand(t)[1] for t in self.idx], algebra=A)
            self.module = S.module
            self.offsets = S.offsets
        self.dim = self.module.dim

    @property
    def rank(self):
        return len(self.idx)

    def idempotent(self, g):
        return self.algebra.idempotents[self.idx[g]]

    def map_to(self, target, images):
        """Matrix of the map sending generator ``g`` (that is ``e_g``) to ``images[:, g]``."""
        f = self.algebra.field
        if len(self.algebra.idempotents) == 1:
            return free_map(self.algebra, target, images)
        if self.rank == 0 or target.dim == 0:
            return Matrix.zeros(f, target.dim, self.dim)
        # W[i, :, g] = rho(b_i) images[:, g]
        W = f.reduce(np.tensordot(target.action, images.a, axes=([2], [0])))
        blocks = []
        for g, B in enumerate(self.bases):
            Wg = Matrix(f, np.ascontiguousarray(W[:, :, g].T))  # target x d
            blocks.append(Wg @ B)
        return hstack(blocks, field=f, rows=target.dim)

    def element(self, g, coords):
        """The algebra element of ``e_g A`` with coordinates ``coords``."""
        return self.bases[g] @ coords

    def summand_coords(self, g, x):
        """Coordinates of ``x`` restricted to summand ``g``."""
        off = self.offsets[g]
        return x.select_rows(range(off, off + self.bases[g].cols))


class DirectSum:
    """Direct sum with its canonical inclusions and projections."""

    def __init__(self, modules, algebra=None, label=None):
        modules = list(modules)
        if not modules and algebra is None:
            raise ValueError("empty direct sum needs an algebra")
        self.algebra = algebra or modules[0].algebra
        for M in modules:
            if M.algebra != self.algebra:
                raise AlgebraMismatch("direct sum of modules over different algebras")
        self.summands = modules
        f = self.algebra.field
        self.offsets = []
        off = 0
        for M in modules:
            self.offsets.append(off)
            off += M.dim
        self.dim = off
        stack = [
            block_diag([M.act(i) for M in modules], field=f) for i in range(self.algebra.dim)
        ]
        self.module = Module(self.algebra, stack, label=label, check=False)

    def inclusion(self, t):
        f = self.algebra.field
        M = self.summands[t]
        return Matrix.unit_columns(f, self.dim, range(self.offsets[t], self.offsets[t] + M.dim))

    def projection(self, t):
        return self.inclusion(t).T

    def block(self, t):
        return slice(self.offsets[t], self.offsets[t] + self.summands[t].dim)


def direct_sum(modules, algebra=None):
    return DirectSum(modules, algebra).module


def zero_module(A):
    return Module(A, A.field.zeros((A.dim, 0, 0)), check=False)


def submodule_from_basis(M, basis):
    """Module structure on the (A-stable) column span of an independent ``basis``."""
    coords = Coordinates(basis)
    stack = [coords(M.act(i) @ basis) for i in range(M.algebra.dim)]
    return Module(M.algebra, stack, check=False)


def generated_subspace(M, vectors):
    """Independent columns spanning the submodule generated by ``vectors``."""
    f = M.field
    if vectors.cols == 0:
        return Matrix.zeros(f, M.dim, 0)
    cols = [M.act(i) @ vectors for i in range(M.algebra.dim)]
    span = hstack(cols)
    _, piv, _ = rref(span)
    return span.select_columns(piv)


def submodule(M, vectors):
    """``(K, inclusion)`` for the submodule generated by ``vectors``."""
    basis = generated_subspace(M, vectors)
    return submodule_from_basis(M, basis), basis


def quotient_module(M, vectors):
    """``(Q, projection)`` for ``M`` modulo the submodule generated by ``vectors``."""
    from twistedreps.linalg import _cokernel

    basis = generated_subspace(M, vectors)
    C, free = _cokernel(basis)
    stack = [(C @ M.act(i)).select_columns(free) for i in range(M.algebra.dim)]
    return Module(M.algebra, stack, check=False), C


def kernel_module(M, N, matrix):
    """``(K, inclusion)`` for the kernel of a module map ``M -> N``."""
    basis = kernel_basis(matrix)
    return submodule_from_basis(M, basis), basis


def generators(M):
    """Deterministic generating set of ``M`` as columns.

    With a declared (nilpotent) radical ``J`` the generators are the unit
    vectors at the coordinates complementary to the row-reduced ``M J``;
    by Nakayama they generate.  Without one, coordinate vectors are taken
    greedily and redundant ones pruned.
    """
    f = M.field
    n = M.dim
    A = M.algebra
    if n == 0:
        return Matrix.zeros(f, 0, 0)
    J = A.effective_radical()
    if J is not None:
        if J.cols == 0:
            return Matrix.identity(f, n)
        MJ = hstack([M.rho(J.col(t)) for t in range(J.cols)])
        _, piv = column_space_data(MJ)
        pivset = set(piv)
        return Matrix.unit_columns(f, n, [j for j in range(n) if j not in pivset])
    chosen = []
    span_rank = 0
    for j in range(n):
        cand = chosen + [j]
        r = generated_subspace(M, Matrix.unit_columns(f, n, cand)).cols
        if r > span_rank:
            chosen = cand
            span_rank = r
        if span_rank == n:
            break
    for j in list(chosen):
        rest = [c for c in chosen if c != j]
        if generated_subspace(M, Matrix.unit_columns(f, n, rest)).cols == n:
            chosen = rest
    return Matrix.unit_columns(f, n, chosen)


def projective_generators(M):
    """Generators ``x_g`` with ``x_g e_g = x_g``: columns and idempotent indices.

    For every idempotent ``e`` the vectors ``x e`` (``x`` a coordinate
    vector) are taken in order when independent of ``M J`` and the earlier
    choices, so the count is ``dim (M / M J) e``.  Without a usable radical
    the choice is greedy on generated submodules.
    """
    f = M.field
    A = M.algebra
    n = M.dim
    es = A.idempotents
    if n == 0:
        return Matrix.zeros(f, 0, 0), []
    if len(es) == 1:
        g = generators(M)
        return g, [0] * g.cols
    J = A.effective_radical()
    chosen, idx = [], []
    if J is not None:
        base = [M.rho(J.col(t)) for t in range(J.cols)]
        span = hstack(base, field=f, rows=n) if base else Matrix.zeros(f, n, 0)
        r = span.rank()
        for t, e in enumerate(es):
            Pe = M.rho(e)
            for j in range(n):
                v = Pe.col(j)
                if v.is_zero():
                    continue
                trial = hstack([span, v])
                rt = trial.rank()
                if rt > r:
                    span, r = trial, rt
                    chosen.append(v)
                    idx.append(t)
        return hstack(chosen, field=f, rows=n), idx
    span_rank = 0
    for t, e in enumerate(es):
        Pe = M.rho(e)
        for j in range(n):
            v = Pe.col(j)
            if v.is_zero():
                continue
            trial = generated_subspace(M, hstack(chosen + [v], field=f, rows=n)).cols
            if trial > span_rank:
                chosen.append(v)
                idx.append(t)
                span_rank = trial
    keep = list(range(len(chosen)))
    for g in list(keep):
        rest = [c for c in keep if c != g]
        if generated_subspace(M, hstack([chosen[c] for c in rest], field=f, rows=n)).cols == n:
            keep = rest
    return hstack([chosen[c] for c in keep], field=f, rows=n), [idx[c] for c in keep]


# -- Hom -----------------------------------------------------------------------


def hom_basis_matrix(M, N):
    """Columns are row-major vectorizations of a basis of ``Hom_A(M, N)``."""
    if M.algebra != N.algebra:
        raise AlgebraMismatch(f"Hom between modules over {M.algebra.name} and {N.algebra.name}")
    f = M.field
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return Matrix.zeros(f, n * m, 0)
    eye_m = Matrix.identity(f, m)
    eye_n = Matrix.identity(f, n)
    rows = []
    for i in range(M.algebra.dim):
        # vec(F R) = (I_n (x) R^T) vec F ; vec(S F) = (S (x) I_m) vec F
        rows.append(kron(eye_n, M.act(i).T) - kron(N.act(i), eye_m))
    from twistedreps.linalg import vstack

    return kernel_basis(vstack(rows))


def unvec(v, rows, cols):
    """Matrix from a row-major vectorization (a single column)."""
    return Matrix(v.field, np.ascontiguousarray(v.a[:, 0].reshape(rows, cols)))


def vec(F):
    return Matrix(F.field, np.ascontiguousarray(F.a.reshape(-1, 1)))


def hom_space(M, N):
    """Basis of ``Hom_A(M, N)`` as :class:`ModuleMorphism` objects."""
    K = hom_basis_matrix(M, N)
    return [ModuleMorphism(M, N, unvec(K.col(t), N.dim, M.dim), check=False) for t in range(K.cols)]


def hom_dim(M, N):
    return hom_basis_matrix(M, N).cols


# -- projectivity and duality --------------------------------------------------


def free_cover(M):
    """``(rank, epimorphism matrix A^rank -> M, generator columns)``."""
    gens = generators(M)
    return gens.cols, free_map(M.algebra, M, gens), gens


def is_projective(M):
    """``(True, section)`` if the free cover of ``M`` splits, else ``(False, None)``.

    The section ``s : M -> A^n`` with ``eps s = id`` is the certificate.
    """
    f = M.field
    A = M.algebra
    if M.dim == 0:
        return True, Matrix.zeros(f, 0, 0)
    n, eps, _ = free_cover(M)
    P = free_module(A, n)
    K = hom_basis_matrix(M, P)
    if K.cols == 0:
        return False, None
    # sum_r c_r eps H_r = I  as a linear system in c
    cols = []
    for t in range(K.cols):
        H = unvec(K.col(t), P.dim, M.dim)
        cols.append(vec(eps @ H))
    sys = hstack(cols)
    c = solve(sys, vec(Matrix.identity(f, M.dim)))
    if c is None:
        return False, None
    s = unvec(K @ c, P.dim, M.dim)
    return True, s


def dualize(M):
    """``k``-linear dual of a right ``A``-module, a right ``A^op``-module."""
    stack = np.ascontiguousarray(np.transpose(M.action, (0, 2, 1)))
    label = f"{M.label}*" if M.label else None
    return Module(M.algebra.opposite(), stack, label=label, check=False)


def dualize_morphism(f):
    """Contravariant on morphisms: ``f : M -> N`` gives ``N* -> M*``."""
    return f.T
