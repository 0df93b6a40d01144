"""Projective resolutions, Ext groups and the maps between them.

Ext is computed from a deterministic resolution ``P_. -> M`` whose terms
are sums ``(+)_g e_g A`` over the algebra's idempotents (free modules when
the only idempotent is ``1``).  Since ``Hom_A(e A, N) = N e``, a cochain in
degree ``k`` is the tuple of images of the ``n_k`` generators, stored as
one column of length ``n_k * N.dim`` (generator-major) with block ``g`` in
``N e_g``.  Classes are cocycles; two cocycles are equal in Ext when their
difference lies in the span of the coboundaries.
"""

from __future__ import annotations

import numpy as np

from twistedreps.algebra.core import (
    ProjectiveTerm,
    is_projective,
    kernel_module,
    projective_generators,
)
from twistedreps.errors import FunctorNotExact, InvariantBreach, LiftFailure
from twistedreps.linalg import (
    Coordinates,
    Matrix,
    block_diag,
    hstack,
    image_basis,
    kernel_basis,
    kron,
    rref,
    solve,
)


class ProjectiveResolution:
    """Resolution ``... -> P_1 -> P_0 -> M`` truncated at ``length``.

    ``gen_images[k]`` holds the images of the generators of ``P_k`` (in
    ``M`` for ``k = 0``, in ``P_{k-1}`` otherwise); ``maps[k]`` is the full
    matrix of the same map and ``term_data[k]`` the :class:`ProjectiveTerm`.
    """

    def __init__(self, M, length):
        A = M.algebra
        self.module = M
        self.algebra = A
        self.length = length
        self.ranks = []
        self.terms = []
        self.term_data = []
        self.gen_images = []
        self.maps = []
        current, emb = M, None
        for k in range(length + 1):
            gens, idx = projective_generators(current)
            images = gens if emb is None else emb @ gens
            term = ProjectiveTerm(A, idx)
            target = M if k == 0 else self.terms[k - 1]
            d = term.map_to(target, images)
            self.ranks.append(term.rank)
            self.terms.append(term.module)
            self.term_data.append(term)
            self.gen_images.append(images)
            self.maps.append(d)
            if k < length:
                current, emb = kernel_module(term.module, target, d)

    @property
    def augmentation(self):
        return self.maps[0]

    def differential(self, k):
        """``d_k : P_k -> P_{k-1}`` for ``k >= 1``."""
        return self.maps[k]

    def is_exact(self):
        """Rank check: ``eps`` onto, then ``rank d_{k+1} + rank d_k = dim P_k``."""
        if self.maps[0].rank() != self.module.dim:
            return False
        for k in range(self.length):
            if self.maps[k + 1].rank() + self.maps[k].rank() != self.terms[k].dim:
                return False
        for k in range(1, self.length + 1):
            if not (self.maps[k - 1] @ self.maps[k]).is_zero():
                return False
        return True


def projective_resolution(M, length):
    return ProjectiveResolution(M, length)


# -- cochains ------------------------------------------------------------------


def pullback_matrix(term, images, N):
    """Cochain map ``Hom(P, N) -> Hom(P', N)`` induced by ``P' -> P``.

    ``term`` describes ``P``; column ``h`` of ``images`` holds the image of
    generator ``h`` of ``P'`` in the coordinates of ``P``.  Output block
    ``(h, g)`` is ``rho_N(x)`` where ``x`` in ``e_g A`` is the ``g``-part of
    that image.
    """
    A = term.algebra
    f = A.field
    n = term.rank
    n2 = images.cols
    y = N.dim
    if n == 0 or n2 == 0 or y == 0:
        return Matrix.zeros(f, n2 * y, n * y)
    # elements of A: U[g][:, h] = B_g @ images restricted to summand g
    parts = []
    for g in range(n):
        parts.append((term.bases[g] @ term.summand_coords(g, images)).a)  # d x n2
    U = np.stack(parts, axis=0).transpose(2, 0, 1)  # (n2, n, d)
    W = f.reduce(np.tensordot(U, N.action, axes=([2], [0])))  # (n2, n, y, y)
    out = np.ascontiguousarray(W.transpose(0, 2, 1, 3).reshape(n2 * y, n * y))
    return Matrix(f, out)


def cochain_space(term, N):
    """Basis (columns) of the cochains ``(+)_g N e_g`` inside ``N^n``."""
    f = N.field
    blocks = [image_basis(N.rho(term.idempotent(g))) for g in range(term.rank)]
    if not blocks:
        return Matrix.zeros(f, 0, 0)
    return block_diag(blocks, field=f)


def cochain_to_morphism(term, z, N):
    """Full ``N.dim x dim P`` matrix of the map ``P -> N`` with cochain ``z``."""
    f = N.field
    Y = Matrix(f, np.ascontiguousarray(z.a[:, 0].reshape(term.rank, N.dim).T))
    return term.map_to(N, Y)


def morphism_to_cochain(Z, images):
    """Cochain of ``Z : T -> N`` pulled back along generator images ``images`` in ``T``."""
    W = Z @ images  # N.dim x n'
    return Matrix(W.field, np.ascontiguousarray(W.a.T.reshape(-1, 1)))


def post_compose_matrix(n, h):
    """Cochain map ``Hom(P, N) -> Hom(P, N')`` for ``h : N -> N'`` and ``n`` generators."""
    return kron(Matrix.identity(h.field, n), h)


class ExtGroup:
    """``Ext^k_A(M, N)`` on a fixed resolution of ``M``, with representative cocycles."""

    def __init__(self, resolution, N, k):
        if resolution.length < k + 1:
            raise ValueError(f"resolution of length {resolution.length} too short for Ext^{k}")
        A = resolution.algebra
        f = A.field
        self.resolution = resolution
        self.target = N
        self.k = k
        y = N.dim
        term = resolution.term_data[k]
        nk = term.rank
        self.term = term
        self.n = nk
        self.cochain_dim = nk * y
        self.delta = pullback_matrix(term, resolution.gen_images[k + 1], N)
        C = cochain_space(term, N)
        self.cochains = C
        if k == 0:
            self.delta_prev = Matrix.zeros(f, self.cochain_dim, 0)
        else:
            prev = resolution.term_data[k - 1]
            self.delta_prev = pullback_matrix(prev, resolution.gen_images[k], N) @ cochain_space(prev, N)
        Z = C @ kernel_basis(self.delta @ C)
        B = image_basis(self.delta_prev)
        self.coboundaries = B
        _, piv, _ = rref(hstack([B, Z], field=f, rows=self.cochain_dim))
        chosen = [p - B.cols for p in piv if p >= B.cols]
        self.reps = Z.select_columns(chosen)
        self.dim = len(chosen)
        self._coords = Coordinates(hstack([self.reps, B], field=f, rows=self.cochain_dim))
        self._space = Coordinates(C)

    def is_cocycle(self, z):
        return self._space.contains(z) and (self.delta @ z).is_zero()

    def classify(self, z):
        """Coordinates (``dim x z.cols``) of the classes of cocycles ``z``."""
        for t in range(z.cols):
            if not self.is_cocycle(z.col(t)):
                raise InvariantBreach(f"Ext^{self.k}: image is not a cocycle")
        c = self._coords(z)
        return c[: self.dim, :]

    def is_coboundary(self, z):
        return self.classify(z).is_zero()

    def morphism(self, z):
        """For ``k = 0``: the module map ``M -> N`` with cocycle ``z``."""
        if self.k != 0:
            raise ValueError("only degree-0 classes are morphisms")
        res = self.resolution
        Z = cochain_to_morphism(self.term, z, self.target)
        sol = solve(res.augmentation.T, Z.T)
        if sol is None:
            raise InvariantBreach("degree-0 cocycle does not factor through M")
        return sol.T

    def cocycle_of_morphism(self, g):
        """Degree-0 cocycle of a module map ``g : M -> N``."""
        return morphism_to_cochain(g, self.resolution.gen_images[0])


class ExtCache:
    """Per-computation memo of resolutions and Ext groups (not shared across calls)."""

    def __init__(self, length):
        self.length = length
        self._res = {}
        self._ext = {}
        self._keep = []

    def resolution(self, M):
        key = id(M)
        if key not in self._res:
            self._res[key] = ProjectiveResolution(M, self.length)
            self._keep.append(M)
        return self._res[key]

    def ext(self, M, N, k):
        key = (id(M), id(N), k)
        if key not in self._ext:
            self._ext[key] = ExtGroup(self.resolution(M), N, k)
            self._keep.append(N)
        return self._ext[key]


def ext_group(k, M, N, length=None):
    return ExtGroup(ProjectiveResolution(M, length if length is not None else k + 1), N, k)


def ext_dim(k, M, N):
    """``dim Ext^k_A(M, N)``."""
    return ext_group(k, M, N).dim


# -- chain maps ----------------------------------------------------------------


class FunctorImageComplex:
    """``F(P_.) -> F(M)`` for an exact functor ``F`` and a resolution ``P_.``."""

    def __init__(self, functor, resolution, base=None):
        self.functor = functor
        self.resolution = resolution
        self.objs = [functor.obj(P) for P in resolution.terms]
        self.base = base if base is not None else functor.obj(resolution.module)
        self.terms = [o.module for o in self.objs]
        maps = [functor.mor(resolution.maps[0], self.objs[0], self.base)]
        for k in range(1, resolution.length + 1):
            maps.append(functor.mor(resolution.maps[k], self.objs[k], self.objs[k - 1]))
        self.maps = maps


def lift_chain_map(source, target, g, length=None):
    """Lift ``g : source.module -> target.module`` to generator images.

    ``source`` is a :class:`ProjectiveResolution`; ``target`` is any exact
    complex with ``terms`` and ``maps`` (``maps[0]`` the augmentation).
    Returns matrices ``lam[k]`` (``dim T_k x n_k``) of images of the
    generators of ``P_k``.
    """
    length = source.length if length is None else length
    rhs = g @ source.gen_images[0]
    lam = []
    for k in range(length + 1):
        if k > 0:
            full_prev = source.term_data[k - 1].map_to(target.terms[k - 1], lam[k - 1])
            rhs = full_prev @ source.gen_images[k]
        x = solve(target.maps[k], rhs)
        if x is None:
            raise LiftFailure(f"no lift in degree {k}")
        # generator g is e_g, so its image must satisfy x e_g = x
        term = source.term_data[k]
        if len(term.algebra.idempotents) > 1:
            T = target.terms[k]
            x = hstack([T.rho(term.idempotent(g)) @ x.col(g) for g in range(x.cols)],
                       field=x.field, rows=x.rows)
        lam.append(x)
    return lam


def ext_induced_post(src, tgt, h):
    """Matrix of ``h_* : Ext^k(M, N) -> Ext^k(M, N')`` in representative bases.

    ``src``/``tgt`` must share the resolution of ``M``.
    """
    if src.resolution is not tgt.resolution:
        raise ValueError("post-composition needs a common resolution")
    z = post_compose_matrix(src.n, h) @ src.reps
    return tgt.classify(z)


def ext_induced_pre(src, tgt, g, lift=None):
    """Matrix of ``g^* : Ext^k(M, N) -> Ext^k(M', N)`` for ``g : M' -> M``.

    ``src`` lives on the resolution of ``M``, ``tgt`` on that of ``M'``.
    """
    k = src.k
    if lift is None:
        lift = lift_chain_map(tgt.resolution, src.resolution, g, length=k)
    pb = pullback_matrix(src.resolution.term_data[k], lift[k], src.target)
    return tgt.classify(pb @ src.reps)


def transport_cochains(functor, resolution, fcomplex, lam, k, N, FN, cochains):
    """Push cochains on ``P_k`` with values in ``N`` through ``F`` and pull back along ``lam``.

    Output cochains live on ``Q_k`` (the resolution lifted from) with
    values in ``F(N)``.
    """
    f = resolution.algebra.field
    term = resolution.term_data[k]
    cols = []
    for t in range(cochains.cols):
        Z = cochain_to_morphism(term, cochains.col(t), N)
        FZ = functor.mor(Z, fcomplex.objs[k], FN)
        cols.append(morphism_to_cochain(FZ, lam[k]))
    rows = lam[k].cols * FN.dim
    return hstack(cols, field=f, rows=rows)


def functor_is_exact(functor):
    """Certificate that ``functor`` is exact: ``(bool, splitting section)``.

    ``- (x)_A N`` is exact iff ``N`` is projective as a left ``A``-module;
    ``Hom_B(N, -)`` is exact iff ``N`` is projective as a right ``B``-module.
    """
    N = functor.bimodule
    side = N.left_module() if functor.kind == "psi" else N.right_module()
    return is_projective(side)


def ext_transport(functor, src, cache=None, base=None, target=None, check_exact=True):
    """Transport ``Ext^k(M, N) -> Ext^k(F M, F N)`` along an exact functor ``F``.

    ``F P_.`` resolves ``F M`` (not necessarily by projectives); the identity
    of ``F M`` is lifted from the deterministic resolution ``Q_.`` of ``F M``
    into it and cocycles are pulled back along the lift.  Returns
    ``(target Ext group, matrix of the map in representative bases)``.
    """
    if check_exact and not functor_is_exact(functor)[0]:
        raise FunctorNotExact(f"{functor.kind} functor of {functor.bimodule!r} is not exact")
    k = src.k
    res = src.resolution
    fcomplex = FunctorImageComplex(functor, res, base=base)
    FM = fcomplex.base.module
    FN = target if target is not None else functor.obj(src.target)
    if cache is not None:
        Q = cache.resolution(FM)
        tgt = cache.ext(FM, FN.module, k)
    else:
        Q = ProjectiveResolution(FM, k + 1)
        tgt = ExtGroup(Q, FN.module, k)
    ident = Matrix.identity(FM.field, FM.dim)
    lam = lift_chain_map(Q, fcomplex, ident, length=k)
    z = transport_cochains(functor, res, fcomplex, lam, k, src.target, FN, src.reps)
    return tgt, tgt.classify(z)
