"""Quivers, their path categories, and diagrams of module categories.

A diagram puts an algebra ``A_i`` on every vertex and an ``A_s``-``A_t``
bimodule ``N_a`` on every arrow ``a : s -> t``.  The arrow acts covariantly
by ``Psi_a = - (x) N_a`` and contravariantly by its right adjoint
``Phi_a = Hom(N_a, -)``.

Paths are tuples of arrow labels read in travel order, so ``p + (b,)`` is
``p`` followed by ``b``.  ``Psi`` along a path is the left-nested iterated
tensor product; ``Phi`` along a path applies ``Hom(N, -)`` starting from
the last arrow.  Both are materialized stage by stage so that
``Psi_{p+(b,)} M`` is literally ``Psi_b(Psi_p M)`` and
``Phi_{(a,)+q} Y`` is literally ``Phi_a(Phi_q Y)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from twistedreps.algebra.core import is_projective
from twistedreps.algebra.functors import (
    HomFunctor,
    HomModule,
    TensorFunctor,
    TensorProduct,
    associator,
)
from twistedreps.errors import AlgebraMismatch, CyclicQuiver, DiagramMismatch
from twistedreps.linalg import Matrix


@dataclass(frozen=True)
class Arrow:
    label: str
    source: object
    target: object


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise DiagramMismatch("duplicate vertex labels")
        self.arrows = []
        seen = set()
        vset = set(self.vertices)
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            if a.label in seen:
                raise DiagramMismatch(f"duplicate arrow label {a.label!r}")
            if a.source not in vset or a.target not in vset:
                raise DiagramMismatch(f"arrow {a.label!r} has an endpoint outside the quiver")
            seen.add(a.label)
            self.arrows.append(a)
        self._by_label = {a.label: a for a in self.arrows}
        self._index = {v: t for t, v in enumerate(self.vertices)}
        self._paths = {}

    def __repr__(self):
        return f"Quiver({self.vertices}, {[(a.label, a.source, a.target) for a in self.arrows]})"

    def arrow(self, label):
        return self._by_label[label]

    def index(self, v):
        return self._index[v]

    def out_arrows(self, v):
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v):
        return [a for a in self.arrows if a.target == v]

    def is_acyclic(self):
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        stack = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for a in self.out_arrows(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    stack.append(a.target)
        return seen == len(self.vertices)

    def require_acyclic(self, what="this operation"):
        if not self.is_acyclic():
            raise CyclicQuiver(f"{what} needs an acyclic quiver")

    def paths(self, i, j):
        """All paths ``i -> j`` ordered by length, then by arrow labels."""
        key = (i, j)
        if key not in self._paths:
            self.require_acyclic("path enumeration")
            found = []

            def walk(v, p):
                if v == j:
                    found.append(p)
                for a in self.out_arrows(v):
                    walk(a.target, p + (a.label,))

            walk(i, ())
            found.sort(key=lambda p: (len(p), tuple(str(x) for x in p)))
            self._paths[key] = found
        return list(self._paths[key])

    def path_source(self, p, default=None):
        return self.arrow(p[0]).source if p else default

    def path_target(self, p, default=None):
        return self.arrow(p[-1]).target if p else default

    def opposite(self):
        return Quiver(self.vertices, [Arrow(a.label, a.target, a.source) for a in self.arrows])


def enumerate_paths(d, i, j):
    q = d.quiver if isinstance(d, DiagramSpec) else d
    return q.paths(i, j)


@dataclass
class Certificate:
    """Exactness of ``Psi_a`` and ``Phi_a`` with splitting witnesses."""

    arrow: str
    psi_exact: bool
    psi_witness: object
    phi_exact: bool
    phi_witness: object


class DiagramSpec:
    def __init__(self, quiver, algebras, bimodules, name=None):
        self.quiver = quiver
        self.algebras = dict(algebras)
        self.bimodules = dict(bimodules)
        self.name = name
        for v in quiver.vertices:
            if v not in self.algebras:
                raise DiagramMismatch(f"no algebra at vertex {v!r}")
        fields = {A.field for A in self.algebras.values()}
        if len(fields) > 1:
            raise AlgebraMismatch("vertex algebras over different fields")
        self.field = fields.pop() if fields else None
        for a in quiver.arrows:
            N = self.bimodules.get(a.label)
            if N is None:
                raise DiagramMismatch(f"no bimodule on arrow {a.label!r}")
            if N.left != self.algebras[a.source] or N.right != self.algebras[a.target]:
                raise AlgebraMismatch(
                    f"bimodule on {a.label!r} is {N.left.name}-{N.right.name}, expected "
                    f"{self.algebras[a.source].name}-{self.algebras[a.target].name}"
                )
        self._certs = None
        self._opposite = None

    def __repr__(self):
        return f"DiagramSpec({self.name or ''}{self.quiver!r})"

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def arrows(self):
        return self.quiver.arrows

    def algebra(self, v):
        return self.algebras[v]

    def bimodule(self, label):
        return self.bimodules[label]

    def paths(self, i, j):
        return self.quiver.paths(i, j)

    def psi(self, label):
        return TensorFunctor(self.bimodules[label])

    def phi(self, label):
        return HomFunctor(self.bimodules[label])

    def certificates(self):
        if self._certs is None:
            self._certs = certify_exactness(self)
        return self._certs

    def psi_exact(self):
        return all(c.psi_exact for c in self.certificates().values())

    def phi_exact(self):
        return all(c.phi_exact for c in self.certificates().values())

    def opposite(self):
        """Reversed quiver, opposite algebras, bimodules with sides swapped.

        Cached, and the opposite of the opposite is this diagram itself.
        """
        if self._opposite is None:
            algs = {v: A.opposite() for v, A in self.algebras.items()}
            bims = {a: N.opposite() for a, N in self.bimodules.items()}
            name = f"{self.name}^op" if self.name else None
            op = DiagramSpec(self.quiver.opposite(), algs, bims, name=name)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def same_as(self, other):
        if self.quiver.vertices != other.quiver.vertices:
            return False
        if [(a.label, a.source, a.target) for a in self.arrows] != [
            (a.label, a.source, a.target) for a in other.arrows
        ]:
            return False
        if any(self.algebras[v] != other.algebras[v] for v in self.vertices):
            return False
        for a in self.arrows:
            N, M = self.bimodules[a.label], other.bimodules[a.label]
            if N.dim != M.dim:
                return False
            if not ((N.left_action == M.left_action).all() and (N.right_action == M.right_action).all()):
                return False
        return True


def certify_exactness(d):
    """Per arrow: is ``N_a`` projective on the left (``Psi_a`` exact) and on the right (``Phi_a`` exact)."""
    out = {}
    for a in d.arrows:
        N = d.bimodules[a.label]
        pl, wl = is_projective(N.left_module())
        pr, wr = is_projective(N.right_module())
        out[a.label] = Certificate(a.label, pl, wl, pr, wr)
    return out


# -- functors along paths ------------------------------------------------------


class PsiImage:
    """``Psi_p M`` with every intermediate tensor product kept."""

    def __init__(self, d, path, M):
        self.path = tuple(path)
        self.base = M
        self.stages = []
        cur = M
        for label in self.path:
            T = TensorProduct(cur, d.bimodules[label])
            self.stages.append(T)
            cur = T.module
        self.module = cur
        self.dim = cur.dim

    def extend(self, d, label):
        """``Psi_b`` of this image, sharing the stages already built."""
        out = PsiImage.__new__(PsiImage)
        out.path = self.path + (label,)
        out.base = self.base
        T = TensorProduct(self.module, d.bimodules[label])
        out.stages = self.stages + [T]
        out.module = T.module
        out.dim = T.dim
        return out


class PhiImage:
    """``Phi_p Y``; ``stages[0]`` is the outermost Hom (first arrow of ``p``)."""

    def __init__(self, d, path, Y):
        self.path = tuple(path)
        self.base = Y
        stages = []
        cur = Y
        for label in reversed(self.path):
            H = HomModule(d.bimodules[label], cur)
            stages.append(H)
            cur = H.module
        self.stages = stages[::-1]
        self.module = cur
        self.dim = cur.dim

    def extend(self, d, label):
        """``Phi_a`` of this image for an arrow ``a`` ending where ``p`` starts."""
        out = PhiImage.__new__(PhiImage)
        out.path = (label,) + self.path
        out.base = self.base
        H = HomModule(d.bimodules[label], self.module)
        out.stages = [H] + self.stages
        out.module = H.module
        out.dim = H.dim
        return out


def _check_composable(d, path):
    q = d.quiver
    for x, y in zip(path, path[1:]):
        if q.arrow(x).target != q.arrow(y).source:
            raise DiagramMismatch(f"arrows {x!r}, {y!r} are not composable")


def psi_on_path(d, path, M):
    """``Psi_p M`` (trivial path: ``M`` itself); use ``.module`` for the module."""
    path = tuple(path)
    _check_composable(d, path)
    if path and M.algebra != d.algebras[d.quiver.path_source(path)]:
        raise AlgebraMismatch(f"module is not over the algebra at the start of {path}")
    return PsiImage(d, path, M)


def phi_on_path(d, path, Y):
    """``Phi_p Y`` for ``Y`` over the algebra at the end of ``p``."""
    path = tuple(path)
    _check_composable(d, path)
    if path and Y.algebra != d.algebras[d.quiver.path_target(path)]:
        raise AlgebraMismatch(f"module is not over the algebra at the end of {path}")
    return PhiImage(d, path, Y)


def psi_on_path_map(f, src, tgt):
    """``Psi_p(f) : Psi_p M -> Psi_p M'`` for ``f : M -> M'``."""
    g = f
    for S, T in zip(src.stages, tgt.stages):
        g = S.map_left(g, T)
    return g


def phi_on_path_map(g, src, tgt):
    """``Phi_p(g) : Phi_p Y -> Phi_p Y'`` for ``g : Y -> Y'``."""
    h = g
    for S, T in zip(reversed(src.stages), reversed(tgt.stages)):
        h = S.map_right(h, T)
    return h


# -- associativity -------------------------------------------------------------


def path_bimodule(d, path):
    """``N_p = N_{a_1} (x) ... (x) N_{a_n}`` (left nested) as a bimodule."""
    path = tuple(path)
    if not path:
        raise ValueError("trivial path has the regular bimodule; pick an algebra")
    cur = d.bimodules[path[0]]
    for label in path[1:]:
        cur = TensorProduct(cur, d.bimodules[label]).module
    return cur


def psi_associator(d, path, M):
    """Isomorphism ``Psi_p M -> M (x) N_p`` built from single associators.

    Returns ``(iterated image, M (x) N_p as a TensorProduct, matrix)``.
    """
    path = tuple(path)
    img = psi_on_path(d, path, M)
    if len(path) <= 1:
        if not path:
            return img, None, Matrix.identity(M.field, M.dim)
        return img, img.stages[0], Matrix.identity(M.field, img.dim)
    f = M.field
    # iso_k : Psi_{a_1..a_k} M -> M (x) N_{a_1..a_k}
    Nk = d.bimodules[path[0]]
    cur = img.stages[0]
    iso = Matrix.identity(f, cur.dim)
    for k, label in enumerate(path[1:], start=1):
        Nb = d.bimodules[label]
        step_src = img.stages[k]  # Psi_{..k} M (x) N_b
        mid = TensorProduct(cur.module, Nb)  # (M (x) N_{..k}) (x) N_b
        moved = step_src.map_left(iso, mid)
        left, right, assoc = associator(M, Nk, Nb)
        # left is (M (x) Nk) (x) Nb and coincides with mid
        iso = assoc @ moved
        Nk = TensorProduct(Nk, Nb).module
        cur = right
    return img, cur, iso
