"""Prebuilt diagram families and an independent oracle for the Vect case.

* :class:`VectDiagram`: every vertex carries the ground field and every arrow
  ``k^m``, which is ordinary representations of the quiver with each arrow
  replaced by ``m`` parallel copies.
* :class:`FramedDiagram`: ``0 -> 1`` with ``k`` at 0, ``A`` at 1 and ``P`` on
  the arrow; a representation is a triple ``(E, V, s : V -> Hom_A(P, E))``.
* :class:`ChainDiagram`: ``0 -> 1 -> ... -> n+1`` with ``A`` at 0, the ground
  field elsewhere, a connector ``A``-``k`` bimodule on the first arrow and
  identity functors on the tail.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from twistedreps.algebra.core import Bimodule, free_module, is_projective
from twistedreps.algebra.ext import ExtCache
from twistedreps.algebra.functors import HomModule
from twistedreps.algebra.library import ground_field, matrix_bimodule, vector_space
from twistedreps.diagram import DiagramSpec, Quiver
from twistedreps.errors import InvariantBreach, NotVectDiagram
from twistedreps.linalg import Matrix, hstack, kron, random_matrix, vstack
from twistedreps.rep.les import les
from twistedreps.rep.representation import Representation
from twistedreps.rep.sampling import random_module, rng_from, top_module

# -- Vect diagrams -------------------------------------------------------------


@dataclass
class VectRep:
    """Raw data: a dimension per vertex and ``m_a`` matrices per arrow."""

    dims: dict
    maps: dict


class VectDiagram:
    def __init__(self, quiver, multiplicities, field_):
        quiver.require_acyclic("a Vect diagram")
        self.quiver = quiver
        self.field = field_
        self.mult = {a.label: int(multiplicities.get(a.label, 1)) for a in quiver.arrows}
        self.k = k = ground_field(field_)
        bims = {lab: matrix_bimodule(k, m, label=lab) for lab, m in self.mult.items()}
        self.diagram = DiagramSpec(quiver, {v: k for v in quiver.vertices}, bims, name="vect")

    @classmethod
    def from_diagram(cls, d):
        """Wrap an existing diagram whose vertices all carry the ground field."""
        if not _is_vect(d):
            raise NotVectDiagram(f"diagram {d.name!r} is not a Vect diagram")
        v = cls.__new__(cls)
        d.quiver.require_acyclic("a Vect diagram")
        v.quiver = d.quiver
        v.field = d.field
        v.mult = {a.label: d.bimodules[a.label].dim for a in d.arrows}
        v.k = d.algebras[d.vertices[0]] if d.vertices else ground_field(d.field)
        v.diagram = d
        return v

    def rep(self, data, label=None):
        """Representation with ``X_a^flat[:, x*m + l] = A_l[:, x]``."""
        f = self.field
        mods = {v: vector_space(self.k, data.dims[v]) for v in self.quiver.vertices}
        psi = {}
        for a in self.quiver.arrows:
            m = self.mult[a.label]
            xs, yt = data.dims[a.source], data.dims[a.target]
            flat = Matrix.zeros(f, yt, xs * m)
            mats = data.maps[a.label]
            cols = [mats[l].col(x) for x in range(xs) for l in range(m)]
            if cols:
                flat = hstack(cols, field=f, rows=yt)
            psi[a.label] = flat
        return Representation.from_psi(self.diagram, mods, psi, label=label)

    def data(self, X):
        return vect_data(X)

    def euler_form(self, x, y):
        s = sum(x[v] * y[v] for v in self.quiver.vertices)
        return s - sum(m * x[self.quiver.arrow(lab).source] * y[self.quiver.arrow(lab).target]
                       for lab, m in self.mult.items())


def _is_vect(d):
    for A in d.algebras.values():
        if A.dim != 1:
            return False
    for N in d.bimodules.values():
        eye = Matrix.identity(N.field, N.dim)
        if not (N.lam(0) == eye and N.rho(0) == eye):
            return False
    return True


def vect_data(X):
    """Recover :class:`VectRep` from a representation of a Vect diagram."""
    d = X.diagram
    if not _is_vect(d):
        raise NotVectDiagram(f"diagram {d.name!r} has a non-trivial vertex algebra")
    dims = dict(zip(d.vertices, X.dims()))
    maps = {}
    for a in d.arrows:
        m = d.bimodules[a.label].dim
        flat = X.psi[a.label]
        xs = dims[a.source]
        maps[a.label] = [
            flat.select_columns([x * m + l for x in range(xs)]) for l in range(m)
        ]
    return VectRep(dims, maps)


def euler_oracle(v, X, Y):
    """``(dim Hom, dim Ext^1)`` from commuting squares and the Euler form.

    ``Hom`` is the null space of ``B_l f_s - f_t A_l = 0`` over all arrows and
    copies, with ``f_i`` unknown ``y_i x x_i`` matrices (row-major).  The
    path algebra is hereditary, so ``Ext^k = 0`` for ``k >= 2``.
    """
    if not isinstance(v, VectDiagram):
        raise NotVectDiagram("the Euler oracle needs a VectDiagram")
    x = X if isinstance(X, VectRep) else vect_data(X)
    y = Y if isinstance(Y, VectRep) else vect_data(Y)
    f = v.field
    verts = v.quiver.vertices
    sizes = [y.dims[i] * x.dims[i] for i in verts]
    total = sum(sizes)
    rows = []
    for a in v.quiver.arrows:
        s, t = a.source, a.target
        for l in range(v.mult[a.label]):
            A, B = x.maps[a.label][l], y.maps[a.label][l]
            n_eq = y.dims[t] * x.dims[s]
            blocks = []
            for i, sz in zip(verts, sizes):
                blk = Matrix.zeros(f, n_eq, sz)
                if i == s:
                    blk = blk + kron(B, Matrix.identity(f, x.dims[s]))
                if i == t:
                    blk = blk - kron(Matrix.identity(f, y.dims[t]), A.T)
                blocks.append(blk)
            rows.append(hstack(blocks, field=f, rows=n_eq))
    system = vstack(rows, field=f, cols=total) if rows else Matrix.zeros(f, 0, total)
    hom = total - system.rank()
    ext1 = hom - v.euler_form(x.dims, y.dims)
    return hom, ext1


def random_vect_data(v, rng, max_dim=3):
    rng = rng_from(rng)
    dims = {i: rng.randint(0, max_dim) for i in v.quiver.vertices}
    maps = {}
    for a in v.quiver.arrows:
        maps[a.label] = [
            random_matrix(v.field, rng, dims[a.target], dims[a.source])
            for _ in range(v.mult[a.label])
        ]
    return VectRep(dims, maps)


def random_vect_rep(v, rng, max_dim=3):
    return v.rep(random_vect_data(v, rng, max_dim))


SHAPES = {
    "A2": ([0, 1], [("a", 0, 1)]),
    "A3": ([0, 1, 2], [("a", 0, 1), ("b", 1, 2)]),
    "kronecker": ([0, 1], [("a", 0, 1)]),
    "square": ([0, 1, 2, 3], [("a", 0, 1), ("b", 0, 2), ("c", 1, 3), ("d", 2, 3)]),
}


def vect_shape(name, field_, multiplicities=None):
    verts, arrows = SHAPES[name]
    mult = dict(multiplicities or {})
    if name == "kronecker":
        mult.setdefault("a", 2)
    return VectDiagram(Quiver(verts, arrows), mult, field_)


def random_vect_diagram(field_, rng):
    """A shape from :data:`SHAPES` with multiplicities drawn from ``{1, 2, 3}``."""
    rng = rng_from(rng)
    name = rng.choice(sorted(SHAPES))
    verts, arrows = SHAPES[name]
    mult = {lab: rng.randint(1, 3) for lab, _, _ in arrows}
    return name, VectDiagram(Quiver(verts, arrows), mult, field_)


# -- framed objects ------------------------------------------------------------


class FramedDiagram:
    """``0 -a-> 1`` with ``Phi_0 = Vect``, ``Phi_1 = Mod-A``, ``Phi_a = Hom_A(P, -)``."""

    def __init__(self, A, P):
        if P.algebra != A:
            raise ValueError("framing module must be over the algebra")
        self.algebra = A
        self.framing = P
        self.k = k = ground_field(A.field)
        N = Bimodule.from_right_module(k, P, label="P")
        q = Quiver([0, 1], [("a", 0, 1)])
        self.diagram = DiagramSpec(q, {0: k, 1: A}, {"a": N}, name="framed")

    @property
    def projective(self):
        return is_projective(self.framing)[0]

    def triple(self, E, V, s, label=None):
        """Representation for ``(E, V, s)``.

        ``V`` is a dimension or a vector space; ``s`` is either a matrix in
        the coordinates of ``Hom_A(P, E)`` or a list of ``E.dim x P.dim``
        module maps, one per basis vector of ``V``.
        """
        if isinstance(V, int):
            V = vector_space(self.k, V)
        H = HomModule(self.diagram.bimodules["a"], E)
        if isinstance(s, (list, tuple)):
            cols = [H.coordinates_of(g) for g in s]
            s = hstack(cols, field=self.k.field, rows=H.dim)
        return Representation(self.diagram, {0: V, 1: E}, phi={"a": s}, homs={"a": H},
                              label=label)


def build_framed(A, P):
    return FramedDiagram(A, P)


@dataclass
class FramedReport:
    psi: object
    phi: object
    ext_algebra: list
    checks: dict = field(default_factory=dict)

    @property
    def ext_dims(self):
        return self.psi.ext_dims

    @property
    def ok(self):
        good = self.psi.ok and all(self.checks.values())
        return good and (self.phi is None or self.phi.ok)


def framed_les(fd, E, F, max_degree=4, variant=None):
    """Long exact sequence for two framed objects.

    ``E`` and ``F`` are representations or ``(E, V, s)`` triples.  The
    ``Psi`` form always applies.  When ``P`` is projective the ``Phi`` form
    is run too, and ``Ext^i_R = Ext^i_A(E_1, F_1)`` is asserted for
    ``i >= 2``.
    """
    X = E if isinstance(E, Representation) else fd.triple(*E)
    Y = F if isinstance(F, Representation) else fd.triple(*F)
    if variant == "phi":
        # surfaces HypothesisViolated when P is not projective
        les("phi", X, Y, max_degree)
    psi = les("psi", X, Y, max_degree)
    ext_a = [
        ExtCache(max_degree + 1).ext(X.components[1], Y.components[1], k).dim
        for k in range(max_degree + 1)
    ]
    checks = {}
    phi = None
    if fd.projective:
        phi = les("phi", X, Y, max_degree)
        checks["variants_agree"] = phi.ext_dims == psi.ext_dims
        checks["higher_ext_matches_algebra"] = psi.ext_dims[2:] == ext_a[2:]
        if not all(checks.values()):
            raise InvariantBreach(
                f"framed Ext mismatch: psi {psi.ext_dims}, phi {phi.ext_dims}, algebra {ext_a}"
            )
    return FramedReport(psi, phi, ext_a, checks)


def random_framed_triple(fd, rng, max_dim=3):
    rng = rng_from(rng)
    E = random_module(fd.algebra, rng, max_dim)
    V = rng.randint(0, 2)
    H = HomModule(fd.diagram.bimodules["a"], E)
    s = random_matrix(fd.k.field, rng, H.dim, V)
    return fd.triple(E, V, s)


# -- chains --------------------------------------------------------------------


class ChainDiagram:
    """``0 -a-> 1 -a1-> 2 -> ... -an-> n+1``: ``A`` at 0, ``k`` elsewhere.

    The connector is an ``A``-``k`` bimodule (default: the top of ``A`` as a
    left module), so ``Psi_a E = E (x)_A connector`` plays the role of a
    fiber; tail arrows carry the regular bimodule of ``k``.
    """

    def __init__(self, A, n, connector=None):
        if n < 0:
            raise ValueError("chain length must be non-negative")
        self.algebra = A
        self.length = n
        k = A if A.dim == 1 else ground_field(A.field)
        self.k = k
        if connector is None:
            connector = Bimodule.from_left_module(A, k, top_module(A.opposite()), label="a")
        self.connector = connector
        verts = list(range(n + 2))
        arrows = [("a", 0, 1)] + [(f"a{t}", t, t + 1) for t in range(1, n + 1)]
        bims = {"a": connector}
        bims.update({f"a{t}": Bimodule.regular(k, label=f"a{t}") for t in range(1, n + 1)})
        algs = {0: A}
        algs.update({v: k for v in verts[1:]})
        self.quiver = Quiver(verts, arrows)
        self.diagram = DiagramSpec(self.quiver, algs, bims, name=f"chain{n}")

    def as_vect(self):
        """The same diagram as a :class:`VectDiagram`, when ``A`` is the ground field."""
        if self.algebra.dim != 1:
            raise NotVectDiagram("chain over a non-trivial algebra")
        return VectDiagram.from_diagram(self.diagram)

    def rep(self, E, dims, maps, label=None):
        """``E`` at 0, ``k^dims[t-1]`` at ``t``; ``maps`` are ``Psi``-form matrices."""
        mods = {0: E}
        for t in range(1, self.length + 2):
            mods[t] = vector_space(self.k, dims[t - 1])
        return Representation.from_psi(self.diagram, mods, maps, label=label)


def build_chain(A, n, connector=None):
    return ChainDiagram(A, n, connector)


def random_chain_rep(cd, rng, max_dim=3, full_rank=True):
    """Random chain; with ``full_rank`` the tail maps have maximal rank."""
    rng = rng_from(rng)
    d = cd.diagram
    f = d.field
    E = random_module(cd.algebra, rng, max_dim)
    dims = [rng.randint(0, max_dim) for _ in range(cd.length + 1)]
    from twistedreps.algebra.functors import TensorProduct
    from twistedreps.rep.sampling import random_module_map

    T = TensorProduct(E, cd.connector)
    V1 = vector_space(cd.k, dims[0])
    maps = {"a": random_module_map(T.module, V1, rng)}
    for t in range(1, cd.length + 1):
        rows, cols = dims[t], dims[t - 1]
        for _ in range(20):
            m = random_matrix(f, rng, rows, cols)
            if not full_rank or m.rank() == min(rows, cols):
                break
        maps[f"a{t}"] = m
    return cd.rep(E, dims, maps)


def free_framed(A, n=1):
    """``FramedDiagram(A, A^n)``."""
    return FramedDiagram(A, free_module(A, n))


def residue_triple(fd, E=None):
    """``(k, k, evaluation)`` style triple: ``s`` picks the first ``Hom_A(P, E)`` basis vector."""
    E = E if E is not None else top_module(fd.algebra)
    H = HomModule(fd.diagram.bimodules["a"], E)
    V = 1 if H.dim else 0
    s = Matrix.unit_columns(fd.k.field, H.dim, [0]) if H.dim else Matrix.zeros(fd.k.field, 0, 0)
    return fd.triple(E, V, s)


__all__ = [
    "VectRep",
    "VectDiagram",
    "vect_data",
    "euler_oracle",
    "random_vect_data",
    "random_vect_rep",
    "random_vect_diagram",
    "vect_shape",
    "SHAPES",
    "FramedDiagram",
    "FramedReport",
    "build_framed",
    "framed_les",
    "random_framed_triple",
    "free_framed",
    "residue_triple",
    "ChainDiagram",
    "build_chain",
    "random_chain_rep",
]
