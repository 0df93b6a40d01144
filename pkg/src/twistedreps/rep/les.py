"""Long exact sequences for Hom/Ext between representations.

For an exact ``Psi`` (every ``N_a`` projective as a left module):

    0 -> Hom_R(X, Y) -> (+)_i Hom(X_i, Y_i) -d0-> (+)_a Hom(Psi_a X_i, Y_j) -> Ext^1_R(X, Y) -> ...

with ``d^k(e_i, e_j) = Y_a o Psi_a(e_i) - e_j o X_a`` on the arrow ``a``.  For
an exact ``Phi`` (every ``N_a`` projective as a right module) the third term
is ``(+)_a Ext^k(X_i, Phi_a Y_j)`` and ``d^k(e_i, e_j) = Y_a o e_i - Phi_a(e_j) o X_a``.

``dim Ext^k_R`` is read off as ``dim coker d^{k-1} + dim ker d^k``.  The
degree-zero term is checked against an independent solve of ``Hom_R``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from twistedreps.algebra.ext import (
    ExtCache,
    FunctorImageComplex,
    ext_induced_post,
    ext_induced_pre,
    lift_chain_map,
    post_compose_matrix,
    pullback_matrix,
    transport_cochains,
)
from twistedreps.errors import HypothesisViolated, InvariantBreach
from twistedreps.linalg import Matrix, hstack, vstack
from twistedreps.rep.representation import _unpack, hom_rep_matrix

VARIANTS = ("psi", "phi")


@dataclass
class Node:
    name: str
    degree: int
    dim: int
    rank_in: int
    rank_out: int

    @property
    def exact(self):
        return self.rank_in + self.rank_out == self.dim

    def as_dict(self):
        return {
            "name": self.name,
            "degree": self.degree,
            "dim": self.dim,
            "rank_in": self.rank_in,
            "rank_out": self.rank_out,
            "exact": self.exact,
        }


@dataclass
class LesReport:
    variant: str
    max_degree: int
    vertex_ext: dict
    arrow_ext: dict
    delta: dict
    ext_dims: list
    hom_dim: int
    nodes: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(n.exact for n in self.nodes) and all(self.checks.values())

    def delta_rank(self, k):
        return self.delta[k].rank()


def require_hypothesis(d, variant):
    """Raise :class:`HypothesisViolated` naming the first non-exact functor."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    d.quiver.require_acyclic("the long exact sequence")
    for a in d.arrows:
        c = d.certificates()[a.label]
        good = c.psi_exact if variant == "psi" else c.phi_exact
        if not good:
            raise HypothesisViolated(a.label, variant)


def hypothesis_holds(d, variant):
    try:
        require_hypothesis(d, variant)
    except HypothesisViolated:
        return False
    return True


class _Les:
    """Shared state for one long exact sequence computation."""

    def __init__(self, variant, X, Y, max_degree):
        self.variant = variant
        self.X, self.Y = X, Y
        self.d = X.diagram
        self.n = max_degree
        self.cache = ExtCache(max_degree + 1)
        self._lifts = {}

    def vertex_group(self, v, k):
        return self.cache.ext(self.X.components[v], self.Y.components[v], k)

    def arrow_group(self, a, k):
        X, Y = self.X, self.Y
        if self.variant == "psi":
            return self.cache.ext(X.tensors[a.label].module, Y.components[a.target], k)
        return self.cache.ext(X.components[a.source], Y.homs[a.label].module, k)

    # -- chain data, computed once per arrow

    def _psi_data(self, a):
        key = ("psi", a.label)
        if key not in self._lifts:
            X = self.X
            functor = self.d.psi(a.label)
            res_i = self.cache.resolution(X.components[a.source])
            res_j = self.cache.resolution(X.components[a.target])
            T = X.tensors[a.label]
            Q = self.cache.resolution(T.module)
            fc = FunctorImageComplex(functor, res_i, base=T)
            ident = Matrix.identity(self.d.field, T.dim)
            lam = lift_chain_map(Q, fc, ident, length=self.n)
            pre = lift_chain_map(Q, res_j, X.psi[a.label], length=self.n)
            self._lifts[key] = (functor, res_i, fc, Q, lam, pre)
        return self._lifts[key]

    def _phi_data(self, a):
        key = ("phi", a.label)
        if key not in self._lifts:
            X = self.X
            functor = self.d.phi(a.label)
            res_i = self.cache.resolution(X.components[a.source])
            res_j = self.cache.resolution(X.components[a.target])
            H = X.homs[a.label]
            Q = self.cache.resolution(H.module)
            fc = FunctorImageComplex(functor, res_j, base=H)
            ident = Matrix.identity(self.d.field, H.dim)
            lam = lift_chain_map(Q, fc, ident, length=self.n)
            pre = lift_chain_map(res_i, Q, X.phi[a.label], length=self.n)
            self._lifts[key] = (functor, res_j, fc, Q, lam, pre)
        return self._lifts[key]

    def source_block(self, a, k):
        """Contribution of ``Ext^k(X_i, Y_i)`` for ``a : i -> j``."""
        Y = self.Y
        src = self.vertex_group(a.source, k)
        tgt = self.arrow_group(a, k)
        if self.variant == "psi":
            functor, res_i, fc, Q, lam, _ = self._psi_data(a)
            z = transport_cochains(
                functor, res_i, fc, lam, k, Y.components[a.source], Y.tensors[a.label], src.reps
            )
            z = post_compose_matrix(Q.ranks[k], Y.psi[a.label]) @ z
            return tgt.classify(z)
        return ext_induced_post(src, tgt, Y.phi[a.label])

    def target_block(self, a, k):
        """Contribution of ``Ext^k(X_j, Y_j)`` for ``a : i -> j`` (enters with a minus sign)."""
        Y = self.Y
        src = self.vertex_group(a.target, k)
        tgt = self.arrow_group(a, k)
        if self.variant == "psi":
            *_, pre = self._psi_data(a)
            return ext_induced_pre(src, tgt, self.X.psi[a.label], lift=pre)
        functor, res_j, fc, Q, lam, pre = self._phi_data(a)
        z = transport_cochains(
            functor, res_j, fc, lam, k, Y.components[a.target], Y.homs[a.label], src.reps
        )
        z = pullback_matrix(Q.term_data[k], pre[k], Y.homs[a.label].module) @ z
        return tgt.classify(z)

    def delta(self, k):
        d = self.d
        f = d.field
        vdims = [self.vertex_group(v, k).dim for v in d.vertices]
        vidx = {v: t for t, v in enumerate(d.vertices)}
        rows = []
        for a in d.arrows:
            adim = self.arrow_group(a, k).dim
            blocks = [Matrix.zeros(f, adim, n) for n in vdims]
            s, t = vidx[a.source], vidx[a.target]
            blocks[s] = blocks[s] + self.source_block(a, k)
            blocks[t] = blocks[t] - self.target_block(a, k)
            rows.append(hstack(blocks, field=f, rows=adim))
        return vstack(rows, field=f, cols=sum(vdims))

    def restriction(self, basis):
        """Image of a basis of ``Hom_R(X, Y)`` in ``(+)_i Ext^0(X_i, Y_i)``."""
        d = self.d
        f = d.field
        parts = []
        for v in d.vertices:
            G = self.vertex_group(v, 0)
            cols = []
            for t in range(basis.cols):
                comp = _unpack(self.X, self.Y, basis.col(t))[v]
                cols.append(G.classify(G.cocycle_of_morphism(comp)))
            parts.append(hstack(cols, field=f, rows=G.dim))
        total = sum(self.vertex_group(v, 0).dim for v in d.vertices)
        return vstack(parts, field=f, cols=basis.cols) if parts else Matrix.zeros(f, total, basis.cols)


def les(variant, X, Y, max_degree=4):
    """Assemble the long exact sequence up to ``Ext^{max_degree}``."""
    if X.diagram is not Y.diagram:
        from twistedreps.errors import DiagramMismatch

        raise DiagramMismatch("representations of different diagrams")
    d = X.diagram
    require_hypothesis(d, variant)
    st = _Les(variant, X, Y, max_degree)
    vertex_ext, arrow_ext, delta = {}, {}, {}
    for k in range(max_degree + 1):
        vertex_ext[k] = [st.vertex_group(v, k).dim for v in d.vertices]
        arrow_ext[k] = [st.arrow_group(a, k).dim for a in d.arrows]
        delta[k] = st.delta(k)

    checks = {}
    basis = hom_rep_matrix(X, Y)
    hom_dim = basis.cols
    restr = st.restriction(basis)
    restr_rank = restr.rank()
    checks["restriction_injective"] = restr_rank == hom_dim
    checks["delta0_kills_hom"] = (delta[0] @ restr).is_zero()

    ranks = {k: delta[k].rank() for k in delta}
    ext_dims = []
    nodes = []
    for k in range(max_degree + 1):
        e = sum(vertex_ext[k])
        fdim = sum(arrow_ext[k])
        ker = e - ranks[k]
        coker_prev = 0 if k == 0 else sum(arrow_ext[k - 1]) - ranks[k - 1]
        r = coker_prev + ker
        ext_dims.append(r)
        if k == 0:
            nodes.append(Node("Ext_R", 0, hom_dim, 0, restr_rank))
            nodes.append(Node("vertex", 0, e, restr_rank, ranks[0]))
        else:
            nodes.append(Node("Ext_R", k, r, coker_prev, ker))
            nodes.append(Node("vertex", k, e, ker, ranks[k]))
        nodes.append(Node("arrow", k, fdim, ranks[k], fdim - ranks[k]))
    checks["hom_matches_kernel"] = ext_dims[0] == hom_dim
    if not checks["hom_matches_kernel"]:
        raise InvariantBreach(f"ker d0 has dim {ext_dims[0]} but Hom_R has dim {hom_dim}")
    return LesReport(variant, max_degree, vertex_ext, arrow_ext, delta, ext_dims, hom_dim, nodes, checks)


def ext_dims_rep(X, Y, variant="psi", max_degree=4):
    """``[dim Ext^k_R(X, Y) for k <= max_degree]``; ``variant='both'`` cross-checks."""
    if variant == "both":
        a = les("psi", X, Y, max_degree).ext_dims
        b = les("phi", X, Y, max_degree).ext_dims
        if a != b:
            raise InvariantBreach(f"variants disagree: psi {a}, phi {b}")
        return a
    return les(variant, X, Y, max_degree).ext_dims


def ext_dim_rep(k, X, Y, variant="psi"):
    return ext_dims_rep(X, Y, variant, max_degree=max(k, 0))[k]


def available_variants(d):
    return [v for v in VARIANTS if hypothesis_holds(d, v)]


def preferred_variant(d):
    vs = available_variants(d)
    if not vs:
        a = d.arrows[0].label if d.arrows else None
        for lab, c in d.certificates().items():
            if not c.psi_exact and not c.phi_exact:
                a = lab
                break
        raise HypothesisViolated(a, "psi and phi")
    return vs[0]
