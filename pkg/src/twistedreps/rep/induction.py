"""Induction ``sigma_!`` and coinduction ``sigma_*`` from a single vertex.

``sigma_!(i, M)`` has component ``(+)_{p : i -> j} Psi_p M`` at ``j``;
``sigma_*(i, M)`` has component ``(+)_{q : j -> i} Phi_q M``.  Summands are
listed in path order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from twistedreps.algebra.core import DirectSum, hom_basis_matrix, unvec
from twistedreps.algebra.functors import HomModule, TensorProduct
from twistedreps.diagram import PhiImage, PsiImage, phi_on_path_map, psi_on_path_map
from twistedreps.linalg import Matrix, kron
from twistedreps.rep.representation import RepMorphism, Representation, hom_rep


class Induced:
    """``sigma_!(i, M)`` with its path-indexed summands."""

    def __init__(self, d, i, M):
        d.quiver.require_acyclic("induction")
        f = d.field
        self.diagram = d
        self.vertex = i
        self.module = M
        images = {(): PsiImage(d, (), M)}
        self.paths = {j: d.paths(i, j) for j in d.vertices}
        for j in d.vertices:
            for p in self.paths[j]:
                if p not in images:
                    images[p] = images[p[:-1]].extend(d, p[-1])
        self.images = images
        self.sums = {
            j: DirectSum([images[p].module for p in self.paths[j]], algebra=d.algebras[j])
            for j in d.vertices
        }
        mods = {j: S.module for j, S in self.sums.items()}
        psi, tensors = {}, {}
        for b in d.arrows:
            lab = b.label
            N = d.bimodules[lab]
            Sj, Sk = self.sums[b.source], self.sums[b.target]
            T = TensorProduct(mods[b.source], N)
            full = Matrix.zeros(f, Sk.dim, Sj.dim * N.dim)
            eye_n = Matrix.identity(f, N.dim)
            kpaths = self.paths[b.target]
            for s, p in enumerate(self.paths[b.source]):
                pb = p + (lab,)
                t = kpaths.index(pb)
                C = images[pb].stages[-1].proj
                full = full + Sk.inclusion(t) @ C @ kron(Sj.projection(s), eye_n)
            psi[lab] = full.select_columns(T.free)
            tensors[lab] = T
        self.rep = Representation(d, mods, psi=psi, tensors=tensors, check=False)

    def summand(self, j, p):
        return self.paths[j].index(tuple(p))

    def inclusion(self, j, p):
        return self.sums[j].inclusion(self.summand(j, p))

    def projection(self, j, p):
        return self.sums[j].projection(self.summand(j, p))


class Coinduced:
    """``sigma_*(i, M)`` with its path-indexed factors."""

    def __init__(self, d, i, M):
        d.quiver.require_acyclic("coinduction")
        f = d.field
        self.diagram = d
        self.vertex = i
        self.module = M
        images = {(): PhiImage(d, (), M)}
        self.paths = {j: d.paths(j, i) for j in d.vertices}
        # extend from the end of the path: shorter suffixes first
        allp = sorted({p for j in d.vertices for p in self.paths[j]}, key=len)
        for p in allp:
            if p not in images:
                images[p] = images[p[1:]].extend(d, p[0])
        self.images = images
        self.sums = {
            j: DirectSum([images[q].module for q in self.paths[j]], algebra=d.algebras[j])
            for j in d.vertices
        }
        mods = {j: S.module for j, S in self.sums.items()}
        phi, homs = {}, {}
        for b in d.arrows:
            lab = b.label
            N = d.bimodules[lab]
            Sj, Sk = self.sums[b.source], self.sums[b.target]
            H = HomModule(N, mods[b.target])
            full = Matrix.zeros(f, H.dim, Sj.dim)
            jpaths = self.paths[b.source]
            for t, q in enumerate(self.paths[b.target]):
                bq = (lab,) + q
                s = jpaths.index(bq)
                moved = images[bq].stages[0].map_right(Sk.inclusion(t), H)
                full = full + moved @ Sj.projection(s)
            phi[lab] = full
            homs[lab] = H
        self.rep = Representation(d, mods, phi=phi, homs=homs, check=False)

    def summand(self, j, q):
        return self.paths[j].index(tuple(q))

    def inclusion(self, j, q):
        return self.sums[j].inclusion(self.summand(j, q))

    def projection(self, j, q):
        return self.sums[j].projection(self.summand(j, q))


def sigma_shriek(d, i, M):
    return Induced(d, i, M).rep


def sigma_star(d, i, M):
    return Coinduced(d, i, M).rep


# -- the adjunctions -----------------------------------------------------------


def shriek_restrict(ind, F):
    """``Hom_R(sigma_! M, X) -> Hom(M, X_i)``: restrict to the trivial-path summand."""
    i = ind.vertex
    return F.components[i] @ ind.inclusion(i, ())


def shriek_assemble(ind, X, g):
    """``Hom(M, X_i) -> Hom_R(sigma_! M, X)``: ``X_p o Psi_p(g)`` on summand ``p``."""
    d = ind.diagram
    f = d.field
    comps = {}
    for j in d.vertices:
        S = ind.sums[j]
        out = Matrix.zeros(f, X.components[j].dim, S.dim)
        for s, p in enumerate(ind.paths[j]):
            moved = psi_on_path_map(g, ind.images[p], X.psi_image(p, start=ind.vertex))
            out = out + X.psi_composite(p, start=ind.vertex) @ moved @ S.projection(s)
        comps[j] = out
    return RepMorphism(ind.rep, X, comps, check=False)


def star_restrict(coind, F):
    """``Hom_R(X, sigma_* M) -> Hom(X_i, M)``: project to the trivial-path factor."""
    i = coind.vertex
    return coind.projection(i, ()) @ F.components[i]


def star_assemble(coind, X, g):
    """``Hom(X_i, M) -> Hom_R(X, sigma_* M)``: ``Phi_q(g) o X_q`` into factor ``q``."""
    d = coind.diagram
    f = d.field
    comps = {}
    for j in d.vertices:
        S = coind.sums[j]
        out = Matrix.zeros(f, S.dim, X.components[j].dim)
        for s, q in enumerate(coind.paths[j]):
            moved = phi_on_path_map(g, X.phi_image(q, end=coind.vertex), coind.images[q])
            out = out + S.inclusion(s) @ moved @ X.phi_composite(q, end=coind.vertex)
        comps[j] = out
    return RepMorphism(X, coind.rep, comps, check=False)


@dataclass
class AdjunctionReport:
    ok: bool
    rep_side: int
    module_side: int
    failures: list = field(default_factory=list)


def _module_hom_basis(M, N):
    K = hom_basis_matrix(M, N)
    return [unvec(K.col(t), N.dim, M.dim) for t in range(K.cols)]


def adjunction_check_shriek(d, i, M, X):
    """Verify ``Hom_R(sigma_! M, X) = Hom(M, X_i)`` in both directions on bases."""
    ind = Induced(d, i, M)
    failures = []
    rep_basis = hom_rep(ind.rep, X)
    mod_basis = _module_hom_basis(M, X.components[i])
    for t, g in enumerate(mod_basis):
        F = shriek_assemble(ind, X, g)
        bad = F.violations()
        if bad:
            failures.append(f"assembled map {t} is not a morphism: {bad[0]}")
        elif not shriek_restrict(ind, F) == g:
            failures.append(f"restrict(assemble(g_{t})) != g_{t}")
    for t, F in enumerate(rep_basis):
        if not shriek_assemble(ind, X, shriek_restrict(ind, F)) == F:
            failures.append(f"assemble(restrict(F_{t})) != F_{t}")
    if len(rep_basis) != len(mod_basis):
        failures.append(f"dimensions differ: {len(rep_basis)} vs {len(mod_basis)}")
    return AdjunctionReport(not failures, len(rep_basis), len(mod_basis), failures)


def adjunction_check_star(d, i, M, X):
    """Verify ``Hom_R(X, sigma_* M) = Hom(X_i, M)`` in both directions on bases."""
    coind = Coinduced(d, i, M)
    failures = []
    rep_basis = hom_rep(X, coind.rep)
    mod_basis = _module_hom_basis(X.components[i], M)
    for t, g in enumerate(mod_basis):
        F = star_assemble(coind, X, g)
        bad = F.violations()
        if bad:
            failures.append(f"assembled map {t} is not a morphism: {bad[0]}")
        elif not star_restrict(coind, F) == g:
            failures.append(f"restrict(assemble(g_{t})) != g_{t}")
    for t, F in enumerate(rep_basis):
        if not star_assemble(coind, X, star_restrict(coind, F)) == F:
            failures.append(f"assemble(restrict(F_{t})) != F_{t}")
    if len(rep_basis) != len(mod_basis):
        failures.append(f"dimensions differ: {len(rep_basis)} vs {len(mod_basis)}")
    return AdjunctionReport(not failures, len(rep_basis), len(mod_basis), failures)
