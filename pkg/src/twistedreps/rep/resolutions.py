"""Standard resolution and coresolution of a representation.

Resolution:   0 -> (+)_{a:i->j} sigma_!(j, Psi_a X_i) -beta-> (+)_i sigma_!(i, X_i) -gamma-> X -> 0
Coresolution: 0 -> X -gamma-> (+)_i sigma_*(i, X_i) -beta-> (+)_{a:i->j} sigma_*(i, Phi_a X_j) -> 0

On the summand ``Psi_p Psi_a X_i`` the map ``beta`` is ``(Id, -Psi_p X_a)``
into ``Psi_{ap} X_i (+) Psi_p X_j``; ``gamma`` is ``X_p`` on ``Psi_p X_j``.
The coresolution uses the dual formulas.  Exactness is checked by ranks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from twistedreps.diagram import phi_on_path_map, psi_on_path_map
from twistedreps.errors import InvariantBreach
from twistedreps.linalg import Matrix
from twistedreps.rep.induction import Coinduced, Induced
from twistedreps.rep.representation import DirectSumRep, RepMorphism


@dataclass
class ResolutionReport:
    kind: str
    left: object
    middle: object
    right: object
    beta: RepMorphism
    gamma: RepMorphism
    composite_zero: bool = True
    morphisms_valid: bool = True
    exact: dict = field(default_factory=dict)
    problems: list = field(default_factory=list)

    @property
    def ok(self):
        return self.composite_zero and self.morphisms_valid and all(
            all(v.values()) for v in self.exact.values()
        )

    def term_dims(self):
        return {
            "left": self.left.dims(),
            "middle": self.middle.dims(),
            "right": self.right.dims(),
        }


def _same(M, N, what):
    if not M.same_as(N):
        raise InvariantBreach(f"{what}: identified modules differ")


def _verify(report, first, second):
    """Fill in the checks for ``0 -> L -first-> M -second-> R -> 0``."""
    for name, mor in (("beta", report.beta), ("gamma", report.gamma)):
        bad = mor.violations()
        if bad:
            report.morphisms_valid = False
            report.problems.append(f"{name}: {bad[0]}")
    comp = second @ first
    if not comp.is_zero():
        report.composite_zero = False
        report.problems.append("composite of the two maps is not zero")
    d = report.beta.diagram
    for v in d.vertices:
        f, g = first.components[v], second.components[v]
        mid = f.rows
        verdict = {
            "injective": f.rank() == f.cols,
            "middle": f.rank() + g.rank() == mid and (g @ f).is_zero(),
            "surjective": g.rank() == g.rows,
        }
        report.exact[v] = verdict
        for key, good in verdict.items():
            if not good:
                report.problems.append(f"vertex {v!r}: not {key}")
    return report


def standard_resolution(X):
    d = X.diagram
    d.quiver.require_acyclic("the standard resolution")
    f = d.field
    mids = [Induced(d, i, X.components[i]) for i in d.vertices]
    mid_sum = DirectSumRep([m.rep for m in mids], diagram=d)
    arrows = list(d.arrows)
    lefts = [Induced(d, a.target, X.tensors[a.label].module) for a in arrows]
    left_sum = DirectSumRep([m.rep for m in lefts], diagram=d) if lefts else None
    vidx = {v: t for t, v in enumerate(d.vertices)}

    gamma = {}
    for k in d.vertices:
        S = mid_sum.sums[k]
        out = Matrix.zeros(f, X.components[k].dim, S.dim)
        for t, ind in enumerate(mids):
            i = ind.vertex
            inner = ind.sums[k]
            for s, p in enumerate(ind.paths[k]):
                _same(ind.images[p].module, X.psi_image(p, start=i).module, f"Psi_{p} X_{i}")
                block = X.psi_composite(p, start=i) @ inner.projection(s) @ S.projection(t)
                out = out + block
        gamma[k] = out

    beta = {}
    for k in d.vertices:
        Sm = mid_sum.sums[k]
        Sl = left_sum.sums[k] if left_sum else None
        out = Matrix.zeros(f, Sm.dim, Sl.dim if Sl else 0)
        for t, (a, ind) in enumerate(zip(arrows, lefts)):
            i, j = a.source, a.target
            inner = ind.sums[k]
            mid_i, mid_j = mids[vidx[i]], mids[vidx[j]]
            for s, p in enumerate(ind.paths[k]):
                src = ind.images[p]  # Psi_p Psi_a X_i
                from_left = inner.projection(s) @ Sl.projection(t)
                ap = (a.label,) + p
                ti = mid_i.summand(k, ap)
                _same(src.module, mid_i.images[ap].module, f"Psi_{p} Psi_{a.label} X_{i}")
                ident = Sm.inclusion(vidx[i]) @ mid_i.sums[k].inclusion(ti)
                tj = mid_j.summand(k, p)
                moved = psi_on_path_map(X.psi[a.label], src, mid_j.images[p])
                other = Sm.inclusion(vidx[j]) @ mid_j.sums[k].inclusion(tj) @ moved
                out = out + (ident - other) @ from_left
        beta[k] = out

    left_rep = left_sum.rep if left_sum else _zero(d)
    b = RepMorphism(left_rep, mid_sum.rep, beta, check=False)
    g = RepMorphism(mid_sum.rep, X, gamma, check=False)
    report = ResolutionReport("resolution", left_rep, mid_sum.rep, X, b, g)
    return _verify(report, b, g)


def standard_coresolution(X):
    d = X.diagram
    d.quiver.require_acyclic("the standard coresolution")
    f = d.field
    mids = [Coinduced(d, i, X.components[i]) for i in d.vertices]
    mid_sum = DirectSumRep([m.rep for m in mids], diagram=d)
    arrows = list(d.arrows)
    rights = [Coinduced(d, a.source, X.homs[a.label].module) for a in arrows]
    right_sum = DirectSumRep([m.rep for m in rights], diagram=d) if rights else None
    vidx = {v: t for t, v in enumerate(d.vertices)}

    gamma = {}
    for k in d.vertices:
        S = mid_sum.sums[k]
        out = Matrix.zeros(f, S.dim, X.components[k].dim)
        for t, co in enumerate(mids):
            i = co.vertex
            inner = co.sums[k]
            for s, q in enumerate(co.paths[k]):
                _same(co.images[q].module, X.phi_image(q, end=i).module, f"Phi_{q} X_{i}")
                block = S.inclusion(t) @ inner.inclusion(s) @ X.phi_composite(q, end=i)
                out = out + block
        gamma[k] = out

    beta = {}
    for k in d.vertices:
        Sm = mid_sum.sums[k]
        Sr = right_sum.sums[k] if right_sum else None
        out = Matrix.zeros(f, Sr.dim if Sr else 0, Sm.dim)
        for t, (a, co) in enumerate(zip(arrows, rights)):
            i, j = a.source, a.target
            inner = co.sums[k]
            mid_i, mid_j = mids[vidx[i]], mids[vidx[j]]
            for s, q in enumerate(co.paths[k]):
                tgt = co.images[q]  # Phi_q Phi_a X_j
                into_right = Sr.inclusion(t) @ inner.inclusion(s)
                qa = q + (a.label,)
                tj = mid_j.summand(k, qa)
                _same(tgt.module, mid_j.images[qa].module, f"Phi_{q} Phi_{a.label} X_{j}")
                ident = mid_j.sums[k].projection(tj) @ Sm.projection(vidx[j])
                ti = mid_i.summand(k, q)
                moved = phi_on_path_map(X.phi[a.label], mid_i.images[q], tgt)
                other = moved @ mid_i.sums[k].projection(ti) @ Sm.projection(vidx[i])
                out = out + into_right @ (ident - other)
        beta[k] = out

    right_rep = right_sum.rep if right_sum else _zero(d)
    g = RepMorphism(X, mid_sum.rep, gamma, check=False)
    b = RepMorphism(mid_sum.rep, right_rep, beta, check=False)
    report = ResolutionReport("coresolution", X, mid_sum.rep, right_rep, b, g)
    return _verify(report, g, b)


def _zero(d):
    from twistedreps.rep.representation import zero_rep

    return zero_rep(d)
