"""Duality: representations of a diagram against those of its opposite.

``X`` goes to ``X*`` over the opposite diagram (reversed arrows, opposite
algebras, bimodules with sides swapped).  For ``a : i -> j`` the dual
structure map is ``X_j* -> (X_i (x) N_a)* = Hom(N_a^op, X_i*)``, the
transpose of ``X_a^flat`` followed by the currying isomorphism.
"""

from __future__ import annotations

from twistedreps.algebra.core import dualize
from twistedreps.algebra.functors import HomModule
from twistedreps.rep.representation import RepMorphism, Representation


def currying(T, H):
    """``(M (x) N)* -> Hom(N^op, M*)`` in the bases of ``T`` and ``H``."""
    return H.coords(T.proj.T)


def dualize_rep(X):
    d = X.diagram
    dop = d.opposite()
    mods = {v: dualize(M) for v, M in X.components.items()}
    phi, homs = {}, {}
    for a in d.arrows:
        lab = a.label
        H = HomModule(dop.bimodules[lab], mods[a.source])
        phi[lab] = currying(X.tensors[lab], H) @ X.psi[lab].T
        homs[lab] = H
    label = f"{X.label}*" if X.label else None
    return Representation(dop, mods, phi=phi, homs=homs, label=label, check=False)


def dualize_rep_morphism(f, source_dual=None, target_dual=None):
    """``f : X -> Y`` gives ``f* : Y* -> X*``."""
    Ys = target_dual or dualize_rep(f.target)
    Xs = source_dual or dualize_rep(f.source)
    comps = {v: m.T for v, m in f.components.items()}
    return RepMorphism(Ys, Xs, comps, check=False)
