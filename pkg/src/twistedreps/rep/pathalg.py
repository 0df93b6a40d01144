"""Representations as modules over one algebra, for an independent Ext.

``P = (+)_i sigma_!(i, A_i)`` is a projective generator of the category of
representations, so ``X |-> Hom_R(P, X)`` identifies representations with
right modules over ``T = End_R(P)`` (product ``t * s = t o s``, action
``phi . t = phi o t``).  Ext over ``T`` is then Yoneda Ext in the
representation category and is computed from a projective resolution,
with no reference to the long exact sequences.
"""

from __future__ import annotations

from twistedreps.algebra.core import Algebra, Module, free_module
from twistedreps.algebra.ext import ExtGroup, ProjectiveResolution
from twistedreps.linalg import (
    Coordinates,
    Matrix,
    cokernel_projection,
    hstack,
    kernel_basis,
    vstack,
)
from twistedreps.rep.induction import sigma_shriek
from twistedreps.rep.representation import (
    DirectSumRep,
    RepMorphism,
    hom_rep_matrix,
    morphism_from_vector,
)


class TwistedPathAlgebra:
    def __init__(self, d):
        d.quiver.require_acyclic("the endomorphism algebra of the projective generator")
        self.diagram = d
        f = d.field
        parts = [sigma_shriek(d, i, free_module(d.algebras[i], 1)) for i in d.vertices]
        gsum = DirectSumRep(parts, diagram=d)
        self.generator = P = gsum.rep
        B = hom_rep_matrix(P, P)
        self.basis = B
        coords = Coordinates(B)
        mors = [morphism_from_vector(P, P, B.col(t), check=False) for t in range(B.cols)]
        self._mors = mors
        n = B.cols
        struct = f.zeros((n, n, n))
        for s in range(n):
            prods = hstack([(mors[s] @ mors[t]).vector() for t in range(n)], field=f, rows=B.rows)
            c = coords(prods)
            for t in range(n):
                struct[s, t, :] = c.a[:, t]
        unit = coords(RepMorphism.identity(P).vector())
        radical = self._radical(gsum, mors)
        idems = [coords((gsum.inclusion(t) @ gsum.projection(t)).vector())
                 for t in range(len(parts))]
        idems = [e.a[:, 0] for e in idems if not e.is_zero()]
        self.algebra = Algebra(f, struct, unit.a[:, 0], radical=radical, name="End(P)",
                               idempotents=idems, check=True)

    def _radical(self, gsum, mors):
        """Endomorphisms whose vertex-to-itself parts lie in the vertex radicals.

        The trivial-path summand of ``sigma_!(i, A_i)`` at ``i`` is ``A_i``;
        ``phi`` sends its unit to some ``a_i`` there, and ``phi`` is radical
        iff every ``a_i`` is.
        """
        d = self.diagram
        f = d.field
        rows = []
        for t, v in enumerate(d.vertices):
            A = d.algebras[v]
            J = A.effective_radical()
            if J is None:
                return None
            S = gsum.sums[v]
            start = S.offsets[t]  # trivial path comes first in the part for v
            unit = Matrix.unit_columns(f, S.dim, [start]) if A.dim else Matrix.zeros(f, S.dim, 0)
            pick = Matrix.unit_columns(f, S.dim, range(start, start + A.dim)).T
            C = cokernel_projection(J)
            vals = hstack([C @ pick @ phi.components[v] @ unit for phi in mors], field=f, rows=C.rows)
            rows.append(vals)
        system = vstack(rows, field=f, cols=len(mors))
        return kernel_basis(system)

    @property
    def dim(self):
        return self.algebra.dim

    def module_of(self, X):
        """``Hom_R(P, X)`` as a right module over the endomorphism algebra."""
        f = self.diagram.field
        P = self.generator
        H = hom_rep_matrix(P, X)
        coords = Coordinates(H)
        phis = [morphism_from_vector(P, X, H.col(r), check=False) for r in range(H.cols)]
        stack = []
        for t in range(self.dim):
            moved = hstack([(phi @ self._mors[t]).vector() for phi in phis], field=f, rows=H.rows)
            stack.append(coords(moved))
        if not stack:
            stack = f.zeros((0, H.cols, H.cols))
        return Module(self.algebra, stack, check=True)

    def ext_dims(self, X, Y, max_degree=4):
        MX, MY = self.module_of(X), self.module_of(Y)
        res = ProjectiveResolution(MX, max_degree + 1)
        return [ExtGroup(res, MY, k).dim for k in range(max_degree + 1)]


def yoneda_ext_dims(X, Y, max_degree=4, algebra=None):
    T = algebra or TwistedPathAlgebra(X.diagram)
    return T.ext_dims(X, Y, max_degree)
