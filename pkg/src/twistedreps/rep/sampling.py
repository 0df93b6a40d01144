"""Seeded random modules, representations and morphisms, and the
projectivity / injectivity witnesses built on them.

All randomness flows through a ``random.Random`` so a fixed seed reproduces
the same samples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from twistedreps.algebra.core import (
    dualize,
    free_module,
    hom_basis_matrix,
    quotient_module,
    unvec,
    zero_module,
)
from twistedreps.linalg import Matrix, random_matrix
from twistedreps.rep.induction import sigma_shriek, sigma_star
from twistedreps.rep.les import available_variants, ext_dims_rep
from twistedreps.rep.representation import (
    Representation,
    hom_rep_matrix,
    morphism_from_vector,
)


def rng_from(seed):
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def top_module(A):
    """``A / rad A``, or ``A`` itself when no radical is known."""
    P = free_module(A, 1)
    J = A.effective_radical()
    if J is None:
        return P
    return quotient_module(P, J)[0]


def random_module(A, rng, max_dim=4):
    """A quotient of a free module, of dimension at most ``max_dim``."""
    f = A.field
    if A.dim == 1:
        n = rng.randint(0, max_dim)
        return free_module(A, n)
    for _ in range(8):
        n = rng.randint(1, 2)
        P = free_module(A, n)
        r = rng.randint(0, 2)
        Q = quotient_module(P, random_matrix(f, rng, P.dim, r))[0] if r else P
        if Q.dim <= max_dim:
            return Q
    return top_module(A) if top_module(A).dim <= max_dim else zero_module(A)


def random_combination(basis, rng, field):
    """Random linear combination of the columns of ``basis`` as one column."""
    c = random_matrix(field, rng, basis.cols, 1)
    return basis @ c


def random_module_map(M, N, rng):
    f = M.field
    K = hom_basis_matrix(M, N)
    if K.cols == 0:
        return Matrix.zeros(f, N.dim, M.dim)
    return unvec(random_combination(K, rng, f), N.dim, M.dim)


def random_rep(d, rng, max_dim=4, modules=None):
    """Random modules per vertex and random ``Psi``-form structure maps."""
    from twistedreps.algebra.functors import TensorProduct

    rng = rng_from(rng)
    mods = dict(modules or {})
    for v in d.vertices:
        if v not in mods:
            mods[v] = random_module(d.algebras[v], rng, max_dim)
    psi, tensors = {}, {}
    for a in d.arrows:
        T = TensorProduct(mods[a.source], d.bimodules[a.label])
        psi[a.label] = random_module_map(T.module, mods[a.target], rng)
        tensors[a.label] = T
    return Representation(d, mods, psi=psi, tensors=tensors, check=False)


def random_morphism(X, Y, rng):
    """Random element of ``Hom_R(X, Y)`` (zero if the space is zero)."""
    rng = rng_from(rng)
    B = hom_rep_matrix(X, Y)
    if B.cols == 0:
        v = Matrix.zeros(X.field, B.rows, 1)
    else:
        v = random_combination(B, rng, X.field)
    return morphism_from_vector(X, Y, v, check=False)


# -- witness families ----------------------------------------------------------


def injective_module(A):
    """``(A^op)* ``: the dual of the free module of rank one over ``A^op``."""
    return dualize(free_module(A.opposite(), 1))


def sample_family(d, seed=0, randoms=4, max_dim=3):
    """Deterministic list of ``(name, representation)`` pairs for Ext sweeps."""
    d.quiver.require_acyclic("the sample family")
    fam = []
    for v in d.vertices:
        A = d.algebras[v]
        fam.append((f"shriek({v},top)", sigma_shriek(d, v, top_module(A))))
        fam.append((f"shriek({v},free)", sigma_shriek(d, v, free_module(A, 1))))
        fam.append((f"star({v},top)", sigma_star(d, v, top_module(A))))
        fam.append((f"star({v},dualfree)", sigma_star(d, v, injective_module(A))))
    rng = rng_from(seed)
    for t in range(randoms):
        fam.append((f"random[{t}]", random_rep(d, rng, max_dim)))
    return fam


def ext_dims_any(X, Y, max_degree=1):
    """Ext dimensions from the long exact sequence when a variant applies,
    otherwise from the endomorphism algebra of the projective generator."""
    vs = available_variants(X.diagram)
    if vs:
        return ext_dims_rep(X, Y, vs[0], max_degree)
    from twistedreps.rep.pathalg import yoneda_ext_dims

    return yoneda_ext_dims(X, Y, max_degree)


@dataclass
class WitnessReport:
    ok: bool
    checked: int
    witness: dict = field(default_factory=dict)


def _sweep(pairs, degree):
    checked = 0
    for name, X, Y in pairs:
        dims = ext_dims_any(X, Y, degree)
        checked += 1
        if any(dims[1:]):
            return WitnessReport(False, checked, {"sample": name, "ext_dims": dims})
    return WitnessReport(True, checked)


def projectivity_test(d, i, P, family=None, degree=1, seed=0):
    """``Ext^{1..degree}_R(sigma_! P, Y) = 0`` for every ``Y`` in the family."""
    X = sigma_shriek(d, i, P)
    fam = family if family is not None else sample_family(d, seed)
    return _sweep([(name, X, Y) for name, Y in fam], degree)


def injectivity_test(d, i, I, family=None, degree=1, seed=0):
    """``Ext^{1..degree}_R(Y, sigma_* I) = 0`` for every ``Y`` in the family."""
    Z = sigma_star(d, i, I)
    fam = family if family is not None else sample_family(d, seed)
    return _sweep([(name, Y, Z) for name, Y in fam], degree)
