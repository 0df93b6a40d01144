"""Representations of a diagram and their morphisms.

A representation keeps both adjoint forms of every structure map:
``psi[a] : X_i (x) N_a -> X_j`` (matrix on the basis of the tensor product
``tensors[a]``) and ``phi[a] : X_i -> Hom(N_a, X_j)`` (coordinates in the
basis of ``homs[a]``).  Composites along paths are materialized on demand.
"""

from __future__ import annotations

from twistedreps.algebra.core import (
    DirectSum,
    hom_basis_matrix,
    is_module_map,
    kernel_module,
    quotient_module,
    unvec,
    vec,
)
from twistedreps.algebra.functors import (
    HomModule,
    TensorProduct,
    adjoint_flat_to_sharp,
    adjoint_sharp_to_flat,
)
from twistedreps.diagram import PhiImage, PsiImage
from twistedreps.errors import (
    AlgebraMismatch,
    DiagramMismatch,
    DimensionMismatch,
    InvariantBreach,
    LawViolation,
    UniquenessFailure,
)
from twistedreps.linalg import Matrix, hstack, kernel_basis, kron, solve, vstack


class Representation:
    """Modules ``X_i`` with structure maps in both adjoint forms.

    Give exactly one of ``psi`` or ``phi`` (dicts keyed by arrow label); the
    other form is computed by adjoint transposition.  Giving both is allowed
    and their agreement is then part of :func:`validate`.
    """

    def __init__(self, diagram, modules, psi=None, phi=None, label=None, check=True,
                 tensors=None, homs=None):
        if psi is None and phi is None and diagram.arrows:
            raise ValueError("structure maps missing")
        self.diagram = diagram
        self.label = label
        self.components = {v: modules[v] for v in diagram.vertices}
        for v, M in self.components.items():
            if M.algebra != diagram.algebras[v]:
                raise AlgebraMismatch(f"component at {v!r} is not over {diagram.algebras[v].name}")
        self.tensors = {}
        self.homs = {}
        for a in diagram.arrows:
            N = diagram.bimodules[a.label]
            T = (tensors or {}).get(a.label) or TensorProduct(self.components[a.source], N)
            H = (homs or {}).get(a.label) or HomModule(N, self.components[a.target])
            self.tensors[a.label] = T
            self.homs[a.label] = H
        self.psi = {}
        self.phi = {}
        for a in diagram.arrows:
            lab = a.label
            T, H = self.tensors[lab], self.homs[lab]
            xi, xj = self.components[a.source].dim, self.components[a.target].dim
            if psi is not None and lab in psi:
                g = psi[lab]
                if g.shape != (xj, T.dim):
                    raise DimensionMismatch(f"psi map on {lab!r} has shape {g.shape}, need {(xj, T.dim)}")
                self.psi[lab] = g
            if phi is not None and lab in phi:
                h = phi[lab]
                if h.shape != (H.dim, xi):
                    raise DimensionMismatch(f"phi map on {lab!r} has shape {h.shape}, need {(H.dim, xi)}")
                self.phi[lab] = h
            if lab not in self.psi and lab not in self.phi:
                raise ValueError(f"no structure map on arrow {lab!r}")
            if lab not in self.phi:
                self.phi[lab] = adjoint_flat_to_sharp(T, H, self.psi[lab])
            if lab not in self.psi:
                self.psi[lab] = adjoint_sharp_to_flat(T, H, self.phi[lab])
        self._psi_img = {}
        self._phi_img = {}
        self._psi_comp = {}
        self._phi_comp = {}
        if check:
            bad = validate(self)
            if bad:
                raise LawViolation("; ".join(f"{v['where']}: {v['what']}" for v in bad))

    @classmethod
    def from_psi(cls, diagram, modules, maps, **kw):
        return cls(diagram, modules, psi=maps, **kw)

    @classmethod
    def from_phi(cls, diagram, modules, maps, **kw):
        return cls(diagram, modules, phi=maps, **kw)

    def __repr__(self):
        dims = [self.components[v].dim for v in self.diagram.vertices]
        name = f" {self.label!r}" if self.label else ""
        return f"Representation{name}(dims={dims})"

    @property
    def field(self):
        return self.diagram.field

    def dims(self):
        return [self.components[v].dim for v in self.diagram.vertices]

    def total_dim(self):
        return sum(self.dims())

    # -- composites along paths ------------------------------------------------

    def psi_image(self, path, start=None):
        """``Psi_p X_i`` for a path starting at ``i`` (give ``start`` for trivial paths)."""
        path = tuple(path)
        if not path:
            return PsiImage(self.diagram, (), self.components[start])
        if path not in self._psi_img:
            if len(path) == 1:
                img = PsiImage.__new__(PsiImage)
                img.path = path
                img.base = self.components[self.diagram.quiver.path_source(path)]
                T = self.tensors[path[0]]
                img.stages = [T]
                img.module = T.module
                img.dim = T.dim
            else:
                img = self.psi_image(path[:-1]).extend(self.diagram, path[-1])
            self._psi_img[path] = img
        return self._psi_img[path]

    def phi_image(self, path, end=None):
        """``Phi_p X_j`` for a path ending at ``j``."""
        path = tuple(path)
        if not path:
            return PhiImage(self.diagram, (), self.components[end])
        if path not in self._phi_img:
            if len(path) == 1:
                img = PhiImage.__new__(PhiImage)
                img.path = path
                img.base = self.components[self.diagram.quiver.path_target(path)]
                H = self.homs[path[0]]
                img.stages = [H]
                img.module = H.module
                img.dim = H.dim
            else:
                img = self.phi_image(path[1:]).extend(self.diagram, path[0])
            self._phi_img[path] = img
        return self._phi_img[path]

    def psi_composite(self, path, start=None):
        """``X_p^flat : Psi_p X_i -> X_j`` via ``X_{p b} = X_b o Psi_b(X_p)``."""
        path = tuple(path)
        if not path:
            return Matrix.identity(self.field, self.components[start].dim)
        if path not in self._psi_comp:
            if len(path) == 1:
                out = self.psi[path[0]]
            else:
                b = path[-1]
                inner = self.psi_composite(path[:-1])
                moved = self.psi_image(path).stages[-1].map_left(inner, self.tensors[b])
                out = self.psi[b] @ moved
            self._psi_comp[path] = out
        return self._psi_comp[path]

    def phi_composite(self, path, end=None):
        """``X_p : X_i -> Phi_p X_j`` via ``X_{a q} = Phi_a(X_q) o X_a``."""
        path = tuple(path)
        if not path:
            return Matrix.identity(self.field, self.components[end].dim)
        if path not in self._phi_comp:
            if len(path) == 1:
                out = self.phi[path[0]]
            else:
                a = path[0]
                inner = self.phi_composite(path[1:])
                moved = self.homs[a].map_right(inner, self.phi_image(path).stages[0])
                out = moved @ self.phi[a]
            self._phi_comp[path] = out
        return self._phi_comp[path]

    def path_sharp(self, path, g):
        """Adjoint transpose along a whole path: ``Psi_p X_i -> X_j`` to ``X_i -> Phi_p X_j``."""
        path = tuple(path)
        psi_st = self.psi_image(path).stages
        phi_st = self.phi_image(path).stages
        h = g
        for T, H in zip(reversed(psi_st), reversed(phi_st)):
            h = adjoint_flat_to_sharp(T, H, h)
        return h


def _violation(where, what):
    return {"where": where, "what": what}


def validate(X, max_path_length=None):
    """List of violations (empty when ``X`` is a valid representation)."""
    out = []
    d = X.diagram
    for v in d.vertices:
        M = X.components[v]
        for msg in M.violations():
            out.append(_violation(f"vertex {v!r}", msg))
    for a in d.arrows:
        lab = a.label
        T, H = X.tensors[lab], X.homs[lab]
        g, h = X.psi[lab], X.phi[lab]
        if not is_module_map(T.module, X.components[a.target], g):
            out.append(_violation(f"arrow {lab!r}", "psi-form map is not a module map"))
        if not is_module_map(X.components[a.source], H.module, h):
            out.append(_violation(f"arrow {lab!r}", "phi-form map is not a module map"))
        try:
            if not adjoint_flat_to_sharp(T, H, g) == h:
                out.append(_violation(f"arrow {lab!r}", "psi and phi forms are not adjoint transposes"))
        except ValueError as e:
            out.append(_violation(f"arrow {lab!r}", f"psi-form map does not factor through Hom: {e}"))
    if out or not d.quiver.is_acyclic():
        return out
    for i in d.vertices:
        for j in d.vertices:
            for p in d.paths(i, j):
                if len(p) < 2 or (max_path_length and len(p) > max_path_length):
                    continue
                try:
                    sharp = X.path_sharp(p, X.psi_composite(p))
                except ValueError as e:
                    out.append(_violation(f"path {'.'.join(map(str, p))}", f"composite not adjoint: {e}"))
                    continue
                if not sharp == X.phi_composite(p):
                    out.append(_violation(f"path {'.'.join(map(str, p))}", "composite forms disagree"))
    return out


# -- morphisms -----------------------------------------------------------------


class RepMorphism:
    """Family of module maps ``f_i : X_i -> Y_i`` commuting with structure maps."""

    def __init__(self, source, target, components, check=True):
        if source.diagram is not target.diagram:
            raise DiagramMismatch("morphism between representations of different diagrams")
        self.source = source
        self.target = target
        self.components = {}
        for v in source.diagram.vertices:
            m = components[v]
            want = (target.components[v].dim, source.components[v].dim)
            if m.shape != want:
                raise DimensionMismatch(f"component at {v!r} has shape {m.shape}, need {want}")
            self.components[v] = m
        if check:
            bad = self.violations()
            if bad:
                raise LawViolation("; ".join(bad))

    def __repr__(self):
        return f"RepMorphism({self.source.dims()} -> {self.target.dims()})"

    @property
    def diagram(self):
        return self.source.diagram

    def __getitem__(self, v):
        return self.components[v]

    def __matmul__(self, other):
        comps = {v: self.components[v] @ other.components[v] for v in self.diagram.vertices}
        return RepMorphism(other.source, self.target, comps, check=False)

    def __add__(self, other):
        comps = {v: self.components[v] + other.components[v] for v in self.diagram.vertices}
        return RepMorphism(self.source, self.target, comps, check=False)

    def __sub__(self, other):
        comps = {v: self.components[v] - other.components[v] for v in self.diagram.vertices}
        return RepMorphism(self.source, self.target, comps, check=False)

    def __eq__(self, other):
        return all(self.components[v] == other.components[v] for v in self.diagram.vertices)

    __hash__ = None

    def is_zero(self):
        return all(m.is_zero() for m in self.components.values())

    def vector(self):
        """Concatenated row-major vectorizations of the components."""
        f = self.diagram.field
        parts = [vec(self.components[v]) for v in self.diagram.vertices]
        return vstack(parts, field=f, cols=1)

    def violations(self):
        out = []
        X, Y = self.source, self.target
        for v in self.diagram.vertices:
            if not is_module_map(X.components[v], Y.components[v], self.components[v]):
                out.append(f"component at {v!r} is not a module map")
        for a in self.diagram.arrows:
            lab = a.label
            fi, fj = self.components[a.source], self.components[a.target]
            moved = X.tensors[lab].map_left(fi, Y.tensors[lab])
            if not fj @ X.psi[lab] == Y.psi[lab] @ moved:
                out.append(f"psi-form square fails at arrow {lab!r}")
            pushed = X.homs[lab].map_right(fj, Y.homs[lab])
            if not pushed @ X.phi[lab] == Y.phi[lab] @ fi:
                out.append(f"phi-form square fails at arrow {lab!r}")
        return out

    @classmethod
    def identity(cls, X):
        f = X.field
        return cls(X, X, {v: Matrix.identity(f, M.dim) for v, M in X.components.items()}, check=False)

    @classmethod
    def zero(cls, X, Y):
        f = X.field
        comps = {v: Matrix.zeros(f, Y.components[v].dim, X.components[v].dim) for v in X.diagram.vertices}
        return cls(X, Y, comps, check=False)


def _unpack(X, Y, v_vec):
    """Split a concatenated vectorization into per-vertex matrices."""
    comps = {}
    off = 0
    for v in X.diagram.vertices:
        r, c = Y.components[v].dim, X.components[v].dim
        comps[v] = unvec(v_vec.select_rows(range(off, off + r * c)), r, c)
        off += r * c
    return comps


def hom_rep_matrix(X, Y):
    """Columns: concatenated vectorizations of a basis of ``Hom_R(X, Y)``."""
    d = X.diagram
    if Y.diagram is not d:
        raise DiagramMismatch("representations of different diagrams")
    f = d.field
    blocks = {}
    for v in d.vertices:
        blocks[v] = hom_basis_matrix(X.components[v], Y.components[v])
    # unknowns: coefficients over the per-vertex Hom bases
    offsets = {}
    n = 0
    for v in d.vertices:
        offsets[v] = n
        n += blocks[v].cols
    rows = []
    for a in d.arrows:
        lab = a.label
        i, j = a.source, a.target
        T = X.tensors[lab]
        m = Y.components[j].dim * T.dim
        cols = [Matrix.zeros(f, m, 1) for _ in range(n)]
        for t in range(blocks[i].cols):
            Fi = unvec(blocks[i].col(t), Y.components[i].dim, X.components[i].dim)
            moved = T.map_left(Fi, Y.tensors[lab])
            cols[offsets[i] + t] = cols[offsets[i] + t] - vec(Y.psi[lab] @ moved)
        for t in range(blocks[j].cols):
            Fj = unvec(blocks[j].col(t), Y.components[j].dim, X.components[j].dim)
            cols[offsets[j] + t] = cols[offsets[j] + t] + vec(Fj @ X.psi[lab])
        rows.append(hstack(cols, field=f, rows=m))
    total = sum(Y.components[v].dim * X.components[v].dim for v in d.vertices)
    if n == 0:
        return Matrix.zeros(f, total, 0)
    system = vstack(rows, field=f, cols=n) if rows else Matrix.zeros(f, 0, n)
    K = kernel_basis(system)
    parts = []
    for v in d.vertices:
        sel = blocks[v] @ K.select_rows(range(offsets[v], offsets[v] + blocks[v].cols))
        parts.append(sel)
    return vstack(parts, field=f, cols=K.cols)


def hom_rep(X, Y):
    """Basis of ``Hom_R(X, Y)`` as :class:`RepMorphism` objects."""
    K = hom_rep_matrix(X, Y)
    return [RepMorphism(X, Y, _unpack(X, Y, K.col(t)), check=False) for t in range(K.cols)]


def hom_rep_dim(X, Y):
    return hom_rep_matrix(X, Y).cols


def morphism_from_vector(X, Y, v, check=True):
    return RepMorphism(X, Y, _unpack(X, Y, v), check=check)


# -- kernels, cokernels, exactness --------------------------------------------


def kernel(f):
    """``(K, mono)``: componentwise kernel with the induced phi-form structure."""
    X, Y = f.source, f.target
    d = X.diagram
    mods, incl = {}, {}
    for v in d.vertices:
        K, basis = kernel_module(X.components[v], Y.components[v], f.components[v])
        mods[v], incl[v] = K, basis
    phi, homs = {}, {}
    for a in d.arrows:
        lab = a.label
        N = d.bimodules[lab]
        Hk = HomModule(N, mods[a.target])
        moved = Hk.map_right(incl[a.target], X.homs[lab])  # Phi_a(iota_j), injective
        rhs = X.phi[lab] @ incl[a.source]
        if moved.rank() != moved.cols:
            raise UniquenessFailure(f"kernel structure map on {lab!r} is not unique")
        sol = solve(moved, rhs)
        if sol is None:
            raise InvariantBreach(f"kernel structure map on {lab!r} does not exist")
        phi[lab], homs[lab] = sol, Hk
    K = Representation(d, mods, phi=phi, homs=homs, check=False)
    return K, RepMorphism(K, X, incl, check=False)


def cokernel(f):
    """``(C, epi)``: componentwise cokernel with the induced psi-form structure."""
    Y = f.target
    d = Y.diagram
    mods, proj = {}, {}
    for v in d.vertices:
        Q, C = quotient_module(Y.components[v], f.components[v])
        mods[v], proj[v] = Q, C
    psi, tensors = {}, {}
    for a in d.arrows:
        lab = a.label
        N = d.bimodules[lab]
        Tc = TensorProduct(mods[a.source], N)
        moved = Y.tensors[lab].map_left(proj[a.source], Tc)  # Psi_a(pi_i), surjective
        rhs = proj[a.target] @ Y.psi[lab]
        if moved.rank() != moved.rows:
            raise UniquenessFailure(f"cokernel structure map on {lab!r} is not unique")
        sol = solve(moved.T, rhs.T)
        if sol is None:
            raise InvariantBreach(f"cokernel structure map on {lab!r} does not exist")
        psi[lab], tensors[lab] = sol.T, Tc
    C = Representation(d, mods, psi=psi, tensors=tensors, check=False)
    return C, RepMorphism(Y, C, proj, check=False)


def exactness_failures(f, g):
    """Vertices where ``X -f-> Y -g-> Z`` is not exact (image != kernel)."""
    bad = []
    for v in f.diagram.vertices:
        fv, gv = f.components[v], g.components[v]
        if not (gv @ fv).is_zero() or fv.rank() + gv.rank() != fv.rows:
            bad.append(v)
    return bad


def is_exact_at(f, g):
    return not exactness_failures(f, g)


def is_mono(f):
    return all(m.rank() == m.cols for m in f.components.values())


def is_epi(f):
    return all(m.rank() == m.rows for m in f.components.values())


# -- direct sums ---------------------------------------------------------------


class DirectSumRep:
    """``X_1 + ... + X_r`` with inclusions and projections."""

    def __init__(self, reps, diagram=None):
        reps = list(reps)
        d = diagram if diagram is not None else reps[0].diagram
        self.diagram = d
        self.summands = reps
        f = d.field
        self.sums = {
            v: DirectSum([X.components[v] for X in reps], algebra=d.algebras[v]) for v in d.vertices
        }
        mods = {v: S.module for v, S in self.sums.items()}
        psi, tensors = {}, {}
        for a in d.arrows:
            lab = a.label
            N = d.bimodules[lab]
            T = TensorProduct(mods[a.source], N)
            Si, Sj = self.sums[a.source], self.sums[a.target]
            full = Matrix.zeros(f, Sj.dim, Si.dim * N.dim)
            eye_n = Matrix.identity(f, N.dim)
            for s, X in enumerate(reps):
                piece = X.psi[lab] @ X.tensors[lab].proj @ kron(Si.projection(s), eye_n)
                full = full + Sj.inclusion(s) @ piece
            psi[lab] = full.select_columns(T.free)
            tensors[lab] = T
        self.rep = Representation(d, mods, psi=psi, tensors=tensors, check=False)

    def inclusion(self, s):
        X = self.summands[s]
        return RepMorphism(X, self.rep, {v: S.inclusion(s) for v, S in self.sums.items()}, check=False)

    def projection(self, s):
        X = self.summands[s]
        return RepMorphism(self.rep, X, {v: S.projection(s) for v, S in self.sums.items()}, check=False)


def direct_sum_rep(reps, diagram=None):
    return DirectSumRep(reps, diagram).rep


def zero_rep(d):
    from twistedreps.algebra.core import zero_module

    mods = {v: zero_module(d.algebras[v]) for v in d.vertices}
    f = d.field
    psi = {a.label: Matrix.zeros(f, 0, 0) for a in d.arrows}
    return Representation(d, mods, psi=psi, check=False)
