"""JSON documents describing diagrams and representations, and canonical
report serialization.

Document layout (all keys required unless marked optional)::

    {
      "schema": "twistedreps.document/1",
      "field": "Q" | "F<p>",
      "algebras": [{"label", "dim", "structure": [[i, j, k, c], ...], "unit": [...],
                    "basis"?: [...], "radical"?: [[...], ...], "idempotents"?: [[...], ...]}],
      "modules": [{"label", "algebra", "dim", "action": [matrix per basis element]}],
      "bimodules": [{"label", "left", "right", "dim", "left_action": [...], "right_action": [...]}],
      "quiver": {"vertices": [{"label", "algebra"}], "arrows": [{"label", "source", "target", "bimodule"}]},
      "representations": [{"label", "form": "psi" | "phi", "modules": {vertex: module},
                           "maps": {arrow: ...}}]
    }

Matrices are lists of rows.  Scalars are integers for prime fields and
integers or ``"num/den"`` strings for the rationals; floats are rejected.

Structure maps are given independently of any internal basis choice:

* ``psi``: the ``X_j.dim x (X_i.dim * N.dim)`` matrix of the balanced map on
  ``X_i (x)_k N`` (column ``x * N.dim + n`` is the image of ``e_x (x) e_n``);
* ``phi``: a list of ``X_i.dim`` matrices, each ``X_j.dim x N.dim``, the
  ``B``-linear map ``N -> X_j`` assigned to each basis vector of ``X_i``.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from twistedreps.algebra.core import Algebra, Bimodule, Module
from twistedreps.diagram import DiagramSpec, Quiver
from twistedreps.errors import DocumentError, TwistedRepsError
from twistedreps.linalg import QQ, GF, Matrix, hstack
from twistedreps.rep.representation import Representation

DOCUMENT_SCHEMA = "twistedreps.document/1"
REPORT_SCHEMA = "twistedreps.report/1"


# -- scalars and matrices --------------------------------------------------------


def parse_field(spec):
    if isinstance(spec, dict):
        kind = spec.get("kind")
        if kind == "Q":
            return QQ
        if kind == "Fp":
            return GF(int(spec["p"]))
        raise DocumentError("field", f"unknown field kind {kind!r}")
    s = str(spec).strip()
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("F") or s.startswith("GF"):
        try:
            return GF(int(s.lstrip("GF")))
        except ValueError as e:
            raise DocumentError("field", str(e)) from None
    raise DocumentError("field", f"unknown field {spec!r}")


def field_name(f):
    return str(f)


def parse_scalar(f, x, where):
    if isinstance(x, bool) or isinstance(x, float):
        raise DocumentError(where, f"scalar {x!r} is not exact")
    if isinstance(x, int):
        return f(x)
    if isinstance(x, str):
        try:
            q = Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise DocumentError(where, f"bad scalar {x!r}") from None
        if f.p and q.denominator % f.p == 0:
            raise DocumentError(where, f"denominator of {x!r} vanishes mod {f.p}")
        return f(q)
    raise DocumentError(where, f"bad scalar {x!r}")


def parse_matrix(f, data, rows, cols, where):
    if not isinstance(data, list):
        raise DocumentError(where, "matrix must be a list of rows")
    if rows == 0:
        if data != []:
            raise DocumentError(where, f"expected 0 rows, got {len(data)}")
        return Matrix.zeros(f, 0, cols)
    if len(data) != rows:
        raise DocumentError(where, f"expected {rows} rows, got {len(data)}")
    out = []
    for r, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise DocumentError(f"{where}[{r}]", f"expected a row of length {cols}")
        out.append([parse_scalar(f, x, f"{where}[{r}][{c}]") for c, x in enumerate(row)])
    return Matrix(f, f.array(out, shape=(rows, cols)))


def parse_vector(f, data, n, where):
    if not isinstance(data, list) or len(data) != n:
        raise DocumentError(where, f"expected a vector of length {n}")
    return [parse_scalar(f, x, f"{where}[{t}]") for t, x in enumerate(data)]


def matrix_json(m):
    f = m.field
    return [[f.to_json(x) for x in row] for row in m.a.tolist()]


def vector_json(f, v):
    return [f.to_json(x) for x in v]


# -- documents -----------------------------------------------------------------


def _need(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise DocumentError(where, f"missing key {key!r}")
    return obj[key]


def _label(x):
    return str(x)


class Document:
    """A parsed and law-checked document."""

    def __init__(self, field, algebras, modules, bimodules, diagram, representations,
                 raw=None):
        self.field = field
        self.algebras = algebras
        self.modules = modules
        self.bimodules = bimodules
        self.diagram = diagram
        self.representations = representations
        self.raw = raw

    def rep(self, label):
        if label not in self.representations:
            raise DocumentError("representations", f"no representation labelled {label!r}")
        return self.representations[label]


def _parse_algebra(f, a, where):
    label = _label(_need(a, "label", where))
    d = _need(a, "dim", where)
    if not isinstance(d, int) or d < 1:
        raise DocumentError(f"{where}.dim", "dimension must be a positive integer")
    c = f.zeros((d, d, d))
    for t, entry in enumerate(_need(a, "structure", where)):
        w = f"{where}.structure[{t}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise DocumentError(w, "structure entries are [i, j, k, value]")
        i, j, k, val = entry
        for idx in (i, j, k):
            if not isinstance(idx, int) or not 0 <= idx < d:
                raise DocumentError(w, f"index {idx!r} out of range")
        c[i, j, k] = parse_scalar(f, val, w)
    unit = parse_vector(f, _need(a, "unit", where), d, f"{where}.unit")
    rad = a.get("radical")
    if rad is not None:
        rad = [parse_vector(f, r, d, f"{where}.radical[{t}]") for t, r in enumerate(rad)]
    idems = a.get("idempotents")
    if idems is not None:
        idems = [parse_vector(f, e, d, f"{where}.idempotents[{t}]") for t, e in enumerate(idems)]
    try:
        return label, Algebra(f, c, unit, labels=a.get("basis"), radical=rad, name=label,
                              idempotents=idems, check=True)
    except TwistedRepsError as e:
        raise DocumentError(where, str(e)) from None


def _parse_stack(f, data, count, n, where):
    if not isinstance(n, int) or n < 0:
        raise DocumentError(where, "dimension must be a non-negative integer")
    if not isinstance(data, list) or len(data) != count:
        raise DocumentError(where, f"expected {count} action matrices")
    return [parse_matrix(f, m, n, n, f"{where}[{t}]") for t, m in enumerate(data)]


def _lookup(table, key, kind, where):
    if key not in table:
        raise DocumentError(where, f"unknown {kind} {key!r}")
    return table[key]


def parse_document(doc):
    """Build a :class:`Document` from decoded JSON, re-checking every law."""
    if not isinstance(doc, dict):
        raise DocumentError("$", "document must be a JSON object")
    schema = doc.get("schema", DOCUMENT_SCHEMA)
    if schema != DOCUMENT_SCHEMA:
        raise DocumentError("schema", f"unsupported schema {schema!r}")
    f = parse_field(_need(doc, "field", "$"))

    algebras = {}
    for t, a in enumerate(doc.get("algebras", [])):
        label, A = _parse_algebra(f, a, f"algebras[{t}]")
        if label in algebras:
            raise DocumentError(f"algebras[{t}]", f"duplicate label {label!r}")
        algebras[label] = A

    modules = {}
    for t, m in enumerate(doc.get("modules", [])):
        w = f"modules[{t}]"
        label = _label(_need(m, "label", w))
        A = _lookup(algebras, _label(_need(m, "algebra", w)), "algebra", f"{w}.algebra")
        n = _need(m, "dim", w)
        stack = _parse_stack(f, _need(m, "action", w), A.dim, n, f"{w}.action")
        try:
            modules[label] = Module(A, stack, label=label, check=True)
        except TwistedRepsError as e:
            raise DocumentError(w, str(e)) from None

    bimodules = {}
    for t, b in enumerate(doc.get("bimodules", [])):
        w = f"bimodules[{t}]"
        label = _label(_need(b, "label", w))
        L = _lookup(algebras, _label(_need(b, "left", w)), "algebra", f"{w}.left")
        R = _lookup(algebras, _label(_need(b, "right", w)), "algebra", f"{w}.right")
        n = _need(b, "dim", w)
        la = _parse_stack(f, _need(b, "left_action", w), L.dim, n, f"{w}.left_action")
        ra = _parse_stack(f, _need(b, "right_action", w), R.dim, n, f"{w}.right_action")
        try:
            bimodules[label] = Bimodule(L, R, la, ra, label=label, check=True)
        except TwistedRepsError as e:
            raise DocumentError(w, str(e)) from None

    q = _need(doc, "quiver", "$")
    verts, valg = [], {}
    for t, v in enumerate(_need(q, "vertices", "quiver")):
        w = f"quiver.vertices[{t}]"
        lab = _label(_need(v, "label", w))
        verts.append(lab)
        valg[lab] = _lookup(algebras, _label(_need(v, "algebra", w)), "algebra", f"{w}.algebra")
    arrows, abim = [], {}
    for t, a in enumerate(_need(q, "arrows", "quiver")):
        w = f"quiver.arrows[{t}]"
        lab = _label(_need(a, "label", w))
        arrows.append((lab, _label(_need(a, "source", w)), _label(_need(a, "target", w))))
        abim[lab] = _lookup(bimodules, _label(_need(a, "bimodule", w)), "bimodule", f"{w}.bimodule")
    try:
        diagram = DiagramSpec(Quiver(verts, arrows), valg, abim, name=doc.get("name"))
    except TwistedRepsError as e:
        raise DocumentError("quiver", str(e)) from None

    reps = {}
    for t, r in enumerate(doc.get("representations", [])):
        w = f"representations[{t}]"
        label = _label(_need(r, "label", w))
        if label in reps:
            raise DocumentError(w, f"duplicate label {label!r}")
        reps[label] = _parse_rep(f, diagram, modules, r, w, label)
    return Document(f, algebras, modules, bimodules, diagram, reps, raw=doc)


def _parse_rep(f, d, modules, r, where, label):
    form = _need(r, "form", where)
    if form not in ("psi", "phi"):
        raise DocumentError(f"{where}.form", "form must be 'psi' or 'phi'")
    refs = _need(r, "modules", where)
    mods = {}
    for v in d.vertices:
        if v not in refs:
            raise DocumentError(f"{where}.modules", f"no module at vertex {v!r}")
        M = _lookup(modules, _label(refs[v]), "module", f"{where}.modules.{v}")
        if M.algebra != d.algebras[v]:
            raise DocumentError(f"{where}.modules.{v}", "module is over the wrong algebra")
        mods[v] = M
    maps = _need(r, "maps", where)
    from twistedreps.algebra.functors import HomModule, TensorProduct

    psi, phi, tensors, homs = {}, {}, {}, {}
    for a in d.arrows:
        w = f"{where}.maps.{a.label}"
        if a.label not in maps:
            raise DocumentError(f"{where}.maps", f"no map on arrow {a.label!r}")
        N = d.bimodules[a.label]
        Xi, Xj = mods[a.source], mods[a.target]
        T = TensorProduct(Xi, N)
        H = HomModule(N, Xj)
        tensors[a.label], homs[a.label] = T, H
        if form == "psi":
            full = parse_matrix(f, maps[a.label], Xj.dim, Xi.dim * N.dim, w)
            flat = full @ T.section
            if not flat @ T.proj == full:
                raise DocumentError(w, "map is not balanced over the vertex algebra")
            psi[a.label] = flat
        else:
            data = maps[a.label]
            if not isinstance(data, list) or len(data) != Xi.dim:
                raise DocumentError(w, f"expected {Xi.dim} matrices, one per basis vector")
            cols = []
            for x, m in enumerate(data):
                F = parse_matrix(f, m, Xj.dim, N.dim, f"{w}[{x}]")
                if not H.coords.contains(_vec(F)):
                    raise DocumentError(f"{w}[{x}]", "map is not linear over the right algebra")
                cols.append(H.coordinates_of(F))
            phi[a.label] = hstack(cols, field=f, rows=H.dim)
    return Representation(d, mods, psi=psi if form == "psi" else None,
                          phi=phi if form == "phi" else None, label=label, check=False,
                          tensors=tensors, homs=homs)


def _vec(F):
    import numpy as np

    return Matrix(F.field, np.ascontiguousarray(F.a.reshape(-1, 1)))


def load_document(path):
    """``(Document, sha256 of the bytes)`` for a JSON file."""
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise DocumentError("$", f"invalid JSON: {e}") from None
    return parse_document(doc), hashlib.sha256(data).hexdigest()


# -- emitting documents --------------------------------------------------------


class DocumentBuilder:
    """Collects algebras, modules and bimodules by identity and emits JSON."""

    def __init__(self, field):
        self.field = field
        self._algs, self._alg_json, self._mods, self._bims = [], [], [], []
        self._mod_labels, self._bim_labels = {}, {}

    def algebra(self, A):
        for other, lab in self._algs:
            if other is A or other == A:
                return lab
        lab = _unique(A.name, [lab for _, lab in self._algs])
        self._algs.append((A, lab))
        self._alg_json.append(algebra_json(A, lab))
        return lab

    def module(self, M, hint="M"):
        key = id(M)
        if key not in self._mod_labels:
            lab = _unique(M.label or hint, self._mod_labels.values())
            self._mod_labels[key] = lab
            self._mods.append({
                "label": lab,
                "algebra": self.algebra(M.algebra),
                "dim": M.dim,
                "action": [matrix_json(Matrix(M.field, M.action[i])) for i in range(M.algebra.dim)],
            })
        return self._mod_labels[key]

    def bimodule(self, N, hint="N"):
        key = id(N)
        if key not in self._bim_labels:
            lab = _unique(N.label or hint, self._bim_labels.values())
            self._bim_labels[key] = lab
            self._bims.append({
                "label": lab,
                "left": self.algebra(N.left),
                "right": self.algebra(N.right),
                "dim": N.dim,
                "left_action": [matrix_json(N.lam(i)) for i in range(N.left.dim)],
                "right_action": [matrix_json(N.rho(j)) for j in range(N.right.dim)],
            })
        return self._bim_labels[key]

    def document(self, d, reps, form="psi", name=None):
        verts = [{"label": _label(v), "algebra": self.algebra(d.algebras[v])} for v in d.vertices]
        arrows = [
            {"label": a.label, "source": _label(a.source), "target": _label(a.target),
             "bimodule": self.bimodule(d.bimodules[a.label], hint=a.label)}
            for a in d.arrows
        ]
        rjson = []
        for t, X in enumerate(reps):
            lab = X.label or f"X{t}"
            refs = {_label(v): self.module(X.components[v], hint=f"{lab}_{v}") for v in d.vertices}
            rjson.append({"label": lab, "form": form, "modules": refs, "maps": rep_maps_json(X, form)})
        out = {
            "schema": DOCUMENT_SCHEMA,
            "field": field_name(self.field),
            "algebras": self._alg_json,
            "modules": self._mods,
            "bimodules": self._bims,
            "quiver": {"vertices": verts, "arrows": arrows},
            "representations": rjson,
        }
        if name or d.name:
            out["name"] = name or d.name
        return out


def _unique(base, taken):
    taken = set(taken)
    base = str(base).replace(" ", "_")
    if base not in taken:
        return base
    t = 1
    while f"{base}_{t}" in taken:
        t += 1
    return f"{base}_{t}"


def algebra_json(A, label):
    f = A.field
    d = A.dim
    entries = []
    for i in range(d):
        for j in range(d):
            for k in range(d):
                c = A.structure[i, j, k]
                if c != 0:
                    entries.append([i, j, k, f.to_json(c)])
    out = {
        "label": label,
        "dim": d,
        "basis": list(A.labels),
        "structure": entries,
        "unit": vector_json(f, A.unit.a[:, 0]),
    }
    if A.radical is not None:
        out["radical"] = [vector_json(f, A.radical.a[:, t]) for t in range(A.radical.cols)]
    if len(A.idempotents) > 1:
        out["idempotents"] = [vector_json(f, e.a[:, 0]) for e in A.idempotents]
    return out


def rep_maps_json(X, form="psi"):
    out = {}
    for a in X.diagram.arrows:
        lab = a.label
        if form == "psi":
            out[lab] = matrix_json(X.psi[lab] @ X.tensors[lab].proj)
        else:
            H = X.homs[lab]
            phi = X.phi[lab]
            out[lab] = [matrix_json(H.element(phi.col(x))) for x in range(phi.cols)]
    return out


def document_json(d, reps, form="psi", name=None):
    return DocumentBuilder(d.field).document(d, reps, form=form, name=name)


# -- canonical JSON ------------------------------------------------------------


def canonical_json(obj):
    """Compact UTF-8 JSON with sorted keys and a trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def sha256_text(s):
    return hashlib.sha256(s.encode("utf-8")).hexdigest()
