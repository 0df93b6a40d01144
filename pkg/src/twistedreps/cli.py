"""Command line front-end.

Every command except ``preset`` prints a JSON report (sorted keys) and exits
with 0 on success, 1 on a parse or validation error, 2 when a long exact
sequence is requested without its exactness hypothesis, and 3 when an
internal invariant fails.  ``preset`` prints a document.
"""

from __future__ import annotations

import argparse
import sys

from twistedreps import __version__
from twistedreps.algebra.library import (
    dual_numbers,
    ground_field,
    truncated_polynomial,
    upper_triangular,
)
from twistedreps.errors import (
    FunctorNotExact,
    HypothesisViolated,
    InvariantBreach,
    LiftFailure,
    TwistedRepsError,
    UniquenessFailure,
)
from twistedreps.io import (
    REPORT_SCHEMA,
    canonical_json,
    document_json,
    field_name,
    load_document,
    matrix_json,
    parse_field,
)

EXIT_OK, EXIT_INVALID, EXIT_HYPOTHESIS, EXIT_BREACH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- report helpers ------------------------------------------------------------


def _certificates(d):
    return {
        lab: {"psi_exact": c.psi_exact, "phi_exact": c.phi_exact}
        for lab, c in sorted(d.certificates().items())
    }


def _dims(X):
    return {str(v): n for v, n in zip(X.diagram.vertices, X.dims())}


def _morphism_json(F):
    return {str(v): matrix_json(m) for v, m in F.components.items()}


def _les_json(rep, emit):
    out = {
        "variant": rep.variant,
        "max_degree": rep.max_degree,
        "ext_dims": rep.ext_dims,
        "hom_dim": rep.hom_dim,
        "vertex_ext": {str(k): v for k, v in rep.vertex_ext.items()},
        "arrow_ext": {str(k): v for k, v in rep.arrow_ext.items()},
        "delta_ranks": {str(k): m.rank() for k, m in rep.delta.items()},
        "nodes": [n.as_dict() for n in rep.nodes],
        "checks": rep.checks,
        "exact": rep.ok,
    }
    if emit:
        out["delta"] = {str(k): matrix_json(m) for k, m in rep.delta.items()}
    return out


def _resolution_json(r, emit):
    out = {
        "kind": r.kind,
        "term_dims": {"left": _dims(r.left), "middle": _dims(r.middle), "right": _dims(r.right)},
        "exact": {str(v): verdict for v, verdict in r.exact.items()},
        "composite_zero": r.composite_zero,
        "morphisms_valid": r.morphisms_valid,
        "problems": r.problems,
        "ok": r.ok,
    }
    if emit:
        out["beta"] = _morphism_json(r.beta)
        out["gamma"] = _morphism_json(r.gamma)
    return out


def _require_valid(*reps):
    from twistedreps.rep.representation import validate

    for X in reps:
        bad = validate(X)
        if bad:
            from twistedreps.errors import DocumentError

            first = bad[0]
            raise DocumentError(f"representations.{X.label}", f"{first['where']}: {first['what']}")


def _variants(d, requested):
    from twistedreps.rep.les import VARIANTS, preferred_variant

    if requested in (None, "auto"):
        return [preferred_variant(d)]
    if requested == "both":
        return list(VARIANTS)
    return [requested]


# -- commands ------------------------------------------------------------------


def cmd_validate(args, ctx):
    from twistedreps.rep.representation import validate

    doc, digest = load_document(args.document)
    ctx.inputs["document"] = digest
    ctx.field = doc.field
    ctx.certificates = _certificates(doc.diagram)
    d = doc.diagram
    reps = {}
    valid = True
    for label, X in sorted(doc.representations.items()):
        bad = validate(X)
        valid = valid and not bad
        reps[label] = {
            "dims": _dims(X),
            "valid": not bad,
            "violations": bad,
        }
    ctx.results = {
        "diagram": {
            "vertices": [str(v) for v in d.vertices],
            "arrows": [a.label for a in d.arrows],
            "acyclic": d.quiver.is_acyclic(),
        },
        "algebras": sorted(doc.algebras),
        "modules": sorted(doc.modules),
        "bimodules": sorted(doc.bimodules),
        "representations": reps,
        "valid": valid,
    }
    return EXIT_OK if valid else EXIT_INVALID


def _load_pair(args, ctx):
    doc, digest = load_document(args.document)
    ctx.inputs["document"] = digest
    ctx.field = doc.field
    ctx.certificates = _certificates(doc.diagram)
    X, Y = doc.rep(args.X), doc.rep(args.Y)
    _require_valid(X, Y)
    return doc, X, Y


def cmd_hom(args, ctx):
    from twistedreps.rep.representation import hom_rep

    _, X, Y = _load_pair(args, ctx)
    basis = hom_rep(X, Y)
    ctx.results = {"X": args.X, "Y": args.Y, "dim": len(basis)}
    if args.emit_matrices:
        ctx.results["basis"] = [_morphism_json(F) for F in basis]
    return EXIT_OK


def cmd_ext(args, ctx):
    from twistedreps.rep.les import les

    doc, X, Y = _load_pair(args, ctx)
    variants = _variants(doc.diagram, args.variant)
    reports = {v: les(v, X, Y, args.max_degree) for v in variants}
    dims = [r.ext_dims for r in reports.values()]
    ctx.results = {
        "X": args.X,
        "Y": args.Y,
        "max_degree": args.max_degree,
        "variants": {v: _les_json(r, args.emit_matrices) for v, r in reports.items()},
        "ext_dims": dims[0],
        "variants_agree": all(x == dims[0] for x in dims),
    }
    if not ctx.results["variants_agree"]:
        raise InvariantBreach(f"variants disagree: {dims}")
    return EXIT_OK


def cmd_les_check(args, ctx):
    code = cmd_ext(args, ctx)
    bad = [
        (v, n["name"], n["degree"])
        for v, r in ctx.results["variants"].items()
        for n in r["nodes"]
        if not n["exact"]
    ]
    failed_checks = [
        (v, name) for v, r in ctx.results["variants"].items() for name, ok in r["checks"].items() if not ok
    ]
    ctx.results["all_nodes_exact"] = not bad and not failed_checks
    ctx.results["inexact_nodes"] = [list(b) for b in bad]
    if bad or failed_checks:
        raise InvariantBreach(f"long exact sequence fails at {bad or failed_checks}")
    return code


def _resolve(args, ctx, fn):
    doc, digest = load_document(args.document)
    ctx.inputs["document"] = digest
    ctx.field = doc.field
    ctx.certificates = _certificates(doc.diagram)
    X = doc.rep(args.X)
    _require_valid(X)
    r = fn(X)
    ctx.results = {"X": args.X, **_resolution_json(r, args.emit_matrices)}
    if not r.ok:
        raise InvariantBreach("; ".join(r.problems))
    return EXIT_OK


def cmd_resolve(args, ctx):
    from twistedreps.rep.resolutions import standard_resolution

    return _resolve(args, ctx, standard_resolution)


def cmd_coresolve(args, ctx):
    from twistedreps.rep.resolutions import standard_coresolution

    return _resolve(args, ctx, standard_coresolution)


def cmd_oracle_compare(args, ctx):
    from twistedreps.instances import (
        VectDiagram,
        euler_oracle,
        random_vect_diagram,
        random_vect_rep,
        vect_data,
    )
    from twistedreps.rep.les import ext_dims_rep
    from twistedreps.rep.sampling import rng_from

    rng = rng_from(args.seed)
    fixed = None
    if args.document:
        doc, digest = load_document(args.document)
        ctx.inputs["document"] = digest
        f = doc.field
        for X in doc.representations.values():
            vect_data(X)
        d = doc.diagram
        fixed = ("document", VectDiagram.from_diagram(d))
    else:
        f = parse_field(args.field)
    ctx.field = f
    mismatches, shapes = [], {}
    for t in range(args.trials):
        name, v = fixed if fixed else random_vect_diagram(f, rng)
        X, Y = random_vect_rep(v, rng), random_vect_rep(v, rng)
        hom, ext1 = euler_oracle(v, X, Y)
        dims = ext_dims_rep(X, Y, "both", args.max_degree)
        shapes[name] = shapes.get(name, 0) + 1
        if dims[0] != hom or (len(dims) > 1 and dims[1] != ext1) or any(dims[2:]):
            mismatches.append({
                "trial": t, "shape": name, "multiplicities": v.mult,
                "X_dims": _dims(X),
                "Y_dims": _dims(Y),
                "oracle": [hom, ext1], "les": dims,
            })
    ctx.results = {
        "trials": args.trials,
        "max_degree": args.max_degree,
        "shapes": shapes,
        "mismatches": len(mismatches),
        "mismatch_details": mismatches[:10],
    }
    if mismatches:
        raise InvariantBreach(f"{len(mismatches)} oracle mismatches")
    return EXIT_OK


# -- presets -------------------------------------------------------------------


def algebra_by_name(name, f):
    if name == "k":
        return ground_field(f)
    if name == "dual":
        return dual_numbers(f)
    if name.startswith("trunc"):
        return truncated_polynomial(f, int(name[5:]))
    if name.startswith("T"):
        return upper_triangular(f, int(name[1:]))
    raise UsageError(f"unknown algebra {name!r} (k, dual, trunc<n>, T<n>)")


def _multiplicities(items):
    out = {}
    for item in items or []:
        lab, _, m = item.partition("=")
        if not m:
            raise UsageError(f"multiplicity {item!r} is not label=m")
        out[lab] = int(m)
    return out


def build_preset(args):
    """``(diagram, [representations], form)`` for a preset."""
    from twistedreps.algebra.core import free_module
    from twistedreps.instances import (
        build_chain,
        build_framed,
        random_chain_rep,
        random_framed_triple,
        random_vect_rep,
        residue_triple,
        vect_shape,
    )
    from twistedreps.rep.sampling import rng_from, top_module

    f = parse_field(args.field)
    rng = rng_from(args.seed)
    if args.name == "framed":
        A = algebra_by_name(args.algebra or "dual", f)
        P = free_module(A, 1) if args.framing == "free" else top_module(A)
        fd = build_framed(A, P)
        E = residue_triple(fd)
        E.label = "E"
        F = random_framed_triple(fd, rng)
        F.label = "F"
        return fd.diagram, [E, F], "phi"
    if args.name == "chain":
        A = algebra_by_name(args.algebra or "dual", f)
        cd = build_chain(A, args.length)
        reps = []
        for lab in ("X", "Y"):
            X = random_chain_rep(cd, rng)
            X.label = lab
            reps.append(X)
        return cd.diagram, reps, "psi"
    if args.name == "vect":
        v = vect_shape(args.shape, f, _multiplicities(args.mult))
        reps = []
        for lab in ("X", "Y"):
            X = random_vect_rep(v, rng)
            X.label = lab
            reps.append(X)
        return v.diagram, reps, "psi"
    raise UsageError(f"unknown preset {args.name!r}")


def cmd_preset(args, ctx):
    d, reps, form = build_preset(args)
    ctx.document = document_json(d, reps, form=form, name=args.name)
    return EXIT_OK


# -- entry point ---------------------------------------------------------------


class Context:
    def __init__(self, args):
        self.args = args
        self.inputs = {}
        self.results = {}
        self.certificates = None
        self.field = None
        self.document = None

    def report(self, status, code, error=None):
        echo = {k: v for k, v in sorted(vars(self.args).items()) if k not in ("func",)}
        out = {
            "schema": REPORT_SCHEMA,
            "version": __version__,
            "command": echo,
            "inputs": self.inputs,
            "seed": self.args.seed,
            "field": field_name(self.field) if self.field is not None else None,
            "certificates": self.certificates,
            "results": self.results,
            "status": status,
            "exit_status": code,
        }
        if error is not None:
            out["error"] = error
        return out


def _common(p):
    p.add_argument("--field", default="F5", help="Q or F<p> (generated data only)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--variant", choices=["auto", "psi", "phi", "both"], default="auto")
    p.add_argument("--emit-matrices", action="store_true")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("-o", "--output", help="write to this file instead of stdout")


def make_parser():
    parser = _Parser(prog="twistedreps", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check every law in a document")
    p.add_argument("document")
    p.set_defaults(func=cmd_validate)

    for name, fn, helptext in (
        ("hom", cmd_hom, "dimension (and basis) of Hom_R(X, Y)"),
        ("ext", cmd_ext, "Ext dimensions from the long exact sequence"),
        ("les-check", cmd_les_check, "assert exactness at every node of the sequence"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("document")
        p.add_argument("X")
        p.add_argument("Y")
        p.set_defaults(func=fn)

    for name, fn in (("resolve", cmd_resolve), ("coresolve", cmd_coresolve)):
        p = sub.add_parser(name, help=f"standard {name[:-1]}ution of X")
        p.add_argument("document")
        p.add_argument("X")
        p.set_defaults(func=fn)

    p = sub.add_parser("oracle-compare", help="compare against the Euler-form oracle")
    p.add_argument("document", nargs="?")
    p.set_defaults(func=cmd_oracle_compare)

    p = sub.add_parser("preset", help="emit a document for a named family")
    p.add_argument("name", choices=["framed", "chain", "vect"])
    p.add_argument("--algebra", help="k, dual, trunc<n> or T<n> (framed, chain)")
    p.add_argument("--framing", choices=["free", "top"], default="free")
    p.add_argument("--length", type=int, default=2, help="tail length (chain)")
    p.add_argument("--shape", choices=["A2", "A3", "kronecker", "square"], default="A2")
    p.add_argument("--mult", action="append", help="label=m (vect), repeatable")
    p.set_defaults(func=cmd_preset)

    for p in sub.choices.values():
        _common(p)
    return parser


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    """Run the CLI; returns ``(exit code, output text, output path or None)``."""
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        err = {"schema": REPORT_SCHEMA, "status": "error", "exit_status": EXIT_INVALID,
               "error": {"type": "UsageError", "message": str(e)}}
        return EXIT_INVALID, canonical_json(err), None
    code, text = _dispatch(args)
    return code, text, args.output


def _dispatch(args):
    ctx = Context(args)
    try:
        code = args.func(args, ctx)
        if ctx.document is not None:
            return code, canonical_json(ctx.document)
        status = "ok" if code == EXIT_OK else "invalid"
        return code, canonical_json(ctx.report(status, code))
    except HypothesisViolated as e:
        err = {"type": "HypothesisViolated", "message": str(e), "arrow": e.arrow, "side": e.side}
        return EXIT_HYPOTHESIS, canonical_json(ctx.report("error", EXIT_HYPOTHESIS, err))
    except FunctorNotExact as e:
        err = {"type": "FunctorNotExact", "message": str(e)}
        return EXIT_HYPOTHESIS, canonical_json(ctx.report("error", EXIT_HYPOTHESIS, err))
    except (InvariantBreach, UniquenessFailure, LiftFailure) as e:
        err = {"type": type(e).__name__, "message": str(e)}
        return EXIT_BREACH, canonical_json(ctx.report("error", EXIT_BREACH, err))
    except (TwistedRepsError, UsageError, ValueError, OSError) as e:
        err = {"type": type(e).__name__, "message": str(e)}
        loc = getattr(e, "location", None)
        if loc is not None:
            err["location"] = loc
        return EXIT_INVALID, canonical_json(ctx.report("error", EXIT_INVALID, err))


def main(argv=None):
    code, text, out = run(argv)
    _emit(text, out)
    if code != EXIT_OK:
        sys.stderr.write(f"twistedreps: exit {code}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
