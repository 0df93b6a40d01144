import json
import subprocess
import sys

import pytest

from twistedreps import GF, QQ
from twistedreps.cli import run
from twistedreps.errors import DocumentError
from twistedreps.instances import vect_shape
from twistedreps.io import (
    DOCUMENT_SCHEMA,
    REPORT_SCHEMA,
    canonical_json,
    document_json,
    load_document,
    parse_document,
    parse_field,
    parse_scalar,
)
from twistedreps.rep import validate

PRESETS = {
    "framed": ["preset", "framed"],
    "framed-top": ["preset", "framed", "--framing", "top"],
    "framed-T2": ["preset", "framed", "--algebra", "T2"],
    "chain": ["preset", "chain"],
    "chain-k": ["preset", "chain", "--algebra", "k", "--length", "1"],
    "vect": ["preset", "vect"],
    "vect-Q": ["preset", "vect", "--field", "Q", "--shape", "square"],
    "kronecker": ["preset", "vect", "--shape", "kronecker", "--mult", "a=3"],
}
LABELS = {"framed": ("E", "F"), "framed-top": ("E", "F"), "framed-T2": ("E", "F")}


def labels(name):
    return LABELS.get(name, ("X", "Y"))


def cli(*argv):
    code, text, _ = run([str(a) for a in argv])
    return code, json.loads(text)


@pytest.fixture(scope="module")
def docs(tmp_path_factory):
    root = tmp_path_factory.mktemp("docs")
    out = {}
    for name, argv in PRESETS.items():
        code, text, _ = run(argv)
        assert code == 0
        path = root / f"{name}.json"
        path.write_text(text)
        out[name] = path
    return out


def test_field_and_scalar_parsing():
    assert parse_field("F5") == GF(5) and parse_field("Q") == QQ
    assert parse_field({"kind": "Fp", "p": 7}) == GF(7)
    for bad in ("F4", "R", "F", 5):
        with pytest.raises(DocumentError):
            parse_field(bad)
    assert parse_scalar(QQ, "-3/4", "x") == QQ("-3/4")
    assert parse_scalar(GF(5), 7, "x") == 2
    for bad in (0.5, True, "x/y"):
        with pytest.raises(DocumentError):
            parse_scalar(QQ, bad, "here")


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_preset_round_trip(docs, name):
    code, rep = cli("validate", docs[name])
    assert code == 0 and rep["results"]["valid"] and rep["status"] == "ok"
    assert rep["schema"] == REPORT_SCHEMA
    doc, digest = load_document(docs[name])
    assert len(digest) == 64
    raw = json.loads(docs[name].read_text())
    assert raw["schema"] == DOCUMENT_SCHEMA
    # re-emitting the parsed document reproduces it byte for byte
    again = document_json(doc.diagram, [doc.rep(l) for l in sorted(doc.representations)],
                          form=raw["representations"][0]["form"], name=raw.get("name"))
    assert canonical_json(again) == docs[name].read_text()


def test_rationals_written_as_strings(docs):
    raw = json.loads(docs["vect-Q"].read_text())
    assert raw["field"] == "Q"
    entries = [x for row in raw["representations"][0]["maps"]["a"] for x in row]
    assert all(isinstance(x, str) and "/" in x for x in entries)


def test_sorted_keys(docs):
    text = docs["framed"].read_text()
    assert text == canonical_json(json.loads(text))


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_ext_zero_is_hom(docs, name):
    X, Y = labels(name)
    code, h = cli("hom", docs[name], X, Y)
    assert code == 0
    code, e = cli("ext", docs[name], X, Y, "--max-degree", 0)
    assert code == 0
    assert e["results"]["ext_dims"] == [h["results"]["dim"]]


@pytest.mark.parametrize("name", ["framed", "chain-k", "vect", "kronecker"])
def test_les_check_and_resolutions(docs, name):
    X, Y = labels(name)
    code, r = cli("les-check", docs[name], X, Y, "--max-degree", 3, "--variant", "both")
    assert code == 0 and r["results"]["all_nodes_exact"] and r["results"]["variants_agree"]
    for cmd in ("resolve", "coresolve"):
        code, r = cli(cmd, docs[name], X)
        assert code == 0, r
        assert r["results"]["ok"]


def test_framed_report_values(docs):
    code, r = cli("ext", docs["framed"], "E", "E", "--max-degree", 4, "--variant", "both")
    assert code == 0
    assert r["results"]["ext_dims"][2:] == [1, 1, 1]


def test_emit_matrices(docs):
    code, r = cli("hom", docs["vect"], "X", "X", "--emit-matrices")
    assert code == 0 and len(r["results"]["basis"]) == r["results"]["dim"] >= 1
    code, r = cli("resolve", docs["vect"], "X", "--emit-matrices")
    assert code == 0 and set(r["results"]["beta"]) == {"0", "1"}
    code, r = cli("ext", docs["vect"], "X", "Y", "--emit-matrices", "--max-degree", 1)
    assert set(r["results"]["variants"]["psi"]["delta"]) == {"0", "1"}
    code, r = cli("ext", docs["vect"], "X", "Y", "--max-degree", 1)
    assert "delta" not in r["results"]["variants"]["psi"]


def test_hypothesis_violation_exit_code(docs):
    code, r = cli("ext", docs["chain"], "X", "Y", "--variant", "psi")
    assert code == 2 and r["exit_status"] == 2
    assert r["error"]["arrow"] == "a" and r["error"]["side"] == "psi"
    code, r = cli("ext", docs["framed-top"], "E", "F", "--variant", "phi")
    assert code == 2 and r["error"]["side"] == "phi"


def test_invalid_inputs_exit_one(docs, tmp_path):
    code, r = cli("hom", docs["vect"], "X", "nope")
    assert code == 1 and r["status"] == "error"
    code, r = cli("validate", tmp_path / "missing.json")
    assert code == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli("validate", bad)[0] == 1
    code, r = cli("frobnicate")
    assert code == 1 and r["error"]["type"] == "UsageError"


def _corrupt(docs, tmp_path, name, edit):
    raw = json.loads(docs[name].read_text())
    edit(raw)
    p = tmp_path / "corrupt.json"
    p.write_text(json.dumps(raw))
    return cli("validate", p)


def test_corrupt_algebra_located(docs, tmp_path):
    def edit(raw):
        A = raw["algebras"][1]
        A["structure"] = [s for s in A["structure"] if s[:3] != [1, 1, 0]] + [[1, 1, 0, 1]]

    code, r = _corrupt(docs, tmp_path, "framed", edit)
    assert code == 1 and r["error"]["location"].startswith("algebras")


def test_corrupt_module_located(docs, tmp_path):
    def edit(raw):
        raw["modules"][1]["action"][1] = [[1]]  # t acting invertibly on k

    code, r = _corrupt(docs, tmp_path, "framed", edit)
    assert code == 1 and "modules" in r["error"]["location"]


def test_float_entries_rejected(docs, tmp_path):
    def edit(raw):
        raw["representations"][0]["maps"]["a"][0][0] = 0.5

    code, r = _corrupt(docs, tmp_path, "vect", edit)
    assert code == 1 and "representations" in r["error"]["location"]


def test_non_morphism_structure_map_rejected(docs, tmp_path):
    def edit(raw):
        # E_1 = k and P = A: [0, 1] is linear but kills 1 while sending t to 1
        raw["representations"][0]["maps"]["a"] = [[[0, 1]]]

    code, r = _corrupt(docs, tmp_path, "framed", edit)
    assert code == 1 and r["error"]["location"].startswith("representations")


def test_unknown_reference_rejected(docs, tmp_path):
    def edit(raw):
        raw["quiver"]["arrows"][0]["bimodule"] = "missing"

    code, r = _corrupt(docs, tmp_path, "vect", edit)
    assert code == 1 and "quiver" in r["error"]["location"]


def test_oracle_compare_small():
    code, r = cli("oracle-compare", "--trials", 20, "--seed", 3)
    assert code == 0 and r["results"]["mismatches"] == 0
    assert sum(r["results"]["shapes"].values()) == 20


def test_oracle_compare_document(docs):
    code, r = cli("oracle-compare", docs["kronecker"], "--trials", 5)
    assert code == 0 and r["results"]["shapes"] == {"document": 5}
    code, r = cli("oracle-compare", docs["framed"], "--trials", 5)
    assert code == 1 and r["error"]["type"] == "NotVectDiagram"


def test_reports_deterministic(docs):
    a = run(["ext", str(docs["chain"]), "X", "Y", "--variant", "phi", "--emit-matrices"])
    b = run(["ext", str(docs["chain"]), "X", "Y", "--variant", "phi", "--emit-matrices"])
    assert a == b
    assert run(["preset", "chain", "--seed", "4"]) == run(["preset", "chain", "--seed", "4"])
    assert run(["preset", "chain", "--seed", "4"]) != run(["preset", "chain", "--seed", "5"])


def test_document_json_in_memory():
    v = vect_shape("A3", GF(7))
    from twistedreps.instances import random_vect_rep

    X = random_vect_rep(v, 1)
    X.label = "X"
    doc = parse_document(json.loads(canonical_json(document_json(v.diagram, [X], form="phi"))))
    Y = doc.rep("X")
    assert validate(Y) == [] and Y.dims() == X.dims()
    assert all(Y.psi[a.label] == X.psi[a.label] for a in v.diagram.arrows)


def test_console_entry_point(docs, tmp_path):
    out = tmp_path / "r.json"
    p = subprocess.run([sys.executable, "-m", "twistedreps", "validate", str(docs["vect"]), "-o", str(out)],
                       capture_output=True, text=True, timeout=120)
    assert p.returncode == 0 and json.loads(out.read_text())["results"]["valid"]
    p = subprocess.run([sys.executable, "-m", "twistedreps", "hom", str(docs["vect"]), "X", "missing"],
                       capture_output=True, text=True, timeout=120)
    assert p.returncode == 1 and "exit 1" in p.stderr
