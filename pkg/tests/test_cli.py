import hashlib
import json

import pytest

from qhyper.cli import main, render_text

DISTRIBUTIVE = "P(x) & (Q(x) | R(x)) |- P(x) & Q(x) | P(x) & R(x)"


@pytest.fixture
def finset_model_file(write_json):
    return write_json("model.json", {"name": "mo2-pair", "omega": "mo2", "objects": {"S": ["p0", "p1"]}})


@pytest.fixture
def signature_file(write_json):
    return write_json("sig.json", {
        "predicates": {
            "P": {"args": ["S"], "table": {"p0": "a", "p1": "b"}},
            "Q": {"args": ["S"], "table": ["a", "a"]},
        }
    })


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


@pytest.mark.parametrize(
    "argv, code",
    [
        (["algebra", "check", "--file", "mo2", "--class", "orthomodular"], 0),
        (["algebra", "check", "--omega", "o6", "--class", "orthomodular"], 1),
        (["algebra", "check", "--file", "mo2", "--class", "distributive"], 1),
        (["algebra", "check", "--file", "mo2", "--class", "quantum"], 2),
        (["algebra", "check", "--file", "does-not-exist.json"], 2),
        (["algebra", "gen", "boolean:2"], 0),
        (["algebra", "gen", "boolean:9"], 2),
        (["laws", "frobenius", "--omega", "boolean:2", "--sizes", "2,1"], 0),
        (["laws", "adjunction", "--omega", "mo2", "--sizes", "2,1"], 0),
        (["laws", "bc", "--omega", "mo2", "--sizes", "2"], 2),
        (["laws", "generic", "--omega", "o6", "--sizes", "2"], 0),
        (["vset", "count", "--omega", "2", "--rank", "2", "--bound", "nonsense=3"], 2),
        (["vset", "count", "--omega", "2", "--rank", "2", "--bound", "fibre"], 2),
        (["vset", "build", "--omega", "mo2", "--rank", "2"], 2),
        (["topos", "build", "--omega", "2", "--cap", "1"], 0),
        (["logic", "countermodel", "P(x) |- P(x)"], 0),
        (["logic", "countermodel", DISTRIBUTIVE, "--omega", "mo2", "--sizes", "1"], 1),
        (["logic", "soundness", "--omega", "mo2", "--sizes", "1", "--schemas", "--rule", "distributivity"], 1),
        (["logic", "soundness", "--omega", "mo2", "--sizes", "1", "--rule", "no-such-rule"], 2),
        (["logic", "soundness", "--omega", "mo2", "--sizes", "2,1", "--rule", "cut", "--samples", "0"], 2),
        ([], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code
    capsys.readouterr()


def test_seeded_runs_print_identical_reports(capsys):
    argv = ["logic", "soundness", "--omega", "mo2", "--sizes", "2,1", "--seed", "3", "--samples", "50"]
    outputs = []
    for _ in range(2):
        assert main(argv) == 0
        outputs.append(capsys.readouterr().out)
    first, second = (hashlib.sha256(out.encode()).hexdigest() for out in outputs)
    assert first == second
    sampled = [r for r in json.loads(outputs[0])["reports"] if r["mode"] == "sampled"]
    assert sampled
    assert all(r["seed"] == 3 and r["instances"] == 50 for r in sampled)


def test_algebra_file_round_trip(capsys, write_json, mo2_document):
    path = write_json("mo2.json", mo2_document)
    code, report = run(capsys, "algebra", "check", "--file", str(path))
    assert code == 0
    assert report["law"] == "algebra-orthomodular"
    assert report["distributivity_counterexample"] == ["a", "a'", "b"]


def test_frobenius_witness_on_stdout(capsys):
    code, report = run(capsys, "laws", "frobenius", "--omega", "mo2", "--sizes", "2,1")
    assert code == 1
    assert report["status"] == "fail"
    assert report["witness"]["w"] == {"y1": "b"}
    assert report["witness"]["lhs"] == {"y1": "0"}


def test_equality_does_not_lift_over_sierpinski(capsys, write_json):
    path = write_json("sierpinski.json", {
        "kind": "fintop",
        "omega": "2",
        "objects": {"S": {"carrier": ["0", "1"], "opens": [[], ["1"], ["0", "1"]]}},
    })
    code, report = run(capsys, "laws", "lifting", "--model", str(path), "--which", "equality")
    assert code == 1
    assert report["witness"]["quantifier"] == "equality"


def test_vset_count(capsys):
    code, report = run(capsys, "vset", "count", "--omega", "2", "--rank", "2")
    assert code == 0
    assert report["counts"] == [1, 3, 27]


def test_model_commands(capsys, finset_model_file, signature_file):
    code, report = run(capsys, "model", "validate", "--model", str(finset_model_file))
    assert code == 0
    assert report["model"] == "mo2-pair"

    code, report = run(capsys, "model", "fibre", "--model", str(finset_model_file), "--object", "S",
                       "--limit", "2")
    assert code == 0
    assert report["size"] == 36
    assert report["predicates"] == [{"p0": "0", "p1": "0"}, {"p0": "0", "p1": "a"}]

    code, report = run(capsys, "model", "eval", "--model", str(finset_model_file), "--sig",
                       str(signature_file), "[x:S] P(x) | Q(x)")
    assert code == 0
    assert report["value"] == {"(p0)": "a", "(p1)": "1"}


def test_logic_check(capsys, finset_model_file, signature_file):
    code, report = run(capsys, "logic", "check", "--model", str(finset_model_file), "--sig",
                       str(signature_file), "[x:S] P(x) |- Q(x)")
    assert code == 1
    assert report["witness"] == {"point": {"x": "p1"}, "left": "b", "right": "a"}

    code, report = run(capsys, "logic", "check", "--model", str(finset_model_file),
                       "P(x) & P(x)' |- bot")
    assert code == 0


def test_syntax_errors_go_to_stderr(capsys, finset_model_file):
    assert main(["logic", "check", "--model", str(finset_model_file), "P(x |-"]) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "column 4" in captured.err


def test_text_format(capsys):
    code, out = run(capsys, "vset", "count", "--omega", "2", "--rank", "1", "--format", "text")
    assert code == 0
    assert "counts:" in out
    assert "  - 3" in out


def test_render_text_nests():
    lines = render_text({"status": "pass", "reports": [{"law": "x"}], "empty": []})
    assert lines == ["status: pass", "reports:", "  -", "    law: x", "empty: []"]
