import io
import json
import subprocess
import sys

import pytest

from sympcoh import __version__
from sympcoh.cli import main

KT_FILE = "# symp-model v1\nname kt\ndim 4\nd e4 = e2^e3\nomega = e1^e2 + e3^e4\n"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def model_file(tmp_path):
    def write(text, name="m.model"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_validate_exit_codes(model_file):
    code, out, _ = run("validate", model_file(KT_FILE))
    assert code == 0 and "valid" in out
    code, out, _ = run("validate", model_file("# symp-model v1\ndim 4\nomega = e1^e2\n"))
    assert code == 1 and "[FAIL] omega^n != 0" in out
    code, _, err = run("validate", model_file("# symp-model v1\ndim 4\nd e9 = e1^e2\nomega = e1^e2\n"))
    assert code == 2 and "line 3, column 3" in err
    code, _, err = run("validate", "/nonexistent/model")
    assert code == 1


def test_validate_json(model_file):
    code, out, _ = run("validate", model_file(KT_FILE), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["valid"] and data["version"] == __version__


def test_cohomology_table_matches_known_dimensions():
    code, out, _ = run("cohomology", "--builtin", "kt", "--kinds", "all", "--format", "table")
    assert code == 0
    rows = {line.split()[0]: [int(x) for x in line.split()[1:]] for line in out.splitlines()[2:7]}
    assert rows == {"d": [1, 3, 4, 3, 1], "dΛ": [1, 3, 4, 3, 1], "d+dΛ": [1, 3, 5, 3, 1],
                    "ddΛ": [1, 3, 5, 3, 1], "d∩dΛ": [1, 2, 4, 2, 1]}


def test_cohomology_torus_and_primitive():
    code, out, _ = run("cohomology", "--builtin", "torus2", "--kinds", "d", "--format", "json")
    data = json.loads(out)
    assert [r["dim"] for r in data["results"]] == [1, 4, 6, 4, 1]
    code, out, _ = run("cohomology", "--builtin", "kt", "--kinds", "d+dL", "--primitive", "--format", "json")
    data = json.loads(out)
    assert [(r["kind"], r["dim"]) for r in data["results"]] == [("PH:d+dΛ", 1), ("PH:d+dΛ", 3), ("PH:d+dΛ", 4)]


def test_cohomology_json_schema(model_file):
    path = model_file(KT_FILE)
    code, out, _ = run("cohomology", path, "--harmonic", "--lambda", "1/3", "--format", "json")
    data = json.loads(out)
    assert set(data) >= {"model", "version", "inputHash", "results", "checks"}
    assert data["model"] == "kt" and len(data["inputHash"]) == 64
    first = data["results"][0]
    assert set(first) == {"kind", "degree", "dim", "basis", "harmonicBasis"}
    # same input and flags give byte-identical output
    assert run("cohomology", path, "--harmonic", "--lambda", "1/3", "--format", "json")[1] == out


def test_cohomology_harmonic_for_ph_d_is_reported_missing():
    code, out, _ = run("cohomology", "--builtin", "kt", "--kinds", "d", "--primitive", "--harmonic")
    assert code == 0 and "no harmonic theory" in out


def test_cohomology_errors(model_file):
    assert run("cohomology", "--builtin", "kt", "--lambda", "0")[0] == 2
    assert run("cohomology", "--builtin", "kt", "--kinds", "bogus")[0] == 2
    assert run("cohomology")[0] == 2
    assert run("cohomology", "--builtin", "nope")[0] == 1
    bad = model_file("# symp-model v1\ndim 4\nomega = 2 * e1^e2 + e3^e4\n")
    code, _, err = run("cohomology", bad, "--harmonic")
    assert code == 1 and "not orthogonal" in err
    assert run("cohomology", model_file("# symp-model v1\ndim 4\nomega = e1^e2\n"))[0] == 1


def test_check_commands():
    code, out, _ = run("check", "--builtin", "kt", "--test", "ddl-lemma")
    assert code == 0 and "ddΛ-lemma: fails" in out and "e2^e3" in out
    code, out, _ = run("check", "--builtin", "torus2", "--test", "ddl-lemma")
    assert code == 0 and "holds" in out
    code, out, _ = run("check", "--builtin", "kt", "--test", "pairing", "--degree", "1", "--format", "json")
    data = json.loads(out)
    assert data["checks"][0]["verdict"] == "holds"
    assert len(data["checks"][0]["details"]["matrix"]) == 3
    code, out, _ = run("check", "--builtin", "kt", "--test", "strong-lefschetz", "--kind", "d+dL")
    assert "holds" in out
    for test in ("lefschetz-decomp", "canonical-map", "primitive-exact"):
        assert run("check", "--builtin", "kt", "--test", test)[0] == 0
    assert run("check", "--builtin", "kt", "--test", "pairing", "--degree", "9")[0] == 2
    assert run("check", "--builtin", "kt", "--test", "unknown")[0] == 2


def test_decompose():
    code, out, _ = run("decompose", "--builtin", "kt", "--form", "e1^e2 + e3^e4")
    assert "r=1: B_0 = 1" in out and "r=0: B_2 = 0" in out
    code, out, _ = run("decompose", "--builtin", "kt", "--form", "e1^e2", "--format", "json")
    comps = json.loads(out)["decomposition"]["components"]
    assert comps == [{"r": 0, "degree": 2, "B": "1/2 * e1^e2 - 1/2 * e3^e4", "primitive": True},
                     {"r": 1, "degree": 0, "B": "1/2", "primitive": True}]
    code, out, _ = run("decompose", "--builtin", "kt", "--form", "e1")
    assert "r=0: B_1 = e1" in out
    code, _, err = run("decompose", "--builtin", "kt", "--form", "e1 + e1^e2")
    assert code == 1 and "homogeneous" in err
    code, _, err = run("decompose", "--builtin", "kt", "--form", "e1 ^ e7")
    assert code == 2 and "column 6" in err


def test_identity_suite_is_deterministic():
    a = run("identity-suite", "--backend", "invariant", "--seed", "42", "--cases", "3")
    b = run("identity-suite", "--backend", "invariant", "--seed", "42", "--cases", "3")
    assert a == b and a[0] == 0 and "0 failures" in a[1]
    code, out, _ = run("identity-suite", "--backend", "poly", "--cases", "2", "--format", "json")
    assert code == 0 and json.loads(out)["cases"] == 2


def test_builtin_list():
    code, out, _ = run("builtin", "--list")
    assert code == 0 and out.split()[0] == "kt" and "torus3" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sympcoh", "builtin", "--list"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "kt" in proc.stdout
