from fractions import Fraction

import pytest

from sympcoh.errors import ModelError, ParseError
from sympcoh.exterior import Form, parse_form
from sympcoh.model import (builtin_model, builtin_names, integrate_top, load_model, parse_model,
                           validate_model)

KT_TEXT = """# symp-model v1
name kt-file
dim 4
d e4 = e2^e3
omega = e1^e2 + e3^e4
"""


def test_builtins():
    kt = builtin_model("kt")
    assert kt.d(Form.blade(4, (4,))) == parse_form("e2^e3", 4)
    assert builtin_model("torus3").omega == parse_form("e1^e2 + e3^e4 + e5^e6", 6)
    assert builtin_model("torus5").dim == 10
    assert builtin_names()[0] == "kt"
    with pytest.raises(ModelError):
        builtin_model("torus0")
    with pytest.raises(ModelError):
        builtin_model("heisenberg")


def test_leibniz_extension(kt):
    assert kt.d(parse_form("e1^e4", 4)) == parse_form("-e1^e2^e3", 4)
    assert kt.d(parse_form("e2^e3^e4", 4)) == 0
    torus = builtin_model("torus2")
    assert torus.d(parse_form("e1^e3 + e4", 4)) == 0


def test_integrate_top(kt):
    from sympcoh.exterior import power
    assert integrate_top(kt, power(kt.omega, 2) / 2) == 1
    assert integrate_top(kt, parse_form("e1", 4)) == 0
    assert integrate_top(kt, parse_form("e1", 4) ^ parse_form("e2^e3^e4", 4)) == 1


def test_validation_passes_on_builtins():
    for name in ("kt", "torus1", "torus2", "torus3"):
        assert validate_model(builtin_model(name)).ok


def test_validation_reports_jacobi_failure():
    text = "# symp-model v1\ndim 4\nd e1 = e2^e3\nd e2 = e1^e4\nomega = e1^e2 + e3^e4\n"
    report = validate_model(parse_model(text))
    assert any("Jacobi" in e.name and "d(d e1)" in e.witness for e in report.failures())


def test_validation_rejects_closed_structure_with_non_closed_omega():
    text = "# symp-model v1\ndim 4\nd e1 = e2^e3\nd e2 = e1^e3\nomega = e1^e4 + e2^e3\n"
    failures = validate_model(parse_model(text)).failures()
    assert [e.name for e in failures] == ["d omega = 0"]


def test_validation_reports_degenerate_omega():
    report = validate_model(parse_model("# symp-model v1\ndim 4\nomega = e1^e2\n"))
    assert [e.name for e in report.failures()] == ["omega^n != 0 (nondegenerate)"]


def test_validation_reports_non_closed_omega():
    m = parse_model("# symp-model v1\ndim 4\nd e4 = e2^e3\nomega = e1^e4 + e2^e3\n")
    failures = validate_model(m).failures()
    assert len(failures) == 1 and "d omega" in failures[0].witness


def test_parse_round_trip_and_hash(kt):
    m = parse_model(KT_TEXT)
    assert m.name == "kt-file"
    assert m.d_one == kt.d_one and m.omega == kt.omega
    again = parse_model(m.to_text())
    assert again.to_text() == m.to_text()
    assert m.input_hash == parse_model(KT_TEXT).input_hash
    assert m.input_hash != parse_model(KT_TEXT + "# comment\n").input_hash


def test_optional_keys():
    text = "# symp-model v1\ndim 2\nomega = 2 * e1^e2\nvolume = 1/2\nJ = 0 -1; 1 0\n"
    m = parse_model(text, name="plane")
    assert m.name == "plane" and m.volume == Fraction(1, 2)
    assert m.j_matrix == [[0, -1], [1, 0]]


@pytest.mark.parametrize("text,line,column", [
    ("dim 4\n", 1, 1),
    ("# symp-model v1\ndim 3\nomega = e1^e2\n", 2, 4),
    ("# symp-model v1\ndim 4\nd e9 = e1^e2\nomega = e1^e2 + e3^e4\n", 3, 3),
    ("# symp-model v1\ndim 4\nomega = e1^e2 + e3 $ e4\n", 3, 20),
    ("# symp-model v1\ndim 4\nd e1 = e2\nomega = e1^e2 + e3^e4\n", 3, 8),
    ("# symp-model v1\nd e1 = e2^e3\n", 2, 1),
    ("# symp-model v1\ndim 4\nfoo = 1\n", 3, 1),
    ("# symp-model v1\ndim 4\n", 2, 1),
    ("# symp-model v1\ndim 4\nomega = e1^e2 + e3^e4\nvolume = -1\n", 4, 10),
    ("# symp-model v1\ndim 2\nomega = e1^e2\nJ = 0 1\n", 4, 5),
])
def test_parse_errors(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_model(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_load_model_uses_file_stem(tmp_path):
    path = tmp_path / "heis.model"
    path.write_text(KT_TEXT.replace("name kt-file\n", ""))
    assert load_model(path).name == "heis"


def test_odd_dimension_rejected_by_constructor():
    from sympcoh.model import InvariantModel
    with pytest.raises(ModelError):
        InvariantModel("odd", 3, [], Form.zero(3))
