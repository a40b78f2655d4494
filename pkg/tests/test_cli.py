import json

import pytest

from towerdecomp.cli import main
from towerdecomp.exprio import (
    parse_expression,
    parse_tower_file,
    render_expression,
    render_latex,
    render_tower_file,
)
from towerdecomp.errors import ExprSyntaxError, UnknownName

from conftest import random_element

LI_TOWER = """\
# log x, its logarithmic integral, log log x
var x
gen t1 : log(x)
gen t2 : prim 1/t1
gen t3 : log(t1)
"""

NESTED_TOWER = """\
var x
gen t1 : log(x)
gen t2 : log(x*t1)
gen t3 : log((x+1)*(t1+1)*t2)
"""


@pytest.fixture
def li_file(tmp_path):
    path = tmp_path / "li.tower"
    path.write_text(LI_TOWER)
    return str(path)


@pytest.fixture
def nested_file(tmp_path):
    path = tmp_path / "nested.tower"
    path.write_text(NESTED_TOWER)
    return str(path)


def test_parse_expression_examples():
    T = parse_tower_file(LI_TOWER)
    x, t1, t2, t3 = T.gens
    f = parse_expression("1/(t1*t2) + (t2 - 2*x*t1)/t1^2 + t3", T)
    assert f.value == 1 / (t1 * t2) + (t2 - 2 * x * t1) / t1**2 + t3
    assert not parse_expression("0", T)
    with pytest.raises(ExprSyntaxError) as err:
        parse_expression("(x", T)
    assert err.value.offset == 2
    with pytest.raises(UnknownName):
        parse_expression("nope + 1", T)


def test_render_round_trip_random(rng):
    T = parse_tower_file(LI_TOWER)
    for _ in range(200):
        f = random_element(T, rng)
        text = render_expression(f, T.names)
        assert parse_expression(text, T).value == f


def test_decomp_command_text(li_file, capsys):
    code = main(
        ["decomp", "--tower", li_file, "--expr", "1/(t1*t2) + (t2 - 2*x*t1)/t1^2 + t3"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "r = 1/(t1*t2)" in out
    assert "integrable: no" in out


def test_decomp_command_json_schema(li_file, capsys):
    code = main(["decomp", "--tower", li_file, "--expr", "1/x", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {"tower", "input", "g", "r", "integrable", "verified"}
    assert payload["integrable"] is True
    assert payload["verified"] is True
    assert payload["g"] == "t1"
    # expressions round-trip through the parser
    T = parse_tower_file(payload["tower"])
    assert parse_expression(payload["r"], T).value == T.F.zero


def test_integrate_command(li_file, capsys):
    assert main(["integrate", "--tower", li_file, "--expr", "1/x"]) == 0
    assert "integral = t1" in capsys.readouterr().out
    assert main(["integrate", "--tower", li_file, "--expr", "1/(t1*t2)"]) == 0
    out = capsys.readouterr().out
    assert "not integrable" in out and "remainder" in out


def test_elementary_command(li_file, capsys):
    code = main(
        [
            "elementary",
            "--tower",
            li_file,
            "--expr",
            "1/(t1*t2) + (t2 - 2*x*t1)/t1^2 + t3",
        ]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "elementary: yes" in out
    assert "1 * log(t2)" in out


def test_check_command(li_file, capsys):
    assert main(["check", "--tower", li_file]) == 0
    assert "S-primitive: yes" in capsys.readouterr().out


def test_check_reports_dependence(tmp_path, capsys):
    path = tmp_path / "dep.tower"
    path.write_text("var x\ngen t1 : log(x)\ngen t2 : prim 2/x\n")
    assert main(["check", "--tower", str(path)]) == 0
    out = capsys.readouterr().out
    assert "S-primitive: no" in out
    assert "certificate" in out


def test_matrix_command(li_file, capsys):
    assert main(["matrix", "--tower", li_file]) == 0
    out = capsys.readouterr().out
    assert "1/(x)" in out
    assert main(["matrix", "--tower", li_file, "--latex"]) == 0
    assert "\\begin{pmatrix}" in capsys.readouterr().out


def test_embed_command(nested_file, capsys):
    assert main(["embed", "--tower", nested_file]) == 0
    out = capsys.readouterr().out
    assert "gen u5" in out
    assert "phi(t3) = u2 + u4 + u5" in out
    assert main(["embed", "--tower", nested_file, "--expr", "t3/x", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["w"] == 5
    assert payload["ell"] == [1, 3, 5]
    target = parse_tower_file(payload["target"])
    r = parse_expression(payload["r"], target)
    u = target.gens
    assert r.value == -u[1] / (u[0] + 1) - (u[1] + 1) / (u[0] * (u[1] + u[3]))


def test_exit_code_parse_error(li_file, capsys):
    assert main(["decomp", "--tower", li_file, "--expr", "(x"]) == 1
    assert "error" in capsys.readouterr().err


def test_exit_code_missing_file(capsys):
    assert main(["decomp", "--tower", "/nonexistent.tower", "--expr", "1"]) == 1


def test_exit_code_validation_error(tmp_path, capsys):
    path = tmp_path / "dep.tower"
    path.write_text("var x\ngen t1 : log(x)\ngen t2 : prim 2/x\n")
    assert main(["decomp", "--tower", str(path), "--expr", "1/x"]) == 2
    err = capsys.readouterr().err
    assert "not S-primitive" in err and "depend" in err


def test_normalize_flag(tmp_path, capsys):
    path = tmp_path / "ns.tower"
    path.write_text("var x\ngen t1 : log(x)\ngen t2 : prim 1/t1^2\n")
    assert main(["decomp", "--tower", str(path), "--expr", "1/t1"]) == 2
    capsys.readouterr()
    assert main(["decomp", "--tower", str(path), "--expr", "1/t1", "--normalize"]) == 0
    out = capsys.readouterr().out
    assert "shift t2: (-x)/(t1)" in out
    assert "g = t2" in out


def test_latex_output(li_file, capsys):
    assert main(
        ["decomp", "--tower", li_file, "--expr", "1/t1^2", "--latex"]
    ) == 0
    assert "\\frac" in capsys.readouterr().out


def test_tower_file_errors():
    with pytest.raises(ExprSyntaxError):
        parse_tower_file("gen t1 : log(x)\n")
    with pytest.raises(ExprSyntaxError):
        parse_tower_file("var x\ngen t1 : exp(x)\n")
    with pytest.raises(ExprSyntaxError):
        parse_tower_file("var x\ngen t1 : log(t1)\n")


def test_tower_file_round_trip():
    T = parse_tower_file(NESTED_TOWER)
    T2 = parse_tower_file(render_tower_file(T))
    assert T2.derivs == T.derivs


def test_render_latex_shape():
    T = parse_tower_file(LI_TOWER)
    x, t1 = T.gens[0], T.gens[1]
    assert render_latex(1 / t1**2, T.names) == "\\frac{1}{t1^{2}}"
