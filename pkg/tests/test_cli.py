import json
import subprocess
import sys

import pytest

from hodgeloci.cli import format_datum, parse_budget, parse_degrees, parse_input, run
from hodgeloci.polyring import ParseError
from hodgeloci.scenarios import example_a_datum

CI_FILE = """\
ring: x y z
ideal: I
gen: x^2
gen: y^2
gen: z^2
"""

DATUM_FILE = format_datum(example_a_datum())


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in (("ci", CI_FILE), ("zero", "ring: a b c d\n"), ("datum", DATUM_FILE),
                       ("bad", "ring: x y\ngen: x^2 + *y\n")):
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        out[name] = str(p)
    return out


def test_hilbert_of_zero_ideal(files, capsys):
    assert run(["hilbert", files["zero"], "--degrees", "2"]) == 0
    assert capsys.readouterr().out.strip() == "h(2) = 10"


def test_hilbert_structured(files, capsys):
    assert run(["hilbert", files["ci"], "--degrees", "0..4", "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["hilbert"] == {"0": 1, "1": 3, "2": 3, "3": 1, "4": 0}


def test_failed_expectation_exits_1(files, capsys):
    assert run(["hilbert", files["ci"], "--degrees", "0,1", "--expect", "1,4"]) == 1
    err = capsys.readouterr().err
    assert "expected: [1, 4]" in err and "actual:   [1, 3]" in err


def test_parse_error_exits_2_with_caret(files, capsys):
    assert run(["hilbert", files["bad"]]) == 2
    err = capsys.readouterr().err
    assert "position 6" in err
    assert err.splitlines()[-1] == "        ^"


def test_nf_kbase_groebner(files, capsys):
    assert run(["nf", files["ci"], "x^3 + x*y*z"]) == 0
    assert capsys.readouterr().out.strip() == "x*y*z"
    assert run(["kbase", files["ci"], "2"]) == 0
    assert capsys.readouterr().out.split() == ["x*y", "x*z", "y*z"]
    assert run(["groebner", files["ci"], "--order", "lex"]) == 0
    assert sorted(capsys.readouterr().out.split()) == ["x^2", "y^2", "z^2"]


def test_classify(capsys):
    assert run(["classify", "3", "3", "5"]) == 0
    out = capsys.readouterr().out
    assert "X_DEPENDENT" in out and "hSumAtTop 1" in out
    assert run(["classify", "2", "2", "1"]) == 2


def test_codim(capsys):
    assert run(["codim", "2", "3", "2", "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["codim"]["balance"] and doc["codim"]["agree"]


def test_gram_and_pencil_on_datum(files, capsys):
    assert run(["gram", files["datum"], "--format", "structured"]) == 0
    gram = json.loads(capsys.readouterr().out)["gram"]
    assert (gram["rows"], gram["rank"], gram["left_kernel_dim"]) == (18, 18, 0)
    assert run(["gram", files["datum"], "--expect-rank", "17"]) == 1
    capsys.readouterr()
    assert run(["pencil", files["datum"], "--format", "structured"]) == 0
    pen = json.loads(capsys.readouterr().out)["pencil"]
    assert pen["nonzero_drop_count"] <= pen["bound"] == 1
    assert all(isinstance(v, str) for v, _ in pen["drop_values"])


def test_smooth_check(files, capsys):
    assert run(["smooth-check", files["datum"]]) == 0
    assert capsys.readouterr().out.split()[0] == "smooth"


def test_structured_output_byte_identical(files, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a, b):
        assert run(["--seed", "7", "--format", "structured", "--out", str(target),
                    "pencil", files["datum"]]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_scenario_text_mentions_rank(capsys):
    assert run(["scenario", "example-a", "--skip-smooth"]) == 0
    assert "rank 18" in capsys.readouterr().out


def test_scenario_structured_embeds_anchors(capsys):
    assert run(["scenario", "fermat", "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["scenario"]["anchors"]
    assert doc["scenario"]["passed"]


def test_budget_parsing():
    b = parse_budget("vars=9,lift=3")
    assert (b.max_active_vars, b.max_lift_steps) == (9, 3)
    assert parse_budget("10").max_active_vars == 10
    assert parse_degrees("2..4") == [2, 3, 4]
    assert parse_degrees("1,5") == [1, 5]


def test_input_format():
    inp = parse_input(DATUM_FILE)
    datum = inp.datum()
    assert (datum.k, datum.c, datum.d) == (3, 2, 4)
    assert datum.f == example_a_datum().f
    with pytest.raises(ParseError):
        parse_input("ring: x\ngen: x^^2\n")


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "hodgeloci", "hilbert", files["zero"],
                           "--degrees", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "h(1) = 4"


def test_hilbert_of_datum_ideals(files, capsys):
    assert run(["hilbert", files["datum"], "--ideal", "int", "--degrees", "4"]) == 0
    h_int = int(capsys.readouterr().out.split()[-1])
    assert run(["hilbert", files["datum"], "--ideal", "I2", "--degrees", "4"]) == 0
    h2 = int(capsys.readouterr().out.split()[-1])
    assert h_int - h2 == 18
    assert run(["hilbert", files["datum"], "--ideal", "J"]) == 2
