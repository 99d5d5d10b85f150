import io
import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropfew import fixtures
from tropfew.cli.grammar import ParseError, format_polynomial, format_system, parse_file, parse_polynomial
from tropfew.cli.main import run
from tropfew.field import LaurentPoly, PuiseuxScalar

SVG = "{http://www.w3.org/2000/svg}"


def cli(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(text, name="system.txt"):
        p = tmp_path / name
        p.write_text(text)
        return p
    return _write


# ---- grammar -----------------------------------------------------------------------

def test_parse_first_equation_of_six():
    f = parse_polynomial("-1*t^0*x^0*y^0 + 1*t^12*x^0*y^0 + 1*x^6*y^0 + 1*x^3*y^6 + -1*t^1*x^10*y^12")
    assert f == fixtures.sturmfels_six().f1


def test_parse_simple_terms():
    assert parse_polynomial("1*x^1*y^0") == LaurentPoly({(1, 0): 1})
    f = parse_polynomial("1*t^3/2*x^7*y^11")
    assert f[(7, 11)] == PuiseuxScalar.monomial(1, F(3, 2))


def test_decimal_is_exact():
    f = parse_polynomial("0.36008*t^7 - 1")
    assert f[(0, 0)] == PuiseuxScalar.from_terms({0: -1, 7: F(36008, 100000)})


def test_blanks_do_not_split_numbers():
    with pytest.raises(ParseError) as e:
        parse_polynomial("1*x^1 1*y^1")
    assert e.value.line == 1 and e.value.column == 7
    with pytest.raises(ParseError):
        parse_polynomial("1*x^1 2")
    assert parse_polynomial(" 2 * t ^ 1 * x ^ 3 ") == LaurentPoly({(3, 0): PuiseuxScalar.monomial(2, 1)})


def test_statements_and_metadata():
    text = "name: demo  # a comment\nexpect: 3\n1 + 1*x^1 +\n  1*y^1\n2 - 1*y^2; 1*x^1 - 1"
    with pytest.raises(ParseError):
        parse_file(text)          # three polynomials
    sf = parse_file("name: demo\nexpect: 3\n1 + 1*x^1 +\n  1*y^1\n+ 1*x^2\n2 - 1*y^2")
    assert sf.name == "demo" and sf.expect == 3
    assert len(sf.polynomials) == 2
    assert sf.polynomials[0].support == {(0, 0), (1, 0), (0, 1), (2, 0)}
    assert parse_file("1 + 1*x^1; 1 - 1*y^1").system.f2 == LaurentPoly({(0, 0): 1, (0, 1): -1})


@pytest.mark.parametrize("text, line, column, fragment", [
    ("1 + 0*x^1", 1, 5, "zero coefficient"),
    ("1*x^1 - 1*x^1 + 1", 1, 1, "cancel"),
    ("1 +\n1*x^a", 2, 5, ""),
    ("1/0*x^1", 1, 1, ""),
    ("color: red\n1", 1, 1, "unknown metadata"),
    ("expect: many\n1", 1, 1, "integer"),
    ("# only a comment\n", 2, 1, "no polynomial"),
    ("1 + 1*x^1 *", 1, 11, ""),
])
def test_parse_errors_have_positions(text, line, column, fragment):
    with pytest.raises(ParseError) as e:
        parse_file(text)
    assert (e.value.line, e.value.column) == (line, column)
    assert fragment in e.value.message


ratio = st.fractions(min_value=-50, max_value=50, max_denominator=12).filter(lambda q: q != 0)
texp = st.fractions(min_value=-9, max_value=9, max_denominator=4)
expo = st.tuples(st.integers(-12, 12), st.integers(-12, 12))


@given(st.dictionaries(expo, st.dictionaries(texp, ratio, min_size=1, max_size=3), min_size=1, max_size=6))
def test_round_trip(spec):
    f = LaurentPoly({w: PuiseuxScalar.from_terms(s) for w, s in spec.items()})
    assert parse_polynomial(format_polynomial(f)) == f


def test_round_trip_seven():
    system = fixtures.seven()
    sf = parse_file(format_system(system, expect=7))
    assert sf.polynomials == tuple(system) and sf.name == "seven" and sf.expect == 7


# ---- commands ----------------------------------------------------------------------

def test_dmv_on_six(write):
    code, out = cli("dmv", write(format_system(fixtures.sturmfels_six())))
    assert code == 0
    doc = json.loads(out)
    assert doc["transversal"] == 6 and doc["positive"] == 6
    assert doc["dmv"] >= 6 and doc["bihan_ok"] and doc["lemma_le_6"]


def test_curve_svg_of_a_line(write, tmp_path):
    svg = tmp_path / "line.svg"
    code, out = cli("curve", write("1 + 1*x^1 + 1*y^1"), "--svg", svg)
    assert code == 0 and "1 vertices, 3 edges" in out
    root = ET.parse(svg).getroot()
    assert root.tag == SVG + "svg"
    classes = [el.get("class", "") for el in root.iter()]
    assert sum(c.split()[:1] == ["vertex"] for c in classes) == 1
    assert sum(c.split()[:1] == ["edge"] for c in classes) == 3


def test_curve_json(write):
    code, out = cli("curve", write("1 + 1*x^1 - 1*y^1"), "--json")
    doc = json.loads(out)
    (curve,) = doc["curves"]
    assert curve["balanced"] and curve["duality_violations"] == []
    assert sum(e["positive"] for e in curve["edges"]) == 2


def test_json_output_is_byte_stable(write):
    path = write(format_system(fixtures.seven()))
    first = cli("intersect", path)[1]
    assert first == cli("intersect", path)[1]
    assert first == json.dumps(json.loads(first), sort_keys=True, indent=2) + "\n"


def test_intersect_seven(write, tmp_path):
    svg = tmp_path / "seven.svg"
    code, out = cli("intersect", write(format_system(fixtures.seven())), "--svg", svg, "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["transversal_points"] == 1 and doc["non_transversal"] == 5
    ET.parse(svg)


def test_reduce_and_normalize(write, tmp_path):
    path = write(format_system(fixtures.seven()))
    code, out = cli("reduce", path, "--cell", 0)
    assert code == 0 and json.loads(out)["cell"]["kind"] == "typeII"
    assert cli("reduce", path, "--cell", 99)[0] == 2
    svg = tmp_path / "fan.svg"
    code, out = cli("normalize", path, "--svg", svg)
    doc = json.loads(out)
    assert code == 0 and doc["construction"]["passed"]
    assert doc["fan"]["rays"] == {"L0": [0, -1], "L1": [2, 1], "L2": [-2, 1]}
    assert "fan" in svg.read_text()


def test_solve(write):
    code, out = cli("solve", write("expect: 1\n1*x^1 - 1; 1*y^1 - 2"))
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 1 and doc["matches_expect"]
    path = write(format_system(fixtures.sturmfels_six()))
    assert cli("solve", path)[0] == 2                      # needs --t
    assert cli("solve", path, "--t", "1/3")[0] == 4        # irrational t-power
    assert cli("solve", path, "--t", "-1")[0] == 2


def test_exit_codes(write, tmp_path):
    assert cli("dmv", tmp_path / "missing.txt")[0] == 2
    assert cli("dmv", write("1 + 0*x^1"))[0] == 2
    assert cli("dmv", write("1 + 1*x^1"))[0] == 2          # one polynomial
    assert cli("verify", "paper:eight")[0] == 2
    line = "1 + 1*x^1 + 1*y^1"
    assert cli("normalize", write(f"{line}\n{line}"))[0] == 3
    assert cli("solve", write("1*x^1*y^1 - 1; 1*x^2*y^1 - 1*x^1"))[0] == 4
    assert cli("bogus")[0] == 2


def test_fixture_command():
    code, out = cli("fixture", "drrs")
    assert code == 0 and parse_file(out).system == fixtures.drrs()


def test_verify_seven():
    code, out = cli("verify", "paper:seven", "--t", "1/100000")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 7 and doc["pass"]


def test_module_entry_point(write):
    proc = subprocess.run([sys.executable, "-m", "tropfew", "dmv", str(write("1 + 1*x^1 + 1*y^1\n1*t^-2 + 1*x^1 + 1*t^-1*y^1"))],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["transversal"] == 1


def test_precision_environment(write, monkeypatch):
    monkeypatch.setenv("TROP_PRECISION_BITS", "abc")
    assert cli("dmv", write("1 + 1*x^1 + 1*y^1\n1 + 2*x^1 + 3*y^1"))[0] == 2
