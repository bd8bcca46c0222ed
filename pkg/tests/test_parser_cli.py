import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import scalars, step_functions
from rhpwn import cli
from rhpwn.algebras import ConvolutionRule, IvanovRule
from rhpwn.errors import InvariantBreach, ParseError
from rhpwn.exact import I, SQRT2
from rhpwn.lie import generator, winf_generator
from rhpwn.parser import parse_element, parse_function, parse_poly, parse_scalar, parse_word
from rhpwn.poly import var
from rhpwn.serialize import element_from_json, element_to_json
from rhpwn.stepfn import chi


def run_cli(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out)
    return code, out.getvalue()


# -- parser ---------------------------------------------------------------------------

def test_parse_generators_and_functions():
    assert parse_function("χ_[0,1]") == chi(0, 1)
    assert parse_function("2*chi_{(0,1/2]} + i*χ_[1,2)") == chi(0, Fraction(1, 2)) * 2 + chi(1, 2) * I
    assert parse_element("3 B^2_1(χ_[0,1])") == generator(2, 1, chi(0, 1), 3)
    assert parse_element("W^3_{-2}(χ_[0,1])") == winf_generator(3, -2, chi(0, 1))
    assert parse_scalar("√2 - i/2") == SQRT2 - I / 2
    assert parse_poly("2*c*mu + 1") == var("c") * var("mu") * 2 + 1


def test_parse_brackets():
    conv = parse_element("[B^0_1(χ_[0,1]), B^1_0(χ_[0,1])]", ConvolutionRule())
    assert conv == generator(0, 0, chi(0, 1))
    iv = parse_element("[B^0_2(χ_[0,1]), B^2_0(χ_[0,1])]", IvanovRule())
    assert iv == generator(1, 1, chi(0, 1), 4) + generator(0, 0, chi(0, 1)) * (2 * var("c"))
    assert parse_element("[W^3_1(χ_[0,1]), W^3_2(χ_[0,1])]") == winf_generator(4, 3, chi(0, 1), -2)
    with pytest.raises(ParseError):
        parse_element("[B^0_1(χ_[0,1]), B^1_0(χ_[0,1])]")


def test_parse_word():
    word = parse_word("B^0_1(χ_[0,1]); B^1_0(χ_[0,1])")
    assert word == [generator(0, 1, chi(0, 1)), generator(1, 0, chi(0, 1))]


@pytest.mark.parametrize("text", ["B^1(χ_[0,1])", "B^1_0(χ_[0,1]", "B^1_0(χ_[0,1]) +", "Q^1_0(χ_[0,1])",
                                  "B^1_0(chi_[2,1])"])
def test_parse_errors(text):
    with pytest.raises((ParseError, ValueError)):
        parse_element(text)


@st.composite
def elements(draw):
    out = generator(0, 0, chi(0, 1)) * 0
    for _ in range(draw(st.integers(1, 3))):
        f = draw(step_functions())
        coeff = draw(scalars) * draw(st.sampled_from([1, var("c"), var("c") * var("mu") + 1]))
        out = out + generator(draw(st.integers(0, 4)), draw(st.integers(0, 4)), f, coeff)
    return out


@settings(max_examples=150)
@given(elements())
def test_text_and_json_roundtrip(x):
    assert parse_element(str(x)) == x
    assert element_from_json(json.loads(json.dumps(element_to_json(x)))) == x


def test_winf_roundtrip():
    x = winf_generator(3, -2, chi(0, 1), I) + winf_generator(2, 5, chi(1, 2), SQRT2)
    assert parse_element(str(x)) == x


# -- command line -------------------------------------------------------------------------

def test_cli_bracket_example():
    code, out = run_cli("bracket", "--scheme", "convolution", "[B^0_1(χ_{[0,1]}), B^1_0(χ_{[0,1]})]")
    assert code == 0
    res = json.loads(out)
    assert parse_element(res["result"]) == generator(0, 0, chi(0, 1))
    assert element_from_json(res["element"]) == generator(0, 0, chi(0, 1))


def test_cli_nogo_example():
    code, out = run_cli("nogo", "--n", "3", "--c", "1", "--mu", "1/2", "--degree", "12", "--rules", "strict")
    assert code == 0
    assert json.loads(out)["negative_pivot_at"] == 5


def test_cli_moment_example():
    code, out = run_cli("moment", "--n", "2", "--t", "2", "--m", "4")
    assert code == 0 and json.loads(out) == "80"


def test_cli_is_deterministic():
    argv = ("gram", "--c", "1", "B^1_0(χ_[0,1/2]); B^2_0(χ_[0,1/2])", "B^2_0(χ_[0,1/2])")
    assert run_cli(*argv) == run_cli(*argv)
    argv = ("axioms", "--scheme", "convolution", "--max-index", "2", "--random", "20", "--seed", "7")
    first = run_cli(*argv)
    assert first[0] == 0 and first == run_cli(*argv)


def test_cli_global_flags_after_subcommand():
    assert run_cli("expect", "--c", "2", "B^0_2(χ_[0,1])", "B^2_0(χ_[0,1])")[0] == 0
    assert run_cli("--c", "2", "expect", "B^0_2(χ_[0,1])", "B^2_0(χ_[0,1])")[0] == 0


@pytest.mark.parametrize("argv", [
    ("bracket", "B^1_0(χ_[0,1]"),
    ("suite", "nonsense"),
    ("kernel", "--n", "2", "--f", "χ_[0,1]", "--g", "χ_[0,1]"),
    ("density", "--n", "1", "--t", "1"),
    ("invert", "--n", "2", "--k", "1", "--order", "2"),
    ("no-such-command",),
])
def test_cli_errors_exit_one_with_json(argv):
    code, out = run_cli(*argv)
    assert code == 1
    assert "error" in json.loads(out)


def test_cli_invariant_breach_exits_two(monkeypatch):
    def boom(args):
        raise InvariantBreach("forced")
    monkeypatch.setattr(cli, "cmd_mgf", boom)
    code, out = run_cli("mgf", "--n", "2", "--t", "2")
    assert code == 2 and json.loads(out)["error"]


def test_cli_smoke_suite():
    code, out = run_cli("suite", "smoke")
    res = json.loads(out)
    assert code == 0 and res["ok"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rhpwn", "moment", "--n", "2", "--t", "2", "--m", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout) == "4"
