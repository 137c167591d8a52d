import json
import re
import subprocess
import sys

import pytest

from corpus import CURVES, FOLIATIONS
from planefol.algebra import QI, GaussianRational, X, Y
from planefol.algebra.numbers import adjoin_root
from planefol.cli import emit_dot, main, number, parse_input, run_command
from planefol.cli.grammar import format_form
from planefol.errors import NonZeroConstantTerm, ParseError
from planefol.foliation import OneForm, reduce_singularities
from planefol.surface import dual_graph

x, y = X, Y


def test_parse_form():
    doc = parse_input("omega = 3*x^2 dx - 2*y dy")
    assert doc.kind == "foliation" and doc.name == "omega"
    assert doc.payload == OneForm(3 * x**2, -2 * y)
    assert doc.warnings == []


def test_parse_saturates_with_warning():
    doc = parse_input("omega = x dy")
    assert doc.payload == OneForm(x * 0, y**0)
    assert doc.warnings and "x" in doc.warnings[0]


def test_parse_curve_and_literals():
    doc = parse_input("# a comment\n\ncurve = y**2 - x^3  # trailing\n")
    assert doc.kind == "curve" and doc.payload == y**2 - x**3
    doc = parse_input("curve = (2+3*i)/5 x y - 1/2 y^2")
    c = QI(GaussianRational(2, 3)) / 5
    assert doc.payload == (x * y).scale(c) - (y**2).scale(QI(1) / 2)


def test_parse_implicit_products():
    assert parse_input("omega = 2x dy + 3 y(x+1) dx").payload == OneForm(3 * y * (x + 1), 2 * x)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("omega = x dx +", 1, 15),
        ("omega = x dx dy", 1, 14),
        ("\ncurve = y^2 - z", 2, 15),
        ("curve = y / x", 1, 11),
        ("curve = y $ x", 1, 11),
    ],
)
def test_parse_errors_have_positions(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_input(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_nonzero_constant_term():
    with pytest.raises(NonZeroConstantTerm):
        parse_input("omega = dx + x dy")
    with pytest.raises(NonZeroConstantTerm):
        parse_input("curve = 1 + x")


@pytest.mark.parametrize("name", sorted(FOLIATIONS))
def test_round_trip_forms(name):
    omega, _ = FOLIATIONS[name]
    doc = parse_input(f"omega = {format_form(omega)}")
    assert doc.payload == omega
    assert parse_input(doc.serialize()).payload == doc.payload


@pytest.mark.parametrize("name", sorted(CURVES))
def test_round_trip_curves(name):
    doc = parse_input(f"curve = {CURVES[name]}")
    assert doc.payload == CURVES[name]
    assert parse_input(doc.serialize()).payload == doc.payload


def test_number_rendering():
    assert number(QI(GaussianRational(-1, 2) / 1)) == {"exact": "(-1+2*i)", "minpoly": "(1-2*i) + t", "approx": "-1.000000+2.000000i"}
    _, r = adjoin_root(QI, 0, -2)
    d = number(r)
    assert "exact" not in d and d["minpoly"] == "-2 + t^2" and d["approx"] == "1.414214"


def test_resolve_saddle(capsys):
    assert main(["resolve", "-e", "omega = y dx + x dy"]) == 0
    out = capsys.readouterr().out
    assert "status: already reduced" in out and "depth: 0" in out


def test_indices_one_blowup(capsys):
    assert main(["indices", "--force-blowup", "--emit", "json", "-e", "omega = y dx + x dy"]) == 0
    rep = json.loads(capsys.readouterr().out)
    (row,) = rep["rows"]
    assert (row["component"], row["self_intersection"], row["index_sum"]["exact"], row["equal"]) == (1, -1, "-1", True)


def test_ramify_cusp_text(capsys):
    assert main(["ramify", "--dmax", "6", "-e", "omega = 3*x^2 dx - 2*y dy"]) == 0
    assert "d = 2, free-only = true, simple-only = true" in capsys.readouterr().out


def test_separatrix_and_curve_check(capsys):
    assert main(["separatrix", "--order", "8", "-e", "omega = 3*x^2 dx - 2*y dy"]) == 0
    assert "x = t^2, y = t^3" in capsys.readouterr().out
    assert main(["curve-check", "-e", "curve = y^2 - x^3"]) == 0
    assert "d = 2, free-only = true" in capsys.readouterr().out


def test_exit_codes(capsys):
    assert main(["resolve", "-e", "omega = x dx +"]) == 1
    assert main(["resolve", "-e", "curve = 1 + y"]) == 1
    # d(x^3 - 2 y^3): the first divisor meets it where 2 t^3 = 1, a cubic extension
    assert main(["resolve", "-e", "omega = 3*x^2 dx - 6*y^2 dy"]) == 2
    err = capsys.readouterr().err
    assert "UnsupportedExtensionDegree" in err and "[chart: origin]" in err


def test_json_is_byte_identical(capsys):
    outs = []
    for _ in range(2):
        main(["indices", "--emit", "json", "-e", "omega = 3*x^2 dx - 2*y dy"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def _dot_counts(text):
    nodes = re.findall(r"^\s+(\w+) \[label=", text, re.M)
    edges = re.findall(r"^\s+\w+ -> \w+;", text, re.M)
    assert text.count("{") == text.count("}")
    return nodes, edges


def test_dot_single_blowup():
    tree = reduce_singularities(OneForm.make(y, -x))
    text = emit_dot(dual_graph(tree))
    nodes, edges = _dot_counts(text)
    assert nodes == ["E1"] and edges == [] and '"E1 (-1)"' in text


def test_dot_chain_of_two():
    tree = reduce_singularities(OneForm.make(2 * y, -x))
    text = emit_dot(dual_graph(tree))
    nodes, edges = _dot_counts(text)
    assert len(nodes) == 2 and len(edges) == 1
    assert "(-2)" in text and "(-1)" in text


def test_dot_cusp_tree():
    tree = reduce_singularities(OneForm.make(-3 * x**2, 2 * y))
    text = emit_dot(tree)
    nodes, edges = _dot_counts(text)
    assert len(nodes) == 1 + len(tree.centers) and len(edges) == len(tree.centers)
    assert re.search(r'E3 \[label="E3 \(-1\) satellite"', text)


def test_console_module_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "planefol", "resolve", "--emit", "dot", "-e", "curve = y^2 - x^3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("digraph")


def test_run_command_curve_as_form():
    doc = parse_input("curve = y^2 - x^3")
    report, tree = run_command(doc, "separatrix")
    assert report["jet"].startswith("x = t^2, y = t^3")
