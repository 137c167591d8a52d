"""Acceptance criteria A1-A7 over the shared corpus.

Each test prints one ``PASS A<n>: ...`` or ``FAIL A<n>: ...`` line (visible
under ``pytest -v`` as well as with ``python tests/test_acceptance.py``).
"""

import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import CURVES, CUSP, FOLIATIONS  # noqa: E402
from planefol.algebra import QI  # noqa: E402
from planefol.camacho_sad import (  # noqa: E402
    extract_separatrix,
    index_theorem_check,
    record_index,
    separatrix_jets,
)
from planefol.cli import Options, emit_json, parse_input, run_command  # noqa: E402
from planefol.cli.grammar import format_form  # noqa: E402
from planefol.foliation import Kind, OneForm, reduce_singularities  # noqa: E402
from planefol.puiseux import jets_match, newton_puiseux_expand, ramification_exponent  # noqa: E402
from planefol.ramification import (  # noqa: E402
    curve_theorem_check,
    find_regular_ramification,
    ramify_curve,
    tree_is_regular,
)
from planefol.surface import dual_graph, embedded_resolution, gluing_agrees  # noqa: E402

ORDER = 16
MAX_DEPTH = 50
D_MAX = 12
REDUCED = {Kind.REGULAR, Kind.SIMPLE, Kind.SADDLE_NODE}


def _line(tag: str, ok: bool, detail: str) -> str:
    return f"{'PASS' if ok else 'FAIL'} {tag}: {detail}"


def _emit(capsys, text: str):
    if capsys is None:
        print(text)
        return
    with capsys.disabled():
        print("\n" + text)


# -- criteria -------------------------------------------------------------------------


def check_a1():
    bad = []
    for name, (omega, _) in FOLIATIONS.items():
        tree = reduce_singularities(omega, MAX_DEPTH)
        if tree.depth > MAX_DEPTH or any(r.kind not in REDUCED for r in tree.leaves):
            bad.append(name)
    n = len(FOLIATIONS)
    ok = n >= 10 and not bad
    return ok, f"{n - len(bad)}/{n} corpus foliations reduce within depth {MAX_DEPTH}" + (
        f"; failing: {', '.join(bad)}" if bad else ""
    )


def check_a2():
    bad, rows = [], 0
    for name, (omega, _) in FOLIATIONS.items():
        for r in index_theorem_check(reduce_singularities(omega, MAX_DEPTH)):
            if r.skipped:
                continue
            rows += 1
            if not r.equal:
                bad.append(f"{name}/E{r.component}")
    saddle = reduce_singularities(FOLIATIONS["saddle"][0], MAX_DEPTH, force_first=True)
    idx = sorted(
        (record_index(rec, 1) for rec in saddle.leaves if rec.kind is not Kind.REGULAR),
        key=str,
    )
    half = QI(Fraction(-1, 2))
    saddle_ok = idx == [half, half] and saddle.component(1).self_intersection == -1
    ok = not bad and saddle_ok and rows > 0
    detail = f"{rows - len(bad)}/{rows} invariant components satisfy sum = E^2 exactly"
    detail += f"; one-blow-up saddle {' + '.join(str(v) for v in idx)} = -1: {saddle_ok}"
    if bad:
        detail += f"; failing: {', '.join(bad)}"
    return ok, detail


def check_a3():
    found, bad = {}, []
    for name, (omega, _) in FOLIATIONS.items():
        try:
            res = find_regular_ramification(omega, D_MAX, MAX_DEPTH)
        except Exception as exc:  # report, do not hide
            bad.append(f"{name} ({type(exc).__name__})")
            continue
        free, simple = tree_is_regular(res.tree)
        found[name] = res.d
        if not (res.d <= D_MAX and free and simple):
            bad.append(name)
    ok = not bad and found.get("cusp") == 2 and found.get("saddle") == 1
    ds = ", ".join(f"{k}={v}" for k, v in found.items())
    return ok, f"free-only and simple-only after ramification [{ds}]" + (
        f"; failing: {', '.join(bad)}" if bad else ""
    )


def check_a4():
    bad = []
    for name, f in CURVES.items():
        d = ramification_exponent(newton_puiseux_expand(f, ORDER))
        smooth = all(j.d == 1 for j in newton_puiseux_expand(ramify_curve(f, d), ORDER))
        res = curve_theorem_check(f, ORDER)
        if res.d != d or not smooth or not res.free_only:
            bad.append(name)
    control = embedded_resolution(CUSP, MAX_DEPTH)
    control_ok = not control.free_only() and any(c.kind == "satellite" for c in control.centers)
    ok = not bad and control_ok
    detail = f"{len(CURVES) - len(bad)}/{len(CURVES)} curves smooth and free-only after x -> x^d"
    detail += f"; unramified cusp has a satellite center: {control_ok}"
    if bad:
        detail += f"; failing: {', '.join(bad)}"
    return ok, detail


def check_a5():
    bad = []
    for name, (omega, _) in FOLIATIONS.items():
        try:
            sep = extract_separatrix(reduce_singularities(omega, MAX_DEPTH), ORDER)
        except Exception as exc:
            bad.append(f"{name} ({type(exc).__name__})")
            continue
        if not sep.residual_vanishes(omega):
            bad.append(name)
    sep = extract_separatrix(reduce_singularities(FOLIATIONS["cusp"][0], MAX_DEPTH), ORDER)
    ys = sep.jet.y
    cusp_ok = (
        sep.over == "x"
        and sep.jet.d == 2
        and sep.jet.x_coeff == 1
        and ys[3] == 1
        and all(ys[k].is_zero() for k in range(ys.order) if k != 3)
    )
    ok = not bad and cusp_ok
    detail = f"{len(FOLIATIONS) - len(bad)}/{len(FOLIATIONS)} residuals vanish mod x^{ORDER}"
    detail += f"; cusp jet '{sep.describe()}' is exactly y = x^(3/2): {cusp_ok}"
    if bad:
        detail += f"; failing: {', '.join(bad)}"
    return ok, detail


def check_a6():
    total, bad = 0, []
    for name, (omega, f) in FOLIATIONS.items():
        if f is None:
            continue
        branches = {"x": newton_puiseux_expand(f, ORDER + 4), "y": newton_puiseux_expand(f.swap(), ORDER + 4)}
        jets = separatrix_jets(reduce_singularities(omega, MAX_DEPTH), ORDER)
        if not jets:
            bad.append(f"{name} (no jets)")
        for sep in jets:
            total += 1
            if not any(jets_match(sep.jet, b, ORDER) for b in branches[sep.over]):
                bad.append(f"{name}@{sep.location}")
    ok = not bad and total > 0
    return ok, f"{total - len(bad)}/{total} separatrix jets of Hamiltonian forms match a branch of f mod x^{ORDER}" + (
        f"; failing: {', '.join(bad)}" if bad else ""
    )


def _trees():
    for name, (omega, _) in FOLIATIONS.items():
        yield name, reduce_singularities(omega, MAX_DEPTH)
        res = find_regular_ramification(omega, D_MAX, MAX_DEPTH)
        yield f"{name}[d={res.d}]", res.tree
    for name, f in CURVES.items():
        yield f"curve {name}", embedded_resolution(f, MAX_DEPTH)
        yield f"curve {name}[ramified]", curve_theorem_check(f, ORDER).tree


def _saturated(obj) -> bool:
    return not isinstance(obj, OneForm) or obj.is_saturated()


def check_a7():
    glue, det, sat = [], [], []
    blowups = 0
    for name, tree in _trees():
        for c in tree.centers:
            blowups += 1
            if not gluing_agrees(c.x_chart, c.y_chart):
                glue.append(f"{name}/E{c.id}")
            if not all(_saturated(o) for o in (c.before, c.x_chart, c.y_chart)):
                sat.append(f"{name}/E{c.id}")
        if tree.kind == "foliation" and not all(r.form.is_saturated() for r in tree.leaves):
            sat.append(f"{name}/leaves")
        if tree.centers and abs(dual_graph(tree).determinant) != 1:
            det.append(name)
    json_bad = []
    opts = Options(order=ORDER)
    for name, (omega, _) in FOLIATIONS.items():
        doc = parse_input(f"omega = {format_form(omega)}")
        for command in ("resolve", "indices", "separatrix", "ramify", "curve-check"):
            if command == "curve-check" and omega.primitive() is None:
                continue
            first = emit_json(run_command(doc, command, opts)[0])
            second = emit_json(run_command(parse_input(doc.text), command, opts)[0])
            if first != second:
                json_bad.append(f"{name}/{command}")
    ok = not (glue or det or sat or json_bad)
    detail = (
        f"{blowups} blow-ups glue; det +-1 failures {len(det)}; saturation failures {len(sat)}; "
        f"JSON mismatches {len(json_bad)}"
    )
    bad = glue + det + sat + json_bad
    if bad:
        detail += f"; failing: {', '.join(bad[:8])}"
    return ok, detail


CRITERIA = {
    "A1": check_a1,
    "A2": check_a2,
    "A3": check_a3,
    "A4": check_a4,
    "A5": check_a5,
    "A6": check_a6,
    "A7": check_a7,
}


@pytest.mark.parametrize("tag", list(CRITERIA))
def test_acceptance(tag, capsys):
    ok, detail = CRITERIA[tag]()
    _emit(capsys, _line(tag, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for tag, fn in CRITERIA.items():
        ok, detail = fn()
        failed += not ok
        print(_line(tag, ok, detail))
    sys.exit(1 if failed else 0)
