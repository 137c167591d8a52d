"""Command dispatch and report rendering (text, JSON, DOT)."""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..algebra import BiPoly, FieldElement
from ..algebra.numbers import GaussianRational
from ..camacho_sad import extract_separatrix, index_theorem_check
from ..errors import PlanefolError
from ..foliation import OneForm, reduce_singularities
from ..ramification import curve_theorem_check, find_regular_ramification, tree_is_regular
from ..surface import DualGraph, ResolutionTree, dual_graph, embedded_resolution
from .grammar import InputDocument, format_form

COMMANDS = ("resolve", "indices", "separatrix", "ramify", "curve-check")


@dataclass
class Options:
    order: int = 16
    dmax: int = 12
    max_depth: int = 50
    force_blowup: bool = False


# -- numbers ---------------------------------------------------------------------


def _poly_in_t(coeffs) -> str:
    out = BiPoly({(k, 0): c for k, c in enumerate(coeffs) if c}, None)
    return str(out).replace("x", "t")


def _approx(z: complex) -> str:
    re, im = round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0
    if im == 0:
        return f"{re:.6f}"
    sign = "+" if im > 0 else "-"
    return f"{re:.6f}{sign}{abs(im):.6f}i"


def number(c) -> dict:
    """Exact value when it lies in Q(i); always the (minimal polynomial, decimal) pair."""
    if isinstance(c, int):
        c = GaussianRational(c)
    if isinstance(c, GaussianRational):
        mp = [-c, GaussianRational(1)]
        return {"exact": str(c), "minpoly": _poly_in_t(mp), "approx": _approx(complex(c))}
    low = c.descend()
    out = {"minpoly": _poly_in_t(low.minimal_polynomial()), "approx": _approx(complex(low))}
    g = low.as_gaussian()
    if g is not None:
        out = {"exact": str(g), **out}
    return out


def number_text(c) -> str:
    d = number(c)
    if "exact" in d:
        return d["exact"]
    return f"[root of {d['minpoly']} ~ {d['approx']}]"


# -- report builders -------------------------------------------------------------


def _center_rows(tree: ResolutionTree) -> list[dict]:
    rows = []
    for c in tree.centers:
        row = {"id": c.id, "kind": c.kind, "parent": c.parent, "location": c.point.label}
        if tree.kind == "foliation":
            row["dicritical"] = bool(c.dicritical)
        rows.append(row)
    return rows


def _component_rows(tree: ResolutionTree) -> list[dict]:
    rows = []
    for c in tree.components:
        row = {"id": c.id, "self_intersection": c.self_intersection}
        if tree.kind == "foliation":
            row["invariant"] = bool(c.invariant)
        rows.append(row)
    return rows


def _leaf_rows(tree: ResolutionTree) -> list[dict]:
    rows = []
    for r in tree.leaves:
        if tree.kind == "curve":
            rows.append({"location": r.location, "curve": str(r.curve)})
            continue
        ratio = r.ratio
        rows.append(
            {
                "location": r.location,
                "kind": r.kind.value,
                "trace": number(r.trace),
                "det": number(r.det),
                "ratio": None if ratio is None else number(ratio),
                "divisors": [{"component": c, "invariant": inv} for c, inv in r.invariant],
            }
        )
    return rows


def tree_summary(tree: ResolutionTree) -> dict:
    g = dual_graph(tree)
    return {
        "kind": tree.kind,
        "ramification": tree.ramification,
        "depth": tree.depth,
        "blowups": len(tree.centers),
        "free_only": tree.free_only(),
        "centers": _center_rows(tree),
        "components": _component_rows(tree),
        "intersections": [list(e) for e in g.edges],
        "determinant": g.determinant,
        "final": _leaf_rows(tree),
    }


def _as_form(doc: InputDocument) -> OneForm:
    if doc.kind == "foliation":
        return doc.payload
    f = doc.payload
    return OneForm.make(f.derivative("x"), f.derivative("y"))


def _as_curve(doc: InputDocument) -> BiPoly:
    if doc.kind == "curve":
        return doc.payload
    f = doc.payload.primitive()
    if f is None:
        raise PlanefolError("curve-check needs a curve or a closed form df")
    return f


def run_command(doc: InputDocument, command: str, opts: Options | None = None):
    """Report dict plus the tree (if any) that DOT output should draw."""
    opts = opts or Options()
    head = {"command": command, "input": doc.serialize(), "warnings": list(doc.warnings)}
    if command == "curve-check":
        f = _as_curve(doc)
        res = curve_theorem_check(f, opts.order)
        body = {"curve": str(f), "d": res.d, "free_only": res.free_only, "tree": tree_summary(res.tree)}
        return {**head, **body}, res.tree
    omega = _as_form(doc)
    if command == "resolve":
        if doc.kind == "curve":
            tree = embedded_resolution(doc.payload, opts.max_depth)
        else:
            tree = reduce_singularities(omega, opts.max_depth, force_first=opts.force_blowup)
        status = "already reduced" if not tree.centers else "reduced"
        return {**head, "status": status, "tree": tree_summary(tree)}, tree
    if command == "indices":
        tree = reduce_singularities(omega, opts.max_depth, force_first=opts.force_blowup)
        rows = []
        for r in index_theorem_check(tree):
            rows.append(
                {
                    "component": r.component,
                    "self_intersection": r.self_intersection,
                    "index_sum": None if r.index_sum is None else number(r.index_sum),
                    "equal": r.equal,
                    "skipped": r.skipped,
                    "contributions": [{"location": loc, "index": number(v)} for loc, v in r.contributions],
                }
            )
        return {**head, "rows": rows, "tree": tree_summary(tree)}, tree
    if command == "separatrix":
        tree = reduce_singularities(omega, opts.max_depth)
        sep = extract_separatrix(tree, opts.order)
        jet = sep.jet
        names = ("x", "y") if sep.over == "x" else ("y", "x")
        body = {
            "jet": sep.describe(),
            "parameter": {names[0]: {"coefficient": number(jet.x_coeff), "power": jet.d}},
            "series": [
                {"power": k, "coefficient": number(c)} for k, c in enumerate(jet.y.coeffs) if not c.is_zero()
            ],
            "known_mod": f"t^{jet.y.order}",
            "graph_over": sep.over,
            "residual_zero_mod": f"{names[0]}^{sep.order}",
            "source": sep.source,
            "location": sep.location,
        }
        return {**head, **body}, tree
    if command == "ramify":
        res = find_regular_ramification(omega, opts.dmax, opts.max_depth)
        free, simple = tree_is_regular(res.tree)
        body = {
            "d": res.d,
            "hint": res.hint,
            "free_only": free,
            "simple_only": simple,
            "tried": [{"d": d, "free_only": f, "simple_only": s} for d, f, s in res.tried],
            "pullback": format_form(res.tree.root_object),
            "tree": tree_summary(res.tree),
        }
        return {**head, **body}, res.tree
    raise ValueError(f"unknown command {command!r}; choose one of {', '.join(COMMANDS)}")


# -- emitters ----------------------------------------------------------------------


def emit_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=True)


def _tree_text(t: dict) -> list[str]:
    lines = [f"depth: {t['depth']}  blow-ups: {t['blowups']}  free-only: {str(t['free_only']).lower()}"]
    if t["ramification"] != 1:
        lines.insert(0, f"ramification: x -> x^{t['ramification']}")
    for c in t["centers"]:
        extra = "  dicritical" if c.get("dicritical") else ""
        lines.append(f"  E{c['id']}: {c['kind']} center at {c['location']}{extra}")
    if t["components"]:
        si = ", ".join(f"E{c['id']}^2 = {c['self_intersection']}" for c in t["components"])
        lines.append(f"  self-intersections: {si}  (det {t['determinant']})")
    for r in t["final"]:
        if "curve" in r:
            lines.append(f"  branch at {r['location']}: {r['curve']}")
            continue
        ratio = "" if r["ratio"] is None else f", ratio {_num(r['ratio'])}"
        lines.append(f"  {r['location']}: {r['kind']} (T = {_num(r['trace'])}, D = {_num(r['det'])}{ratio})")
    return lines


def _num(d: dict) -> str:
    return d.get("exact") or f"[root of {d['minpoly']} ~ {d['approx']}]"


def emit_text(report: dict) -> str:
    cmd = report["command"]
    lines = [f"input: {report['input']}"]
    lines += [f"warning: {w}" for w in report["warnings"]]
    if cmd == "resolve":
        lines.append(f"status: {report['status']}")
        lines += _tree_text(report["tree"])
    elif cmd == "indices":
        lines.append("component  E^2  index sum  equal")
        for r in report["rows"]:
            if r["skipped"]:
                lines.append(f"E{r['component']}  {r['self_intersection']}  skipped: {r['skipped']}")
                continue
            eq = str(r["equal"]).lower()
            lines.append(f"E{r['component']}  {r['self_intersection']}  {_num(r['index_sum'])}  {eq}")
            for c in r["contributions"]:
                lines.append(f"    {c['location']}: {_num(c['index'])}")
    elif cmd == "separatrix":
        lines.append(f"separatrix: {report['jet']}")
        lines.append(f"invariance residual vanishes mod {report['residual_zero_mod']}")
        lines.append(f"found at {report['location']} ({report['source']})")
    elif cmd == "ramify":
        lines.append(
            f"d = {report['d']}, free-only = {str(report['free_only']).lower()}, "
            f"simple-only = {str(report['simple_only']).lower()}"
        )
        lines.append(f"pullback: {report['pullback']}")
        lines += _tree_text(report["tree"])
    elif cmd == "curve-check":
        lines.append(f"d = {report['d']}, free-only = {str(report['free_only']).lower()}")
        lines += _tree_text(report["tree"])
    return "\n".join(lines) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(obj) -> str:
    """DOT text for a center tree (ResolutionTree) or a dual graph (DualGraph)."""
    lines = []
    if isinstance(obj, DualGraph):
        lines.append("digraph dual {")
        lines.append("  edge [dir=none];")
        for cid, si in obj.vertices:
            lines.append(f"  E{cid} [label={_quote(f'E{cid} ({si})')}];")
        for a, b in obj.edges:
            lines.append(f"  E{a} -> E{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    tree: ResolutionTree = obj
    lines.append("digraph centers {")
    lines.append(f"  origin [label={_quote(tree.root.label)}, shape=point];")
    for c in tree.centers:
        si = tree.component(c.id).self_intersection
        label = f"E{c.id} ({si}) {c.kind}"
        if c.dicritical:
            label += " dicritical"
        shape = "box" if c.kind == "satellite" else "ellipse"
        lines.append(f"  E{c.id} [label={_quote(label)}, shape={shape}];")
    for c in tree.centers:
        src = "origin" if c.parent is None else f"E{c.parent}"
        lines.append(f"  {src} -> E{c.id};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render(report: dict, tree, emit: str, graph: str = "tree") -> str:
    if emit == "json":
        return emit_json(report) + "\n"
    if emit == "dot":
        if tree is None:
            raise PlanefolError("this command produced no tree to draw")
        return emit_dot(dual_graph(tree) if graph == "dual" else tree)
    return emit_text(report)
