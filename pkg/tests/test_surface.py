from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import CURVES
from planefol.algebra import QI, BiPoly, GaussianRational, X, Y
from planefol.foliation import OneForm, strict_transform_blowup
from planefol.surface import (
    FREE,
    ROOT,
    SATELLITE,
    Chart,
    Step,
    blow_up_at,
    classify_center,
    curve_strict_transform,
    dual_graph,
    embedded_resolution,
    gluing_agrees,
    new_tree,
    x_chart_point,
    y_chart_point,
)

x, y = X, Y


def _noop(obj, direction):
    return obj, False


def _chain(choices):
    """Blow up the origin, then follow ``choices``: "free", "corner" or "far"."""
    tree = new_tree("foliation", None, None)
    tree, c = blow_up_at(tree, tree.root, None, _noop)
    for ch in choices:
        if ch == "free":
            pt = x_chart_point(c, QI(1))
        elif ch == "corner":
            pt = x_chart_point(c, QI(0)) if c.point.component_on("y") is not None else y_chart_point(c)
        else:
            pt = y_chart_point(c)
        tree, c = blow_up_at(tree, pt, None, _noop)
    return tree


def test_bookkeeping_examples():
    t1 = _chain([])
    assert [e.self_intersection for e in t1.components] == [-1]
    t2 = _chain(["free"])
    assert [e.self_intersection for e in t2.components] == [-2, -1]
    # third center at E1 cap E2 (the s = 0 point of E2's y-chart)
    t3 = _chain(["free", "far"])
    assert [e.self_intersection for e in t3.components] == [-3, -2, -1]
    assert [classify_center(t3, k) for k in (1, 2, 3)] == [ROOT, FREE, SATELLITE]


def test_dual_graph_examples():
    g1 = dual_graph(_chain([]))
    assert g1.vertices == ((1, -1),) and g1.edges == () and g1.determinant == -1
    g2 = dual_graph(_chain(["free"]))
    assert g2.vertices == ((1, -2), (2, -1)) and g2.edges == ((1, 2),) and g2.determinant == 1
    g3 = dual_graph(_chain(["free", "far"]))
    assert g3.edges == ((1, 3), (2, 3)) and g3.determinant in (1, -1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(["free", "corner", "far"]), max_size=8))
def test_unimodular_tree(choices):
    tree = _chain(choices)
    g = dual_graph(tree)
    assert g.determinant in (1, -1)
    assert g.is_tree()
    for c in tree.centers:
        assert c.kind == (ROOT, FREE, SATELLITE)[len(c.point.divisors)]
    for e in tree.components:
        assert e.self_intersection <= -1


def test_chart_total_map():
    chart = Chart((Step("xchart"), Step("translate", (QI(0), QI(2))), Step("ychart")))
    X_, Y_ = chart.total_map()
    # (x, y) -> (x y, y) -> (x y, y + 2) -> (x y, x y (y + 2))
    assert X_ == x * y
    assert Y_ == x * y * (y + 2)


def test_cusp_embedded_resolution():
    tree = embedded_resolution(y**2 - x**3)
    assert [c.kind for c in tree.centers] == [ROOT, FREE, SATELLITE]
    assert [e.self_intersection for e in tree.components] == [-3, -2, -1]
    assert not tree.free_only()
    assert dual_graph(tree).determinant in (1, -1)


def test_ramified_cusp_is_free_only():
    tree = embedded_resolution(y**2 - x**6)
    assert tree.free_only()
    assert len(tree.leaves) == 2


def test_corpus_curves_glue_and_unimodular():
    for f in CURVES.values():
        tree = embedded_resolution(f)
        for c in tree.centers:
            assert gluing_agrees(c.x_chart, c.y_chart)
        assert dual_graph(tree).determinant in (1, -1)


small = st.integers(-4, 4)


@st.composite
def vanishing_polys(draw):
    terms = {}
    for _ in range(draw(st.integers(1, 5))):
        e = (draw(st.integers(0, 4)), draw(st.integers(0, 4)))
        if e != (0, 0):
            terms[e] = GaussianRational(draw(small), draw(small))
    return BiPoly(terms, QI)


@settings(max_examples=80, deadline=None)
@given(vanishing_polys())
def test_curve_gluing_property(f):
    if f.is_zero():
        return
    fx, _ = curve_strict_transform(f, "x")
    fy, _ = curve_strict_transform(f, "y")
    assert gluing_agrees(fx, fy)


@settings(max_examples=80, deadline=None)
@given(vanishing_polys(), vanishing_polys())
def test_form_gluing_property(a, b):
    if a.is_zero() and b.is_zero():
        return
    omega = OneForm.make(a, b)
    if not omega.is_singular():
        return
    wx, dx = strict_transform_blowup(omega, "x")
    wy, dy = strict_transform_blowup(omega, "y")
    assert dx == dy
    assert gluing_agrees(wx, wy)
