"""Chart bookkeeping for iterated point blow-ups of (C^2, 0).

Every point we look at is the origin of some chart.  Exceptional components
through such a point are always coordinate axes: ``(E, "x")`` means the
component has local equation ``x = 0``, ``(E, "y")`` means ``y = 0``.

Blowing up the origin gives the x-chart ``(x, t) -> (x, x*t)`` with new
divisor ``x = 0`` and the y-chart ``(s, y) -> (s*y, y)`` with new divisor
``y = 0``.  Points of the new divisor are examined in the x-chart, except the
single point ``s = 0`` of the y-chart.

Trees are persistent: :func:`blow_up_at` returns a new tree and shares all
unchanged centers and components with the old one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

from .algebra import BiPoly, FieldElement, univariate_roots
from .algebra.numbers import common_field
from .errors import ResolutionDepthExceeded

ROOT, FREE, SATELLITE = "root", "free", "satellite"


@dataclass(frozen=True)
class Step:
    """Elementary substitution expressing previous chart coordinates in new ones."""

    kind: str  # "ramify", "xchart", "ychart", "translate"
    args: tuple = ()

    def images(self, fld):
        x, y = BiPoly.x(fld), BiPoly.y(fld)
        if self.kind == "xchart":
            return x, x * y
        if self.kind == "ychart":
            return x * y, y
        if self.kind == "translate":
            cx, cy = self.args
            return x + cx, y + cy
        if self.kind == "ramify":
            return x ** self.args[0], y
        raise ValueError(f"unknown chart step {self.kind!r}")

    def __str__(self):
        if self.kind == "translate":
            return f"translate({self.args[0]}, {self.args[1]})"
        if self.kind == "ramify":
            return f"ramify({self.args[0]})"
        return self.kind


@dataclass(frozen=True)
class Chart:
    steps: tuple = ()

    def then(self, step: Step) -> "Chart":
        return Chart(self.steps + (step,))

    def field(self):
        fld = None
        for s in self.steps:
            for a in s.args:
                if isinstance(a, FieldElement):
                    fld = a.field if fld is None else common_field(fld, a.field)
        return fld

    def total_map(self):
        """Original (x, y) as exact polynomials in this chart's coordinates."""
        from .algebra.numbers import QI

        fld = self.field() or QI
        X, Y = BiPoly.x(fld), BiPoly.y(fld)
        for s in self.steps:
            px, py = s.images(fld)
            X, Y = X.substitute(px, py), Y.substitute(px, py)
        return X, Y

    def ramification(self) -> int:
        d = 1
        for s in self.steps:
            if s.kind == "ramify":
                d *= s.args[0]
        return d

    def __str__(self):
        return " . ".join(str(s) for s in self.steps) or "identity"


@dataclass(frozen=True)
class LocalPoint:
    chart: Chart
    label: str
    divisors: tuple = ()  # ((component id, "x" | "y"), ...)
    parent: int | None = None
    depth: int = 0

    def axis_of(self, comp: int) -> str | None:
        for c, ax in self.divisors:
            if c == comp:
                return ax
        return None

    def component_on(self, axis: str) -> int | None:
        for c, ax in self.divisors:
            if ax == axis:
                return c
        return None


@dataclass(frozen=True)
class DivisorComponent:
    id: int
    self_intersection: int = -1
    invariant: bool | None = None  # None when the tree resolves a curve


@dataclass(frozen=True)
class Center:
    id: int  # also the id of the component it creates
    point: LocalPoint
    kind: str
    before: object
    x_chart: object
    y_chart: object
    dicritical: bool | None = None

    @property
    def parent(self) -> int | None:
        return self.point.parent

    @property
    def depth(self) -> int:
        return self.point.depth


@dataclass(frozen=True)
class ResolutionTree:
    kind: str  # "foliation" or "curve"
    subject: object  # the object before any ramification
    ramification: int
    root: LocalPoint
    root_object: object  # subject pulled back by the ramification
    centers: tuple = ()
    components: tuple = ()
    intersections: frozenset = frozenset()
    leaves: tuple = ()

    @property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.centers), default=-1)

    def component(self, cid: int) -> DivisorComponent:
        return self.components[cid - 1]

    def center(self, cid: int) -> Center:
        return self.centers[cid - 1]

    def free_only(self) -> bool:
        return all(c.kind != SATELLITE for c in self.centers)

    def with_leaves(self, leaves) -> "ResolutionTree":
        return replace(self, leaves=tuple(leaves))


def new_tree(kind: str, subject, root_object, ramification: int = 1) -> ResolutionTree:
    chart = Chart((Step("ramify", (ramification,)),)) if ramification != 1 else Chart()
    label = f"rho{ramification}" if ramification != 1 else "origin"
    root = LocalPoint(chart, label)
    return ResolutionTree(kind, subject, ramification, root, root_object)


def classify_point(point: LocalPoint) -> str:
    n = len(point.divisors)
    assert n <= 2, "three exceptional components never meet at a point"
    return (ROOT, FREE, SATELLITE)[n]


def classify_center(tree: ResolutionTree, cid: int) -> str:
    return classify_point(tree.center(cid).point)


def blow_up_at(
    tree: ResolutionTree,
    point: LocalPoint,
    obj,
    transform: Callable[[object, str], tuple],
) -> tuple[ResolutionTree, Center]:
    """Blow up the origin of ``point``'s chart.

    ``transform(obj, "x" | "y")`` returns ``(strict transform, dicritical flag)``.
    """
    new_id = len(tree.components) + 1
    kind = classify_point(point)
    x_obj, dic = transform(obj, "x")
    y_obj, _ = transform(obj, "y")
    center = Center(new_id, point, kind, obj, x_obj, y_obj, dic)
    through = [c for c, _ in point.divisors]
    comps = list(tree.components)
    for c in through:
        old = comps[c - 1]
        comps[c - 1] = replace(old, self_intersection=old.self_intersection - 1)
    invariant = None if dic is None else not dic
    comps.append(DivisorComponent(new_id, -1, invariant))
    inter = set(tree.intersections)
    if len(through) == 2:
        inter.discard(frozenset(through))
    for c in through:
        inter.add(frozenset((c, new_id)))
    new = replace(
        tree,
        centers=tree.centers + (center,),
        components=tuple(comps),
        intersections=frozenset(inter),
    )
    return new, center


def x_chart_point(center: Center, tau: FieldElement | None) -> LocalPoint:
    """Point ``t = tau`` of the new divisor, as the origin of a translated x-chart."""
    p = center.point
    chart = p.chart.then(Step("xchart"))
    divs = [(center.id, "x")]
    if tau is None or tau.is_zero():
        old = p.component_on("y")
        if old is not None:
            divs.append((old, "y"))
        label = f"{p.label}/E{center.id}:t=0"
    else:
        chart = chart.then(Step("translate", (tau.field.zero(), tau)))
        label = f"{p.label}/E{center.id}:t={tau}"
    return LocalPoint(chart, label, tuple(divs), center.id, p.depth + 1)


def y_chart_point(center: Center) -> LocalPoint:
    """Point ``s = 0`` of the new divisor (the direction x = 0)."""
    p = center.point
    divs = [(center.id, "y")]
    old = p.component_on("x")
    if old is not None:
        divs.append((old, "x"))
    return LocalPoint(p.chart.then(Step("ychart")), f"{p.label}/E{center.id}:s=0", tuple(divs), center.id, p.depth + 1)


# -- dual graph ----------------------------------------------------------------


@dataclass(frozen=True)
class DualGraph:
    vertices: tuple  # ((component id, self-intersection), ...)
    edges: tuple  # ((a, b), ...) with a < b
    matrix: tuple  # intersection matrix, rows of ints

    @property
    def determinant(self) -> int:
        return int_determinant(self.matrix)

    def is_tree(self) -> bool:
        n = len(self.vertices)
        if n == 0:
            return True
        if len(self.edges) != n - 1:
            return False
        adj = {v: set() for v, _ in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = set()
        todo = deque([self.vertices[0][0]])
        while todo:
            v = todo.popleft()
            if v in seen:
                continue
            seen.add(v)
            todo.extend(adj[v] - seen)
        return len(seen) == n


def int_determinant(m) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = [[Fraction(v) for v in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return int(det)


def dual_graph(tree: ResolutionTree) -> DualGraph:
    verts = tuple((c.id, c.self_intersection) for c in tree.components)
    edges = tuple(sorted(tuple(sorted(e)) for e in tree.intersections))
    n = len(verts)
    mat = [[0] * n for _ in range(n)]
    for c in tree.components:
        mat[c.id - 1][c.id - 1] = c.self_intersection
    for a, b in edges:
        mat[a - 1][b - 1] = mat[b - 1][a - 1] = 1
    return DualGraph(verts, edges, tuple(tuple(r) for r in mat))


# -- chart gluing ----------------------------------------------------------------


def _glue(p: BiPoly, n: int) -> BiPoly:
    """s**n * p(s*y, 1/s) as a polynomial in (s, y)."""
    out = {}
    for (i, j), c in p.terms.items():
        out[(i - j + n, i)] = c
    return BiPoly._make(p.field, out)


def _strip_s(p: BiPoly) -> BiPoly:
    v = p.valuation_x()
    return p if p.is_zero() or v == 0 else p.div_monomial(v, 0)


def gluing_agrees(x_obj, y_obj) -> bool:
    """Do the x-chart and y-chart transforms agree on the overlap t = 1/s, x = s*y?

    Curves must agree up to a power of s (a unit on the overlap); forms must be
    proportional there.  Denominators are cleared exactly.
    """
    if isinstance(x_obj, BiPoly):
        n = max(x_obj.degree_y(), 0)
        return _strip_s(_glue(x_obj, n)) == _strip_s(y_obj)
    A, B = x_obj.a, x_obj.b
    n = max(A.degree_y(), B.degree_y(), 0)
    gA, gB = _glue(A, n), _glue(B, n)
    s = BiPoly.x(gA.field)
    y = BiPoly.y(gA.field)
    P = s * s * y * gA - gB  # ds coefficient times s**(n+2)
    Q = s * s * s * gA  # dy coefficient times s**(n+2)
    if P.is_zero() and Q.is_zero():
        return False
    return (P * y_obj.b - Q * y_obj.a).is_zero()


# -- embedded resolution of curves -------------------------------------------------


@dataclass(frozen=True)
class CurvePoint:
    """A point of the final divisor crossed by the strict transform."""

    point: LocalPoint
    curve: BiPoly

    @property
    def location(self) -> str:
        return self.point.label


def curve_strict_transform(f: BiPoly, direction: str):
    m = f.order()
    x, y = BiPoly.x(f.field), BiPoly.y(f.field)
    if direction == "x":
        return f.substitute(x, x * y).div_monomial(m, 0), None
    return f.substitute(x * y, y).div_monomial(0, m), None


def _needs_curve_blowup(g: BiPoly, point: LocalPoint) -> bool:
    if not g.constant_term().is_zero():
        return False
    if g.order() >= 2:
        return True
    if len(point.divisors) == 2:
        return True
    gx = g.coefficient(1, 0)
    gy = g.coefficient(0, 1)
    for _, axis in point.divisors:
        if axis == "x" and gy.is_zero():
            return True
        if axis == "y" and gx.is_zero():
            return True
    return False


def embedded_resolution(f: BiPoly, max_depth: int = 50, *, subject=None, ramification: int = 1) -> ResolutionTree:
    """Blow up until the strict transform is smooth, separated and transverse to the divisor."""
    tree = new_tree("curve", subject if subject is not None else f, f, ramification)
    queue = deque([(tree.root, f)])
    leaves = []
    while queue:
        pt, g = queue.popleft()
        if not _needs_curve_blowup(g, pt):
            if g.constant_term().is_zero() and pt.divisors:
                leaves.append(CurvePoint(pt, g))
            continue
        if pt.depth >= max_depth:
            raise ResolutionDepthExceeded(f"curve resolution exceeded depth {max_depth}", chart_path=pt.label)
        tree, center = blow_up_at(tree, pt, g, curve_strict_transform)
        fx = center.x_chart
        res = univariate_roots(fx.at_x(0)).require_complete(pt.label)
        for tau, _ in res.roots:
            sub = x_chart_point(center, tau)
            local = fx if tau.is_zero() else fx.translate(0, tau)
            queue.append((sub, local))
        if center.y_chart.constant_term().is_zero():
            queue.append((y_chart_point(center), center.y_chart))
    return tree.with_leaves(leaves)
