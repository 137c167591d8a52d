"""Newton polygons and Newton-Puiseux expansions of plane curve branches.

Expansions follow Duval's rational variant: for an edge of slope m/q and a
root xi of the edge polynomial we substitute

    x = xi**v * X**q,     y = X**m * (xi**u + Y),     u*q - v*m = 1,

so conjugate branches are produced once per class and no root of unity is
ever adjoined.  A branch is therefore returned as ``x = gamma * t**d``,
``y = y(t)`` with ``gamma`` in the coefficient field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import BiPoly, FieldElement, TruncatedSeries, univariate_roots
from .algebra.numbers import QI, NumberField, common_field
from .algebra.poly import UPoly

DEFAULT_ORDER = 16


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple  # support, sorted
    vertices: tuple  # lower-left hull vertices, increasing x-exponent
    edges: tuple  # ((i1, j1), (i2, j2), inclination) sorted by inclination

    @property
    def inclinations(self) -> list[Fraction]:
        return [e[2] for e in self.edges]


def newton_polygon(f: BiPoly) -> NewtonPolygon:
    """Compact part of the lower-left convex hull of the support of ``f``."""
    if f.is_zero():
        raise ValueError("Newton polygon of the zero polynomial")
    lowest: dict[int, int] = {}
    for i, j in f.terms:
        if i not in lowest or j < lowest[i]:
            lowest[i] = j
    pts = sorted(lowest.items())
    jmin = min(j for _, j in pts)
    end = min(i for i, j in pts if j == jmin)
    pts = [p for p in pts if p[0] <= end]
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (ax, ay), (bx, by) = hull[-2], hull[-1]
            cross = (bx - ax) * (p[1] - ay) - (by - ay) * (p[0] - ax)
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    # keep the strictly descending part
    verts = [hull[0]]
    for p in hull[1:]:
        if p[1] < verts[-1][1]:
            verts.append(p)
    edges = []
    for (i1, j1), (i2, j2) in zip(verts, verts[1:]):
        edges.append(((i1, j1), (i2, j2), Fraction(i2 - i1, j1 - j2)))
    edges.sort(key=lambda e: e[2])
    return NewtonPolygon(tuple(sorted(f.terms)), tuple(verts), tuple(edges))


@dataclass(frozen=True)
class PuiseuxJet:
    """A branch parametrized as ``x = x_coeff * t**d (+ shear*y)``, ``y = y(t)``.

    ``y`` is known modulo ``t**(d*order)``, i.e. modulo ``x**order``.
    """

    d: int
    x_coeff: FieldElement
    y: TruncatedSeries
    order: int
    shear: int = 0

    @property
    def field(self) -> NumberField:
        return common_field(self.x_coeff.field, self.y.field)

    @property
    def is_regular(self) -> bool:
        return self.d == 1

    def x_series(self) -> TruncatedSeries:
        n = self.y.order
        xs = TruncatedSeries.monomial(self.d, n, self.x_coeff, self.x_coeff.field)
        if self.shear:
            xs = xs + self.y.scale(self.shear)
        return xs

    def substitute(self, f: BiPoly) -> TruncatedSeries:
        """f(x(t), y(t)); vanishes modulo t**(d*order) for a genuine branch of f."""
        return f.eval_series(self.x_series(), self.y)

    def exponents(self) -> list[Fraction]:
        return [Fraction(k, self.d) for k, c in enumerate(self.y.coeffs) if not c.is_zero()]

    def leading(self):
        """(coefficient, exponent in t) of the first nonzero term, None for y = 0."""
        v = self.y.valuation()
        return None if v is None else (self.y.coeffs[v], v)

    def describe(self, names: tuple[str, str] = ("x", "y")) -> str:
        terms = []
        for k, c in enumerate(self.y.coeffs):
            if not c.is_zero():
                terms.append(_term(c, k))
        ys = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        xs = _term(self.x_coeff, self.d)
        if self.shear:
            xs += f" + {self.shear}*{names[1]}"
        return f"{names[0]} = {xs}, {names[1]} = {ys} + O(t^{self.y.order})"

    def __str__(self):
        return self.describe()


def _term(c: FieldElement, k: int) -> str:
    mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return f"-{mono}"
    cs = str(c)
    if " " in cs:
        cs = f"({cs})"
    return f"{cs}*{mono}"


def _bezout(q: int, m: int) -> tuple[int, int]:
    """Nonnegative (u, v) with u*q - v*m = 1."""
    if m == 1:
        return 1, q - 1
    u = pow(q, -1, m)
    return u, (u * q - 1) // m


def _edge_transform(f: BiPoly, q: int, m: int, l: int, xi: FieldElement, u: int, v: int) -> BiPoly:
    """X**(-l) * f(xi**v * X**q, X**m * (xi**u + Y))."""
    fld = common_field(f.field, xi.field)
    base = BiPoly.y(fld) + xi ** u
    powers = [BiPoly.const(1, fld)]
    acc = BiPoly.zero(fld)
    xv = xi ** v
    for (i, j), c in f.terms.items():
        while len(powers) <= j:
            powers.append(powers[-1] * base)
        shift = q * i + m * j - l
        acc = acc + powers[j].shift(shift, 0).scale(c * xv ** i)
    return acc


def _solve_regular(g: BiPoly, precision: int) -> TruncatedSeries:
    """Y(X) with g(X, Y(X)) = 0 and Y(0) = 0, assuming dg/dY(0,0) != 0."""
    fld = g.field
    xs = TruncatedSeries.monomial(1, precision, 1, fld)
    ys = TruncatedSeries.zero(precision, fld)
    gy = g.derivative("y")
    for _ in range(precision + 2):
        val = g.eval_series(xs, ys)
        if val.is_zero():
            return ys
        ys = ys - val / gy.eval_series(xs, ys)
    raise ArithmeticError("Newton iteration for a regular branch did not converge")


def _branches(f: BiPoly, n: int) -> list[tuple[FieldElement, int, TruncatedSeries]]:
    """Branch classes (gamma, d, y) of f through the origin, with y known mod t**(d*n)."""
    out = []
    vy = f.valuation_y()
    if vy:
        out.append((f.field.one(), 1, TruncatedSeries.zero(n, f.field)))
        f = f.div_monomial(0, vy)
    if f.constant_term():
        return out
    poly = newton_polygon(f)
    for (i1, j1), (i2, j2), incl in poly.edges:
        m, q = incl.numerator, incl.denominator
        l = q * i1 + m * j1
        edge = {(i, j): c for (i, j), c in f.terms.items() if q * i + m * j == l}
        phi_coeffs = [f.field.zero()] * ((j1 - j2) // q + 1)
        for (i, j), c in edge.items():
            phi_coeffs[(j - j2) // q] = c
        roots = univariate_roots(UPoly(phi_coeffs, f.field)).require_complete()
        u, v = _bezout(q, m)
        for xi, r in roots.roots:
            if xi.is_zero():
                continue
            f1 = _edge_transform(f, q, m, l, xi, u, v)
            head = xi ** u
            if r == 1:
                prec = max(q * n - m, 1)
                tail = _solve_regular(f1, prec)
                ys = (tail + head).shift_up(m)
                out.append((xi ** v, q, ys.truncate(q * n)))
                continue
            for gamma1, d1, y1 in _branches(f1, max(q * n - m, 1)):
                ys = (y1 + head).shift_up(m * d1).scale(gamma1 ** m)
                d = q * d1
                out.append((xi ** v * gamma1 ** q, d, ys.truncate(d * n)))
    return out


def _primitive(gamma, d: int, ys: TruncatedSeries, n: int):
    g = d
    for k, c in enumerate(ys.coeffs):
        if not c.is_zero():
            g = math.gcd(g, k)
    if g == 1:
        return gamma, d, ys
    cs = [ys.coeffs[k] for k in range(0, ys.order, g)]
    return gamma, d // g, TruncatedSeries(cs, (d // g) * n, ys.field)


def y_general_shear(f: BiPoly) -> int:
    """Smallest c >= 0 such that f(x + c*y, y) restricted to x = 0 has order mult(f)."""
    mult = f.order()
    c = 0
    while True:
        g = f if c == 0 else f.substitute(BiPoly.x(f.field) + BiPoly.y(f.field).scale(c), BiPoly.y(f.field))
        if g.at_x(0).valuation() == mult:
            return c
        c += 1


def newton_puiseux_expand(f: BiPoly, order: int = DEFAULT_ORDER) -> list[PuiseuxJet]:
    """One jet per conjugacy class of branches of ``f`` at the origin.

    Branches are only defined as graphs over x, so a polynomial divisible by
    x is first sheared by ``x -> x + c*y``; the jets record ``c``.
    """
    if f.is_zero():
        raise ValueError("cannot expand the zero polynomial")
    if f.constant_term():
        raise ValueError("the curve does not pass through the origin")
    shear = 0
    g = f
    if f.at_x(0).is_zero():
        shear = y_general_shear(f)
        g = f.substitute(BiPoly.x(f.field) + BiPoly.y(f.field).scale(shear), BiPoly.y(f.field))
    jets = []
    for gamma, d, ys in _branches(g, order):
        gamma, d, ys = _primitive(gamma, d, ys, order)
        jets.append(PuiseuxJet(d, gamma, ys, order, shear))
    return jets


def ramification_exponent(jets) -> int:
    """Least common multiple of the branch indices."""
    jets = list(jets)
    if not jets:
        raise ValueError("no branches given")
    return math.lcm(*(j.d for j in jets))


def _graph_form(jet: PuiseuxJet, n: int):
    """(gamma, d, y) with x = gamma*t**d exactly, undoing a shear; y known mod t**(d*n)."""
    if not jet.shear:
        return jet.x_coeff, jet.d, jet.y.truncate(jet.d * n)
    from .camacho_sad import _to_puiseux

    got = _to_puiseux(jet.x_series(), jet.y, n)
    if got is None:
        return None
    return _primitive(*got, n)


def jets_match(a: PuiseuxJet, b: PuiseuxJet, n: int) -> bool:
    """Do two jets parametrize the same branch modulo x**n (up to t -> lambda*t)?"""
    ga, gb = _graph_form(a, n), _graph_form(b, n)
    if ga is None or gb is None:
        return False
    (g1, d, y1), (g2, d2, y2) = ga, gb
    if d != d2:
        return False
    m = d * n
    # lambda**k = c1_k / c2_k on the support, lambda**d = g1 / g2
    rel = [(d, g1 / g2)]
    for k in range(m):
        c1, c2 = y1[k], y2[k]
        if c1.is_zero() != c2.is_zero():
            return False
        if not c1.is_zero():
            rel.append((k, c1 / c2))
    # combine exponents to reach gcd 1 by an extended Euclid over the relations
    e, val = rel[0]
    for k, v in rel[1:]:
        g, s, t = _xgcd(e, k)
        if g == e:
            continue
        val = val ** s * v ** t
        e = g
    if e != 1:
        return False
    return all(val ** k == v for k, v in rel)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0
