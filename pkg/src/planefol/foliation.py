"""Foliation germs as saturated 1-forms, blow-up transforms and Seidenberg reduction."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .algebra import BiPoly, FieldElement, univariate_roots, upoly_gcd
from .algebra.numbers import _rational_sqrt, common_field
from .algebra.poly import poly_gcd
from .errors import ResolutionDepthExceeded
from .surface import (
    Center,
    Chart,
    LocalPoint,
    ResolutionTree,
    _glue,
    blow_up_at,
    new_tree,
    x_chart_point,
    y_chart_point,
)

DEFAULT_MAX_DEPTH = 50


@dataclass(frozen=True, eq=False)
class OneForm:
    """The form ``a dx + b dy``; construct through :meth:`make` to saturate."""

    a: BiPoly
    b: BiPoly

    @classmethod
    def make(cls, a: BiPoly, b: BiPoly, saturate: bool = True) -> "OneForm":
        return cls.make_with_divisor(a, b, saturate)[0]

    @classmethod
    def make_with_divisor(cls, a: BiPoly, b: BiPoly, saturate: bool = True):
        """Saturated form and the common factor that was removed."""
        a, b = a._align(b)
        if a.is_zero() and b.is_zero():
            raise ValueError("a 1-form needs a nonzero coefficient")
        if not saturate:
            return cls(a, b), BiPoly.const(1, a.field)
        g = poly_gcd(a, b)
        if g.is_constant():
            return cls(a, b), g
        return cls(a.divexact(g), b.divexact(g)), g

    @property
    def field(self):
        return self.a.field

    def __eq__(self, other):
        if not isinstance(other, OneForm):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def same_foliation(self, other: "OneForm") -> bool:
        return (self.a * other.b - self.b * other.a).is_zero()

    def is_saturated(self) -> bool:
        return poly_gcd(self.a, self.b).is_constant()

    def multiplicity(self):
        return min(self.a.order(), self.b.order())

    def is_singular(self) -> bool:
        return self.a.constant_term().is_zero() and self.b.constant_term().is_zero()

    def pullback(self, X: BiPoly, Y: BiPoly) -> "OneForm":
        """Unsaturated pullback under (x, y) = (X, Y)."""
        aa = self.a.substitute(X, Y)
        bb = self.b.substitute(X, Y)
        A = aa * X.derivative("x") + bb * Y.derivative("x")
        B = aa * X.derivative("y") + bb * Y.derivative("y")
        return OneForm(A, B)

    def translate(self, cx, cy) -> "OneForm":
        return OneForm(self.a.translate(cx, cy), self.b.translate(cx, cy))

    def swap(self) -> "OneForm":
        """The same form written in swapped coordinates (x, y) -> (y, x)."""
        return OneForm(self.b.swap(), self.a.swap())

    def over(self, fld) -> "OneForm":
        return OneForm(self.a.over(fld), self.b.over(fld))

    def vector_field(self) -> tuple[BiPoly, BiPoly]:
        """Dual vector field X = b d/dx - a d/dy, as its two components."""
        return self.b, -self.a

    def linear_part(self):
        """Jacobian of the dual vector field at the origin, rows (dX1, dX2)."""
        b, a = self.b, self.a
        return (
            (b.coefficient(1, 0), b.coefficient(0, 1)),
            (-a.coefficient(1, 0), -a.coefficient(0, 1)),
        )

    def is_closed(self) -> bool:
        return self.a.derivative("y") == self.b.derivative("x")

    def primitive(self) -> BiPoly | None:
        """f with df = omega and f(0,0) = 0, when omega is closed."""
        if not self.is_closed():
            return None
        f = {}
        for (i, j), c in self.a.terms.items():
            f[(i + 1, j)] = c * Fraction(1, i + 1)
        for (i, j), c in self.b.terms.items():
            if i == 0:
                f[(0, j + 1)] = c * Fraction(1, j + 1)
        return BiPoly(f, self.field)

    def __repr__(self):
        return f"OneForm(({self.a}) dx + ({self.b}) dy)"

    def __str__(self):
        parts = []
        if not self.a.is_zero():
            parts.append(f"({self.a}) dx")
        if not self.b.is_zero():
            parts.append(f"({self.b}) dy")
        return " + ".join(parts)


def multiplicity(omega: OneForm) -> int:
    return omega.multiplicity()


def is_dicritical(omega: OneForm) -> bool:
    """x*a_nu + y*b_nu vanishes identically (nu = multiplicity)."""
    nu = omega.multiplicity()
    x, y = BiPoly.x(omega.field), BiPoly.y(omega.field)
    return (x * omega.a.homogeneous_part(nu) + y * omega.b.homogeneous_part(nu)).is_zero()


def strict_transform_blowup(omega: OneForm, direction: str) -> tuple[OneForm, bool]:
    """Strict transform in the x-chart (x, t) -> (x, x t) or y-chart (s, y) -> (s y, y)."""
    nu = omega.multiplicity()
    dic = is_dicritical(omega)
    fld = omega.field
    x, y = BiPoly.x(fld), BiPoly.y(fld)
    if direction == "x":
        total = omega.pullback(x, x * y)
        val = min(total.a.valuation_x(), total.b.valuation_x())
    else:
        total = omega.pullback(x * y, y)
        val = min(total.a.valuation_y(), total.b.valuation_y())
    k = nu + 1 if dic else nu
    if val != k:
        raise AssertionError(
            f"dicritical criterion ({dic}) disagrees with divisor power {val} in the pullback (nu={nu})"
        )
    if direction == "x":
        a, b = total.a.div_monomial(k, 0), total.b.div_monomial(k, 0)
    else:
        a, b = total.a.div_monomial(0, k), total.b.div_monomial(0, k)
    return OneForm.make(a, b), dic


class Kind(str, enum.Enum):
    REGULAR = "regular"
    SIMPLE = "simple"
    SADDLE_NODE = "saddle-node"
    NON_SIMPLE = "non-simple"

    @property
    def reduced(self) -> bool:
        return self is not Kind.NON_SIMPLE


def ratio_is_positive_rational(trace: FieldElement, det: FieldElement) -> bool:
    """Whether the eigenvalue ratio of a linear part with D != 0 lies in Q_{>0}.

    With kappa = T**2 / D the ratio r solves r + 1/r = kappa - 2; it is a
    positive rational exactly when kappa is rational, kappa >= 4 and
    kappa*(kappa - 4) is a rational square.
    """
    kappa = (trace * trace / det).as_rational()
    if kappa is None or kappa < 4:
        return False
    return _rational_sqrt(kappa * (kappa - 4)) is not None


def classify_linear(trace: FieldElement, det: FieldElement) -> Kind:
    if not det.is_zero():
        return Kind.NON_SIMPLE if ratio_is_positive_rational(trace, det) else Kind.SIMPLE
    if not trace.is_zero():
        return Kind.SADDLE_NODE
    return Kind.NON_SIMPLE


def eigenvalue_ratio(trace: FieldElement, det: FieldElement):
    """One eigenvalue ratio lambda2/lambda1 when it lies in the field of T, D (else None)."""
    if det.is_zero():
        return None
    # D r^2 - (T^2 - 2D) r + D = 0
    fld = common_field(trace.field, det.field)
    disc = trace * trace * (trace * trace - det * 4)
    s = fld.sqrt(disc)
    if s is None:
        return None
    return (trace * trace - det * 2 + s) / (det * 2)


@dataclass(frozen=True, eq=False)
class SingularityRecord:
    point: LocalPoint
    form: OneForm  # local form, singular point at the origin
    kind: Kind
    trace: FieldElement
    det: FieldElement
    invariant: tuple = ()  # ((component id, invariant?), ...) for adjacent components

    @property
    def location(self) -> str:
        return self.point.label

    @property
    def ratio(self):
        return eigenvalue_ratio(self.trace, self.det)

    @property
    def is_corner(self) -> bool:
        return len(self.point.divisors) == 2

    def eigenvalues(self):
        """Roots of l^2 - T l + D, possibly in a quadratic extension."""
        from .algebra.poly import UPoly

        res = univariate_roots(UPoly([self.det, -self.trace, 1])).require_complete(self.location)
        vals = []
        for r, m in res.roots:
            vals.extend([r] * m)
        return vals


def make_record(point: LocalPoint, omega: OneForm, components=None) -> SingularityRecord:
    (m11, m12), (m21, m22) = omega.linear_part()
    trace = m11 + m22
    det = m11 * m22 - m12 * m21
    if not omega.is_singular():
        kind = Kind.REGULAR
    else:
        kind = classify_linear(trace, det)
    inv = ()
    if components is not None:
        inv = tuple((c, bool(components[c - 1].invariant)) for c, _ in point.divisors if c > 0)
    return SingularityRecord(point, omega, kind, trace, det, inv)


def classify_singularity(rec: SingularityRecord) -> Kind:
    if not rec.form.is_singular():
        return Kind.REGULAR
    return classify_linear(rec.trace, rec.det)


def y_chart_from_x_chart(omega_x: OneForm) -> OneForm:
    """Re-express an x-chart form in the y-chart through t = 1/s, x = s*y, clearing s."""
    A, B = omega_x.a, omega_x.b
    n = max(A.degree_y(), B.degree_y(), 0)
    gA, gB = _glue(A, n), _glue(B, n)
    s, y = BiPoly.x(gA.field), BiPoly.y(gA.field)
    return OneForm.make(s * s * y * gA - gB, s * s * s * gA)


def _divisor_taus(omega_x: OneForm, chart_path: str) -> list[FieldElement]:
    A0 = omega_x.a.at_x(0)
    B0 = omega_x.b.at_x(0)
    if A0.is_zero() and B0.is_zero():
        raise AssertionError("saturated form vanishing along the divisor")
    g = upoly_gcd(A0, B0)
    if g.degree <= 0:
        return []
    res = univariate_roots(g).require_complete(chart_path)
    return [r for r, _ in res.roots]


def singular_locus_on_divisor(
    omega_x: OneForm,
    omega_y: OneForm | None = None,
    center: Center | None = None,
    components=None,
) -> list[SingularityRecord]:
    """Singular points of a strict transform on the new divisor {x = 0} of the x-chart.

    Points are t = tau in the x-chart, in increasing order, followed by s = 0 of
    the y-chart.  ``omega_y`` defaults to the glued x-chart form.
    """
    if omega_y is None:
        omega_y = y_chart_from_x_chart(omega_x)
    path = center.point.label if center is not None else ""
    out = []
    for tau in _divisor_taus(omega_x, path):
        local = omega_x if tau.is_zero() else omega_x.translate(0, tau)
        if center is not None:
            pt = x_chart_point(center, tau)
        else:
            pt = LocalPoint(Chart(), f"E:t={tau}", ((0, "x"),))
        out.append(make_record(pt, local, components))
    if omega_y.is_singular():
        pt = y_chart_point(center) if center is not None else LocalPoint(Chart(), "E:s=0", ((0, "y"),))
        out.append(make_record(pt, omega_y, components))
    return out


def reduce_singularities(
    omega: OneForm,
    max_depth: int = DEFAULT_MAX_DEPTH,
    *,
    subject: OneForm | None = None,
    ramification: int = 1,
    force_first: bool = False,
) -> ResolutionTree:
    """Blow up non-simple points until every singularity is simple or a saddle-node.

    ``force_first`` blows up the origin once even when it is already reduced,
    which is handy for checking index sums on a single exceptional curve.
    """
    tree = new_tree("foliation", subject if subject is not None else omega, omega, ramification)
    queue = deque([(tree.root, omega)])
    leaves = []
    while queue:
        pt, form = queue.popleft()
        rec = make_record(pt, form, tree.components)
        if rec.kind is Kind.REGULAR:
            if not pt.divisors:
                leaves.append(rec)
            continue
        if rec.kind.reduced and not (force_first and pt is tree.root):
            leaves.append(rec)
            continue
        if pt.depth >= max_depth:
            raise ResolutionDepthExceeded(
                f"reduction did not terminate within depth {max_depth}", chart_path=pt.label
            )
        tree, center = blow_up_at(tree, pt, form, strict_transform_blowup)
        for r in singular_locus_on_divisor(center.x_chart, center.y_chart, center):
            queue.append((r.point, r.form))
    # refresh invariance flags now that every component exists
    leaves = [make_record(r.point, r.form, tree.components) for r in leaves]
    return tree.with_leaves(leaves)
