"""Camacho-Sad indices, the index theorem on reduced trees, and separatrix jets."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import BiPoly, FieldElement, TruncatedSeries, univariate_roots
from .algebra.numbers import QI, common_field
from .algebra.poly import UPoly
from .errors import CurveNotInvariant, NonIsolatedResidue, NoSeparatrixCandidate, PlanefolError
from .foliation import Kind, OneForm, SingularityRecord, _divisor_taus
from .puiseux import DEFAULT_ORDER, PuiseuxJet, _primitive
from .surface import Chart, ResolutionTree, Step

# -- indices -------------------------------------------------------------------


def _series_from_upoly(p: UPoly, n: int) -> TruncatedSeries:
    return TruncatedSeries(p.coeffs[:n], n, p.field)


def residue_at_zero(num: UPoly, den: UPoly) -> FieldElement:
    """Res_{x=0} num(x)/den(x) dx, exactly."""
    if den.is_zero():
        raise NonIsolatedResidue("denominator vanishes identically")
    k = den.valuation()
    if k == 0 or num.is_zero():
        return common_field(num.field, den.field).zero()
    q = TruncatedSeries(den.coeffs[k:], k, den.field)
    return (_series_from_upoly(num, k) * q.inverse())[k - 1]


def cs_index(omega: OneForm, axis: str = "y") -> FieldElement:
    """Camacho-Sad index at the origin of the invariant axis {y = 0} (or {x = 0}).

    Normalized so that the linear model x d/dx + r y d/dy gives r relative
    to {y = 0}.
    """
    if axis == "x":
        omega = omega.swap()
    a, b = omega.a, omega.b
    if any(j == 0 for _, j in a.terms):
        raise CurveNotInvariant(f"the axis {{{axis} = 0}} is not invariant by {omega}")
    a_over_y = a.div_monomial(0, 1).at_y(0)
    b0 = b.at_y(0)
    if b0.is_zero():
        raise NonIsolatedResidue(f"b vanishes along {{{axis} = 0}}")
    return -residue_at_zero(a_over_y, b0)


def record_index(rec: SingularityRecord, component: int) -> FieldElement:
    axis = rec.point.axis_of(component)
    if axis is None:
        raise ValueError(f"component E{component} does not pass through {rec.location}")
    # divisor axis "x" means E = {x = 0}
    return cs_index(rec.form, "x" if axis == "x" else "y")


@dataclass(frozen=True)
class ComponentReport:
    component: int
    self_intersection: int
    index_sum: FieldElement | None
    contributions: tuple  # ((location, index), ...)
    skipped: str | None = None

    @property
    def equal(self) -> bool | None:
        if self.skipped:
            return None
        return self.index_sum == self.self_intersection


def index_theorem_check(tree: ResolutionTree) -> list[ComponentReport]:
    """Sum of indices along each invariant component versus its self-intersection."""
    out = []
    for comp in tree.components:
        if comp.invariant is False:
            out.append(ComponentReport(comp.id, comp.self_intersection, None, (), "non-invariant"))
            continue
        total = QI.zero()
        contrib = []
        for rec in tree.leaves:
            if rec.point.axis_of(comp.id) is None or rec.kind is Kind.REGULAR:
                continue
            idx = record_index(rec, comp.id)
            contrib.append((rec.location, idx))
            total = total + idx
        out.append(ComponentReport(comp.id, comp.self_intersection, total, tuple(contrib)))
    return out


# -- separatrices -----------------------------------------------------------------


@dataclass(frozen=True)
class SeparatrixJet:
    """An invariant branch at the original origin.

    ``jet.y`` is known modulo ``x**(order + 1)`` and the invariance residual
    ``a + b*dy/dx`` was checked modulo ``x**order``.  A branch tangent to
    the y-axis with no x-graph at the computed precision is stored with
    ``over = "y"``: the jet then parametrizes x as a function of y.
    """

    jet: PuiseuxJet
    source: str  # "dicritical" or "singularity"
    location: str
    chart: str
    ramification: int
    order: int
    over: str = "x"

    def describe(self) -> str:
        return self.jet.describe(("x", "y") if self.over == "x" else ("y", "x"))

    def residual_vanishes(self, omega: OneForm) -> bool:
        return residual_vanishes(omega if self.over == "x" else omega.swap(), self.jet, self.order)


def _solve_graph(omega: OneForm, n: int, c1: FieldElement | None) -> TruncatedSeries | None:
    """y = S(x), S(0) = 0, invariant mod x**n; ``c1`` fixes the slope at a singular point.

    Returns None when some order has no solution.
    """
    a, b = omega.a, omega.b
    fld = omega.field if c1 is None else common_field(omega.field, c1.field)
    singular = omega.is_singular()
    coeffs = [fld.zero()] * n
    start = 1
    if singular:
        if n > 1:
            coeffs[1] = c1
        start = 2
        beta1 = b.coefficient(1, 0) + b.coefficient(0, 1) * c1
        base = a.coefficient(0, 1) + b.coefficient(0, 1) * c1
    else:
        beta0 = b.constant_term()
        if beta0.is_zero():
            return None
    for k in range(start, n):
        idx = k if singular else k - 1
        m = idx + 1
        S = TruncatedSeries(coeffs[:m], m, fld)
        xs = TruncatedSeries.monomial(1, m, 1, fld)
        r = a.eval_series(xs, S) + b.eval_series(xs, S) * TruncatedSeries(
            [c * j for j, c in enumerate(coeffs[: m + 1])][1:], m, fld
        )
        r0 = r[idx]
        slope = base + beta1 * k if singular else beta0 * k
        if slope.is_zero():
            if not r0.is_zero():
                return None
            continue
        coeffs[k] = -r0 / slope
    return TruncatedSeries(coeffs, n, fld)


def _slope_candidates(omega: OneForm) -> list[FieldElement]:
    a, b = omega.a, omega.b
    q = UPoly([a.coefficient(1, 0), a.coefficient(0, 1) + b.coefficient(1, 0), b.coefficient(0, 1)], omega.field)
    if q.is_zero():
        return [omega.field.zero()]
    if q.degree == 0:
        return []
    res = univariate_roots(q).require_complete()
    return [r for r, _ in res.roots]


def _local_branches(omega: OneForm, n: int, axis: str | None):
    """Local parametrizations (p(u), q(u)) of invariant curves at the origin, transverse to {axis = 0}."""
    if axis == "y":
        for p, q in _local_branches(omega.swap(), n, "x"):
            yield q, p
        return
    fld = omega.field
    u = TruncatedSeries.monomial(1, n, 1, fld)
    if not omega.is_singular():
        S = _solve_graph(omega, n, None)
        if S is not None:
            yield u, S
        return
    for c1 in _slope_candidates(omega):
        S = _solve_graph(omega, n, c1)
        if S is not None:
            yield u.over(S.field), S
    if axis is None:
        for p, q in _local_branches(omega.swap(), n, "x"):
            yield q, p


def _to_puiseux(X: TruncatedSeries, Y: TruncatedSeries, n_out: int):
    """Rewrite (X(u), Y(u)) as x = gamma*tau**e, y = y(tau) mod tau**(e*n_out); None if not enough precision."""
    e = X.valuation()
    if e is None:
        return None
    gamma = X[e]
    h = X.shift_down(e) / gamma  # 1 + ..., known mod u^(M-e)
    tau = h.power_rational(Fraction(1, e)).shift_up(1)  # u*(1+h)^(1/e)
    if tau.order < e * n_out:
        return None
    inv = tau.truncate(e * n_out).reversion()
    ys = Y.truncate(e * n_out).compose(inv)
    return gamma, e, ys


def separatrix_residual(omega: OneForm, jet: PuiseuxJet) -> TruncatedSeries:
    """a(x, y) x' + b(x, y) y' along the jet, in the jet parameter."""
    xs = jet.x_series()
    ys = jet.y
    return omega.a.eval_series(xs, ys) * xs.derivative() + omega.b.eval_series(xs, ys) * ys.derivative()


def residual_vanishes(omega: OneForm, jet: PuiseuxJet, n: int) -> bool:
    """a + b*dy/dx vanishes mod x**n along the jet."""
    r = separatrix_residual(omega, jet)
    need = jet.d * (n + 1) - 1
    if r.order < need:
        raise ValueError("jet too short for the requested residual order")
    return r.truncate(need).is_zero()


def _candidates(tree: ResolutionTree):
    """(source, location, chart, local form, axis, sub-chart) in selection order."""
    dic = [c for c in tree.centers if c.dicritical]
    for c in dic:
        taus = _divisor_taus(c.x_chart, c.point.label)
        corner_zero = c.point.component_on("y") is not None
        tried = 0
        k = 0
        while tried < 3:
            v = (0, 1, -1, 2, -2, 3, -3)[k] if k < 7 else k
            k += 1
            tau = c.x_chart.field(v)
            if any(tau == r for r in taus) or (v == 0 and corner_zero):
                continue
            local = c.x_chart.translate(0, tau) if v else c.x_chart
            if local.b.constant_term().is_zero():
                continue  # tangency point
            tried += 1
            chart = c.point.chart.then(Step("xchart"))
            if v:
                chart = chart.then(Step("translate", (tau.field.zero(), tau)))
            yield "dicritical", f"{c.point.label}/E{c.id}:t={tau}", chart, local, "x"
    leaves = sorted(
        enumerate(tree.leaves), key=lambda ir: (ir[1].point.parent or 0, ir[0])
    )
    for _, rec in leaves:
        if rec.kind is Kind.REGULAR and rec.point.divisors:
            continue
        if len(rec.point.divisors) == 2:
            continue
        axis = rec.point.divisors[0][1] if rec.point.divisors else None
        yield "singularity", rec.location, rec.point.chart, rec.form, axis


def _candidate_jets(tree: ResolutionTree, order: int, tried: list):
    subject: OneForm = tree.subject
    for source, location, chart, local, axis in _candidates(tree):
        X, Y = chart.total_map()
        n = 2 * order + 4
        while True:
            try:
                branches = list(_local_branches(local, n, axis))
            except PlanefolError as exc:
                tried.append(f"{location}: {exc}")
                break
            if not branches:
                tried.append(f"{location}: no invariant branch transverse to the divisor")
                break
            retry = False
            for p, q in branches:
                Xs, Ys = X.eval_series(p, q), Y.eval_series(p, q)
                over, form = "x", subject
                if Xs.is_zero() and not Ys.is_zero():
                    Xs, Ys, over, form = Ys, Xs, "y", subject.swap()
                got = _to_puiseux(Xs, Ys, order + 1)
                if got is None:
                    retry = True
                    continue
                gamma, e, ys = _primitive(*got, order + 1)
                jet = PuiseuxJet(e, gamma, ys, order + 1)
                if not residual_vanishes(form, jet, order):
                    tried.append(f"{location}: residual check failed")
                    continue
                yield SeparatrixJet(jet, source, location, str(chart), tree.ramification, order, over)
            if not retry or n > 8 * (order + 2):
                if retry:
                    tried.append(f"{location}: precision exhausted")
                break
            n *= 2


def extract_separatrix(tree: ResolutionTree, order: int = DEFAULT_ORDER) -> SeparatrixJet:
    """Some invariant branch at the original origin, as a Puiseux jet checked mod x**order."""
    tried: list[str] = []
    for sep in _candidate_jets(tree, order, tried):
        return sep
    raise NoSeparatrixCandidate(
        "no candidate produced an invariant branch: " + "; ".join(tried) if tried else "no candidates"
    )


def separatrix_jets(tree: ResolutionTree, order: int = DEFAULT_ORDER) -> list[SeparatrixJet]:
    """Every jet the candidate search produces, in selection order."""
    return list(_candidate_jets(tree, order, []))
