"""Roots of univariate polynomials inside the quadratic tower.

Irreducible factors over Q(i) come from sympy's Gaussian-rational
factorization.  Over a deeper tower we factor the norm down to Q(i) and
split the original polynomial with gcds against the norm's factors.  Linear
and quadratic factors are solved exactly (adjoining a square root when
needed); anything of degree three or more that survives is reported back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from ..errors import UnsupportedExtensionDegree
from .numbers import FieldElement, GaussianRational, NumberField, _neg, adjoin_root, common_field
from .poly import UPoly, upoly_gcd

_T = sympy.Symbol("t")


@dataclass(frozen=True)
class RootsResult:
    field: NumberField
    roots: tuple  # ((FieldElement, multiplicity), ...)
    unsupported: tuple = ()  # ((UPoly, multiplicity), ...)

    @property
    def complete(self) -> bool:
        return not self.unsupported

    def require_complete(self, chart_path: str | None = None) -> "RootsResult":
        if self.unsupported:
            degs = ", ".join(str(f.degree) for f, _ in self.unsupported)
            raise UnsupportedExtensionDegree(
                f"irreducible factor(s) of degree {degs} need an extension beyond quadratic",
                factors=[f for f, _ in self.unsupported],
                chart_path=chart_path,
            )
        return self


def squarefree_decomposition(p: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: p = lc * prod g_k**k with the g_k square-free and coprime."""
    p = p.monic()
    if p.degree <= 0:
        return []
    dp = p.derivative()
    a = upoly_gcd(p, dp)
    b = p.divmod(a)[0]
    c = dp.divmod(a)[0]
    d = c - b.derivative()
    out = []
    k = 1
    while b.degree > 0:
        g = upoly_gcd(b, d)
        b = b.divmod(g)[0]
        c = d.divmod(g)[0]
        d = c - b.derivative()
        if g.degree > 0:
            out.append((g, k))
        k += 1
    return out


def _to_sympy(g: GaussianRational):
    return sympy.Rational(g.re.numerator, g.re.denominator) + sympy.I * sympy.Rational(
        g.im.numerator, g.im.denominator
    )


def _from_sympy(expr) -> GaussianRational:
    re, im = sympy.re(expr), sympy.im(expr)
    return GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def _factor_gaussian(p: UPoly) -> list[UPoly]:
    """Distinct monic irreducible factors over Q(i) of a polynomial with Q(i) coefficients."""
    coeffs = [c.as_gaussian() for c in p.coeffs]
    sp = sympy.Poly([_to_sympy(c) for c in reversed(coeffs)], _T, domain="QQ_I")
    _, factors = sp.factor_list()
    out = []
    for fac, _ in factors:
        cs = [_from_sympy(c) for c in reversed(fac.all_coeffs())]
        out.append(UPoly(cs, p.field.prefix(0)).monic())
    return out


def _norm_down(p: UPoly) -> UPoly:
    """Product of p with its conjugate under the top generator, as a polynomial one level down."""
    f = p.field
    k = f.level
    conj = UPoly._make(f, [FieldElement(f, (c.raw[0], _neg(c.raw[1], k - 1))) for c in p.coeffs])
    prod = p * conj
    low = f.prefix(k - 1)
    return UPoly._make(low, [FieldElement(low, c.raw[0]) for c in prod.coeffs])


def _split(p: UPoly) -> list[UPoly]:
    """Monic factors of a square-free p over its own field (irreducible when the norm is square-free)."""
    if p.degree <= 1:
        return [p.monic()]
    if all(c.as_gaussian() is not None for c in p.coeffs):
        return _factor_gaussian(p.over(p.field.prefix(0)))
    norm = p
    while norm.field.level:
        norm = _norm_down(norm)
    pieces = []
    rest = p.monic()
    for h in _factor_gaussian(norm):
        g = upoly_gcd(rest, h.over(p.field))
        if g.degree > 0:
            pieces.append(g)
            rest = rest.divmod(g)[0]
    if rest.degree > 0:
        pieces.append(rest)
    return pieces


def univariate_roots(p: UPoly, field: NumberField | None = None) -> RootsResult:
    """All roots of ``p`` with multiplicities, extending the field by square roots as needed."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no finite root set")
    if field is not None:
        p = p.over(common_field(field, p.field))
    current = p.field
    found: list[tuple[FieldElement, int]] = []
    unsupported: list[tuple[UPoly, int]] = []
    for g, mult in squarefree_decomposition(p):
        for fac in _split(g):
            fac = fac.over(common_field(current, fac.field)).monic()
            if fac.degree == 1:
                found.append((-fac.coeffs[0], mult))
            elif fac.degree == 2:
                try:
                    ext, r = adjoin_root(fac.field, fac.coeffs[1], fac.coeffs[0])
                except UnsupportedExtensionDegree:
                    unsupported.append((fac, mult))
                    continue
                current = common_field(current, ext)
                other = -fac.coeffs[1].to_field(ext) - r
                found.append((r, mult))
                found.append((other, mult))
            else:
                unsupported.append((fac, mult))
            current = common_field(current, fac.field)
    roots = sorted(((r.to_field(current), m) for r, m in found), key=lambda rm: rm[0].sort_key())
    return RootsResult(current, tuple(roots), tuple(unsupported))
