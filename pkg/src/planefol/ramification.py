"""Ramifications (x, y) -> (x**d, y) and the search for a regularizing exponent."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import BiPoly
from .camacho_sad import extract_separatrix
from .errors import NoRegularRamificationFound, PlanefolError
from .foliation import DEFAULT_MAX_DEPTH, Kind, OneForm, reduce_singularities
from .puiseux import DEFAULT_ORDER, newton_puiseux_expand, ramification_exponent
from .surface import ResolutionTree, embedded_resolution

DEFAULT_DMAX = 12


@dataclass(frozen=True)
class RamificationMap:
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("ramification exponent must be at least 1")

    def images(self, field=None) -> tuple[BiPoly, BiPoly]:
        x, y = BiPoly.x(field), BiPoly.y(field)
        return x ** self.d, y

    def pullback(self, omega: OneForm) -> OneForm:
        return pullback_ramify(omega, self.d)

    def __str__(self):
        return f"(x, y) -> (x^{self.d}, y)"


def pullback_ramify(omega: OneForm, d: int) -> OneForm:
    """Saturated rho_d^* omega = d x^(d-1) a(x^d, y) dx + b(x^d, y) dy."""
    if d < 1:
        raise ValueError("ramification exponent must be at least 1")
    if d == 1:
        return omega
    x = BiPoly.x(omega.field)
    a = omega.a.ramify(d) * x ** (d - 1) * d
    return OneForm.make(a, omega.b.ramify(d))


def ramify_curve(f: BiPoly, d: int) -> BiPoly:
    if d < 1:
        raise ValueError("ramification exponent must be at least 1")
    return f.ramify(d)


@dataclass(frozen=True)
class CurveCheck:
    d: int
    free_only: bool
    tree: ResolutionTree


def curve_theorem_check(f: BiPoly, order: int = DEFAULT_ORDER, d: int | None = None) -> CurveCheck:
    """Embedded resolution of f(x^d, y), d defaulting to the lcm of the branch indices."""
    if d is None:
        d = ramification_exponent(newton_puiseux_expand(f, order))
    tree = embedded_resolution(ramify_curve(f, d), subject=f, ramification=d)
    return CurveCheck(d, tree.free_only(), tree)


@dataclass(frozen=True)
class RegularRamification:
    d: int
    tree: ResolutionTree
    hint: int | None
    tried: tuple  # ((d, free_only, simple_only), ...) in the order tried


def tree_is_regular(tree: ResolutionTree) -> tuple[bool, bool]:
    """(all centers free, all final singularities reduced)."""
    return tree.free_only(), all(r.kind is not Kind.NON_SIMPLE for r in tree.leaves)


def ramification_hint(omega: OneForm, order: int = 8, max_depth: int = DEFAULT_MAX_DEPTH) -> int | None:
    """lcm of the branch indices of a computed separatrix, and of f's branches when omega = df."""
    hint = None
    try:
        sep = extract_separatrix(reduce_singularities(omega, max_depth), order)
        hint = sep.jet.d
    except PlanefolError:
        pass
    f = omega.primitive()
    if f is not None and not f.is_zero():
        try:
            e = ramification_exponent(newton_puiseux_expand(f, order))
            hint = e if hint is None else math.lcm(hint, e)
        except PlanefolError:
            pass
    return hint


def find_regular_ramification(
    omega: OneForm,
    d_max: int = DEFAULT_DMAX,
    max_depth: int = DEFAULT_MAX_DEPTH,
    *,
    use_hint: bool = True,
) -> RegularRamification:
    """Least d <= d_max whose ramified reduction has only free centers and reduced singularities."""
    cache: dict[int, ResolutionTree] = {}
    tried = []

    def attempt(d: int) -> bool:
        if d not in cache:
            cache[d] = reduce_singularities(pullback_ramify(omega, d), max_depth, subject=omega, ramification=d)
            tried.append((d, *tree_is_regular(cache[d])))
        free, simple = tree_is_regular(cache[d])
        return free and simple

    hint = ramification_hint(omega, max_depth=max_depth) if use_hint else None
    if hint is not None and hint <= d_max and attempt(hint):
        # confirm minimality
        for d in range(1, hint):
            if attempt(d):
                return RegularRamification(d, cache[d], hint, tuple(tried))
        return RegularRamification(hint, cache[hint], hint, tuple(tried))
    for d in range(1, d_max + 1):
        if attempt(d):
            return RegularRamification(d, cache[d], hint, tuple(tried))
    best = max(tried, key=lambda t: (t[1] + t[2], -t[0])) if tried else None
    raise NoRegularRamificationFound(f"no d <= {d_max} gives a free, simple reduction", best=best)
