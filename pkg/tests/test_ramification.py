import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import CURVES, FOLIATIONS
from planefol.algebra import X, Y
from planefol.errors import NoRegularRamificationFound
from planefol.foliation import OneForm, reduce_singularities
from planefol.puiseux import newton_puiseux_expand
from planefol.ramification import (
    RamificationMap,
    curve_theorem_check,
    find_regular_ramification,
    pullback_ramify,
    ramify_curve,
)

x, y = X, Y


def test_pullback_examples():
    cusp = OneForm.make(-3 * x**2, 2 * y)
    assert pullback_ramify(cusp, 1) == cusp
    assert pullback_ramify(cusp, 2).same_foliation(OneForm(-6 * x**5, 2 * y))
    assert pullback_ramify(OneForm.make(y, -x), 3).same_foliation(OneForm(3 * y, -x))
    assert RamificationMap(3).pullback(cusp) == pullback_ramify(cusp, 3)
    with pytest.raises(ValueError):
        RamificationMap(0)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(FOLIATIONS)), st.integers(1, 3), st.integers(1, 3))
def test_pullback_composition(name, d, e):
    omega, _ = FOLIATIONS[name]
    twice = pullback_ramify(pullback_ramify(omega, d), e)
    assert twice.same_foliation(pullback_ramify(omega, d * e))
    assert twice.is_saturated()


def test_ramify_curve_examples():
    assert ramify_curve(y**2 - x**3, 2) == y**2 - x**6
    assert all(j.d == 1 for j in newton_puiseux_expand(ramify_curve(y**3 - x**2, 3), 6))
    assert ramify_curve(y - x**2, 1) == y - x**2


def test_curve_check_cusp():
    neg = curve_theorem_check(y**2 - x**3, d=1)
    assert not neg.free_only
    pos = curve_theorem_check(y**2 - x**3)
    assert pos.d == 2 and pos.free_only


def test_curve_check_smooth():
    res = curve_theorem_check(y - x**2)
    assert res.d == 1 and res.free_only and res.tree.centers == ()


def test_find_saddle():
    res = find_regular_ramification(OneForm.make(y, x))
    assert res.d == 1 and res.tree.centers == ()


def test_find_cusp():
    res = find_regular_ramification(OneForm.make(-3 * x**2, 2 * y), d_max=6)
    assert res.d == 2
    assert res.tree.free_only()
    assert all(r.kind.reduced for r in res.tree.leaves)


def test_find_node_two():
    res = find_regular_ramification(OneForm.make(2 * y, -x))
    assert res.d == 1 and res.tree.free_only()


def test_not_found_reports_best():
    with pytest.raises(NoRegularRamificationFound) as info:
        find_regular_ramification(OneForm.make(-3 * x**2, 2 * y), d_max=1, use_hint=False)
    assert info.value.best is not None


def test_exhaustive_agrees_with_hint():
    for name in ("cusp", "A4", "perturbed-cusp", "dicritical-3-2"):
        omega, _ = FOLIATIONS[name]
        assert find_regular_ramification(omega).d == find_regular_ramification(omega, use_hint=False).d


def test_determinism():
    omega, _ = FOLIATIONS["perturbed-cusp"]
    a, b = find_regular_ramification(omega), find_regular_ramification(omega)
    assert a.d == b.d
    fresh = reduce_singularities(pullback_ramify(omega, a.d), subject=omega, ramification=a.d)
    assert [c.point.label for c in fresh.centers] == [c.point.label for c in a.tree.centers]


@pytest.mark.parametrize("name", ["cusp", "A4", "cusp-line", "saddle"])
def test_curve_exponent_divides_foliation_exponent(name):
    omega, f = FOLIATIONS[name]
    assert find_regular_ramification(omega).d % curve_theorem_check(f).d == 0


@pytest.mark.parametrize("name", sorted(CURVES))
def test_corpus_curves_free_after_ramification(name):
    assert curve_theorem_check(CURVES[name]).free_only
