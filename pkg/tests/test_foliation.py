import pytest

from corpus import FOLIATIONS
from planefol.algebra import QI, X, Y
from planefol.foliation import (
    Kind,
    OneForm,
    classify_linear,
    is_dicritical,
    multiplicity,
    reduce_singularities,
    singular_locus_on_divisor,
    strict_transform_blowup,
)
from planefol.errors import ResolutionDepthExceeded
from planefol.surface import FREE, ROOT, SATELLITE, dual_graph

x, y = X, Y


def test_saturation_at_construction():
    w = OneForm.make(x * y, x**2)
    assert w == OneForm(y, x)
    with pytest.raises(ValueError):
        OneForm.make(x * 0, y * 0)


def test_multiplicity_examples():
    assert multiplicity(OneForm.make(y, -x)) == 1
    assert multiplicity(OneForm.make(3 * x**2, -2 * y)) == 1
    assert multiplicity(OneForm.make(x**2 + y**3, x * y)) == 2


def test_strict_transform_radial():
    w, dic = strict_transform_blowup(OneForm.make(y, -x), "x")
    assert dic
    assert w.same_foliation(OneForm.make(x * 0, y**0))  # ~ dt


def test_strict_transform_saddle():
    w, dic = strict_transform_blowup(OneForm.make(y, x), "x")
    assert not dic
    assert w == OneForm(2 * y, x)


def test_strict_transform_cusp():
    w, dic = strict_transform_blowup(OneForm.make(-3 * x**2, 2 * y), "x")
    assert not dic
    assert w.same_foliation(OneForm(-3 * x + 2 * y**2, 2 * x * y))


def test_singular_locus_examples():
    recs = singular_locus_on_divisor(OneForm.make(2 * y, x))
    assert [r.location for r in recs] == ["E:t=0", "E:s=0"]
    assert singular_locus_on_divisor(OneForm.make(x * 0, y**0)) == []
    recs = singular_locus_on_divisor(OneForm.make(-3 * x + 2 * y**2, 2 * x * y))
    assert [r.location for r in recs] == ["E:t=0"]
    assert recs[0].kind is Kind.NON_SIMPLE


def _lin(m11, m12, m21, m22):
    return QI(m11 + m22), QI(m11 * m22 - m12 * m21)


def test_classification_examples():
    assert classify_linear(*_lin(1, 0, 0, -1)) is Kind.SIMPLE  # x d/dx - y d/dy
    assert classify_linear(*_lin(1, 0, 0, 2)) is Kind.NON_SIMPLE  # ratio 2
    assert classify_linear(*_lin(0, 1, 0, 0)) is Kind.NON_SIMPLE  # nilpotent
    assert classify_linear(*_lin(0, 0, 0, 1)) is Kind.SADDLE_NODE
    assert classify_linear(*_lin(0, 0, 0, 0)) is Kind.NON_SIMPLE
    # ratio -1/2 and an irrational ratio (eigenvalues 1 +- sqrt 2)
    assert classify_linear(*_lin(2, 0, 0, -1)) is Kind.SIMPLE
    assert classify_linear(*_lin(1, 2, 1, 1)) is Kind.SIMPLE
    # complex eigenvalues 1 +- i: ratio not real
    assert classify_linear(*_lin(1, -1, 1, 1)) is Kind.SIMPLE


def test_record_eigen_data():
    tree = reduce_singularities(OneForm.make(y, x))
    (rec,) = tree.leaves
    assert rec.kind is Kind.SIMPLE and rec.ratio == -1
    assert sorted(int(str(v)) for v in rec.eigenvalues()) == [-1, 1]


def test_reduce_saddle_is_empty():
    tree = reduce_singularities(OneForm.make(y, x))
    assert tree.centers == () and tree.depth == 0


def test_reduce_radial():
    tree = reduce_singularities(OneForm.make(y, -x))
    assert len(tree.centers) == 1 and tree.centers[0].dicritical
    assert tree.leaves == ()
    assert tree.components[0].invariant is False


def test_reduce_cusp():
    tree = reduce_singularities(OneForm.make(-3 * x**2, 2 * y))
    assert [c.kind for c in tree.centers] == [ROOT, FREE, SATELLITE]
    assert len(tree.components) == 3
    assert all(r.kind is Kind.SIMPLE for r in tree.leaves)


def test_depth_guard():
    with pytest.raises(ResolutionDepthExceeded):
        reduce_singularities(OneForm.make(-3 * x**2, 2 * y), max_depth=1)


@pytest.mark.parametrize("name", sorted(FOLIATIONS))
def test_corpus_reduction_invariants(name):
    omega, _ = FOLIATIONS[name]
    tree = reduce_singularities(omega)
    assert all(r.kind.reduced for r in tree.leaves)
    assert dual_graph(tree).determinant in (1, -1)
    for c in tree.centers:
        for w in (c.before, c.x_chart, c.y_chart):
            assert w.is_saturated()
        assert c.dicritical == is_dicritical(c.before)
    for r in tree.leaves:
        assert r.form.is_saturated()
        for cid, inv in r.invariant:
            if inv:
                # invariant divisor through the point: its axis is a solution
                axis = r.point.axis_of(cid)
                coeff = r.form.b if axis == "x" else r.form.a
                var = "x" if axis == "x" else "y"
                assert all((i if var == "x" else j) > 0 for i, j in coeff.terms)


def test_reduction_is_deterministic():
    omega, _ = FOLIATIONS["cusp-line"]
    t1, t2 = reduce_singularities(omega), reduce_singularities(omega)
    assert [c.point.label for c in t1.centers] == [c.point.label for c in t2.centers]
    assert [r.location for r in t1.leaves] == [r.location for r in t2.leaves]
