import pytest

from foliation_linfty import (
    DifferentFoliations,
    NotInvolutive,
    PolyMatrix,
    PolyRing,
    VectorField,
    build_resolution,
    compare_resolutions,
    involutivity_structure,
    load_fixture,
    restrict_to_point,
    verify_complex,
    verify_exactness,
)
from foliation_linfty.complex import Resolution

R = PolyRing(["x", "y"])
x, y = R.gens()


def test_structure_functions_sl2():
    spec = load_fixture("sl2")
    c = involutivity_structure(spec.generators)
    one = R.one
    assert c[(0, 1)] == (R.zero, R.zero, one)  # [e, f] = h
    assert c[(1, 0)] == (R.zero, R.zero, -one)
    assert c[(0, 2)] == (one * -2, R.zero, R.zero)  # [e, h] = -2e


def test_not_involutive():
    gens = [VectorField(R, [R.one, R.zero]), VectorField(R, [R.zero, x])]
    with pytest.raises(NotInvolutive):
        involutivity_structure(gens)


def test_broken_complex_is_reported():
    gens = [VectorField(R, [x, R.zero]), VectorField(R, [y, R.zero])]
    anchor = PolyMatrix.from_columns(R, 2, [tuple(g) for g in gens])
    bad = Resolution(R, anchor, (PolyMatrix.from_columns(R, 2, [(R.one, R.zero)]),), (("a", "b"), ("r",)))
    assert not verify_complex(bad).ok
    short = Resolution(R, anchor, (), (("a", "b"),))
    assert verify_complex(short).ok
    assert not verify_exactness(short).ok


def test_fiber_complex_sl2():
    res = load_fixture("sl2").resolve()
    F = restrict_to_point(res, (0, 0))
    assert len(F.kernel(1)) == 3
    reps, im = F.cohomology(1)
    assert len(reps) == 3 and im == []
    G = restrict_to_point(res, (1, 0))
    reps, im = G.cohomology(1)
    assert reps == [] and len(im) == 1


def test_compare_explicit_koszul_with_computed():
    spec = load_fixture("koszul:S=x^2+y^2+z^2,dim=3")
    explicit = spec.resolution
    computed = build_resolution(spec.generators, names=spec.names)
    pair = compare_resolutions(explicit, computed)
    assert all(pair.checks.values())


def test_compare_rejects_different_foliations():
    A = load_fixture("vanishing_order").resolve()
    B = load_fixture("vanishing_order:full").resolve()
    with pytest.raises(DifferentFoliations):
        compare_resolutions(A, B)


def test_compare_is_symmetric_in_outcome():
    A = load_fixture("sl2").resolve()
    B = load_fixture("sl2_augmented").resolve()
    assert all(compare_resolutions(B, A).checks.values())
    pair = compare_resolutions(A, B)
    # the augmentation forces a nontrivial homotopy on one side
    assert any(not m.is_zero() for m in pair.h + pair.h_prime)
