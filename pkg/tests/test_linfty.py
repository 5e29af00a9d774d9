import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURE_NAMES, built
from foliation_linfty import (
    Derivation,
    RootNotInKernel,
    bicomplex_lift,
    commutator,
    extract_bracket,
    leibniz_bracket,
)
from foliation_linfty.linfty import (
    FiberManifold,
    anchor_of,
    basis_section,
    contraction,
    leibniz_anchor,
    q0_derivation,
    random_section,
    random_vertical,
    self_commutator_by_arity,
    word_mul,
)
from foliation_linfty.poly import lie_bracket


def test_word_signs():
    a, b = (1, 0), (1, 1)
    c = (2, 0)
    assert word_mul((a,), (b,)) == (1, (a, b))
    assert word_mul((b,), (a,)) == (-1, (a, b))
    assert word_mul((a,), (a,))[0] == 0  # odd generators square to zero
    assert word_mul((c,), (a,)) == (1, (a, c))


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_q_squares_to_zero(name):
    _, res, q = built(name)
    assert q.certified
    sq = self_commutator_by_arity(q.components)
    assert all(d.is_zero() for d in sq.values())
    total = q.total
    assert commutator(total, total).is_zero()


@pytest.mark.parametrize("name", ["sl2", "vanishing_order", "gln_adjoint"])
def test_q0_is_a_differential(name):
    _, res, _ = built(name)
    q0 = q0_derivation(FiberManifold(res))
    assert commutator(q0, q0).is_zero()


def test_commutator_graded_jacobi():
    _, res, q = built("vanishing_order:full")
    mfd = q.mfd
    rng = random.Random(3)
    A = random_vertical(mfd, 1, 1, rng, max_degree=1)
    B = random_vertical(mfd, 1, -1, rng, max_degree=1)
    C = random_vertical(mfd, 0, 0, rng, max_degree=1)
    for X, Y, Z in ((A, B, C), (B, B, A), (q.total, B, B)):
        lhs = commutator(X, commutator(Y, Z))
        sign = -1 if (X.degree * Y.degree) & 1 else 1
        rhs = commutator(commutator(X, Y), Z) + commutator(Y, commutator(X, Z)).scale(sign)
        assert (lhs - rhs).is_zero()


@pytest.mark.parametrize("name", ["sl2", "vanishing_order:full", "koszul:S=x^2+y^2+z^2,dim=3"])
def test_unary_bracket_is_the_differential(name):
    _, res, q = built(name)
    mfd = q.mfd
    for g in mfd.generators:
        if g[0] == 1:
            continue
        out = extract_bracket(q, [basis_section(mfd, g)])
        assert out.level == g[0] - 1
        assert out.components == res.d(g[0]).column(g[1])


@pytest.mark.parametrize("name", ["sl2", "vanishing_order:full", "gln_adjoint"])
def test_anchor_is_a_morphism_of_brackets(name):
    _, res, q = built(name)
    mfd = q.mfd
    rng = random.Random(11)
    for _ in range(10):
        a, b = (random_section(mfd, 1, rng) for _ in range(2))
        lhs = anchor_of(q, extract_bracket(q, [a, b]))
        rhs = lie_bracket(anchor_of(q, a), anchor_of(q, b))
        assert lhs == rhs


def test_bracket_leibniz_rule_in_functions():
    _, res, q = built("sl2")
    mfd = q.mfd
    R = res.ring
    x, y = R.gens()
    e = basis_section(mfd, (1, 0))
    f = basis_section(mfd, (1, 1))
    g = x * y + 1
    fg = type(f)(1, tuple(c * g for c in f.components))
    lhs = extract_bracket(q, [e, fg]).components
    base = extract_bracket(q, [e, f]).components
    rho_e_g = anchor_of(q, e)(g)
    rhs = tuple(b * g + c * rho_e_g for b, c in zip(base, f.components))
    assert lhs == rhs


def test_lift_rejects_bad_root():
    _, res, _ = built("sl2")
    mfd = FiberManifold(res)
    q0 = q0_derivation(mfd)
    R = res.ring
    # a depth-1 value whose coefficient column is not killed by the anchor
    V = Derivation(mfd, 2, {}, {(1, 0): {((1, 1), (1, 2)): R.one}})
    with pytest.raises(RootNotInKernel):
        bicomplex_lift(q0, V)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["sl2", "vanishing_order:full", "gln_adjoint"]))
def test_lift_of_exact_cocycles(seed, name):
    _, res, _ = built(name)
    mfd = FiberManifold(res)
    q0 = q0_derivation(mfd)
    rng = random.Random(seed)
    T = random_vertical(mfd, rng.randint(1, 2), rng.choice([0, 1, 2]), rng, min_depth=2)
    V = commutator(q0, T)
    W = bicomplex_lift(q0, V)
    assert (commutator(q0, W) + V).is_zero()
    # W + T is a Q0-cocycle
    assert commutator(q0, W + T).is_zero()


@pytest.mark.parametrize("name", ["sl2", "vanishing_order", "koszul:S=x^2+y^2+z^2,dim=3"])
def test_derived_bracket_is_leibniz(name):
    _, res, q = built(name)
    mfd = q.mfd
    rng = random.Random(2)
    for _ in range(3):
        X, Y, Z = (contraction(mfd, random_section(mfd, 1, rng)) for _ in range(3))
        lhs = leibniz_bracket(q, X, leibniz_bracket(q, Y, Z))
        rhs = leibniz_bracket(q, leibniz_bracket(q, X, Y), Z) + leibniz_bracket(q, Y, leibniz_bracket(q, X, Z))
        assert (lhs - rhs).is_zero()
        assert leibniz_anchor(q, leibniz_bracket(q, X, Y)) == lie_bracket(leibniz_anchor(q, X), leibniz_anchor(q, Y))


def test_q0_and_seed_on_sl2():
    from foliation_linfty import build_arity1_seed, build_Q0, involutivity_structure

    _, res, q = built("sl2")
    q0 = build_Q0(res)
    R = res.ring
    x, y = R.gens()
    # duals of E_-1 go to the dual of the relation, with the sign -1 on level 1
    assert q0.fiber == {
        (1, 0): {((2, 0),): -(y * y)},
        (1, 1): {((2, 0),): x * x},
        (1, 2): {((2, 0),): -(x * y)},
    }
    X = build_arity1_seed(q0.mfd, involutivity_structure(res.generators()))
    # the seed already commutes with Q0, so no correction is needed
    assert commutator(q0, X).is_zero()
    assert q.component(1) == X


def test_length_one_resolution_has_zero_q0():
    from foliation_linfty import build_Q0

    _, res, _ = built("dx")
    assert res.length == 1
    assert build_Q0(res).is_zero()
