import pytest
from hypothesis import given
from hypothesis import strategies as st

from closed_forms import point_table

from equicohom.expr import format_point, parse
from equicohom.laws import point_sample
from equicohom.mackey import Catalog
from equicohom.point import (
    EAPElement,
    EPElement,
    LevelEElement,
    PointElement,
    eap_action,
    eap_group_at,
    ep_group_at,
    ep_mul,
    generator_at,
    les_maps_at,
    les_point_check,
    map_delta,
    map_phi,
    map_psi,
    point_group_at,
    point_mul,
    point_res,
    point_tr,
)


def P(s):
    return parse(s, "point")


def E(s):
    return parse(s, "ep")


def EA(s):
    return parse(s, "eap")


@pytest.mark.parametrize("d,want", [((0, 0), "A"), ((-2, 2), "R"), ((0, 3), "<Z>"), ((1, 2), "0")])
def test_point_group_examples(d, want):
    assert point_group_at(d) is Catalog.parse(want)


def test_point_groups_match_closed_form():
    for a in range(-10, 11):
        for b in range(-10, 11):
            assert point_group_at((a, b)) is point_table(a, b), (a, b)


# a few entries of the generator figure, transcribed
FIG2 = {
    (-4, 5): "eps*xi^2",
    (-2, 5): "eps^3*xi",
    (0, 5): "eps^5",
    (-4, 4): "xi^2",
    (-2, 2): "xi",
    (0, 1): "eps",
    (0, -1): "eps^-1*kappa",
    (0, -6): "eps^-6*kappa",
    (2, -2): "tau(iota^-2)",
    (3, -3): "tau(iota^-3)",
    (3, -4): "eps^-1*tau(iota^-3)",
    (4, -4): "tau(iota^-4)",
    (3, -6): "eps^-3*tau(iota^-3)",
    (5, -6): "eps^-1*tau(iota^-5)",
    (6, -6): "tau(iota^-6)",
}


@pytest.mark.parametrize("d,name", sorted(FIG2.items()))
def test_generator_names(d, name):
    gen = PointElement.of(generator_at(d))
    assert format_point(gen) == name
    assert P(name) == gen


def test_multiplication_examples():
    assert point_mul(P("eps"), P("inv_eps_kappa(1)")) == P("kappa")
    assert point_mul(P("xi"), P("tau(4)")) == P("tau(2)")
    assert point_mul(P("kappa"), P("kappa")) == P("2*kappa")
    assert point_mul(P("xi"), P("kappa")).is_zero()


@given(st.sampled_from(point_sample(3)))
def test_unit(x):
    assert point_mul(PointElement.one(), x) == x


def test_restriction_and_transfer():
    assert point_res(P("xi")) == LevelEElement.iota(2)
    assert point_tr(LevelEElement.iota(-3)) == P("tau(3)")
    assert point_tr(LevelEElement.iota(-1)).is_zero()


def test_burnside_relations():
    g = PointElement.g()
    assert g * g == g * 2
    one_minus_g = PointElement.scalar(1, -1)
    assert one_minus_g * one_minus_g == PointElement.one()


def test_ep_examples():
    assert ep_group_at((0, 0)) is Catalog.R
    assert ep_group_at((0, 1)) is Catalog.BRACKET_Z2
    assert ep_group_at((1, 0)) is Catalog.ZERO
    assert ep_mul(E("eps"), E("eps")) == E("eps^2")
    assert ep_mul(EPElement.scalar(2), E("eps")).is_zero()
    assert ep_mul(E("xi"), E("xi^-1")) == EPElement.scalar(1)


def test_eap_examples():
    assert eap_group_at((0, 0)) is Catalog.BRACKET_Z
    assert eap_action(P("eps"), EA("eps^-1*tau3")) == EA("tau3")
    assert eap_action(P("xi"), EA("tau5")) == EA("tau3")


def test_phi():
    assert map_phi(P("eps^2*xi")) == E("eps^2*xi")
    assert map_phi(P("tau(2)")) == E("2*xi^-1")
    assert map_phi(P("kappa")).is_zero()


def test_psi():
    assert map_psi(EA("kappa")) == P("kappa")
    assert map_psi(EA("eps*kappa")) == P("2*eps")
    assert map_psi(EA("eps^-2*tau3")) == P("inv_eps_tau(2,1)")


def test_delta():
    assert map_delta(E("xi^-1")) == EA("eps*tau3")
    assert map_delta(E("eps^2*xi^-2")) == EA("eps^3*tau5")
    assert map_delta(E("eps^3*xi^2")).is_zero()


def test_les_small_box():
    rep = les_point_check(4)
    assert rep.ok, rep.failures


def test_les_at_origin():
    m = les_maps_at((0, 0))
    # ψ(κ) = κ = 2 - g, and φ kills exactly the multiples of κ
    assert m["psi"] == [[2, -1]]
    assert m["phi"] == [[1], [2]]


@given(st.integers(-8, 8), st.integers(-8, 8))
def test_generators_exist_where_top_level_is_nonzero(a, b):
    from equicohom.mackey import catalog_functor
    from equicohom.point import eap_generator_at, ep_generator_at

    # a generator exists exactly when level G/G is nonzero (R- has none)
    def top_nonzero(grp):
        return bool(catalog_functor(grp).level_GG.invariant_factors)

    assert top_nonzero(eap_group_at((a, b))) == (eap_generator_at((a, b)) is not None)
    assert top_nonzero(ep_group_at((a, b))) == (ep_generator_at((a, b)) is not None)
    if (a, b) != (0, 0):
        assert top_nonzero(point_group_at((a, b))) == (generator_at((a, b)) is not None)


sample = st.sampled_from(point_sample(3))


@given(sample, sample)
def test_commutative(x, y):
    assert point_mul(x, y) == point_mul(y, x)


@given(sample, sample, sample)
def test_associative(x, y, z):
    assert point_mul(point_mul(x, y), z) == point_mul(x, point_mul(y, z))


@given(sample, st.integers(-6, 6))
def test_frobenius(x, k):
    y = LevelEElement.iota(k)
    assert point_mul(x, point_tr(y)) == point_tr(point_res(x) * y)


@given(sample, sample)
def test_restriction_multiplicative(x, y):
    assert point_res(point_mul(x, y)) == point_res(x) * point_res(y)


@given(sample, sample)
def test_phi_multiplicative(x, y):
    assert map_phi(point_mul(x, y)) == ep_mul(map_phi(x), map_phi(y))


def test_tau_not_in_eap_grammar_as_point():
    with pytest.raises(Exception):
        EA("1")
    assert EAPElement.kappa(0) == EA("kappa")
