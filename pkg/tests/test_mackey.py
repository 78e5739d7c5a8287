import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from equicohom.chain_oracle import sphere_antipodal_complex
from equicohom.mackey import (
    AbGroupPresentation,
    Catalog,
    MackeyFunctor,
    catalog_functor,
    check_axioms,
    classify,
    cohomology_at,
    direct_sum,
)

NONZERO = [c for c in Catalog if c is not Catalog.ZERO]


def test_presentation_invariant_factors():
    g = AbGroupPresentation(2, [[2, 0], [0, 4]])
    assert g.invariant_factors == (2, 4)
    assert AbGroupPresentation(3, [[1, 1, 0]]).invariant_factors == (0, 0)
    assert AbGroupPresentation.from_factors([0, 2]).invariant_factors == (2, 0) or AbGroupPresentation.from_factors(
        [0, 2]
    ).invariant_factors == (0, 2)


def test_burnside_diagram_is_A():
    # A(G) on {1, g}, Z at level e; res sends both to 1, tr(1) = g, t trivial
    m = MackeyFunctor.build([0, 0], [0], [[1, 2]], [[0], [1]], [[1]])
    assert classify(m) is Catalog.A


def test_zero_levels():
    m = MackeyFunctor.build([], [], None, None, None)
    assert classify(m) is Catalog.ZERO


def test_bracket_z2():
    m = MackeyFunctor.build([2], [], None, None, None)
    assert classify(m) is Catalog.BRACKET_Z2


@pytest.mark.parametrize("name", list(Catalog))
def test_catalog_axioms_and_classification(name):
    m = catalog_functor(name)
    assert check_axioms(m) == []
    assert classify(m) is name


def test_A_with_zero_transfer_violates():
    a = catalog_functor(Catalog.A)
    bad = MackeyFunctor(a.level_GG, a.level_Ge, a.res, None, a.weyl)
    assert "res∘tr ≠ 1+weyl" in check_axioms(bad)


def test_direct_sum_classification():
    m = direct_sum(catalog_functor(Catalog.A), catalog_functor(Catalog.BRACKET_Z))
    assert classify(m) == (Catalog.A, Catalog.BRACKET_Z)
    assert check_axioms(m) == []


@given(st.lists(st.sampled_from(NONZERO), min_size=2, max_size=3))
def test_direct_sums_satisfy_axioms(parts):
    m = direct_sum(*(catalog_functor(c) for c in parts))
    assert check_axioms(m) == []
    got = classify(m)
    if got is not None:
        assert sorted(got, key=lambda c: c.name) == sorted(parts, key=lambda c: c.name)


@pytest.mark.parametrize("name", list(Catalog))
def test_json_roundtrip(name):
    m = catalog_functor(name)
    data = json.loads(json.dumps(m.to_json()))
    assert classify(MackeyFunctor.from_json(data)) is name


@pytest.mark.parametrize("k,want", [(0, Catalog.R), (1, Catalog.ZERO), (2, Catalog.BRACKET_Z2)])
def test_ep_complex_cohomology(k, want):
    cx = sphere_antipodal_complex(8)
    assert cx.check() == []
    assert classify(cohomology_at(cx, k)) is want


@pytest.mark.parametrize("k", range(-2, 8))
def test_padding_does_not_change_cohomology(k):
    cx = sphere_antipodal_complex(6)
    a = cohomology_at(cx, k)
    b = cohomology_at(cx.padded(2, 3), k)
    assert a.level_GG.invariant_factors == b.level_GG.invariant_factors
    assert a.level_Ge.invariant_factors == b.level_Ge.invariant_factors
    assert classify(a) == classify(b)


def test_catalog_labels():
    assert Catalog.BRACKET_Z.label() == "<Z>"
    assert Catalog.BRACKET_Z.label(ascii=False) == "⟨Z⟩"
    assert Catalog.parse("L₋") is Catalog.L_MINUS
    with pytest.raises(ValueError):
        Catalog.parse("Q")
