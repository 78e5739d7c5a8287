import pytest

from equicohom.chain_oracle import (
    Twist,
    UnstableRange,
    augmented_complex,
    level_e_crosscheck,
    sphere_antipodal_complex,
    stable_value,
    top_degree,
    verify_ep_table,
)
from equicohom.mackey import Catalog, classify, cohomology_at
from equicohom.point import ep_group_at


def _gg_entries(cx):
    return [d.f_GG[0][0] for d in cx.differentials]


def test_untwisted_differentials():
    assert _gg_entries(sphere_antipodal_complex(5)) == [0, 2, 0, 2]


def test_twisted_differentials():
    assert _gg_entries(sphere_antipodal_complex(5, "lambda")) == [2, 0, 2, 0]


def test_single_cell():
    cx = sphere_antipodal_complex(1)
    assert len(cx.terms) == 1 and cx.differentials == ()
    assert classify(cx.terms[0]) is Catalog.A_E


@pytest.mark.parametrize("twist", list(Twist))
def test_complexes_are_complexes(twist):
    assert sphere_antipodal_complex(9, twist).check() == []


def test_three_cells_degree_zero():
    assert classify(cohomology_at(sphere_antipodal_complex(3), 0)) is Catalog.R


@pytest.mark.parametrize("twist", ["integer", "lambda"])
def test_closed_form_pattern(twist):
    rep = verify_ep_table(20, range(0, 17), twist)
    assert rep.ok, rep.failures
    vals = rep.details["values"]
    if twist == "integer":
        expected = ["R"] + ["0" if a % 2 else "<Z/2>" for a in range(1, 17)]
    else:
        expected = ["0" if a % 2 else "<Z/2>" for a in range(17)]
    assert [vals[a] for a in range(17)] == expected


def test_twisted_below_zero():
    # the Λ-twisted skeleton starts in degree -1 + Λ
    cx = sphere_antipodal_complex(10, "lambda")
    assert classify(cohomology_at(cx, -1)) is ep_group_at((-1, 1)) is Catalog.R_MINUS


def test_top_degree_is_refused():
    with pytest.raises(UnstableRange):
        verify_ep_table(6, range(0, 6))


@pytest.mark.parametrize("n", [2, 6])
def test_level_e(n):
    rep = level_e_crosscheck(n)
    assert rep.ok, rep.failures


def test_level_e_groups():
    cx = sphere_antipodal_complex(6)
    got = {k: cohomology_at(cx, k).level_Ge.invariant_factors for k in range(-1, 7)}
    assert got == {k: ((0,) if k in (0, 5) else ()) for k in range(-1, 7)}


def test_augmented_acyclic():
    aug = augmented_complex(6)
    for k in range(1, 5):
        assert cohomology_at(aug, k).level_Ge.invariant_factors == ()


def test_stable_value():
    n, v = stable_value(4)
    assert v is Catalog.BRACKET_Z2
    assert n <= 6
    assert top_degree(sphere_antipodal_complex(n)) > 4
