import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from equicohom.expr import parse
from equicohom.point import EAPElement, EPElement
from equicohom.projective import C, UNIT, ZETA, CpElement, FixedElement, FixedPoly, restrict
from equicohom.verify import (
    FixedCoords,
    HypothesisViolated,
    TruncationTooSmall,
    coker_factors,
    cp_les_check,
    dimension_families,
    invariant_factors,
    is_unitriangular,
    lemma_delta_check,
    leading_term_matrix,
    leading_term_matrix_check,
    mv_box,
    mv_kernel,
    mv_kernel_check,
    psi_beta_check,
    rho_ep,
    spans_equal,
)


def _in_kernel_span(d, x, trunc=8):
    amb, ker = mv_kernel(d, trunc)
    return spans_equal(ker, ker + [amb.vector(x)], amb.orders)


def test_invariant_factors():
    assert invariant_factors([0, 2, 1, 4]) == (2, 4, 0)


def test_coker_against_sympy():
    gens = [[2, 4], [6, 8]]
    d = sympy_snf(Matrix(gens).T, domain=ZZ)
    want = tuple(sorted(abs(int(d[i, i])) for i in range(2) if abs(d[i, i]) != 1))
    assert tuple(sorted(coker_factors(gens, [0, 0]))) == want


@pytest.mark.parametrize("d", [(1, 1, 1), (-1, 1, 1), (0, 0, 0), (3, -2, 2), (-4, 5, -3)])
def test_mv_kernel_examples(d):
    rep = mv_kernel_check(d, trunc=8)
    assert rep.ok, rep.failures


def test_kernel_at_zeta_degree():
    # ζ restricts to (ζ₊, ξζ₋)
    x = FixedElement(
        FixedPoly.monomial(1, 0, EPElement.scalar(1)),
        FixedPoly.monomial(1, 0, EPElement.monomial(0, 1)),
    )
    assert _in_kernel_span((-1, 1, 1), x)
    bad = FixedElement(FixedPoly.monomial(1, 0, EPElement.scalar(1)), FixedPoly())
    assert not _in_kernel_span((-1, 1, 1), bad)


def test_unit_in_kernel():
    assert _in_kernel_span((0, 0, 0), rho_ep(0, 0, EPElement.scalar(1)))


def test_truncation_guard():
    with pytest.raises(TruncationTooSmall):
        FixedCoords((20, 0, 0), "point", trunc=2)


@pytest.mark.parametrize("d", [(0, 0, 0), (1, 1, 1), (0, 2, 0), (2, -3, 1), (-5, 6, 4)])
def test_freeness_route(d):
    rep = cp_les_check(d)
    assert rep.ok, rep.failures


def test_leading_term_2k1_k2():
    rows, orders, _ = leading_term_matrix((5, 0, 0))
    assert len(rows) == 4 and set(orders) == {2}
    assert is_unitriangular(rows, 2)


def test_leading_term_n_plus_2k():
    rows, orders, _ = leading_term_matrix((3, 1, 1))
    assert set(orders) == {0}
    assert sorted(rows, reverse=True) == [[1, 1], [0, 1]]


def test_leading_term_minus_n_plus_2k():
    rows, _, _ = leading_term_matrix((-1, 3, 3))
    assert rows == [[1]]


def test_unitriangular_detection():
    assert is_unitriangular([[1, 5], [0, 1]], 0)
    assert not is_unitriangular([[2, 0], [0, 1]], 0)
    assert not is_unitriangular([[1, 1], [1, 1]], 2)


def test_dimension_families_cover_all_five_kinds():
    names = {name for n in range(-3, 4) for name, _, _ in dimension_families(n, 4)}
    assert names == {"2k", "2k+1", "-n+2k", "-n+2k+1", "n+2k", "n+2k+1"}


@pytest.mark.parametrize("n", [0, 1, -2])
def test_leading_term_check(n):
    rep = leading_term_matrix_check(n, 3)
    assert rep.ok, rep.failures
    assert rep.details["matrices"]


@pytest.mark.parametrize(
    "eta,beta",
    [(EAPElement.kappa(0), UNIT), (EAPElement.tau(-3, 1), ZETA), (EAPElement.kappa(1), C), (EAPElement.tau(2, 2), (0, 1, 2, 1))],
)
def test_psi_beta(eta, beta):
    rep = psi_beta_check(eta, beta)
    assert rep.ok, rep.failures


def test_psi_kappa_times_one():
    from equicohom.point import map_psi

    lhs = restrict(CpElement.monomial(UNIT, map_psi(EAPElement.kappa(0))))
    assert lhs == restrict(CpElement.scalar(parse("kappa", "point")))


def _as_ep(x: FixedElement) -> FixedElement:
    from equicohom.point import map_phi

    return x.map_coeffs(map_phi)


def test_lemma_delta_on_c():
    x = _as_ep(restrict(CpElement.monomial(C)))
    rep = lemma_delta_check(x, EPElement.monomial(0, -1), box=4)
    assert rep.ok, rep.failures


def test_lemma_delta_on_cbar():
    x = _as_ep(restrict(parse("cbar", "cp")))
    assert lemma_delta_check(x, EPElement.monomial(0, -1), box=3).ok


def test_lemma_delta_on_unit():
    one = FixedPoly.monomial(0, 0, EPElement.scalar(1))
    x = FixedElement(one, one)
    for mu in (EPElement.monomial(0, -2), EPElement.monomial(3, -1), EPElement.scalar(1)):
        assert lemma_delta_check(x, mu, box=3).ok


def test_lemma_delta_needs_nonnegative_xi():
    x = FixedElement(FixedPoly.monomial(0, 0, EPElement.monomial(0, -1)), FixedPoly())
    with pytest.raises(HypothesisViolated):
        lemma_delta_check(x, EPElement.scalar(1))


def test_mv_box_size():
    assert len(list(mv_box(6, 6, 4))) == 13 * 13 * 9
