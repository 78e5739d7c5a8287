import pytest
from hypothesis import given
from hypothesis import strategies as st

from equicohom.expr import ParseError, format_degree, format_element, parse, to_unicode, tokenize
from equicohom.laws import COEFFS, basis_sample, point_sample
from equicohom.point import EAPElement, EPElement
from equicohom.projective import CpElement, restrict
from equicohom.verify import rho_ep

point_els = st.lists(st.sampled_from(point_sample(4)), min_size=1, max_size=3).map(sum)
ep_els = st.builds(
    lambda m, k, c: EPElement.monomial(m, k, c),
    st.integers(0, 5),
    st.integers(-5, 5),
    st.integers(-3, 3),
)
eap_els = st.one_of(
    st.builds(EAPElement.kappa, st.integers(-6, 6), st.integers(-3, 3)),
    st.builds(EAPElement.tau, st.integers(-6, 6), st.integers(1, 5)),
)
cp_els = st.lists(
    st.builds(CpElement.monomial, st.sampled_from(basis_sample(2)), st.sampled_from(COEFFS)),
    min_size=1,
    max_size=3,
).map(sum)


def _roundtrip(x, space, side=None):
    text = format_element(x, side)
    got = parse(text, space, side)
    if space == "fixed" and side:
        # a one-sided parse lands in the pair, on that side
        got = getattr(got, side)
    assert got == x, text
    assert format_element(got, side) == text


@given(point_els)
def test_point_roundtrip(x):
    _roundtrip(x, "point")


@given(ep_els)
def test_ep_roundtrip(x):
    _roundtrip(x, "ep")


@given(eap_els)
def test_eap_roundtrip(x):
    _roundtrip(x, "eap")


@given(cp_els)
def test_cp_roundtrip(x):
    _roundtrip(x, "cp")


@given(cp_els)
def test_fixed_roundtrip(x):
    _roundtrip(restrict(x), "fixed")
    _roundtrip(restrict(x).plus, "fixed", "plus")
    _roundtrip(restrict(x).minus, "fixed", "minus")


@given(st.integers(-3, 3), st.integers(0, 3), st.integers(-2, 2))
def test_z_roundtrip(s, k, xi):
    x = rho_ep(s, k, EPElement.monomial(0, xi))
    from equicohom.projective import pi_plus

    _roundtrip(pi_plus(x.plus), "z", "z")


@pytest.mark.parametrize(
    "text,space,want",
    [
        ("2 - g", "point", "kappa"),
        ("inv_eps_kappa(4)", "point", "eps^-4*kappa"),
        ("tau(5)", "point", "tau(iota^-5)"),
        ("inv_eps_tau(2,3)", "point", "eps^-2*tau(iota^-7)"),
        ("eps*eps^-1*kappa", "point", "kappa"),
        ("tau3", "eap", "tau_3"),
        ("eps^-2*tau_5", "eap", "eps^-2*tau_5"),
        ("zbar*c*zbar*c", "cp", "eps^2*(zbar*c) + xi*(c*cbar)"),
        ("zeta*zbar", "cp", "xi"),
        ("(c+, c-)", "fixed", "(c+, c-)"),
    ],
)
def test_parse_examples(text, space, want):
    assert format_element(parse(text, space)) == want


@pytest.mark.parametrize(
    "text,space",
    [
        ("zeta^-1", "cp"),
        ("xi^-1", "point"),
        ("c^-1", "cp"),
        ("2 +", "point"),
        ("foo", "point"),
        ("tau(iota)", "point"),
        ("tau3*tau3", "eap"),
        ("1", "eap"),
        ("tau_4", "eap"),
        ("c+", "fixed"),
        ("", "point"),
        ("2 $ 3", "point"),
    ],
)
def test_parse_errors(text, space):
    if text == "c+":
        # c+ alone is fine; it is the minus side that rejects it
        parse(text, space)
        with pytest.raises(ParseError):
            parse(text, space, "minus")
        return
    with pytest.raises(ParseError):
        parse(text, space)


def test_negative_zeta_allowed_on_fixed_set():
    x = parse("zeta+^-2", "fixed", "plus")
    assert format_element(x.plus, "plus") == "zeta+^-2"
    assert not parse("zeta-^-3*c-", "fixed", "minus").minus.is_zero()


def test_tokenizer_suffixes():
    assert [t for _, t in tokenize("c+ + c-")] == ["c+", "+", "c-"]
    assert [t for _, t in tokenize("c + 1")] == ["c", "+", "1"]
    assert [t for _, t in tokenize("zeta-*c")] == ["zeta-", "*", "c"]


def test_unicode():
    assert to_unicode("eps^-2*tau(iota^-3) + zbar*c^2") == "ε⁻²·τ(ι⁻³) + ζ̄·c²"
    assert to_unicode("zeta-*(eps^2 + xi*c-)") == "ζ₋·(ε² + ξ·c₋)"
    assert to_unicode("eps*tau_3") == "ε·τ₃"


def test_format_degree():
    assert format_degree((1, 1, 1)) == "1 + Lam + Om"
    assert format_degree((0, -2)) == "-2*Lam"
    assert format_degree((0, 0, 0)) == "0"
