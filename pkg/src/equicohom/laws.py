"""Ring identities and bounded-exhaustive algebra laws."""

from __future__ import annotations

import itertools

from .point import (
    EAPElement,
    InvEpsKappa,
    InvEpsTau,
    LevelEElement,
    ONE,
    PointElement,
    TauIota,
    ZERO,
    eap_action,
    point_generators,
    point_mul,
    point_res,
    point_tr,
)
from .projective import (
    CpElement,
    chi_fixed,
    chi_star,
    enumerate_basis_B,
    generator,
    in_basis,
    normalize,
    restrict,
)
from .report import Report

EPS = PointElement.eps_xi(1, 0)
XI = PointElement.eps_xi(0, 1)
G = PointElement.g()
KAPPA = PointElement.kappa()
ONE_MINUS_G = PointElement.scalar(1, -1)
COEFFS = (ONE, G, EPS, XI, KAPPA)


def eps_pow(m: int) -> PointElement:
    return PointElement.eps_xi(m, 0)


def inv_eps_kappa(m: int) -> PointElement:
    return KAPPA if m == 0 else PointElement.of(InvEpsKappa(m))


def tau_iota(n: int) -> PointElement:
    """τ(ι^{-n}); the values for n ≤ 1 follow the transfer convention."""
    return point_tr(LevelEElement.iota(-n))


def inv_eps_tau(m: int, k: int) -> PointElement:
    return tau_iota(2 * k + 1) if m == 0 else PointElement.of(InvEpsTau(m, k))


def point_sample(n: int) -> list[PointElement]:
    """Generators whose indices are all ≤ n, together with 1 and g."""
    out = [ONE, G]
    out += [PointElement.eps_xi(m, k) for m in range(n + 1) for k in range(n + 1) if m or k]
    out += [inv_eps_kappa(m) for m in range(n + 1)]
    out += [PointElement.of(TauIota(k)) for k in range(2, n + 1)]
    out += [PointElement.of(InvEpsTau(m, k)) for m in range(1, n + 1) for k in range(1, n + 1)]
    return out


def cp_monomials(total: int) -> list[tuple[int, int, int, int]]:
    """All monomials ζ^i ζ̄^j c^k c̄^l of total degree ≤ total."""
    return [m for m in itertools.product(range(total + 1), repeat=4) if sum(m) <= total]


def basis_sample(bound: int) -> list[tuple[int, int, int, int]]:
    return [m for m in itertools.product(range(bound + 1), repeat=4) if in_basis(m)]


# ---------------------------------------------------------------------------
# the CP ring identities


def ring_identities(sample_bound: int = 4) -> Report:
    rep = Report("ring-identities")
    zeta, zbar, c, cbar = (generator(n) for n in ("zeta", "zbar", "c", "cbar"))
    gamma = zbar * c
    big_gamma = c * cbar
    eps2 = CpElement.scalar(eps_pow(2))

    def check(label: str, lhs, rhs):
        rep.checked += 1
        if lhs != rhs:
            rep.fail(f"{label}: {lhs} ≠ {rhs}")

    check("ζζ̄ = ξ", zeta * zbar, CpElement.scalar(XI))
    check("ζc̄ = ε² - (1-g)ζ̄c", zeta * cbar, eps2 - ONE_MINUS_G * gamma)
    check("ζ̄c = ε² - (1-g)ζc̄", gamma, eps2 - ONE_MINUS_G * (zeta * cbar))
    check("γ² = ε²γ + ξΓ", gamma * gamma, EPS**2 * gamma + XI * big_gamma)
    check("χ(c) = c̄", chi_star(c), cbar)
    check("χ(ζ) = ζ̄", chi_star(zeta), zbar)
    check("χ(γ) = ε² - (1-g)γ", chi_star(gamma), eps2 - ONE_MINUS_G * gamma)
    check("(1-g)² = 1", ONE_MINUS_G * ONE_MINUS_G, ONE)

    elems = [CpElement.monomial(m, p) for m in basis_sample(min(sample_bound, 2)) for p in COEFFS]
    for x in elems:
        check("χχ = 1", chi_star(chi_star(x)), x)
        check("ρχ = χρ", restrict(chi_star(x)), chi_fixed(restrict(x)))
        check("normalize idempotent", normalize(x.as_dict()), x)
    monos = [CpElement.monomial(m) for m in basis_sample(sample_bound)]
    for x, y in itertools.combinations_with_replacement(monos, 2):
        xy = x * y
        check("χ multiplicative", chi_star(xy), chi_star(x) * chi_star(y))
        check("ρ multiplicative", restrict(xy), restrict(x) * restrict(y))
    return rep


# ---------------------------------------------------------------------------
# commutativity, associativity, distributivity


def cp_laws(total: int = 4) -> Report:
    """Laws for cp_mul on monomials of total degree ≤ total.

    Commutativity is checked with every coefficient from COEFFS; the
    product is P*-bilinear by construction, so associativity and
    distributivity are checked on monomials and the coefficient laws are
    left to :func:`point_laws`.
    """
    rep = Report("cp-laws")
    monos = [CpElement.from_dict({m: ONE}) for m in cp_monomials(total)]
    scaled = [x * p for x in monos for p in COEFFS]
    for x, y in itertools.combinations(scaled, 2):
        rep.checked += 1
        if x * y != y * x:
            rep.fail(f"commutativity: {x} * {y}")
    for x, y, z in itertools.combinations_with_replacement(monos, 3):
        rep.checked += 1
        if (x * y) * z != x * (y * z):
            rep.fail(f"associativity: {x}, {y}, {z}")
    small = cp_monomials(2)
    small_els = [CpElement.from_dict({m: ONE}) for m in small]
    for x in scaled:
        for y, z in itertools.combinations(small_els, 2):
            rep.checked += 1
            if x * (y + z) != x * y + x * z:
                rep.fail(f"distributivity: {x}, {y}, {z}")
    return rep


def point_laws(box: int = 12, triple_bound: int = 4) -> Report:
    rep = Report("point-laws")
    gens = list(point_generators(box))
    for x, y in itertools.combinations(gens, 2):
        rep.checked += 2
        xy = point_mul(x, y)
        if xy != point_mul(y, x):
            rep.fail(f"commutativity: {x}, {y}")
        if point_res(xy) != point_res(x) * point_res(y):
            rep.fail(f"restriction not multiplicative: {x}, {y}")
    sample = point_sample(triple_bound)
    for x, y, z in itertools.product(sample, repeat=3):
        rep.checked += 2
        if point_mul(point_mul(x, y), z) != point_mul(x, point_mul(y, z)):
            rep.fail(f"associativity: {x}, {y}, {z}")
        if point_mul(x, y + z) != point_mul(x, y) + point_mul(x, z):
            rep.fail(f"distributivity: {x}, {y}, {z}")
    return rep


# ---------------------------------------------------------------------------
# Frobenius reciprocity and ε-divisibility


def frobenius_check(bound: int = 12) -> Report:
    """x·τ(ι^k) = τ(ρ(x)·ι^k) for generators with indices ≤ bound and |k| ≤ bound."""
    rep = Report("frobenius")
    for x in point_sample(bound):
        rx = point_res(x)
        for k in range(-bound, bound + 1):
            y = LevelEElement.iota(k)
            rep.checked += 1
            if point_mul(x, point_tr(y)) != point_tr(rx * y):
                rep.fail(f"Frobenius fails for {x} and ι^{k}")
    return rep


def divisibility_check(bound: int = 12) -> Report:
    """The ε- and ξ-relations among the divided classes, indices ≤ bound."""
    rep = Report("divisibility")

    def check(label, got, want):
        rep.checked += 1
        if got != want:
            rep.fail(f"{label}: got {got}, expected {want}")

    for m in range(bound + 1):
        for j in range(bound + 1):
            want = inv_eps_kappa(m - j) if j <= m else eps_pow(j - m) * 2
            check(f"ε^{j}·ε^-{m}κ", point_mul(eps_pow(j), inv_eps_kappa(m)), want)
        if m:
            check(f"ξ·ε^-{m}κ", point_mul(XI, inv_eps_kappa(m)), ZERO)
        for k in range(1, bound + 1):
            x = inv_eps_tau(m, k)
            for j in range(bound + 1):
                want = inv_eps_tau(m - j, k) if j <= m else ZERO
                check(f"ε^{j}·ε^-{m}τ(ι^-{2 * k + 1})", point_mul(eps_pow(j), x), want)
            want = inv_eps_tau(m, k - 1) if k >= 2 else (tau_iota(1) if m == 0 else ZERO)
            check(f"ξ·ε^-{m}τ(ι^-{2 * k + 1})", point_mul(XI, x), want)
    for n in range(2, 2 * bound + 2):
        check(f"ξτ(ι^-{n})", point_mul(XI, tau_iota(n)), tau_iota(n - 2))
    check("κ² = 2κ", point_mul(KAPPA, KAPPA), KAPPA * 2)
    check("ξκ = 0", point_mul(XI, KAPPA), ZERO)
    check("gξ = 2ξ", point_mul(G, XI), XI * 2)
    for m in range(-bound, bound + 1):
        check(f"ε·ε^{m}κ", eap_action(EPS, EAPElement.kappa(m)), EAPElement.kappa(m + 1))
        for k in range(1, bound + 1):
            x = EAPElement.tau(m, k)
            check(f"ε·ε^{m}τ_{2 * k + 1}", eap_action(EPS, x), EAPElement.tau(m + 1, k))
            want = EAPElement.tau(m, k - 1) if k >= 2 else EAPElement()
            check(f"ξ·ε^{m}τ_{2 * k + 1}", eap_action(XI, x), want)
    return rep


def basis_enumeration_check(nmax: int = 6, max_m: int = 6) -> Report:
    """Every listed monomial lies in B with the right Ω-degree, and nothing is missed."""
    from .projective import monomial_degree

    rep = Report("basis-enumeration")
    for n in range(-nmax, nmax + 1):
        listed = enumerate_basis_B(n, max_m)
        rep.checked += 1
        if len(set(listed)) != len(listed):
            rep.fail(f"n={n}: duplicates")
        for m in listed:
            rep.checked += 1
            if not in_basis(m) or monomial_degree(m)[2] != n:
                rep.fail(f"n={n}: {m} is not a basis monomial of that Ω-degree")
        for m in itertools.product(range(max_m + 2), repeat=4):
            if in_basis(m) and monomial_degree(m)[2] == n and m[2] + m[3] <= max_m:
                rep.checked += 1
                if m not in listed:
                    rep.fail(f"n={n}: {m} missing")
    return rep
