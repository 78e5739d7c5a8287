"""The RO(Π)-graded cohomology ring of CP^∞_G and its fixed-set models.

Degrees are triples ``(a, b, n)`` meaning ``a + bΛ + nΩ``.  Elements of
H*(CP^∞_G) are stored as P*-linear combinations of the monomial basis B in
the generators ζ, ζ̄, c, c̄; a monomial is an exponent tuple ``(i, j, k, l)``
for ``ζ^i ζ̄^j c^k c̄^l``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from math import comb
from typing import Callable, Union

from .mackey import Catalog, MackeyFunctor, catalog_functor, direct_sum
from .point import (
    EAPElement,
    EPElement,
    ONE,
    PointElement,
    ZERO,
    eap_action,
    ep_mul,
    map_delta,
    map_phi,
    map_psi,
    point_group_at,
    point_mul,
)

PiDegree = tuple[int, int, int]
Monomial = tuple[int, int, int, int]

ZETA: Monomial = (1, 0, 0, 0)
ZBAR: Monomial = (0, 1, 0, 0)
C: Monomial = (0, 0, 1, 0)
CBAR: Monomial = (0, 0, 0, 1)
UNIT: Monomial = (0, 0, 0, 0)

_GEN_DEGREES = ((-1, 1, 1), (-1, 1, -1), (1, 1, 1), (1, 1, -1))


def monomial_degree(m: Monomial) -> PiDegree:
    a = b = n = 0
    for e, (da, db, dn) in zip(m, _GEN_DEGREES):
        a += e * da
        b += e * db
        n += e * dn
    return (a, b, n)


def restrict_degree(d: PiDegree, side: str) -> tuple[int, int]:
    """The RO(G) degree that a + bΛ + nΩ restricts to on C₊ or C₋."""
    a, b, n = d
    if side == "plus":
        return (a + n, b - n)
    if side == "minus":
        return (a - n, b + n)
    raise ValueError(side)


def chi_degree(d: PiDegree) -> PiDegree:
    return (d[0], d[1], -d[2])


def sub_degree(d: PiDegree, e: PiDegree) -> PiDegree:
    return (d[0] - e[0], d[1] - e[1], d[2] - e[2])


# ---------------------------------------------------------------------------
# the basis B


class Family(IntEnum):
    ZETA_C = 0  # ζ^m c^n
    ZBAR_CBAR = 1  # ζ̄^m c̄^n, m + n > 0
    C_CBAR = 2  # c^m c̄^n, m, n > 0
    ZBAR_C_CBAR = 3  # ζ̄ c^m c̄^n, m > n ≥ 0
    ZETA_C_CBAR = 4  # ζ c^m c̄^n, n > m + 1


def basis_family(m: Monomial) -> Family | None:
    i, j, k, l = m
    if j == 0 and l == 0:
        return Family.ZETA_C
    if i == 0 and k == 0:
        return Family.ZBAR_CBAR
    if i == 0 and j == 0 and k > 0 and l > 0:
        return Family.C_CBAR
    if i == 0 and j == 1 and k > l:
        return Family.ZBAR_C_CBAR
    if i == 1 and j == 0 and l > k + 1:
        return Family.ZETA_C_CBAR
    return None


def in_basis(m: Monomial) -> bool:
    return basis_family(m) is not None


def enumerate_basis_B(n: int, max_m: int = 8) -> list[Monomial]:
    """Basis monomials with Ω-coefficient n, each infinite list cut at m ≤ max_m."""
    out: list[Monomial] = []
    if n == 0:
        out += [(0, 0, m, m) for m in range(0, max_m + 1)]
        out += [(0, 1, m + 1, m) for m in range(0, max_m + 1)]
    elif n > 0:
        out += [(n - m, 0, m, 0) for m in range(0, n + 1)]
        out += [(0, 0, m + n, m) for m in range(1, max_m + 1)]
        out += [(0, 1, m + n + 1, m) for m in range(0, max_m + 1)]
    else:
        p = -n
        out += [(0, p - m, 0, m) for m in range(0, p + 1)]
        out += [(0, 0, m, m + p) for m in range(1, max_m + 1)]
        out += [(1, 0, m, m + p + 1) for m in range(0, max_m + 1)]
    return out


def monomial_key(m: Monomial) -> tuple:
    """Printing order: total c-degree, then family, then exponents."""
    fam = basis_family(m)
    return (m[2] + m[3], -1 if fam is None else int(fam), m)


# ---------------------------------------------------------------------------
# normal forms

_EPS2 = PointElement.eps_xi(2, 0)
_XI = PointElement.eps_xi(0, 1)
_ONE_MINUS_G = PointElement.scalar(1, -1)


def _add_into(acc: dict, key, coeff) -> None:
    if key in acc:
        acc[key] = acc[key] + coeff
    else:
        acc[key] = coeff


def _scale(terms: dict, p: PointElement) -> dict:
    return {m: point_mul(p, c) for m, c in terms.items()}


@lru_cache(maxsize=None)
def _normalize_monomial(m: Monomial) -> tuple[tuple[Monomial, PointElement], ...]:
    i, j, k, l = m
    if min(i, j) < 0 or min(k, l) < 0:
        raise ValueError("exponents must be nonnegative")
    t = min(i, j)
    if t:
        # ζζ̄ = ξ
        inner = dict(_normalize_monomial((i - t, j - t, k, l)))
        return _pack(_scale(inner, PointElement.eps_xi(0, t)))
    if in_basis(m):
        return ((m, ONE),)
    acc: dict = {}
    if j == 0 and i >= 1 and l >= 1:
        # ζ c̄ = ε² - (1-g) ζ̄ c
        for mono, c in _normalize_monomial((i - 1, 0, k, l - 1)):
            _add_into(acc, mono, point_mul(_EPS2, c))
        for mono, c in _normalize_monomial((i - 1, 1, k + 1, l - 1)):
            _add_into(acc, mono, -point_mul(_ONE_MINUS_G, c))
        return _pack(acc)
    if i == 0 and j >= 1 and k >= 1:
        # ζ̄ c = ε² - (1-g) ζ c̄
        for mono, c in _normalize_monomial((0, j - 1, k - 1, l)):
            _add_into(acc, mono, point_mul(_EPS2, c))
        for mono, c in _normalize_monomial((1, j - 1, k - 1, l + 1)):
            _add_into(acc, mono, -point_mul(_ONE_MINUS_G, c))
        return _pack(acc)
    raise AssertionError(f"no rewriting rule applies to {m}")


def _pack(d: dict) -> tuple[tuple[Monomial, PointElement], ...]:
    return tuple(sorted(((m, c) for m, c in d.items() if not c.is_zero()), key=lambda t: monomial_key(t[0])))


@dataclass(frozen=True)
class CpElement:
    """A P*-linear combination of basis monomials (always in normal form)."""

    terms: tuple[tuple[Monomial, PointElement], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[Monomial, PointElement]) -> "CpElement":
        acc: dict = {}
        for m, c in d.items():
            for mono, e in _normalize_monomial(m):
                _add_into(acc, mono, point_mul(c, e))
        return cls(_pack(acc))

    @classmethod
    def monomial(cls, m: Monomial, coeff: PointElement | int = 1) -> "CpElement":
        if isinstance(coeff, int):
            coeff = PointElement.scalar(coeff)
        return cls.from_dict({m: coeff})

    @classmethod
    def scalar(cls, p: PointElement | int) -> "CpElement":
        return cls.monomial(UNIT, p)

    def as_dict(self) -> dict[Monomial, PointElement]:
        return dict(self.terms)

    def coeff(self, m: Monomial) -> PointElement:
        return self.as_dict().get(m, ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[PiDegree]:
        out = set()
        for m, c in self.terms:
            md = monomial_degree(m)
            for (a, b), _ in c.terms:
                out.add((md[0] + a, md[1] + b, md[2]))
        return out

    @property
    def degree(self) -> PiDegree:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("element is not homogeneous and nonzero")
        return degs.pop()

    def __add__(self, other: "CpElement | PointElement | int") -> "CpElement":
        other = _as_cp(other)
        acc = self.as_dict()
        for m, c in other.terms:
            _add_into(acc, m, c)
        return CpElement(_pack(acc))

    __radd__ = __add__

    def __neg__(self) -> "CpElement":
        return CpElement(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other) -> "CpElement":
        return self + (-_as_cp(other))

    def __rsub__(self, other) -> "CpElement":
        return _as_cp(other) - self

    def __mul__(self, other) -> "CpElement":
        return cp_mul(self, _as_cp(other))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CpElement":
        if e < 0:
            raise ValueError("negative powers are not defined in H*(CP^∞_G)")
        out = CpElement.scalar(1)
        for _ in range(e):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)


def _as_cp(x) -> CpElement:
    if isinstance(x, CpElement):
        return x
    if isinstance(x, (int, PointElement)):
        return CpElement.scalar(x)
    raise TypeError(f"cannot use {type(x).__name__} as a CP element")


def normalize(formal: dict[Monomial, PointElement] | Monomial) -> CpElement:
    """Rewrite an arbitrary P*-combination of monomials onto the basis B."""
    if isinstance(formal, tuple):
        formal = {formal: ONE}
    return CpElement.from_dict(formal)


def cp_mul(x: CpElement, y: CpElement) -> CpElement:
    acc: dict = {}
    for m1, c1 in x.terms:
        for m2, c2 in y.terms:
            c = point_mul(c1, c2)
            if c.is_zero():
                continue
            m = tuple(p + q for p, q in zip(m1, m2))
            for mono, e in _normalize_monomial(m):
                _add_into(acc, mono, point_mul(c, e))
    return CpElement(_pack(acc))


def chi_star(x: CpElement) -> CpElement:
    """The involution swapping c ↔ c̄ and ζ ↔ ζ̄."""
    return CpElement.from_dict({(j, i, l, k): c for (i, j, k, l), c in x.terms})


def generator(name: str) -> CpElement:
    return CpElement.monomial({"zeta": ZETA, "zbar": ZBAR, "c": C, "cbar": CBAR}[name])


# ---------------------------------------------------------------------------
# Laurent polynomials on the fixed sets: coefficient · ζ^s c^j


Coefficient = Union[PointElement, EPElement, EAPElement]


def _cmul(x, y):
    if isinstance(x, PointElement) and isinstance(y, PointElement):
        return point_mul(x, y)
    if isinstance(x, EPElement) and isinstance(y, EPElement):
        return ep_mul(x, y)
    if isinstance(x, PointElement) and isinstance(y, EAPElement):
        return eap_action(x, y)
    if isinstance(x, EAPElement) and isinstance(y, PointElement):
        return eap_action(y, x)
    raise TypeError(f"cannot multiply {type(x).__name__} by {type(y).__name__}")


def _czero(kind: type):
    return kind()


@dataclass(frozen=True)
class FixedPoly:
    """Sum of coeff · ζ^s c^j on one fixed component (or on Z), keyed by (s, j)."""

    terms: tuple[tuple[tuple[int, int], Coefficient], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[tuple[int, int], Coefficient]) -> "FixedPoly":
        out = []
        for key in sorted(d):
            if key[1] < 0:
                raise ValueError("negative powers of c do not exist")
            c = d[key]
            if not c.is_zero():
                out.append((key, c))
        return cls(tuple(out))

    @classmethod
    def monomial(cls, s: int, j: int, coeff: Coefficient) -> "FixedPoly":
        return cls.from_dict({(s, j): coeff})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, s: int, j: int, default=None):
        return self.as_dict().get((s, j), default)

    def __add__(self, other: "FixedPoly") -> "FixedPoly":
        acc = self.as_dict()
        for key, c in other.terms:
            _add_into(acc, key, c)
        return FixedPoly.from_dict(acc)

    def __neg__(self) -> "FixedPoly":
        return FixedPoly(tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: "FixedPoly") -> "FixedPoly":
        return self + (-other)

    def __mul__(self, other: "FixedPoly") -> "FixedPoly":
        acc: dict = {}
        for (s1, j1), c1 in self.terms:
            for (s2, j2), c2 in other.terms:
                c = _cmul(c1, c2)
                if not c.is_zero():
                    _add_into(acc, (s1 + s2, j1 + j2), c)
        return FixedPoly.from_dict(acc)

    def scale(self, p: Coefficient) -> "FixedPoly":
        """Multiply every coefficient by p (on the left)."""
        return FixedPoly.from_dict({k: _cmul(p, c) for k, c in self.terms})

    def map_coeffs(self, f: Callable) -> "FixedPoly":
        return FixedPoly.from_dict({k: f(c) for k, c in self.terms})

    def __bool__(self) -> bool:
        return bool(self.terms)


@dataclass(frozen=True)
class FixedElement:
    """A class on the fixed set C₊ ⊔ C₋: a pair of fixed-set polynomials."""

    plus: FixedPoly = FixedPoly()
    minus: FixedPoly = FixedPoly()

    def __add__(self, other: "FixedElement") -> "FixedElement":
        return FixedElement(self.plus + other.plus, self.minus + other.minus)

    def __sub__(self, other: "FixedElement") -> "FixedElement":
        return FixedElement(self.plus - other.plus, self.minus - other.minus)

    def __mul__(self, other: "FixedElement") -> "FixedElement":
        return FixedElement(self.plus * other.plus, self.minus * other.minus)

    def scale(self, p: Coefficient) -> "FixedElement":
        return FixedElement(self.plus.scale(p), self.minus.scale(p))

    def map_coeffs(self, f: Callable) -> "FixedElement":
        return FixedElement(self.plus.map_coeffs(f), self.minus.map_coeffs(f))

    def is_zero(self) -> bool:
        return self.plus.is_zero() and self.minus.is_zero()

    def swap(self) -> "FixedElement":
        return FixedElement(self.minus, self.plus)


def fixed_term_degree(side: str, s: int, j: int, coeff_degree: tuple[int, int]) -> PiDegree:
    a, b = coeff_degree
    if side == "plus":
        return (a - s + 2 * j, b + s, s)
    return (a + s + 2 * j, b - s, s)


def coeff_degree_for(side: str, d: PiDegree, j: int) -> tuple[int, int]:
    """Coefficient degree of the ζ^n c^j term of a fixed-set class in degree d."""
    a, b, n = d
    if side == "plus":
        return (a + n - 2 * j, b - n)
    return (a - n - 2 * j, b + n)


def _p(p: PointElement) -> FixedPoly:
    return FixedPoly.monomial(0, 0, p)


_RHO_PLUS = {
    ZETA: FixedPoly.monomial(1, 0, ONE),
    ZBAR: FixedPoly.monomial(-1, 0, _XI),
    C: FixedPoly.monomial(1, 1, ONE),
    CBAR: FixedPoly.from_dict({(-1, 0): _EPS2, (-1, 1): _XI}),
}
_RHO_MINUS = {
    ZETA: FixedPoly.monomial(1, 0, _XI),
    ZBAR: FixedPoly.monomial(-1, 0, ONE),
    C: FixedPoly.from_dict({(1, 0): _EPS2, (1, 1): _XI}),
    CBAR: FixedPoly.monomial(-1, 1, ONE),
}


@lru_cache(maxsize=None)
def _power(side: str, gen: Monomial, e: int) -> FixedPoly:
    table = _RHO_PLUS if side == "plus" else _RHO_MINUS
    if e == 0:
        return _p(ONE)
    return _power(side, gen, e - 1) * table[gen]


@lru_cache(maxsize=None)
def restrict_monomial(m: Monomial, side: str) -> FixedPoly:
    out = _p(ONE)
    for e, gen in zip(m, (ZETA, ZBAR, C, CBAR)):
        if e:
            out = out * _power(side, gen, e)
    return out


def _restrict(x: CpElement, side: str) -> FixedPoly:
    out = FixedPoly()
    for m, c in x.terms:
        out = out + restrict_monomial(m, side).scale(c)
    return out


def restrict_plus(x: CpElement) -> FixedPoly:
    return _restrict(x, "plus")


def restrict_minus(x: CpElement) -> FixedPoly:
    return _restrict(x, "minus")


def restrict(x: CpElement) -> FixedElement:
    return FixedElement(restrict_plus(x), restrict_minus(x))


def chi_fixed(x: FixedElement) -> FixedElement:
    """χ on the fixed set: c₊ ↔ c₋, ζ₊ ↦ ζ₋^{-1}, ζ₋ ↦ ζ₊^{-1}."""

    def flip(p: FixedPoly) -> FixedPoly:
        return FixedPoly.from_dict({(-s, j): c for (s, j), c in p.terms})

    return FixedElement(flip(x.minus), flip(x.plus))


# ---------------------------------------------------------------------------
# the free part Z and the maps π±


_EP_ONE = EPElement.scalar(1)
_EP_XI_INV = EPElement.monomial(0, -1)
_EP_EPS2_XI_INV = EPElement.monomial(2, -1)


def pi_plus(x: FixedPoly) -> FixedPoly:
    """π₊: c₊ ↦ c̃, ζ₊ ↦ ζ̃ (coefficients in H*(EP))."""
    return FixedPoly.from_dict(dict(x.terms))


def pi_minus(x: FixedPoly) -> FixedPoly:
    """π₋: c₋ ↦ ξ^{-1}ε² + c̃, ζ₋ ↦ ξ^{-1}ζ̃."""
    acc: dict = {}
    for (s, j), q in x.terms:
        base = ep_mul(q, EPElement.monomial(0, -s))
        for i in range(j + 1):
            term = ep_mul(base, EPElement.monomial(2 * (j - i), -(j - i), comb(j, i)))
            if not term.is_zero():
                _add_into(acc, (s, i), term)
    return FixedPoly.from_dict(acc)


def phi_fixed(x: FixedElement) -> FixedElement:
    return x.map_coeffs(map_phi)


def psi_fixed(x: FixedElement) -> FixedElement:
    return x.map_coeffs(map_psi)


def delta_fixed(x: FixedElement) -> FixedElement:
    return x.map_coeffs(map_delta)


def to_ep(x: FixedElement) -> FixedElement:
    """Image of a P*-coefficient fixed class in H*(EP)-coefficients."""
    return phi_fixed(x)


# ---------------------------------------------------------------------------
# additive structure


def _basis_cutoff(d: PiDegree) -> int:
    # every infinite list of B has a ≥ 2m and a + b ≥ 4m, while a nonzero
    # coefficient group needs its own a ≥ 0 or a + b ≥ 0
    a, b, _ = d
    return max(0, a // 2, (a + b) // 4) + 1


def cp_group_at(d: PiDegree) -> list[tuple[Monomial, Catalog]]:
    """The summands P^{d-|β|}·β of H^d(CP^∞_G) that are nonzero, in printing order."""
    out = []
    for beta in enumerate_basis_B(d[2], _basis_cutoff(d)):
        e = sub_degree(d, monomial_degree(beta))
        grp = point_group_at(e[:2])
        if grp is not Catalog.ZERO:
            out.append((beta, grp))
    out.sort(key=lambda t: monomial_key(t[0]))
    return out


def cp_functor_at(d: PiDegree) -> MackeyFunctor:
    return direct_sum(*(catalog_functor(g) for _, g in cp_group_at(d)))


def fixed_group_at(d: PiDegree) -> list[tuple[str, int, Catalog]]:
    """Nonzero summands (side, j, P^e) of the cohomology of the fixed set.

    Each component contributes P^e·ζ^n c^j for j ≥ 0, with e given by
    :func:`coeff_degree_for`; P vanishes once a' < -|b'|, which bounds j.
    """
    a, b, n = d
    jmax = (abs(a) + abs(b) + 2 * abs(n)) // 2 + 2
    out = []
    for side in ("plus", "minus"):
        for j in range(jmax + 1):
            grp = point_group_at(coeff_degree_for(side, d, j))
            if grp is not Catalog.ZERO:
                out.append((side, j, grp))
    return out
