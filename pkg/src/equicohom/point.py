"""The cohomology of a point, of EP and of E(A,P), with Burnside coefficients.

Degrees ``a + bΛ`` are written as pairs ``(a, b)``.  Every nonzero degree
of the point ring has at most one canonical generator at level G/G, so a
homogeneous element is just an integer coefficient on that generator.
Degree zero is the Burnside ring A(G), stored on the basis {1, g}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

from .intlinalg import kernel_basis, hstack, in_span, from_columns
from .mackey import Catalog
from .report import Report

Degree = tuple[int, int]


class UnspecifiedProduct(ArithmeticError):
    """Raised when no rule determines a product of point-ring generators."""


def add(d: Degree, e: Degree) -> Degree:
    return (d[0] + e[0], d[1] + e[1])


# ---------------------------------------------------------------------------
# additive structure


def point_group_at(d: Degree) -> Catalog:
    a, b = d
    if a == 0 and b == 0:
        return Catalog.A
    if a + b == 0:
        if a % 2 == 0:
            return Catalog.R if a < 0 else Catalog.L
        return Catalog.R_MINUS if a <= 1 else Catalog.L_MINUS
    if a == 0:
        return Catalog.BRACKET_Z
    if a + b > 0 and a < 0 and a % 2 == 0:
        return Catalog.BRACKET_Z2
    if a + b < 0 and a > 1 and a % 2 == 1:
        return Catalog.BRACKET_Z2
    return Catalog.ZERO


def ep_group_at(d: Degree) -> Catalog:
    a, b = d
    if a + b == 0:
        return Catalog.R if a % 2 == 0 else Catalog.R_MINUS
    if a + b > 0 and a % 2 == 0:
        return Catalog.BRACKET_Z2
    return Catalog.ZERO


def eap_group_at(d: Degree) -> Catalog:
    a, _ = d
    if a == 0:
        return Catalog.BRACKET_Z
    if a >= 3 and a % 2 == 1:
        return Catalog.BRACKET_Z2
    return Catalog.ZERO


# modulus of the G/G value: 0 for Z, 2 for Z/2, None when it vanishes
_GG_MODULUS = {
    Catalog.R: 0,
    Catalog.L: 0,
    Catalog.BRACKET_Z: 0,
    Catalog.L_MINUS: 2,
    Catalog.BRACKET_Z2: 2,
}


def _modulus(d: Degree) -> int | None:
    return _GG_MODULUS.get(point_group_at(d))


# ---------------------------------------------------------------------------
# canonical generators


@dataclass(frozen=True)
class One:
    degree = (0, 0)


@dataclass(frozen=True)
class GElt:
    degree = (0, 0)


@dataclass(frozen=True)
class EpsXi:
    """ε^m ξ^n with m, n ≥ 0."""

    m: int
    n: int

    @property
    def degree(self) -> Degree:
        return (-2 * self.n, self.m + 2 * self.n)


@dataclass(frozen=True)
class InvEpsKappa:
    """ε^{-m} κ; m = 0 is κ = 2 - g itself."""

    m: int

    @property
    def degree(self) -> Degree:
        return (0, -self.m)


@dataclass(frozen=True)
class TauIota:
    """τ(ι^{-n}) for n ≥ 2."""

    n: int

    @property
    def degree(self) -> Degree:
        return (self.n, -self.n)


@dataclass(frozen=True)
class InvEpsTau:
    """ε^{-m} τ(ι^{-(2k+1)}) for m, k ≥ 1."""

    m: int
    k: int

    @property
    def degree(self) -> Degree:
        a = 2 * self.k + 1
        return (a, -a - self.m)


PointGenerator = Union[One, GElt, EpsXi, InvEpsKappa, TauIota, InvEpsTau]


def generator_at(d: Degree) -> PointGenerator | None:
    """The canonical G/G generator in a nonzero degree (None if the group is 0)."""
    a, b = d
    if d == (0, 0):
        return One()
    if _modulus(d) is None:
        return None
    if a == 0:
        return EpsXi(b, 0) if b > 0 else InvEpsKappa(-b)
    if a < 0:
        return EpsXi(a + b, -a // 2)
    if a + b == 0:
        return TauIota(a)
    return InvEpsTau(-(a + b), (a - 1) // 2)


# ---------------------------------------------------------------------------
# level G/e: Z[ι, ι^{-1}], |ι^k| = (-k, k)


@dataclass(frozen=True)
class LevelEElement:
    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "LevelEElement":
        return cls(tuple(sorted((k, c) for k, c in d.items() if c)))

    @classmethod
    def iota(cls, k: int, coeff: int = 1) -> "LevelEElement":
        return cls.from_dict({k: coeff})

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def __add__(self, other: "LevelEElement") -> "LevelEElement":
        out = self.as_dict()
        for k, c in other.terms:
            out[k] = out.get(k, 0) + c
        return LevelEElement.from_dict(out)

    def __mul__(self, other: "LevelEElement | int") -> "LevelEElement":
        if isinstance(other, int):
            return LevelEElement.from_dict({k: c * other for k, c in self.terms})
        out: dict[int, int] = {}
        for k, c in self.terms:
            for l, e in other.terms:
                out[k + l] = out.get(k + l, 0) + c * e
        return LevelEElement.from_dict(out)

    __rmul__ = __mul__

    def weyl(self) -> "LevelEElement":
        return LevelEElement.from_dict({k: (-1) ** (k % 2) * c for k, c in self.terms})

    def is_zero(self) -> bool:
        return not self.terms


# ---------------------------------------------------------------------------
# the point ring at level G/G

Coeff = Union[int, tuple[int, int]]


def _reduce(d: Degree, c: Coeff) -> Coeff | None:
    if d == (0, 0):
        x, y = c if isinstance(c, tuple) else (c, 0)
        return (x, y) if (x or y) else None
    mod = _modulus(d)
    if mod is None:
        return None
    c = c % mod if mod else c
    return c or None


@dataclass(frozen=True)
class PointElement:
    """Finite sum over degrees of canonical-generator coefficients."""

    terms: tuple[tuple[Degree, Coeff], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[Degree, Coeff]) -> "PointElement":
        out = []
        for deg in sorted(d):
            c = _reduce(deg, d[deg])
            if c is not None:
                out.append((deg, c))
        return cls(tuple(out))

    # constructors
    @classmethod
    def scalar(cls, x: int, y: int = 0) -> "PointElement":
        return cls.from_dict({(0, 0): (x, y)})

    @classmethod
    def one(cls) -> "PointElement":
        return cls.scalar(1)

    @classmethod
    def g(cls) -> "PointElement":
        return cls.scalar(0, 1)

    @classmethod
    def kappa(cls) -> "PointElement":
        return cls.scalar(2, -1)

    @classmethod
    def of(cls, gen: PointGenerator, coeff: int = 1) -> "PointElement":
        if isinstance(gen, One):
            return cls.scalar(coeff)
        if isinstance(gen, GElt):
            return cls.scalar(0, coeff)
        if isinstance(gen, InvEpsKappa) and gen.m == 0:
            return cls.scalar(2 * coeff, -coeff)
        if generator_at(gen.degree) != gen:
            raise ValueError(f"{gen} is not a canonical generator")
        return cls.from_dict({gen.degree: coeff})

    @classmethod
    def eps_xi(cls, m: int, n: int, coeff: int = 1) -> "PointElement":
        if m < 0 or n < 0:
            raise ValueError("ε^m ξ^n needs m, n ≥ 0 in the point ring")
        if m == n == 0:
            return cls.scalar(coeff)
        return cls.of(EpsXi(m, n), coeff)

    # structure
    def as_dict(self) -> dict[Degree, Coeff]:
        return dict(self.terms)

    def degrees(self) -> list[Degree]:
        return [d for d, _ in self.terms]

    @property
    def degree(self) -> Degree:
        if len(self.terms) != 1:
            raise ValueError("element is not homogeneous and nonzero")
        return self.terms[0][0]

    def coeff(self, d: Degree) -> Coeff:
        return self.as_dict().get(d, (0, 0) if d == (0, 0) else 0)

    def is_zero(self) -> bool:
        return not self.terms

    def component(self, d: Degree) -> "PointElement":
        return PointElement.from_dict({d: self.coeff(d)})

    # arithmetic
    def __add__(self, other: "PointElement | int") -> "PointElement":
        if not isinstance(other, (int, PointElement)):
            return NotImplemented
        other = _as_point(other)
        out = self.as_dict()
        for d, c in other.terms:
            if d == (0, 0):
                x, y = out.get(d, (0, 0))
                out[d] = (x + c[0], y + c[1])
            else:
                out[d] = out.get(d, 0) + c
        return PointElement.from_dict(out)

    __radd__ = __add__

    def __neg__(self) -> "PointElement":
        return self * -1

    def __sub__(self, other: "PointElement | int") -> "PointElement":
        if not isinstance(other, (int, PointElement)):
            return NotImplemented
        return self + (-_as_point(other))

    def __rsub__(self, other: "PointElement | int") -> "PointElement":
        return _as_point(other) - self

    def __mul__(self, other: "PointElement | int") -> "PointElement":
        if isinstance(other, int):
            return PointElement.from_dict(
                {d: (c[0] * other, c[1] * other) if isinstance(c, tuple) else c * other for d, c in self.terms}
            )
        if not isinstance(other, PointElement):
            return NotImplemented
        return point_mul(self, other)

    def __rmul__(self, other: int) -> "PointElement":
        return self * other

    def __pow__(self, n: int) -> "PointElement":
        if n < 0:
            raise ValueError("negative powers do not exist in the point ring")
        out = PointElement.one()
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)


def _as_point(x: "PointElement | int") -> PointElement:
    if isinstance(x, int):
        return PointElement.scalar(x)
    return x


ZERO = PointElement()
ONE = PointElement.one()


def _kind(d: Degree) -> tuple:
    gen = generator_at(d)
    if isinstance(gen, EpsXi):
        return ("EX", gen.m, gen.n)
    if isinstance(gen, InvEpsKappa):
        return ("K", gen.m)
    if isinstance(gen, TauIota):
        return ("T", gen.n)
    if isinstance(gen, InvEpsTau):
        return ("ET", gen.m, gen.k)
    raise ValueError(f"no generator in degree {d}")


def _gen(kind: tuple, coeff: int = 1) -> PointElement:
    tag = kind[0]
    if tag == "EX":
        return PointElement.eps_xi(kind[1], kind[2], coeff)
    if tag == "K":
        if kind[1] == 0:
            return PointElement.kappa() * coeff
        return PointElement.from_dict({(0, -kind[1]): coeff})
    if tag == "T":
        return PointElement.from_dict({(kind[1], -kind[1]): coeff})
    if tag == "ET":
        return PointElement.of(InvEpsTau(kind[1], kind[2]), coeff)
    raise ValueError(kind)


def point_res(x: PointElement) -> LevelEElement:
    """Restriction to level G/e."""
    out = LevelEElement()
    for d, c in x.terms:
        if d == (0, 0):
            out = out + LevelEElement.iota(0, c[0] + 2 * c[1])
            continue
        kind = _kind(d)
        if kind[0] == "EX" and kind[1] == 0:
            out = out + LevelEElement.iota(2 * kind[2], c)
        elif kind[0] == "T":
            n = kind[1]
            out = out + LevelEElement.iota(-n, c * (1 + (-1) ** (n % 2)))
        # ε-divisible classes and positive ε powers restrict to zero
    return out


def _tr_iota(j: int) -> PointElement:
    # τ(ι^{-1}) := 0 and τ(ι^0) := g; both follow from Frobenius with t·ι = -ι
    if j <= -2:
        return _gen(("T", -j))
    if j == -1:
        return ZERO
    if j == 0:
        return PointElement.g()
    if j % 2 == 0:
        return PointElement.eps_xi(0, j // 2, 2)
    return ZERO


def point_tr(y: LevelEElement) -> PointElement:
    """Transfer from level G/e."""
    out = ZERO
    for j, c in y.terms:
        out = out + _tr_iota(j) * c
    return out


_KIND_ORDER = {"EX": 0, "K": 1, "T": 2, "ET": 3}


def _gen_mul(k1: tuple, k2: tuple) -> tuple[PointElement, str]:
    """Product of two nonzero-degree canonical generators with its rule tag."""
    d = add(_gen(k1).degree, _gen(k2).degree)
    if d != (0, 0) and _modulus(d) is None:
        return ZERO, "forced-zero"
    if _KIND_ORDER[k1[0]] > _KIND_ORDER[k2[0]]:
        k1, k2 = k2, k1
    if k2[0] == "T" or k1[0] == "T":
        # Frobenius: x·τ(ι^{-n}) = τ(ρ(x)·ι^{-n})
        t, o = (k2, k1) if k2[0] == "T" else (k1, k2)
        return point_tr(point_res(_gen(o)) * LevelEElement.iota(-t[1])), "frobenius"
    if k1[0] == "EX" and k2[0] == "EX":
        return PointElement.eps_xi(k1[1] + k2[1], k1[2] + k2[2]), "relation"
    if k1[0] == "EX" and k2[0] == "K":
        j, n = k1[1], k1[2]
        m = k2[1]
        if n >= 1:
            return ZERO, "relation"  # ξκ = 0
        if j < m:
            return _gen(("K", m - j)), "divisibility"
        if j == m:
            return PointElement.kappa(), "divisibility"
        return PointElement.eps_xi(j - m, 0, 2), "divisibility"  # εκ = 2ε
    if k1[0] == "EX" and k2[0] == "ET":
        j, n = k1[1], k1[2]
        m, k = k2[1], k2[2]
        if n >= k:
            return ZERO, "relation"
        k -= n
        if j < m:
            return _gen(("ET", m - j, k)), "relation"
        if j == m:
            return _gen(("T", 2 * k + 1)), "relation"
        return ZERO, "frobenius"
    if k1[0] == "K" and k2[0] == "K":
        # ε^{m+m'} times both sides gives κ² = 2κ, and ε acts injectively here
        return _gen(("K", k1[1] + k2[1]), 2), "divisibility"
    if k1[0] == "K" and k2[0] == "ET":
        return ZERO, "divisibility"  # κ·τ(...) = 0 and ε acts injectively
    raise UnspecifiedProduct(f"no rule for {k1} * {k2}")


@lru_cache(maxsize=None)
def _gen_mul_cached(k1: tuple, k2: tuple) -> PointElement:
    return _gen_mul(k1, k2)[0]


def _term_mul(d1: Degree, c1: Coeff, d2: Degree, c2: Coeff) -> PointElement:
    if d1 == (0, 0) and d2 == (0, 0):
        x1, y1 = c1
        x2, y2 = c2
        return PointElement.scalar(x1 * x2, x1 * y2 + x2 * y1 + 2 * y1 * y2)
    if d2 == (0, 0):
        d1, c1, d2, c2 = d2, c2, d1, c1
    if d1 == (0, 0):
        # (x + yg)z with gz = tr(res z)
        z = PointElement.from_dict({d2: c2})
        x, y = c1
        return z * x + point_tr(point_res(z)) * y
    return _gen_mul_cached(_kind(d1), _kind(d2)) * (c1 * c2)


@lru_cache(maxsize=1 << 16)
def point_mul(x: PointElement, y: PointElement) -> PointElement:
    out = ZERO
    for d1, c1 in x.terms:
        for d2, c2 in y.terms:
            out = out + _term_mul(d1, c1, d2, c2)
    return out


def product_rule(d1: Degree, d2: Degree) -> str:
    """The rule tag used for the product of the generators in two degrees."""
    if (0, 0) in (d1, d2):
        return "burnside"
    return _gen_mul(_kind(d1), _kind(d2))[1]


# ---------------------------------------------------------------------------
# H*(EP) = R[ε, ξ, ξ^{-1}] / (2ε, ρ(ε))


def ep_degree(m: int, k: int) -> Degree:
    return (-2 * k, m + 2 * k)


@dataclass(frozen=True)
class EPElement:
    """Sum of c·ε^m ξ^k, keyed by (m, k); coefficients mod 2 once m > 0."""

    terms: tuple[tuple[tuple[int, int], int], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[tuple[int, int], int]) -> "EPElement":
        out = []
        for (m, k) in sorted(d):
            if m < 0:
                raise ValueError("negative powers of ε do not exist in H*(EP)")
            c = d[(m, k)] % 2 if m > 0 else d[(m, k)]
            if c:
                out.append(((m, k), c))
        return cls(tuple(out))

    @classmethod
    def monomial(cls, m: int, k: int, coeff: int = 1) -> "EPElement":
        return cls.from_dict({(m, k): coeff})

    @classmethod
    def scalar(cls, n: int) -> "EPElement":
        return cls.monomial(0, 0, n)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.terms)

    @property
    def degree(self) -> Degree:
        degs = {ep_degree(*mk) for mk, _ in self.terms}
        if len(degs) != 1:
            raise ValueError("element is not homogeneous and nonzero")
        return degs.pop()

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "EPElement | int") -> "EPElement":
        if isinstance(other, int):
            other = EPElement.scalar(other)
        out = self.as_dict()
        for key, c in other.terms:
            out[key] = out.get(key, 0) + c
        return EPElement.from_dict(out)

    __radd__ = __add__

    def __neg__(self) -> "EPElement":
        return self * -1

    def __sub__(self, other: "EPElement | int") -> "EPElement":
        if isinstance(other, int):
            other = EPElement.scalar(other)
        return self + (-other)

    def __mul__(self, other: "EPElement | int") -> "EPElement":
        if isinstance(other, int):
            return EPElement.from_dict({key: c * other for key, c in self.terms})
        return ep_mul(self, other)

    def __rmul__(self, other: int) -> "EPElement":
        return self * other

    def __bool__(self) -> bool:
        return bool(self.terms)


def ep_mul(x: EPElement, y: EPElement) -> EPElement:
    out: dict[tuple[int, int], int] = {}
    for (m1, k1), c1 in x.terms:
        for (m2, k2), c2 in y.terms:
            key = (m1 + m2, k1 + k2)
            out[key] = out.get(key, 0) + c1 * c2
    return EPElement.from_dict(out)


def ep_generator_at(d: Degree) -> tuple[int, int] | None:
    """(m, k) with |ε^m ξ^k| = d, when the G/G group is nonzero."""
    a, b = d
    if a % 2 or a + b < 0:
        return None
    return (a + b, -a // 2)


# ---------------------------------------------------------------------------
# reduced H*(E(A,P)): generators ε^m κ and ε^m τ_{2k+1}, m ∈ Z


def eap_degree(key: tuple) -> Degree:
    if key[0] == "kappa":
        return (0, key[1])
    _, m, k = key
    a = 2 * k + 1
    return (a, -a + m)


def eap_generator_at(d: Degree) -> tuple | None:
    a, b = d
    if a == 0:
        return ("kappa", b)
    if a >= 3 and a % 2 == 1:
        return ("tau", a + b, (a - 1) // 2)
    return None


@dataclass(frozen=True)
class EAPElement:
    """Sum of x·ε^m κ (x ∈ Z) and y·ε^m τ_{2k+1} (y ∈ Z/2)."""

    terms: tuple[tuple[tuple, int], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[tuple, int]) -> "EAPElement":
        out = []
        for key in sorted(d):
            if key[0] == "tau" and key[2] < 1:
                raise ValueError("τ_{2k+1} needs k ≥ 1")
            c = d[key] % 2 if key[0] == "tau" else d[key]
            if c:
                out.append((key, c))
        return cls(tuple(out))

    @classmethod
    def kappa(cls, m: int = 0, coeff: int = 1) -> "EAPElement":
        return cls.from_dict({("kappa", m): coeff})

    @classmethod
    def tau(cls, m: int, k: int, coeff: int = 1) -> "EAPElement":
        """ε^m τ_{2k+1}."""
        return cls.from_dict({("tau", m, k): coeff})

    def as_dict(self) -> dict[tuple, int]:
        return dict(self.terms)

    @property
    def degree(self) -> Degree:
        degs = {eap_degree(key) for key, _ in self.terms}
        if len(degs) != 1:
            raise ValueError("element is not homogeneous and nonzero")
        return degs.pop()

    def is_zero(self) -> bool:
        return not self.terms

    def shift(self, j: int) -> "EAPElement":
        """Multiplication by ε^j (an isomorphism for every integer j)."""
        out = {}
        for key, c in self.terms:
            new = (key[0], key[1] + j) + key[2:]
            out[new] = c
        return EAPElement.from_dict(out)

    def __add__(self, other: "EAPElement") -> "EAPElement":
        out = self.as_dict()
        for key, c in other.terms:
            out[key] = out.get(key, 0) + c
        return EAPElement.from_dict(out)

    def __neg__(self) -> "EAPElement":
        return self * -1

    def __sub__(self, other: "EAPElement") -> "EAPElement":
        return self + (-other)

    def __mul__(self, other: int) -> "EAPElement":
        if not isinstance(other, int):
            return NotImplemented
        return EAPElement.from_dict({key: c * other for key, c in self.terms})

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)


def eap_action(p: PointElement, x: EAPElement) -> EAPElement:
    """The H*(pt)-module action on reduced H*(E(A,P))."""
    out: dict[tuple, int] = {}

    def put(key, c):
        out[key] = out.get(key, 0) + c

    for d, c in p.terms:
        for key, e in x.terms:
            if d == (0, 0):
                # g acts as zero: both values vanish at level G/e
                put(key, c[0] * e)
                continue
            kind = _kind(d)
            tag = kind[0]
            if tag == "EX":
                j, n = kind[1], kind[2]
                if n == 0:
                    put((key[0], key[1] + j) + key[2:], c * e)
                elif key[0] == "tau" and key[2] - n >= 1:
                    put(("tau", key[1] + j, key[2] - n), c * e)
            elif tag == "K" and key[0] == "kappa":
                put(("kappa", key[1] - kind[1]), 2 * c * e)
            # transfers and their ε-divisions act as zero
    return EAPElement.from_dict(out)


# ---------------------------------------------------------------------------
# the maps of the long exact sequence  ψ: EAP → pt,  φ: pt → EP,  δ: EP → EAP


def map_phi(x: PointElement) -> EPElement:
    out = EPElement()
    for d, c in x.terms:
        if d == (0, 0):
            out = out + EPElement.scalar(c[0] + 2 * c[1])
            continue
        kind = _kind(d)
        if kind[0] == "EX":
            out = out + EPElement.monomial(kind[1], kind[2], c)
        elif kind[0] == "T" and kind[1] % 2 == 0:
            out = out + EPElement.monomial(0, -kind[1] // 2, 2 * c)
    return out


def map_psi(x: EAPElement) -> PointElement:
    out = ZERO
    for key, c in x.terms:
        m = key[1]
        if key[0] == "kappa":
            if m < 0:
                out = out + _gen(("K", -m), c)
            elif m == 0:
                out = out + PointElement.kappa() * c
            else:
                out = out + PointElement.eps_xi(m, 0, 2 * c)
        else:
            k = key[2]
            if m < 0:
                out = out + _gen(("ET", -m, k), c)
            elif m == 0:
                out = out + _gen(("T", 2 * k + 1), c)
    return out


def map_delta(x: EPElement) -> EAPElement:
    out = EAPElement()
    for (m, n), c in x.terms:
        if n <= -1:
            out = out + EAPElement.tau(m + 1, -n, c)
    return out


# ---------------------------------------------------------------------------
# exactness of the long exact sequence at level G/G


def _point_basis(d: Degree) -> tuple[list[PointElement], list[int]]:
    """Basis elements and their orders (0 = infinite) of P^d at G/G."""
    if d == (0, 0):
        return [ONE, PointElement.g()], [0, 0]
    mod = _modulus(d)
    if mod is None:
        return [], []
    return [PointElement.from_dict({d: 1})], [mod]


def _point_coords(x: PointElement, d: Degree) -> list[int]:
    if d == (0, 0):
        return list(x.coeff(d))
    if _modulus(d) is None:
        return []
    return [x.coeff(d)]


def _ep_basis(d: Degree) -> tuple[list[EPElement], list[int]]:
    mk = ep_generator_at(d)
    if mk is None:
        return [], []
    return [EPElement.monomial(*mk)], [2 if mk[0] > 0 else 0]


def _ep_coords(x: EPElement, d: Degree) -> list[int]:
    mk = ep_generator_at(d)
    return [] if mk is None else [x.as_dict().get(mk, 0)]


def _eap_basis(d: Degree) -> tuple[list[EAPElement], list[int]]:
    key = eap_generator_at(d)
    if key is None:
        return [], []
    return [EAPElement.from_dict({key: 1})], [2 if key[0] == "tau" else 0]


def _eap_coords(x: EAPElement, d: Degree) -> list[int]:
    key = eap_generator_at(d)
    return [] if key is None else [x.as_dict().get(key, 0)]


def _rel_cols(orders: list[int]) -> list[list[int]]:
    n = len(orders)
    return [[o if i == j else 0 for i in range(n)] for j, o in enumerate(orders) if o]


def is_exact(f_cols: list[list[int]], mid: list[int], g_cols: list[list[int]], tgt: list[int]) -> tuple[bool, bool]:
    """Exactness of A --f--> B --g--> C at B, groups given by cyclic orders.

    ``f_cols``/``g_cols`` are the images of basis vectors.  Returns
    (g∘f = 0, ker g ⊆ im f).
    """
    nb, nc = len(mid), len(tgt)
    rel_b = _rel_cols(mid)
    rel_c = _rel_cols(tgt)

    def zero_in(v, rels):
        return in_span(from_columns(rels, len(v)), v)

    def apply_g(v):
        out = [0] * nc
        for coeff, col in zip(v, g_cols):
            for i in range(nc):
                out[i] += coeff * col[i]
        return out

    comp = all(zero_in(apply_g(col), rel_c) for col in f_cols)
    if nb == 0:
        return comp, True
    gmat = from_columns(g_cols, nc) if nc else []
    if nc:
        big = hstack(gmat, from_columns(rel_c, nc) if rel_c else [], rows=nc)
        kern = kernel_basis(big, nb + len(rel_c))[:nb]
        kgens = [list(c) for c in zip(*kern)] if kern and kern[0] else []
    else:
        kgens = [[int(i == j) for i in range(nb)] for j in range(nb)]
    span = from_columns(list(f_cols) + rel_b, nb)
    contained = all(in_span(span, v) for v in kgens)
    return comp, contained


def _eap_shift(d: Degree) -> Degree:
    return (d[0] + 1, d[1])


def les_point_check(box: int | tuple[int, int, int, int] = 10) -> Report:
    """Exactness of EAP → P → EP → EAP[+1] at every degree of the box."""
    if isinstance(box, int):
        box = (-box, box, -box, box)
    amin, amax, bmin, bmax = box
    rep = Report("les")
    for a in range(amin, amax + 1):
        for b in range(bmin, bmax + 1):
            rep.merge(_les_at((a, b)))
    return rep


def les_maps_at(d: Degree) -> dict:
    """Bases, orders and map columns of ψ, φ and δ around degree d."""
    eap_b, eap_o = _eap_basis(d)
    pt_b, pt_o = _point_basis(d)
    ep_b, ep_o = _ep_basis(d)
    d1 = _eap_shift(d)
    eap1_b, eap1_o = _eap_basis(d1)
    pt_prev_ep_b, pt_prev_ep_o = _ep_basis((d[0] - 1, d[1]))
    return {
        "psi": [_point_coords(map_psi(x), d) for x in eap_b],
        "phi": [_ep_coords(map_phi(x), d) for x in pt_b],
        "delta": [_eap_coords(map_delta(x), d1) for x in ep_b],
        "delta_prev": [_eap_coords(map_delta(x), d) for x in pt_prev_ep_b],
        "psi_next": [_point_coords(map_psi(x), d1) for x in eap1_b],
        "orders": {
            "eap": eap_o,
            "point": pt_o,
            "ep": ep_o,
            "eap_next": eap1_o,
            "point_next": _point_basis(d1)[1],
            "ep_prev": pt_prev_ep_o,
        },
    }


def _les_at(d: Degree) -> Report:
    rep = Report("les")
    m = les_maps_at(d)
    o = m["orders"]
    for label, f, mid, g, tgt in (
        ("at H*(pt)", m["psi"], o["point"], m["phi"], o["ep"]),
        ("at H*(EP)", m["phi"], o["ep"], m["delta"], o["eap_next"]),
        ("at H*(E(A,P))", m["delta_prev"], o["eap"], m["psi"], o["point"]),
    ):
        rep.checked += 1
        comp, contained = is_exact(f, mid, g, tgt)
        if not comp:
            rep.fail(f"degree {d}: composite nonzero {label}")
        if not contained:
            rep.fail(f"degree {d}: kernel not in image {label}")
    # level G/e: φ is the identity there, so it must commute with restriction
    for x in _point_basis(d)[0]:
        rep.checked += 1
        if ep_res(map_phi(x)) != point_res(x):
            rep.fail(f"degree {d}: φ does not commute with restriction")
    return rep


def ep_res(x: EPElement) -> LevelEElement:
    out = LevelEElement()
    for (m, k), c in x.terms:
        if m == 0:
            out = out + LevelEElement.iota(2 * k, c)
    return out


# ---------------------------------------------------------------------------
# generator iteration


def point_generators(box: int) -> Iterator[PointElement]:
    """Canonical generators (and g) with |a|, |b| ≤ box."""
    for a in range(-box, box + 1):
        for b in range(-box, box + 1):
            if (a, b) == (0, 0):
                yield ONE
                yield PointElement.g()
                continue
            if generator_at((a, b)) is not None:
                yield PointElement.from_dict({(a, b): 1})


def in_box(x: PointElement, box: int) -> bool:
    return all(abs(a) <= box and abs(b) <= box for (a, b), _ in x.terms)
