"""Z/2 Mackey functors over finitely generated abelian groups.

A Mackey functor is stored as two presented abelian groups (the values at
G/G and G/e) together with integer matrices for restriction, transfer and
the Weyl action of t.  Matrices act on column vectors of generator
coefficients: ``res`` is ``level_Ge.ngens x level_GG.ngens`` and so on.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .intlinalg import (
    Matrix,
    diagonal,
    from_columns,
    hstack,
    identity,
    inverse_unimodular,
    kernel_basis,
    lattice_basis,
    matmul,
    matvec,
    smith_normal_form,
    solve,
    transpose,
    zeros,
)


class AbGroupPresentation:
    """The abelian group ``Z^ngens / rowspan(relations)``.

    The Smith form of the relations is computed once; ``to_canonical``
    converts generator coefficients into coordinates on the invariant
    factor decomposition (unit factors dropped, torsion coordinates reduced).
    """

    __slots__ = ("ngens", "relations", "_u", "_uinv", "_diag", "_keep", "invariant_factors")

    def __init__(self, ngens: int, relations: Iterable[Sequence[int]] = ()):
        self.ngens = ngens
        self.relations = tuple(tuple(r) for r in relations if any(r))
        if all(len(r) == ngens for r in self.relations) is False:
            raise ValueError("relation length does not match generator count")
        if _is_canonical_diagonal(ngens, self.relations):
            self._u = self._uinv = identity(ngens)
            diag = [0] * ngens
            for i, r in enumerate(self.relations):
                diag[i] = r[i]
        else:
            u, d, _ = smith_normal_form(transpose(self.relations, ngens), len(self.relations))
            self._u = u
            self._uinv = inverse_unimodular(u)
            dg = diagonal(d)
            diag = [dg[i] if i < len(dg) else 0 for i in range(ngens)]
        self._diag = diag
        self._keep = [i for i, x in enumerate(diag) if x != 1]
        self.invariant_factors = tuple(diag[i] for i in self._keep)

    @classmethod
    def from_factors(cls, factors: Sequence[int]) -> "AbGroupPresentation":
        n = len(factors)
        return cls(n, [[f if j == i else 0 for j in range(n)] for i, f in enumerate(factors) if f])

    @property
    def rank(self) -> int:
        return sum(1 for f in self.invariant_factors if f == 0)

    @property
    def torsion_order(self) -> int:
        out = 1
        for f in self.invariant_factors:
            if f:
                out *= f
        return out

    def relation_columns(self) -> Matrix:
        return transpose(self.relations, self.ngens)

    def to_canonical(self, x: Sequence[int]) -> tuple[int, ...]:
        y = matvec(self._u, x)
        out = []
        for i in self._keep:
            d = self._diag[i]
            out.append(y[i] % d if d else y[i])
        return tuple(out)

    def from_canonical(self, y: Sequence[int]) -> list[int]:
        z = [0] * self.ngens
        for t, i in enumerate(self._keep):
            z[i] = y[t]
        return matvec(self._uinv, z)

    def is_zero(self, x: Sequence[int]) -> bool:
        return not any(self.to_canonical(x))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AbGroupPresentation)
            and self.ngens == other.ngens
            and self.relations == other.relations
        )

    def __hash__(self) -> int:
        return hash((self.ngens, self.relations))

    def __repr__(self) -> str:
        return f"AbGroupPresentation({self.ngens}, {list(map(list, self.relations))})"


def _is_canonical_diagonal(n: int, rels: tuple[tuple[int, ...], ...]) -> bool:
    # rows d_i * e_i for i < len(rels), with 1 < d_1 | d_2 | ...
    prev = None
    for i, r in enumerate(rels):
        if i >= n or any(x for j, x in enumerate(r) if j != i) or r[i] <= 1:
            return False
        if prev is not None and r[i] % prev:
            return False
        prev = r[i]
    return True


def _apply(mat: Sequence[Sequence[int]], vec: Sequence[int], out_dim: int) -> list[int]:
    if out_dim == 0:
        return []
    return matvec(mat, vec)


def _unit(n: int, i: int) -> list[int]:
    return [int(j == i) for j in range(n)]


def _compose(a: Matrix, b: Matrix, rows: int, inner: int, cols: int) -> Matrix:
    if rows == 0:
        return []
    if cols == 0 or inner == 0:
        return zeros(rows, cols)
    return matmul(a, b, inner)


def _map_is_zero(mat: Matrix, src: AbGroupPresentation, tgt: AbGroupPresentation) -> bool:
    return all(tgt.is_zero(_apply(mat, _unit(src.ngens, i), tgt.ngens)) for i in range(src.ngens))


def _maps_agree(a: Matrix, b: Matrix, src: AbGroupPresentation, tgt: AbGroupPresentation) -> bool:
    for i in range(src.ngens):
        e = _unit(src.ngens, i)
        x = _apply(a, e, tgt.ngens)
        y = _apply(b, e, tgt.ngens)
        if not tgt.is_zero([p - q for p, q in zip(x, y)]):
            return False
    return True


def _well_defined(mat: Matrix, src: AbGroupPresentation, tgt: AbGroupPresentation) -> bool:
    return all(tgt.is_zero(_apply(mat, r, tgt.ngens)) for r in src.relations)


def _mat(rows: int, cols: int, data: Sequence[Sequence[int]] | None = None) -> Matrix:
    if data is None:
        return zeros(rows, cols)
    m = [list(r) for r in data]
    if len(m) != rows or any(len(r) != cols for r in m):
        raise ValueError(f"expected a {rows}x{cols} matrix, got {m!r}")
    return m


@dataclass(frozen=True, eq=False)
class MackeyFunctor:
    level_GG: AbGroupPresentation
    level_Ge: AbGroupPresentation
    res: Matrix
    tr: Matrix
    weyl: Matrix

    def __post_init__(self):
        gg, ge = self.level_GG.ngens, self.level_Ge.ngens
        object.__setattr__(self, "res", _mat(ge, gg, self.res))
        object.__setattr__(self, "tr", _mat(gg, ge, self.tr))
        object.__setattr__(self, "weyl", _mat(ge, ge, self.weyl))

    @classmethod
    def build(cls, gg: Sequence[int], ge: Sequence[int], res, tr, weyl) -> "MackeyFunctor":
        """Construct from invariant-factor lists for the two levels."""
        return cls(AbGroupPresentation.from_factors(gg), AbGroupPresentation.from_factors(ge), res, tr, weyl)

    @cached_property
    def canonical(self) -> "MackeyFunctor":
        """Isomorphic copy whose levels are in invariant-factor coordinates."""
        gg, ge = self.level_GG, self.level_Ge
        cgg = AbGroupPresentation.from_factors(gg.invariant_factors)
        cge = AbGroupPresentation.from_factors(ge.invariant_factors)

        def transport(mat, src, tgt, csrc, ctgt):
            cols = []
            for i in range(csrc.ngens):
                x = src.from_canonical(_unit(csrc.ngens, i))
                cols.append(list(tgt.to_canonical(_apply(mat, x, tgt.ngens))))
            return from_columns(cols, ctgt.ngens) if cols else _mat(ctgt.ngens, 0)

        return MackeyFunctor(
            cgg,
            cge,
            transport(self.res, gg, ge, cgg, cge),
            transport(self.tr, ge, gg, cge, cgg),
            transport(self.weyl, ge, ge, cge, cge),
        )

    def is_zero(self) -> bool:
        return not self.level_GG.invariant_factors and not self.level_Ge.invariant_factors

    def to_json(self) -> dict:
        c = self.canonical
        return {
            "levelGG": list(c.level_GG.invariant_factors),
            "levelGe": list(c.level_Ge.invariant_factors),
            "res": c.res,
            "tr": c.tr,
            "weyl": c.weyl,
        }

    @classmethod
    def from_json(cls, data: dict) -> "MackeyFunctor":
        return cls.build(data["levelGG"], data["levelGe"], data["res"], data["tr"], data["weyl"])


ZERO_FUNCTOR = MackeyFunctor(AbGroupPresentation(0), AbGroupPresentation(0), [], [], [])


def direct_sum(*functors: MackeyFunctor) -> MackeyFunctor:
    if not functors:
        return ZERO_FUNCTOR

    def block(mats_dims):
        rows = sum(r for _, r, _ in mats_dims)
        cols = sum(c for _, _, c in mats_dims)
        out = zeros(rows, cols)
        r0 = c0 = 0
        for m, r, c in mats_dims:
            for i in range(r):
                for j in range(c):
                    out[r0 + i][c0 + j] = m[i][j]
            r0 += r
            c0 += c
        return out

    def pres(levels):
        n = sum(p.ngens for p in levels)
        rels = []
        off = 0
        for p in levels:
            for r in p.relations:
                rels.append([0] * off + list(r) + [0] * (n - off - p.ngens))
            off += p.ngens
        return AbGroupPresentation(n, rels)

    gg = [f.level_GG.ngens for f in functors]
    ge = [f.level_Ge.ngens for f in functors]
    return MackeyFunctor(
        pres([f.level_GG for f in functors]),
        pres([f.level_Ge for f in functors]),
        block([(f.res, e, g) for f, g, e in zip(functors, gg, ge)]),
        block([(f.tr, g, e) for f, g, e in zip(functors, gg, ge)]),
        block([(f.weyl, e, e) for f, e in zip(functors, ge)]),
    )


def check_axioms(m: MackeyFunctor) -> list[str]:
    """Every violated Mackey functor identity, as a list of messages."""
    gg, ge = m.level_GG, m.level_Ge
    n = ge.ngens
    problems = []
    for name, mat, src, tgt in (
        ("res", m.res, gg, ge),
        ("tr", m.tr, ge, gg),
        ("weyl", m.weyl, ge, ge),
    ):
        if not _well_defined(mat, src, tgt):
            problems.append(f"{name} is not well defined on the relations")
    ww = _compose(m.weyl, m.weyl, n, n, n)
    if not _maps_agree(ww, identity(n), ge, ge):
        problems.append("weyl∘weyl ≠ 1")
    wr = _compose(m.weyl, m.res, n, n, gg.ngens)
    if not _maps_agree(wr, m.res, gg, ge):
        problems.append("weyl∘res ≠ res")
    tw = _compose(m.tr, m.weyl, gg.ngens, n, n)
    if not _maps_agree(tw, m.tr, ge, gg):
        problems.append("tr∘weyl ≠ tr")
    rt = _compose(m.res, m.tr, n, gg.ngens, n)
    one_plus_w = [[int(i == j) + m.weyl[i][j] for j in range(n)] for i in range(n)]
    if not _maps_agree(rt, one_plus_w, ge, ge):
        problems.append("res∘tr ≠ 1+weyl")
    return problems


@dataclass(frozen=True)
class MackeyMorphism:
    source: MackeyFunctor
    target: MackeyFunctor
    f_GG: Matrix
    f_Ge: Matrix

    def __post_init__(self):
        s, t = self.source, self.target
        object.__setattr__(self, "f_GG", _mat(t.level_GG.ngens, s.level_GG.ngens, self.f_GG))
        object.__setattr__(self, "f_Ge", _mat(t.level_Ge.ngens, s.level_Ge.ngens, self.f_Ge))

    def check(self) -> list[str]:
        s, t = self.source, self.target
        sgg, sge, tgg, tge = s.level_GG, s.level_Ge, t.level_GG, t.level_Ge
        problems = []
        if not _well_defined(self.f_GG, sgg, tgg) or not _well_defined(self.f_Ge, sge, tge):
            problems.append("morphism not well defined on the relations")
        if not _maps_agree(
            _compose(self.f_Ge, s.res, tge.ngens, sge.ngens, sgg.ngens),
            _compose(t.res, self.f_GG, tge.ngens, tgg.ngens, sgg.ngens),
            sgg,
            tge,
        ):
            problems.append("does not commute with res")
        if not _maps_agree(
            _compose(self.f_GG, s.tr, tgg.ngens, sgg.ngens, sge.ngens),
            _compose(t.tr, self.f_Ge, tgg.ngens, tge.ngens, sge.ngens),
            sge,
            tgg,
        ):
            problems.append("does not commute with tr")
        if not _maps_agree(
            _compose(self.f_Ge, s.weyl, tge.ngens, sge.ngens, sge.ngens),
            _compose(t.weyl, self.f_Ge, tge.ngens, tge.ngens, sge.ngens),
            sge,
            tge,
        ):
            problems.append("does not commute with weyl")
        return problems


@dataclass(frozen=True)
class MackeyCochainComplex:
    """Cochain complex of Mackey functors in degrees ``lo .. lo+len(terms)-1``.

    ``differentials[i]`` goes from ``terms[i]`` to ``terms[i+1]``.
    ``lambda_shift`` records a Λ-offset: index k reports RO(G) degree
    ``(k, lambda_shift)``.
    """

    lo: int
    terms: tuple[MackeyFunctor, ...]
    differentials: tuple[MackeyMorphism, ...]
    lambda_shift: int = 0

    def __post_init__(self):
        if len(self.differentials) != max(len(self.terms) - 1, 0):
            raise ValueError("need one differential per adjacent pair of terms")

    @property
    def degrees(self) -> range:
        return range(self.lo, self.lo + len(self.terms))

    def term(self, k: int) -> MackeyFunctor:
        if k in self.degrees:
            return self.terms[k - self.lo]
        return ZERO_FUNCTOR

    def differential(self, k: int) -> MackeyMorphism:
        """The differential leaving degree k (zero outside the range)."""
        if k in self.degrees and k + 1 in self.degrees:
            return self.differentials[k - self.lo]
        s, t = self.term(k), self.term(k + 1)
        return MackeyMorphism(s, t, None, None)

    def check(self) -> list[str]:
        problems = []
        for i, d in enumerate(self.differentials):
            for msg in d.check():
                problems.append(f"d^{self.lo + i}: {msg}")
        for k in self.degrees:
            d0, d1 = self.differential(k), self.differential(k + 1)
            a, b, c = self.term(k), self.term(k + 1), self.term(k + 2)
            for lvl, f0, f1, sa, sb, sc in (
                ("G/G", d0.f_GG, d1.f_GG, a.level_GG, b.level_GG, c.level_GG),
                ("G/e", d0.f_Ge, d1.f_Ge, a.level_Ge, b.level_Ge, c.level_Ge),
            ):
                comp = _compose(f1, f0, sc.ngens, sb.ngens, sa.ngens)
                if not _map_is_zero(comp, sa, sc):
                    problems.append(f"d∘d ≠ 0 at degree {k} level {lvl}")
        return problems

    def padded(self, below: int = 1, above: int = 1) -> "MackeyCochainComplex":
        z = ZERO_FUNCTOR
        terms = (z,) * below + self.terms + (z,) * above
        diffs = []
        for k in range(self.lo - below, self.lo + len(self.terms) + above - 1):
            diffs.append(self.differential(k))
        return MackeyCochainComplex(self.lo - below, terms, tuple(diffs), self.lambda_shift)


@dataclass
class _Subquotient:
    basis: Matrix  # ambient x r, columns span the cocycles
    group: AbGroupPresentation  # over basis coordinates

    def lift(self, y: Sequence[int]) -> list[int]:
        coords = self.group.from_canonical(y)
        return _apply(self.basis, coords, len(self.basis)) if coords else [0] * len(self.basis)

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        r = self.group.ngens
        coords = solve(self.basis, v, r) if r else ([] if not any(v) else None)
        if coords is None:
            raise ArithmeticError("vector is not a cocycle")
        return self.group.to_canonical(coords)


def _subquotient(
    here: AbGroupPresentation,
    d_out: Matrix,
    there: AbGroupPresentation,
    d_in: Matrix,
    prev: AbGroupPresentation,
) -> _Subquotient:
    n = here.ngens
    if there.ngens == 0:
        kbasis = identity(n)
    else:
        big = hstack(d_out, [[-x for x in row] for row in there.relation_columns()], rows=there.ngens)
        kern = kernel_basis(big, n + len(there.relations))
        gens = [row for row in kern[:n]]
        kbasis = lattice_basis(gens, n) if gens and gens[0] else [[] for _ in range(n)]
    r = len(kbasis[0]) if kbasis else 0
    img = [list(rel) for rel in here.relations]
    for j in range(prev.ngens):
        img.append(_apply(d_in, _unit(prev.ngens, j), n))
    rels = []
    for v in img:
        if not any(v):
            continue
        coords = solve(kbasis, v, r)
        if coords is None:
            raise ArithmeticError("image not contained in kernel: d∘d ≠ 0")
        rels.append(coords)
    return _Subquotient(kbasis, AbGroupPresentation(r, rels))


def cohomology_at(cx: MackeyCochainComplex, k: int) -> MackeyFunctor:
    """Kernel mod image at degree k, at both levels, with induced structure maps."""
    m = cx.term(k)
    d_out, d_in = cx.differential(k), cx.differential(k - 1)
    nxt, prv = cx.term(k + 1), cx.term(k - 1)
    sq_gg = _subquotient(m.level_GG, d_out.f_GG, nxt.level_GG, d_in.f_GG, prv.level_GG)
    sq_ge = _subquotient(m.level_Ge, d_out.f_Ge, nxt.level_Ge, d_in.f_Ge, prv.level_Ge)
    gg = AbGroupPresentation.from_factors(sq_gg.group.invariant_factors)
    ge = AbGroupPresentation.from_factors(sq_ge.group.invariant_factors)

    def induced(mat, src: _Subquotient, tgt: _Subquotient, src_n: int, tgt_amb: int, tgt_n: int):
        cols = []
        for i in range(src_n):
            v = src.lift(_unit(src_n, i))
            cols.append(list(tgt.project(_apply(mat, v, tgt_amb))))
        return from_columns(cols, tgt_n) if cols else _mat(tgt_n, 0)

    ngg, nge = gg.ngens, ge.ngens
    return MackeyFunctor(
        gg,
        ge,
        induced(m.res, sq_gg, sq_ge, ngg, m.level_Ge.ngens, nge),
        induced(m.tr, sq_ge, sq_gg, nge, m.level_GG.ngens, ngg),
        induced(m.weyl, sq_ge, sq_ge, nge, m.level_Ge.ngens, nge),
    )


# ---------------------------------------------------------------------------
# catalog and classification


class Catalog(Enum):
    ZERO = ("0", "0")
    A = ("A", "A")
    A_E = ("A_e", "A_e")
    BRACKET_Z = ("<Z>", "⟨Z⟩")
    BRACKET_Z2 = ("<Z/2>", "⟨Z/2⟩")
    L = ("L", "L")
    L_MINUS = ("L-", "L₋")
    R = ("R", "R")
    R_MINUS = ("R-", "R₋")

    @property
    def ascii(self) -> str:
        return self.value[0]

    @property
    def unicode(self) -> str:
        return self.value[1]

    def label(self, ascii: bool = True) -> str:
        return self.ascii if ascii else self.unicode

    @classmethod
    def parse(cls, text: str) -> "Catalog":
        for c in cls:
            if text in (c.ascii, c.unicode, c.name):
                return c
        raise ValueError(f"unknown Mackey functor name {text!r}")


def catalog_functor(name: Catalog) -> MackeyFunctor:
    b = MackeyFunctor.build
    if name is Catalog.ZERO:
        return ZERO_FUNCTOR
    if name is Catalog.A:
        # A(G) on {1, g}; res(a + bg) = a + 2b, tr(n) = ng
        return b([0, 0], [0], [[1, 2]], [[0], [1]], [[1]])
    if name is Catalog.A_E:
        # Z[G] on {1, t}
        return b([0], [0, 0], [[1], [1]], [[1, 1]], [[0, 1], [1, 0]])
    if name is Catalog.BRACKET_Z:
        return b([0], [], None, None, None)
    if name is Catalog.BRACKET_Z2:
        return b([2], [], None, None, None)
    if name is Catalog.L:
        return b([0], [0], [[2]], [[1]], [[1]])
    if name is Catalog.R:
        return b([0], [0], [[1]], [[2]], [[1]])
    if name is Catalog.L_MINUS:
        return b([2], [0], [[0]], [[1]], [[-1]])
    if name is Catalog.R_MINUS:
        return b([], [0], None, None, [[-1]])
    raise ValueError(name)


def _image_and_coker(mat: Matrix, src: AbGroupPresentation, tgt: AbGroupPresentation):
    n, p = src.ngens, tgt.ngens
    coker = AbGroupPresentation(p, list(tgt.relations) + [_apply(mat, _unit(n, j), p) for j in range(n)])
    if n == 0:
        return (), coker.invariant_factors
    if p == 0:
        kern = identity(n)
    else:
        big = hstack(mat, [[-x for x in row] for row in tgt.relation_columns()], rows=p)
        kern = kernel_basis(big, n + len(tgt.relations))[:n]
    image = AbGroupPresentation(n, transpose(kern, n) if kern and kern[0] else [])
    return image.invariant_factors, coker.invariant_factors


def fingerprint(m: MackeyFunctor) -> tuple:
    """Isomorphism invariants used to recognise catalog functors."""
    c = m.canonical
    gg, ge = c.level_GG, c.level_Ge
    n = ge.ngens
    plus = [[int(i == j) + c.weyl[i][j] for j in range(n)] for i in range(n)]
    minus = [[int(i == j) - c.weyl[i][j] for j in range(n)] for i in range(n)]
    return (
        gg.invariant_factors,
        ge.invariant_factors,
        _image_and_coker(c.res, gg, ge),
        _image_and_coker(c.tr, ge, gg),
        _image_and_coker(plus, ge, ge),
        _image_and_coker(minus, ge, ge),
    )


@lru_cache(maxsize=None)
def _catalog_fingerprints() -> dict[tuple, Catalog]:
    return {fingerprint(catalog_functor(c)): c for c in Catalog}


def _size(m: MackeyFunctor) -> tuple[int, int, int, int]:
    gg, ge = m.level_GG, m.level_Ge
    return gg.rank, ge.rank, gg.torsion_order, ge.torsion_order


def classify(m: MackeyFunctor) -> Catalog | tuple[Catalog, ...] | None:
    """Name of ``m`` in the catalog, a sorted tuple of names for a direct sum,
    or None when no (unique) match exists."""
    fp = fingerprint(m)
    single = _catalog_fingerprints().get(fp)
    if single is not None:
        return single
    names = [c for c in Catalog if c is not Catalog.ZERO]
    sizes = [_size(catalog_functor(c)) for c in names]
    matches = []

    def search(start: int, rest: tuple[int, int, int, int], combo: list[Catalog]) -> None:
        if rest == (0, 0, 1, 1):
            if len(combo) >= 2 and fingerprint(direct_sum(*(catalog_functor(c) for c in combo))) == fp:
                matches.append(tuple(combo))
            return
        for i in range(start, len(names)):
            r0, r1, t0, t1 = sizes[i]
            if r0 > rest[0] or r1 > rest[1] or rest[2] % t0 or rest[3] % t1:
                continue
            # every catalog functor is nonzero, so each step shrinks ``rest``
            search(i, (rest[0] - r0, rest[1] - r1, rest[2] // t0, rest[3] // t1), combo + [names[i]])

    search(0, _size(m.canonical), [])
    if len(matches) == 1:
        return tuple(sorted(matches[0], key=lambda c: list(Catalog).index(c)))
    return None
