"""Cellular cochain complexes of finite skeleta of EP = S(Λ^∞).

Each free cell contributes a copy of A_e; the differentials are
multiplication by 1 - t and 1 + t at level G/e and 0 or 2 at level G/G.
Cohomology is computed by Smith normal form and compared with the
closed-form tables of :mod:`equicohom.point`.
"""

from __future__ import annotations

from enum import Enum

from .mackey import (
    Catalog,
    MackeyCochainComplex,
    MackeyMorphism,
    catalog_functor,
    classify,
    cohomology_at,
)
from .point import ep_group_at
from .report import Report


class Twist(Enum):
    INTEGER = "integer"
    LAMBDA = "lambda"


class UnstableRange(ValueError):
    """Requested degrees reach the top cell, where the truncation is not stable."""


_ONE_MINUS_T = [[1, -1], [-1, 1]]
_ONE_PLUS_T = [[1, 1], [1, 1]]


def _diff(minus: bool) -> MackeyMorphism:
    ae = catalog_functor(Catalog.A_E)
    if minus:
        return MackeyMorphism(ae, ae, [[0]], _ONE_MINUS_T)
    return MackeyMorphism(ae, ae, [[2]], _ONE_PLUS_T)


def sphere_antipodal_complex(n: int, twist: Twist | str = Twist.INTEGER) -> MackeyCochainComplex:
    """Cochains on the n-cell skeleton, untwisted or viewed as a G-CW(Λ) complex.

    The untwisted complex sits in degrees 0..n-1; the twisted one in degrees
    -1..n-2, where index k stands for the RO(G) degree k + Λ.
    """
    if n < 1:
        raise ValueError("need at least one cell")
    twist = Twist(twist)
    ae = catalog_functor(Catalog.A_E)
    terms = (ae,) * n
    if twist is Twist.INTEGER:
        diffs = tuple(_diff(minus=(k % 2 == 0)) for k in range(n - 1))
        return MackeyCochainComplex(0, terms, diffs)
    diffs = tuple(_diff(minus=(k % 2 == 1)) for k in range(n - 1))
    return MackeyCochainComplex(-1, terms, diffs, lambda_shift=1)


def top_degree(cx: MackeyCochainComplex) -> int:
    return cx.lo + len(cx.terms) - 1


def verify_ep_table(n: int, degrees: range | None = None, twist: Twist | str = Twist.INTEGER) -> Report:
    """Compare classified cohomology with the closed-form EP table."""
    twist = Twist(twist)
    cx = sphere_antipodal_complex(n, twist)
    top = top_degree(cx)
    if degrees is None:
        degrees = range(cx.lo, top)
    if degrees and max(degrees) >= top:
        raise UnstableRange(f"degree {max(degrees)} reaches the top cell {top} of the {n}-cell skeleton")
    rep = Report(f"ep-chain/{twist.value}", details={"n": n, "values": {}})
    for a in degrees:
        h = cohomology_at(cx, a)
        got = classify(h)
        want = ep_group_at((a, cx.lambda_shift))
        rep.checked += 1
        rep.details["values"][a] = got.ascii if isinstance(got, Catalog) else str(got)
        if got != want:
            rep.fail(f"{twist.value} a={a}: computed {got}, table says {want}")
    return rep


def augmented_complex(n: int) -> MackeyCochainComplex:
    """Untwisted complex with the dual augmentation R -> A_e in degree -1."""
    cx = sphere_antipodal_complex(n)
    r = catalog_functor(Catalog.R)
    aug = MackeyMorphism(r, cx.terms[0], [[1]], [[1], [1]])
    return MackeyCochainComplex(-1, (r,) + cx.terms, (aug,) + cx.differentials)


def level_e_crosscheck(n: int) -> Report:
    """Level G/e cohomology is that of the (n-1)-sphere; the augmented complex
    is acyclic below the top degree."""
    if n < 2:
        raise ValueError("need at least two cells")
    rep = Report("ep-chain/level-e", details={"n": n})
    cx = sphere_antipodal_complex(n)
    for k in range(-1, n + 1):
        h = cohomology_at(cx, k)
        want = (0,) if k in (0, n - 1) else ()
        rep.checked += 1
        if h.level_Ge.invariant_factors != want:
            rep.fail(f"degree {k}: level G/e is {h.level_Ge.invariant_factors}, expected {want}")
    aug = augmented_complex(n)
    for k in range(-1, n - 1):
        h = cohomology_at(aug, k)
        rep.checked += 1
        if h.level_Ge.invariant_factors:
            rep.fail(f"augmented degree {k}: level G/e not acyclic ({h.level_Ge.invariant_factors})")
    return rep


def stable_value(a: int, twist: Twist | str = Twist.INTEGER, n_max: int = 24) -> tuple[int, Catalog | None]:
    """Smallest n from which the classification at degree a stops changing
    (within n_max cells), and that value."""
    twist = Twist(twist)
    values = []
    for n in range(2, n_max + 1):
        cx = sphere_antipodal_complex(n, twist)
        if a < top_degree(cx):
            values.append((n, classify(cohomology_at(cx, a))))
    last = values[-1][1]
    start = values[-1][0]
    for n, v in reversed(values):
        if v != last:
            break
        start = n
    return start, last
