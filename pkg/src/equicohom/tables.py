"""Text and CSV grids of the RO(G)-graded tables.

The class in degree a + bΛ is placed at column a, row b, with b decreasing
down the page.  Group tables print catalog names (0 for the zero functor);
generator tables print the canonical generator and ``.`` where the group
vanishes.
"""

from __future__ import annotations

import csv
import io
import os

from .expr import format_ep, format_eap, point_term_name, to_unicode
from .mackey import Catalog
from .point import (
    EAPElement,
    EPElement,
    eap_generator_at,
    eap_group_at,
    ep_generator_at,
    ep_group_at,
    generator_at,
    point_group_at,
)

DEFAULT_BOUNDS = (-7, 7, -7, 7)
BOUNDS_ENV = "EQUICOHOM_BOUNDS"


def _point_gen(d) -> str | None:
    if d == (0, 0):
        return "1"
    return point_term_name(d) if generator_at(d) is not None else None


def _ep_gen(d) -> str | None:
    mk = ep_generator_at(d)
    return None if mk is None else format_ep(EPElement.monomial(*mk))


def _eap_gen(d) -> str | None:
    key = eap_generator_at(d)
    return None if key is None else format_eap(EAPElement.from_dict({key: 1}))


FIGURES = {
    "fig1": ("H^*(pt; A)", "group", point_group_at),
    "fig2": ("generators of H^*(pt; A)", "gen", _point_gen),
    "fig3": ("H^*(EP)", "group", ep_group_at),
    "fig4": ("generators of H^*(EP)", "gen", _ep_gen),
    "fig5": ("reduced H^*(E(A,P))", "group", eap_group_at),
    "fig6": ("generators of reduced H^*(E(A,P))", "gen", _eap_gen),
}


def parse_bounds(text: str) -> tuple[int, int, int, int]:
    parts = [int(x) for x in text.split(",")]
    if len(parts) != 4:
        raise ValueError("bounds are amin,amax,bmin,bmax")
    return tuple(parts)  # type: ignore[return-value]


def default_bounds() -> tuple[int, int, int, int]:
    env = os.environ.get(BOUNDS_ENV)
    return parse_bounds(env) if env else DEFAULT_BOUNDS


def grid(which: str, bounds: tuple[int, int, int, int] | None = None, ascii: bool = True) -> list[list[str]]:
    """Header row of a-values, then one row per b (descending) led by b."""
    if which not in FIGURES:
        raise KeyError(which)
    _, kind, fn = FIGURES[which]
    amin, amax, bmin, bmax = bounds or default_bounds()
    cols = list(range(amin, amax + 1))
    rows = [["b\\a"] + [str(a) for a in cols]]
    if not cols:
        return rows
    for b in range(bmax, bmin - 1, -1):
        row = [str(b)]
        for a in cols:
            val = fn((a, b))
            if kind == "group":
                row.append(val.label(ascii))
            else:
                text = "." if val is None else val
                row.append(text if ascii else to_unicode(text).replace("·", ""))
        rows.append(row)
    return rows


def render_text(rows: list[list[str]]) -> str:
    if not rows:
        return ""
    width = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(r, width)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def render_csv(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def table(which: str, bounds=None, fmt: str = "text", ascii: bool = True) -> str:
    rows = grid(which, bounds, ascii=ascii or fmt == "csv")
    return render_csv(rows) if fmt == "csv" else render_text(rows)


def catalog_label(c: Catalog | tuple, ascii: bool = True) -> str:
    if isinstance(c, Catalog):
        return c.label(ascii)
    sep = " + " if ascii else " ⊕ "
    return sep.join(x.label(ascii) for x in c)


# ---------------------------------------------------------------------------
# product rules of H*(pt; A)

_FAMILY_NAMES = {
    "EX": "eps^m xi^n",
    "K": "eps^-m kappa",
    "T": "tau(iota^-n)",
    "ET": "eps^-m tau(iota^-(2k+1))",
}


def product_table_doc(box: int = 6) -> str:
    """Markdown summary of which rule computes each product of generator
    families, with one worked example per rule, over generators in the box."""
    from .expr import format_point
    from .point import _kind, point_generators, point_mul, product_rule

    gens = [g for g in point_generators(box) if g.degree != (0, 0)]
    seen: dict[tuple[str, str], dict[str, str]] = {}
    for x in gens:
        for y in gens:
            kx, ky = _kind(x.degree)[0], _kind(y.degree)[0]
            key = tuple(sorted((kx, ky), key=list(_FAMILY_NAMES).index))
            tag = product_rule(x.degree, y.degree)
            rules = seen.setdefault(key, {})
            if tag not in rules:
                z = point_mul(x, y)
                rules[tag] = f"({format_point(x)}) * ({format_point(y)}) = {format_point(z) if z else '0'}"
    lines = [
        "# Products of generators of H*(pt; A)",
        "",
        "Generated by `python3 -m equicohom.tables` from the rule tags in",
        f"`equicohom.point.product_rule`, over generators with |a|, |b| <= {box}.",
        "Products with the unit or with g are Burnside-ring arithmetic and are omitted.",
        "",
        "Rule tags:",
        "",
        "- `relation`: a defining relation or its closure under ε- and ξ-multiplication.",
        "- `divisibility`: computed after multiplying by a power of ε, which acts injectively there.",
        "- `frobenius`: x·τ(y) = τ(ρ(x)·y).",
        "- `forced-zero`: the target group vanishes at level G/G.",
        "",
        "| first | second | rule | example |",
        "|---|---|---|---|",
    ]
    for (k1, k2), rules in sorted(seen.items(), key=lambda t: [list(_FAMILY_NAMES).index(k) for k in t[0]]):
        for tag in sorted(rules):
            lines.append(f"| {_FAMILY_NAMES[k1]} | {_FAMILY_NAMES[k2]} | {tag} | `{rules[tag]}` |")
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    import sys

    sys.stdout.write(product_table_doc())
