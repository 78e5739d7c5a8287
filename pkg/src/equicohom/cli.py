"""Command-line front end: ``equicohom group|mul|chi|restrict|normalize|table|verify``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import tables
from .expr import ParseError, format_degree, format_element, format_monomial, parse, to_unicode
from .mackey import Catalog, catalog_functor, check_axioms
from .point import (
    UnspecifiedProduct,
    eap_action,
    eap_group_at,
    ep_group_at,
    ep_mul,
    les_point_check,
    point_group_at,
    point_mul,
)
from .projective import chi_star, cp_functor_at, cp_group_at, fixed_group_at, restrict_minus, restrict_plus
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SUITES = ("axioms", "les", "ep-chain", "mv", "basis", "ring")


class UsageError(ValueError):
    pass


def parse_degree(text: str, arity: int) -> tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad degree {text!r}") from None
    if len(parts) != arity:
        raise UsageError(f"degree {text!r} needs {arity} components")
    return parts


def _emit(args, text: str) -> None:
    print(text if args.ascii else to_unicode(text))


# ---------------------------------------------------------------------------
# group


def _group_point_like(space: str, d) -> dict:
    fn = {"point": point_group_at, "ep": ep_group_at, "eap": eap_group_at}[space]
    grp = fn(d)
    out = {"degree": {"a": d[0], "b": d[1]}, "group": grp.ascii}
    gen = {"point": tables._point_gen, "ep": tables._ep_gen, "eap": tables._eap_gen}[space](d)
    if gen is not None:
        out["generator"] = gen
    return out


def _fixed_name(side: str, n: int, j: int) -> str:
    """ζ^n c^j on one component, written as a pair in the fixed-set grammar."""
    sign = "+" if side == "plus" else "-"
    parts = [f"zeta{sign}" + (f"^{n}" if n != 1 else "") if n else "", f"c{sign}" + (f"^{j}" if j != 1 else "") if j else ""]
    term = "*".join(p for p in parts if p) or "1"
    return f"({term}, 0)" if side == "plus" else f"(0, {term})"


def cmd_group(args) -> int:
    space = args.space
    if space in ("point", "ep", "eap"):
        d = parse_degree(args.deg, 2)
        data = _group_point_like(space, d)
        if args.format == "json":
            print(json.dumps(data))
        elif args.format == "csv":
            print(f"{d[0]},{d[1]},{data['group']}")
        else:
            print(Catalog.parse(data["group"]).label(args.ascii))
        return EXIT_OK
    d = parse_degree(args.deg, 3)
    if space == "cp":
        summands = [(format_monomial(beta) or "1", grp) for beta, grp in cp_group_at(d)]
    else:
        summands = [(_fixed_name(side, d[2], j), grp) for side, j, grp in fixed_group_at(d)]
    if args.format == "json":
        key = "beta" if space == "cp" else "term"
        data = {
            "degree": {"a": d[0], "b": d[1], "n": d[2]},
            "summands": [{key: name, "functor": grp.ascii} for name, grp in summands],
        }
        print(json.dumps(data))
    elif args.format == "csv":
        for name, grp in summands:
            print(f"{name},{grp.ascii}")
    elif not summands:
        print("0")
    else:
        for name, grp in summands:
            _emit(args, f"{grp.label(args.ascii)}, generated by {name}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# element arithmetic


def _print_element(args, x, side=None) -> None:
    text = format_element(x, side)
    if args.format == "json":
        print(json.dumps({"element": text}))
    else:
        _emit(args, text)


def cmd_mul(args) -> int:
    space = args.space
    if space == "eap":
        x, y = parse(args.expr1, "point"), parse(args.expr2, "eap")
        _print_element(args, eap_action(x, y))
        return EXIT_OK
    x, y = parse(args.expr1, space), parse(args.expr2, space)
    if space == "point":
        z = point_mul(x, y)
    elif space == "ep":
        z = ep_mul(x, y)
    else:
        z = x * y
    _print_element(args, z, "z" if space == "z" else None)
    return EXIT_OK


def cmd_chi(args) -> int:
    _print_element(args, chi_star(parse(args.expr, "cp")))
    return EXIT_OK


def cmd_restrict(args) -> int:
    x = parse(args.expr, "cp")
    poly = restrict_plus(x) if args.side == "plus" else restrict_minus(x)
    _print_element(args, poly, args.side)
    return EXIT_OK


def cmd_normalize(args) -> int:
    _print_element(args, parse(args.expr, "cp"))
    return EXIT_OK


# ---------------------------------------------------------------------------
# tables


def cmd_table(args) -> int:
    try:
        bounds = tables.parse_bounds(args.bounds) if args.bounds else None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fmt = "csv" if args.format == "csv" else "text"
    sys.stdout.write(tables.table(args.which, bounds, fmt=fmt, ascii=args.ascii))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification


def _chunk(items: list, jobs: int) -> list[list]:
    jobs = max(1, jobs)
    return [items[i::jobs] for i in range(jobs) if items[i::jobs]]


def _mv_worker(degrees: list, trunc: int) -> tuple[Report, Report]:
    from .verify import cp_les_check, mv_kernel_check

    mv, free = Report("mv"), Report("freeness")
    for d in degrees:
        mv.merge(mv_kernel_check(d, trunc))
        free.merge(cp_les_check(d, trunc))
    return mv, free


def _les_worker(rows: list[int], box: int) -> Report:
    rep = Report("les")
    for a in rows:
        rep.merge(les_point_check((a, a, -box, box)))
    return rep


def _sharded(worker, items: list, jobs: int, *extra) -> list:
    if jobs <= 1:
        return [worker(items, *extra)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futs = [pool.submit(worker, part, *extra) for part in _chunk(items, jobs)]
        return [f.result() for f in futs]


def _combine(name: str, parts: list[Report]) -> Report:
    out = Report(name)
    for p in parts:
        out.merge(p)
    return out


def suite_axioms(args) -> list[Report]:
    rep = Report("axioms")
    for name in Catalog:
        rep.checked += 1
        for msg in check_axioms(catalog_functor(name)):
            rep.fail(f"{name.ascii}: {msg}")
    box = args.box if args.box is not None else 3
    for a in range(-box, box + 1):
        for b in range(-box, box + 1):
            for n in range(-box, box + 1):
                rep.checked += 1
                for msg in check_axioms(cp_functor_at((a, b, n))):
                    rep.fail(f"H^{format_degree((a, b, n))}: {msg}")
    return [rep]


def suite_les(args) -> list[Report]:
    box = args.box if args.box is not None else 10
    parts = _sharded(_les_worker, list(range(-box, box + 1)), args.jobs, box)
    rep = _combine("les", parts)
    rep.details["box"] = box
    return [rep]


def suite_ep_chain(args) -> list[Report]:
    from .chain_oracle import level_e_crosscheck, top_degree, sphere_antipodal_complex, verify_ep_table

    n = args.cells
    out = []
    for twist in ("integer", "lambda"):
        top = top_degree(sphere_antipodal_complex(n, twist))
        out.append(verify_ep_table(n, range(0, min(17, top)), twist))
    out.append(level_e_crosscheck(n))
    return out


def suite_mv(args) -> list[Report]:
    from .verify import mv_box

    box = args.box if args.box is not None else 6
    nmax = args.n if args.n is not None else 4
    degrees = list(mv_box(box, box, nmax))
    parts = _sharded(_mv_worker, degrees, args.jobs, args.trunc)
    mv = Report("mv", details={"box": box, "n": nmax, "trunc": args.trunc})
    free = Report("freeness")
    for m, f in parts:
        mv.merge(m)
        free.merge(f)
    return [mv, free]


def suite_basis(args) -> list[Report]:
    from .verify import leading_term_matrix_check, psi_beta_sweep

    nmax = args.n if args.n is not None else 3
    rep = Report("basis", details={"matrices": []})
    for n in range(-nmax, nmax + 1):
        r = leading_term_matrix_check(n, args.k)
        rep.merge(r)
        rep.details["matrices"].extend(r.details["matrices"])
    return [rep, psi_beta_sweep()]


def suite_ring(args) -> list[Report]:
    from .laws import (
        basis_enumeration_check,
        cp_laws,
        divisibility_check,
        frobenius_check,
        point_laws,
        ring_identities,
    )

    return [
        ring_identities(),
        cp_laws(),
        point_laws(),
        frobenius_check(),
        divisibility_check(),
        basis_enumeration_check(),
    ]


SUITE_FUNCS = {
    "axioms": suite_axioms,
    "les": suite_les,
    "ep-chain": suite_ep_chain,
    "mv": suite_mv,
    "basis": suite_basis,
    "ring": suite_ring,
}


def run_suite(name: str, args) -> list[Report]:
    try:
        return SUITE_FUNCS[name](args)
    except (ValueError, ArithmeticError) as exc:
        rep = Report(name)
        rep.fail(f"{type(exc).__name__}: {exc}")
        return [rep]


def cmd_verify(args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = [r for name in names for r in run_suite(name, args)]
    ok = all(r.ok for r in reports)
    if args.format == "json":
        print(json.dumps({"ok": ok, "reports": [r.to_json() for r in reports]}, indent=2))
    else:
        for r in reports:
            status = "ok" if r.ok else "FAIL"
            line = f"{r.name}: {status} ({r.checked} checks)"
            if "matrices" in r.details:
                line += f", {len(r.details['matrices'])} matrices"
            print(line)
            for msg in r.failures[:20]:
                print(f"  {msg}")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ascii", action="store_true", default=argparse.SUPPRESS, help="ASCII names instead of Unicode")
    common.add_argument("--format", choices=("text", "csv", "json"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="equicohom", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", parents=[common], help="Mackey functor in a degree")
    g.add_argument("space", choices=("point", "ep", "eap", "cp", "fixed"))
    g.add_argument("--deg", required=True, help="a,b or a,b,n")
    g.set_defaults(func=cmd_group)

    m = sub.add_parser("mul", parents=[common], help="multiply two elements")
    m.add_argument("space", choices=("point", "ep", "eap", "cp", "fixed", "z"))
    m.add_argument("expr1")
    m.add_argument("expr2")
    m.set_defaults(func=cmd_mul)

    c = sub.add_parser("chi", parents=[common], help="apply the involution χ*")
    c.add_argument("expr")
    c.set_defaults(func=cmd_chi)

    r = sub.add_parser("restrict", parents=[common], help="restrict to a fixed-set component")
    r.add_argument("side", choices=("plus", "minus"))
    r.add_argument("expr")
    r.set_defaults(func=cmd_restrict)

    n = sub.add_parser("normalize", parents=[common], help="normal form in the basis B")
    n.add_argument("expr")
    n.set_defaults(func=cmd_normalize)

    t = sub.add_parser("table", parents=[common], help="print a degree table")
    t.add_argument("which", choices=sorted(tables.FIGURES))
    t.add_argument("--bounds", help="amin,amax,bmin,bmax (default from $%s or -7,7,-7,7)" % tables.BOUNDS_ENV)
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--box", type=int, help="half-width of the degree box")
    v.add_argument("--cells", type=int, default=20, help="cells in the EP skeleton")
    v.add_argument("--n", type=int, help="largest |n| (mv) or n (basis)")
    v.add_argument("--k", type=int, default=4, help="largest k for the basis families")
    v.add_argument("--trunc", type=int, default=12, help="polynomial truncation for the fixed-set rings")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)
    return p


_VALUE_OPTS = ("--deg", "--bounds")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--deg -2,2`` into ``--deg=-2,2`` so argparse does not read it as a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
            else:
                out += [tok, nxt]
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.ascii = getattr(args, "ascii", False)
    args.format = getattr(args, "format", "text")
    if args.format in ("csv", "json"):
        args.ascii = True
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"equicohom: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnspecifiedProduct as exc:
        print(f"equicohom: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
