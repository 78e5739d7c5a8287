"""Parsing and printing of elements in the shared ASCII grammar.

Grammar (whitespace is ignored)::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := "-" unary | power
    power   := primary ("^" int)?
    int     := "-"? NUMBER | "(" "-"? NUMBER ")"
    primary := NUMBER | NAME | "tau(iota^" int ")" | "(" expr ("," expr)? ")"

Names: ``eps xi kappa g`` (point ring), ``tau_3 tau_5 ...`` (generators of
reduced H*(E(A,P))), ``zeta zbar c cbar`` (CP^∞_G), ``zeta+ zeta- c+ c-``
(fixed sets) and ``ztil ctil`` (the free part Z).  A negative power of eps
divides the class it multiplies; this is how ``eps^-2*kappa`` and
``eps^-1*tau(iota^-3)`` are written.  Output uses the same grammar, so
printing then parsing a canonical form returns the same element.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .point import (
    EAPElement,
    EPElement,
    LevelEElement,
    ONE,
    PointElement,
    ZERO,
    _kind,
    eap_action,
    ep_mul,
    generator_at,
    point_mul,
    point_tr,
)
from .projective import (
    C,
    CBAR,
    CpElement,
    FixedElement,
    FixedPoly,
    UNIT,
    ZBAR,
    ZETA,
    monomial_key,
)

SPACES = ("point", "ep", "eap", "cp", "fixed", "z")


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# tokens and syntax tree

_SUFFIXED = {"c", "zeta"}
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def tokenize(text: str) -> list[tuple[str, str]]:
    out: list[tuple[str, str]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        pos = m.end()
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            if name in _SUFFIXED and pos < len(text) and text[pos] in "+-":
                rest = text[pos + 1 :].lstrip()
                if not rest or rest[0] in ")*^,+-":
                    name += text[pos]
                    pos += 1
            out.append(("name", name))
        else:
            if sym not in "+-*^(),":
                raise ParseError(f"unexpected character {sym!r}")
            out.append(("sym", sym))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, value: str | None = None) -> bool:
        if self.i >= len(self.toks):
            return False
        return value is None or self.toks[self.i][1] == value

    def take(self, value: str | None = None) -> tuple[str, str]:
        if self.i >= len(self.toks):
            raise ParseError("unexpected end of input")
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        node = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"unexpected {self.toks[self.i][1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek("+") or self.peek("-"):
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek("*"):
            self.take()
            node = ("mul", node, self.unary())
        return node

    def unary(self):
        if self.peek("-"):
            self.take()
            return ("neg", self.unary())
        return self.power()

    def integer(self) -> int:
        paren = self.peek("(")
        if paren:
            self.take()
        sign = 1
        if self.peek("-"):
            self.take()
            sign = -1
        kind, val = self.take()
        if kind != "num":
            raise ParseError(f"expected an integer exponent, got {val!r}")
        if paren:
            self.take(")")
        return sign * int(val)

    def power(self):
        node = self.primary()
        if self.peek("^"):
            self.take()
            node = ("pow", node, self.integer())
        return node

    def primary(self):
        kind, val = self.take()
        if kind == "num":
            return ("num", int(val))
        if kind == "name":
            if val == "tau" and self.peek("("):
                self.take("(")
                if self.peek("iota"):
                    self.take()
                    self.take("^")
                    k = self.integer()
                else:
                    # tau(n) is shorthand for tau(iota^-n)
                    k = -self.integer()
                self.take(")")
                return ("tau", k)
            if val in ("inv_eps_kappa", "inv_eps_tau") and self.peek("("):
                self.take("(")
                m = self.integer()
                eps = ("pow", ("atom", "eps"), -m)
                if val == "inv_eps_kappa":
                    self.take(")")
                    return ("mul", eps, ("atom", "kappa"))
                self.take(",")
                k = self.integer()
                self.take(")")
                return ("mul", eps, ("tau", -(2 * k + 1)))
            return ("atom", val)
        if val == "(":
            first = self.expr()
            if self.peek(","):
                self.take()
                second = self.expr()
                self.take(")")
                return ("pair", first, second)
            self.take(")")
            return first
        raise ParseError(f"unexpected {val!r}")


def parse_tree(text: str):
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# dividing by powers of ε


def point_divide_eps(x: PointElement, m: int) -> PointElement | None:
    """The unique y with ε^m y = x, or None if x is not ε^m-divisible in that sense."""
    if m == 0:
        return x
    out = ZERO
    eps_m = PointElement.eps_xi(m, 0)
    for d, c in x.terms:
        e = (d[0], d[1] - m)
        gen = generator_at(e)
        if gen is None:
            return None
        base = ONE if e == (0, 0) else PointElement.from_dict({e: 1})
        prod = point_mul(eps_m, base)
        if prod.is_zero():
            return None
        pc = prod.coeff(d)
        if d == (0, 0):
            px, py = pc
            x0, y0 = c
            # solve t·(px, py) = (x0, y0)
            t = x0 // px if px else (y0 // py if py else None)
            if t is None or (t * px, t * py) != (x0, y0):
                return None
            out = out + base * t
            continue
        if pc not in (1, -1):
            return None
        out = out + base * (c * pc)
    return out


def _divide(obj, m: int):
    if m == 0:
        return obj
    if isinstance(obj, PointElement):
        return point_divide_eps(obj, m)
    if isinstance(obj, EAPElement):
        return obj.shift(-m)
    if isinstance(obj, CpElement):
        acc = {}
        for mono, c in obj.terms:
            q = point_divide_eps(c, m)
            if q is None:
                return None
            acc[mono] = q
        return CpElement.from_dict(acc)
    if isinstance(obj, FixedElement):
        sides = []
        for poly in (obj.plus, obj.minus):
            acc = {}
            for key, c in poly.terms:
                q = _divide(c, m)
                if q is None:
                    return None
                acc[key] = q
            sides.append(FixedPoly.from_dict(acc))
        return FixedElement(*sides)
    return None


# ---------------------------------------------------------------------------
# evaluation


@dataclass
class _Val:
    shift: int  # pending power of ε (≤ 0)
    obj: object


class _Space:
    """Evaluation rules of one ring or module."""

    name = ""

    def scalar(self, p: PointElement):
        return p

    def atom(self, name: str, e: int) -> _Val:
        if name == "eps":
            if e < 0:
                return _Val(e, self.scalar(ONE))
            return _Val(0, self.scalar(PointElement.eps_xi(e, 0)))
        if name == "xi":
            if e < 0:
                raise ParseError("xi is not invertible here")
            return _Val(0, self.scalar(PointElement.eps_xi(0, e)))
        if name in ("kappa", "g"):
            base = PointElement.kappa() if name == "kappa" else PointElement.g()
            if e < 0:
                raise ParseError(f"{name} is not invertible")
            return _Val(0, self.scalar(base**e))
        raise ParseError(f"unknown name {name!r} for {self.name}")

    def tau(self, k: int):
        return self.scalar(point_tr(LevelEElement.iota(k)))

    def mul(self, x, y):
        return _generic_mul(x, y)

    def finish(self, obj):
        return obj


def _generic_mul(x, y):
    if isinstance(x, PointElement) and isinstance(y, PointElement):
        return point_mul(x, y)
    if isinstance(x, EPElement) and isinstance(y, EPElement):
        return ep_mul(x, y)
    if isinstance(x, PointElement) and isinstance(y, EAPElement):
        return eap_action(x, y)
    if isinstance(x, EAPElement) and isinstance(y, PointElement):
        return eap_action(y, x)
    if isinstance(x, EAPElement) and isinstance(y, EAPElement):
        raise ParseError("cannot multiply two classes of reduced H*(E(A,P))")
    return x * y


class _PointSpace(_Space):
    name = "point"


class _EPSpace(_Space):
    name = "ep"

    def scalar(self, p):
        raise ParseError("use eps and xi in H*(EP)")

    def atom(self, name, e):
        if name == "eps":
            if e < 0:
                raise ParseError("eps is not invertible in H*(EP)")
            return _Val(0, EPElement.monomial(e, 0))
        if name == "xi":
            return _Val(0, EPElement.monomial(0, e))
        raise ParseError(f"unknown name {name!r} for ep")

    def tau(self, k):
        raise ParseError("tau(iota^k) is not an element of H*(EP)")

    def num(self, n):
        return EPElement.scalar(n)


class _EAPSpace(_Space):
    name = "eap"

    def atom(self, name, e):
        m = re.fullmatch(r"tau_?(\d+)", name)
        if name == "kappa" or m:
            if e != 1:
                raise ParseError(f"{name} cannot be raised to a power")
            if name == "kappa":
                return _Val(0, EAPElement.kappa(0))
            n = int(m.group(1))
            if n < 3 or n % 2 == 0:
                raise ParseError("tau_n needs odd n ≥ 3")
            return _Val(0, EAPElement.tau(0, (n - 1) // 2))
        return super().atom(name, e)

    def finish(self, obj):
        if isinstance(obj, PointElement):
            if obj.is_zero():
                return EAPElement()
            raise ParseError("reduced H*(E(A,P)) has no unit; multiply by kappa or tau_n")
        return obj


class _CpSpace(_Space):
    name = "cp"
    _GENS = {"zeta": ZETA, "zbar": ZBAR, "c": C, "cbar": CBAR}

    def scalar(self, p):
        return CpElement.scalar(p)

    def atom(self, name, e):
        if name in self._GENS:
            if e < 0:
                raise ParseError(f"{name} is not invertible in H*(CP^∞_G)")
            mono = tuple(x * e for x in self._GENS[name])
            return _Val(0, CpElement.monomial(mono))
        return super().atom(name, e)

    def mul(self, x, y):
        return x * y


class _FixedSpace(_Space):
    """P*-coefficient classes on C₊ ⊔ C₋, or on one side when ``side`` is set."""

    name = "fixed"

    def __init__(self, side: str | None = None):
        self.side = side

    def _embed(self, poly: FixedPoly, side: str | None = None) -> FixedElement:
        side = side or self.side
        if side == "plus":
            return FixedElement(plus=poly)
        if side == "minus":
            return FixedElement(minus=poly)
        return FixedElement(poly, poly)

    def scalar(self, p):
        return self._embed(FixedPoly.monomial(0, 0, p))

    def atom(self, name, e):
        m = re.fullmatch(r"(c|zeta)([+-])", name)
        if m:
            side = "plus" if m.group(2) == "+" else "minus"
            if self.side not in (None, side):
                raise ParseError(f"{name} does not live on the {self.side} component")
            if m.group(1) == "c":
                if e < 0:
                    raise ParseError("c is not invertible")
                key = (0, e)
            else:
                key = (e, 0)
            return _Val(0, self._embed(FixedPoly.monomial(*key, ONE), side))
        return super().atom(name, e)

    def mul(self, x, y):
        return x * y


class _ZSpace(_Space):
    name = "z"

    def scalar(self, p):
        raise ParseError("use eps and xi for coefficients on Z")

    def num(self, n):
        return FixedPoly.monomial(0, 0, EPElement.scalar(n))

    def atom(self, name, e):
        if name == "ctil":
            if e < 0:
                raise ParseError("ctil is not invertible")
            return _Val(0, FixedPoly.monomial(0, e, EPElement.scalar(1)))
        if name == "ztil":
            return _Val(0, FixedPoly.monomial(e, 0, EPElement.scalar(1)))
        if name == "eps":
            if e < 0:
                raise ParseError("eps is not invertible on Z")
            return _Val(0, FixedPoly.monomial(0, 0, EPElement.monomial(e, 0)))
        if name == "xi":
            return _Val(0, FixedPoly.monomial(0, 0, EPElement.monomial(0, e)))
        raise ParseError(f"unknown name {name!r} for z")

    def tau(self, k):
        raise ParseError("tau(iota^k) is not a coefficient on Z")

    def mul(self, x, y):
        return x * y


def _space(name: str, side: str | None = None) -> _Space:
    table = {
        "point": _PointSpace,
        "ep": _EPSpace,
        "eap": _EAPSpace,
        "cp": _CpSpace,
        "z": _ZSpace,
    }
    if name == "fixed":
        return _FixedSpace(side)
    if name not in table:
        raise ParseError(f"unknown space {name!r}")
    return table[name]()


def _num(sp: _Space, n: int):
    if hasattr(sp, "num"):
        return sp.num(n)
    return sp.scalar(PointElement.scalar(n))


def _settle(sp: _Space, v: _Val) -> _Val:
    if v.shift == 0:
        return v
    q = _divide(v.obj, -v.shift)
    if q is None:
        return v
    return _Val(0, q)


def _force(sp: _Space, v: _Val):
    v = _settle(sp, v)
    if v.shift:
        raise ParseError(f"eps^{v.shift} does not divide the class it multiplies")
    return v.obj


def _eval(node, sp: _Space) -> _Val:
    tag = node[0]
    if tag == "num":
        return _Val(0, _num(sp, node[1]))
    if tag == "atom":
        return sp.atom(node[1], 1)
    if tag == "tau":
        return _Val(0, sp.tau(node[1]))
    if tag == "pow":
        base, e = node[1], node[2]
        if base[0] == "atom":
            return sp.atom(base[1], e)
        if e < 0:
            raise ParseError("negative powers are only allowed on single names")
        out = _Val(0, _num(sp, 1))
        val = _eval(base, sp)
        for _ in range(e):
            out = _settle(sp, _Val(out.shift + val.shift, sp.mul(out.obj, val.obj)))
        return out
    if tag == "mul":
        x, y = _eval(node[1], sp), _eval(node[2], sp)
        return _settle(sp, _Val(x.shift + y.shift, sp.mul(x.obj, y.obj)))
    if tag in ("add", "sub"):
        x, y = _force(sp, _eval(node[1], sp)), _force(sp, _eval(node[2], sp))
        if isinstance(x, PointElement) and not isinstance(y, PointElement) and x.is_zero():
            return _Val(0, y if tag == "add" else _negate(y))
        try:
            return _Val(0, x + y if tag == "add" else x - y)
        except TypeError as exc:
            raise ParseError("cannot add a scalar to this kind of class") from exc
    if tag == "neg":
        x = _eval(node[1], sp)
        return _Val(x.shift, _negate(x.obj))
    if tag == "pair":
        if not isinstance(sp, _FixedSpace) or sp.side is not None:
            raise ParseError("pairs (plus, minus) are only allowed for fixed-set classes")
        p = _force(sp, _eval(node[1], _FixedSpace("plus")))
        m = _force(sp, _eval(node[2], _FixedSpace("minus")))
        return _Val(0, FixedElement(p.plus, m.minus))
    raise ParseError(f"bad node {tag}")


def _negate(x):
    if isinstance(x, (EAPElement, FixedPoly)):
        return -x
    if isinstance(x, FixedElement):
        return FixedElement(-x.plus, -x.minus)
    return -x


def parse(text: str, space: str, side: str | None = None):
    """Parse ``text`` as an element of ``space`` (one of SPACES)."""
    sp = _space(space, side)
    return sp.finish(_force(sp, _eval(parse_tree(text), sp)))


# ---------------------------------------------------------------------------
# printing


def _pow(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def _prod(*parts: str) -> str:
    return "*".join(p for p in parts if p)


def point_term_name(d: tuple[int, int]) -> str:
    kind = _kind(d)
    tag = kind[0]
    if tag == "EX":
        _, m, n = kind
        return _prod(_pow("eps", m) if m else "", _pow("xi", n) if n else "")
    if tag == "K":
        return _prod(f"eps^-{kind[1]}" if kind[1] else "", "kappa")
    if tag == "T":
        return f"tau(iota^-{kind[1]})"
    _, m, k = kind
    return f"eps^-{m}*tau(iota^-{2 * k + 1})"


def _with_coeff(c: int, name: str) -> str:
    if not name:
        return str(c)
    if c == 1:
        return name
    if c == -1:
        return "-" + name
    return f"{c}*{name}"


def _degree0_terms(x: int, y: int) -> list[str]:
    if y and x == -2 * y:
        return [_with_coeff(-y, "kappa")]
    out = []
    if x:
        out.append(str(x))
    if y:
        out.append(_with_coeff(y, "g"))
    return out


def point_terms(p: PointElement) -> list[str]:
    out = []
    for d, c in p.terms:
        if d == (0, 0):
            out += _degree0_terms(*c)
        else:
            out.append(_with_coeff(c, point_term_name(d)))
    return out


def join_terms(terms: list[str]) -> str:
    if not terms:
        return "0"
    s = terms[0]
    for t in terms[1:]:
        s += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return s


def format_point(p: PointElement) -> str:
    return join_terms(point_terms(p))


def ep_terms(q: EPElement) -> list[str]:
    out = []
    for (m, k), c in q.terms:
        name = _prod(_pow("eps", m) if m else "", _pow("xi", k) if k else "")
        out.append(_with_coeff(c, name))
    return out


def format_ep(q: EPElement) -> str:
    return join_terms(ep_terms(q))


def eap_terms(x: EAPElement) -> list[str]:
    out = []
    for key, c in x.terms:
        m = key[1]
        gen = "kappa" if key[0] == "kappa" else f"tau_{2 * key[2] + 1}"
        out.append(_with_coeff(c, _prod(_pow("eps", m) if m else "", gen)))
    return out


def format_eap(x: EAPElement) -> str:
    return join_terms(eap_terms(x))


def _coeff_terms(c) -> list[str]:
    if isinstance(c, PointElement):
        return point_terms(c)
    if isinstance(c, EPElement):
        return ep_terms(c)
    if isinstance(c, EAPElement):
        return eap_terms(c)
    raise TypeError(type(c))


def _scaled(c, mono: str) -> str:
    """One printed term coeff*mono, with a leading '-' when that reads better."""
    terms = _coeff_terms(c)
    if not mono:
        return join_terms(terms)
    if len(terms) == 1:
        t = terms[0]
        if t == "1":
            return mono
        if t == "-1":
            return "-" + mono
        return f"{t}*{mono}"
    neg = _coeff_terms(-c)
    if terms[0].startswith("-") and not neg[0].startswith("-"):
        return f"-({join_terms(neg)})*{mono}"
    return f"({join_terms(terms)})*{mono}"


def _split_top(s: str) -> list[str]:
    """Split a printed sum back into signed top-level terms."""
    out, depth, cur = [], 0, ""
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and s.startswith(" + ", i):
            out.append(cur)
            cur = ""
            i += 3
            continue
        if depth == 0 and s.startswith(" - ", i):
            out.append(cur)
            cur = "-"
            i += 3
            continue
        cur += ch
        i += 1
    out.append(cur)
    return out


_CP_NAMES = ("zeta", "zbar", "c", "cbar")


def format_monomial(m: tuple[int, int, int, int]) -> str:
    return _prod(*(_pow(name, e) for name, e in zip(_CP_NAMES, m) if e))


def format_cp(x: CpElement) -> str:
    terms: list[str] = []
    for mono, c in sorted(x.terms, key=lambda t: monomial_key(t[0])):
        name = format_monomial(mono)
        if mono != UNIT and "*" in name:
            name = f"({name})"
        terms += _split_top(_scaled(c, name)) if mono == UNIT else [_scaled(c, name)]
    return join_terms(terms)


def _fixed_names(side: str) -> tuple[str, str]:
    if side == "z":
        return "ztil", "ctil"
    suffix = "+" if side == "plus" else "-"
    return "zeta" + suffix, "c" + suffix


def format_fixed_poly(p: FixedPoly, side: str) -> str:
    """Print one component (side 'plus' or 'minus') or a class on Z (side 'z')."""
    zname, cname = _fixed_names(side)
    groups: dict[int, list] = {}
    for (s, j), c in p.terms:
        groups.setdefault(s, []).append((j, c))
    terms: list[str] = []
    for s in sorted(groups):
        zpart = _pow(zname, s) if s else ""
        items = sorted(groups[s])
        if len(items) == 1 or not zpart:
            for j, c in items:
                mono = _prod(zpart, _pow(cname, j) if j else "")
                terms += _split_top(_scaled(c, mono))
            continue
        inner = []
        for j, c in items:
            inner += _split_top(_scaled(c, _pow(cname, j) if j else ""))
        terms.append(f"{zpart}*({join_terms(inner)})")
    return join_terms(terms)


def format_fixed(x: FixedElement) -> str:
    return f"({format_fixed_poly(x.plus, 'plus')}, {format_fixed_poly(x.minus, 'minus')})"


def format_element(x, side: str | None = None) -> str:
    if isinstance(x, PointElement):
        return format_point(x)
    if isinstance(x, EPElement):
        return format_ep(x)
    if isinstance(x, EAPElement):
        return format_eap(x)
    if isinstance(x, CpElement):
        return format_cp(x)
    if isinstance(x, FixedElement):
        return format_fixed(x)
    if isinstance(x, FixedPoly):
        return format_fixed_poly(x, side or "z")
    raise TypeError(type(x))


# ---------------------------------------------------------------------------
# unicode rendering

_UNICODE_NAMES = {
    "eps": "ε",
    "xi": "ξ",
    "kappa": "κ",
    "iota": "ι",
    "tau": "τ",
    "zeta+": "ζ₊",
    "zeta-": "ζ₋",
    "c+": "c₊",
    "c-": "c₋",
    "zeta": "ζ",
    "zbar": "ζ̄",
    "cbar": "c̄",
    "ztil": "ζ̃",
    "ctil": "c̃",
    "Lam": "Λ",
    "Om": "Ω",
}
_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")
_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_UNI_TOKEN = re.compile(r"tau_(\d+)|\^(-?\d+)|(zeta|c)([+-])(?=$|[)*^, ])|[A-Za-z]+|\*|.", re.S)


def to_unicode(s: str) -> str:
    out = []
    for m in _UNI_TOKEN.finditer(s):
        tok = m.group(0)
        if m.group(1):
            out.append("τ" + m.group(1).translate(_SUB))
        elif m.group(2):
            out.append(m.group(2).translate(_SUP))
        elif m.group(3):
            out.append(_UNICODE_NAMES[m.group(3) + m.group(4)])
        elif tok == "*":
            out.append("·")
        else:
            out.append(_UNICODE_NAMES.get(tok, tok))
    return "".join(out)


def format_degree(d: tuple[int, ...]) -> str:
    names = ("", "Lam", "Om")
    parts = []
    for x, name in zip(d, names):
        if not x and (name or any(d[1:])):
            continue
        if not name:
            parts.append(str(x))
        elif x == 1:
            parts.append(name)
        elif x == -1:
            parts.append("-" + name)
        else:
            parts.append(f"{x}*{name}")
    return join_terms(parts)
