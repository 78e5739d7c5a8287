"""Verification of the CP^∞_G computation against the fixed-set models.

Every check builds integer matrices in explicit coordinates and decides
membership, kernels and cokernels by Smith normal form.  Groups are
always direct sums of cyclic groups given by a list of orders (0 for Z).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .intlinalg import det, from_columns, hstack, in_span, kernel_basis, lattice_basis, solve
from .mackey import AbGroupPresentation
from .point import (
    EAPElement,
    EPElement,
    PointElement,
    _eap_basis,
    _eap_coords,
    _ep_basis,
    _ep_coords,
    _point_basis,
    _point_coords,
    eap_action,
    ep_mul,
    map_delta,
    map_psi,
)
from .projective import (
    CpElement,
    FixedElement,
    FixedPoly,
    PiDegree,
    coeff_degree_for,
    cp_group_at,
    enumerate_basis_B,
    monomial_degree,
    phi_fixed,
    pi_minus,
    pi_plus,
    restrict,
    sub_degree,
)
from .report import Report


class TruncationTooSmall(ValueError):
    """The polynomial truncation would cut off part of the requested degree."""


class HypothesisViolated(ValueError):
    """An input does not have the shape required by the identity being checked."""


# ---------------------------------------------------------------------------
# lattice helpers


def _rel_cols(orders: list[int]) -> list[list[int]]:
    n = len(orders)
    return [[o if i == j else 0 for i in range(n)] for j, o in enumerate(orders) if o]


def invariant_factors(orders: list[int]) -> tuple[int, ...]:
    return AbGroupPresentation.from_factors(orders).invariant_factors


def _cols(m: list[list[int]], rows: int) -> list[list[int]]:
    if not rows or not m or not m[0]:
        return []
    return [list(c) for c in zip(*m)]


def preimage(f_cols: list[list[int]], src_dim: int, tgt_orders: list[int]) -> list[list[int]]:
    """Lattice basis of {x : f(x) = 0 in the target group}; vectors of length src_dim."""
    nt = len(tgt_orders)
    if src_dim == 0:
        return []
    if nt == 0:
        return [[int(i == j) for i in range(src_dim)] for j in range(src_dim)]
    rel = _rel_cols(tgt_orders)
    big = hstack(from_columns(f_cols, nt), from_columns(rel, nt), rows=nt)
    kern = kernel_basis(big, src_dim + len(rel))[:src_dim]
    gens = _cols(kern, src_dim)
    if not gens:
        return []
    return _cols(lattice_basis(from_columns(gens, src_dim), src_dim), src_dim)


def subquotient_factors(sub: list[list[int]], rels: list[list[int]], dim: int) -> tuple[int, ...]:
    """Invariant factors of span(sub) / span(rels), assuming rels ⊆ span(sub)."""
    if not sub:
        return ()
    basis = _cols(lattice_basis(from_columns(sub, dim), dim), dim)
    r = len(basis)
    bmat = from_columns(basis, dim)
    coords = []
    for v in rels:
        c = solve(bmat, v, r)
        if c is None:
            raise ArithmeticError("relation outside the sublattice")
        coords.append(c)
    return AbGroupPresentation(r, coords).invariant_factors


def coker_factors(gens: list[list[int]], orders: list[int]) -> tuple[int, ...]:
    dim = len(orders)
    rels = [list(v) for v in gens if any(v)] + _rel_cols(orders)
    return AbGroupPresentation(dim, rels).invariant_factors


def spans_equal(a: list[list[int]], b: list[list[int]], orders: list[int]) -> bool:
    """Whether span(a) and span(b) agree modulo the relations of the group."""
    dim = len(orders)
    if dim == 0:
        return True
    rel = _rel_cols(orders)
    ma = from_columns(list(a) + rel, dim)
    mb = from_columns(list(b) + rel, dim)
    return all(in_span(mb, v) for v in a) and all(in_span(ma, v) for v in b)


def _vanishes(v: list[int], orders: list[int]) -> bool:
    return all((x % o == 0) if o else x == 0 for x, o in zip(v, orders))


# ---------------------------------------------------------------------------
# coordinates on the fixed-set modules


_BASES = {
    "point": (_point_basis, _point_coords),
    "ep": (_ep_basis, _ep_coords),
    "eap": (_eap_basis, _eap_coords),
}


@dataclass
class FixedCoords:
    """Coordinates of the degree-d part of a fixed-set module.

    ``kind`` picks the coefficient ring; ``sides`` is ("plus", "minus") for
    the fixed set or ("plus",) for the free part Z, whose grading matches C₊.
    """

    d: PiDegree
    kind: str
    sides: tuple[str, ...] = ("plus", "minus")
    trunc: int = 12

    def __post_init__(self):
        basis_fn, _ = _BASES[self.kind]
        a, b, n = self.d
        top = max(0, (abs(a) + abs(b) + abs(n)) // 2 + 1)
        self.slots: list[tuple[str, int, tuple[int, int]]] = []
        self.elements = []
        self.orders: list[int] = []
        for side in self.sides:
            for j in range(top + 1):
                e = coeff_degree_for(side, self.d, j)
                els, ords = basis_fn(e)
                if els and j > self.trunc:
                    raise TruncationTooSmall(f"degree {self.d} needs c^{j}, beyond truncation {self.trunc}")
                for x, o in zip(els, ords):
                    self.slots.append((side, j, e))
                    self.elements.append(x)
                    self.orders.append(o)

    @property
    def dim(self) -> int:
        return len(self.orders)

    def _layout(self) -> dict:
        out: dict = {}
        for i, (side, j, e) in enumerate(self.slots):
            out.setdefault((side, j, e), []).append(i)
        return out

    def vector(self, x: FixedElement | FixedPoly) -> list[int]:
        """Coordinates of x; raises if x has a term outside this degree."""
        _, coords_fn = _BASES[self.kind]
        polys = {"plus": x} if isinstance(x, FixedPoly) else {"plus": x.plus, "minus": x.minus}
        v = [0] * self.dim
        layout = self._layout()
        n = self.d[2]
        for side, poly in polys.items():
            for (s, j), c in poly.terms:
                e = coeff_degree_for(side, self.d, j)
                idx = layout.get((side, j, e))
                if s != n or idx is None:
                    if _coeff_vanishes(c):
                        continue
                    raise ValueError(f"term ζ^{s} c^{j} on {side} is not in degree {self.d}")
                for i, val in zip(idx, coords_fn(c.component(e) if isinstance(c, PointElement) else c, e)):
                    v[i] += val
        return [x % o if o else x for x, o in zip(v, self.orders)]

    def element(self, i: int) -> FixedElement:
        side, j, _ = self.slots[i]
        poly = FixedPoly.monomial(self.d[2], j, self.elements[i])
        if side == "plus":
            return FixedElement(plus=poly)
        return FixedElement(minus=poly)


def _coeff_vanishes(c) -> bool:
    return c.is_zero()


# ---------------------------------------------------------------------------
# Mayer–Vietoris


def _mv_matrix(d: PiDegree, trunc: int) -> tuple[FixedCoords, FixedCoords, list[list[int]]]:
    amb = FixedCoords(d, "ep", trunc=trunc)
    z = FixedCoords(d, "ep", sides=("plus",), trunc=trunc)
    cols = []
    for i in range(amb.dim):
        x = amb.element(i)
        cols.append(z.vector(pi_plus(x.plus) - pi_minus(x.minus)))
    return amb, z, cols


def rho_ep(s: int, k: int, q: EPElement) -> FixedElement:
    """q·ρ(ζ^s c^k) with coefficients in H*(EP); s may be negative."""
    n = s + k
    plus = FixedPoly.monomial(n, k, q)
    minus: dict = {}
    for i in range(k + 1):
        t = ep_mul(q, EPElement.monomial(2 * (k - i), s + i, comb(k, i)))
        if not t.is_zero():
            minus[(n, i)] = t
    return FixedElement(plus, FixedPoly.from_dict(minus))


def mv_kernel(d: PiDegree, trunc: int = 12) -> tuple[FixedCoords, list[list[int]]]:
    """Coordinates and a lattice basis of ker(π₊ − π₋) in degree d."""
    amb, z, cols = _mv_matrix(d, trunc)
    return amb, preimage(cols, amb.dim, z.orders)


def mv_kernel_check(d: PiDegree, trunc: int = 12) -> Report:
    """π₊ − π₋ is onto, and its kernel is P*(P)[c, ζ, ζ⁻¹] in degree d."""
    rep = Report("mv", details={"degree": list(d)})
    amb, z, cols = _mv_matrix(d, trunc)
    rep.checked += 1
    if coker_factors(cols, z.orders):
        rep.fail(f"degree {d}: π₊ − π₋ is not onto")
    kern = preimage(cols, amb.dim, z.orders)
    got = subquotient_factors(kern, _rel_cols(amb.orders), amb.dim) if kern else ()
    # the span of q ζ^{n-k} c^k has one cyclic summand per coordinate of Z
    want = invariant_factors(z.orders)
    rep.checked += 1
    rep.details["kernel"] = list(got)
    if got != want:
        rep.fail(f"degree {d}: kernel {got}, expected {want}")
    n = d[2]
    explicit = []
    span_k = from_columns(kern + _rel_cols(amb.orders), amb.dim)
    for i, (_, k, _) in enumerate(z.slots):
        v = amb.vector(rho_ep(n - k, k, z.elements[i]))
        rep.checked += 1
        if not in_span(span_k, v):
            rep.fail(f"degree {d}: ρ(ζ^{n - k} c^{k}) is not in the kernel")
        explicit.append(v)
    rep.checked += 1
    if not spans_equal(explicit, kern, amb.orders):
        rep.fail(f"degree {d}: the classes ζ^m c^k do not span the kernel")
    return rep


# ---------------------------------------------------------------------------
# the long exact sequence route to H*(CP^∞_G)


def _h_basis(d: PiDegree) -> tuple[list[CpElement], list[int]]:
    els, ords = [], []
    for beta, _ in cp_group_at(d):
        e = sub_degree(d, monomial_degree(beta))[:2]
        b_els, b_ords = _point_basis(e)
        for p, o in zip(b_els, b_ords):
            els.append(CpElement.monomial(beta, p))
            ords.append(o)
    return els, ords


def _delta_cols(src: FixedCoords, kern: list[list[int]], tgt: FixedCoords) -> list[list[int]]:
    out = []
    for v in kern:
        x = FixedElement()
        for i, c in enumerate(v):
            if c:
                el = src.element(i)
                x = x + FixedElement(
                    el.plus.map_coeffs(lambda q, c=c: q * c), el.minus.map_coeffs(lambda q, c=c: q * c)
                )
        out.append(tgt.vector(x.map_coeffs(map_delta)))
    return out


def cp_les_check(d: PiDegree, trunc: int = 12) -> Report:
    """Recompute H^d(CP^∞_G) from the Mayer–Vietoris kernel and δ.

    With K the kernel of π₊ − π₋ and F the fixed-set module with
    H*(E(A,P)) coefficients, exactness requires φ(H^d) = ker(δ: K^d → F^{d+1})
    and ker φ ≅ coker(δ: K^{d-1} → F^d).  Level G/e is compared with the
    nonequivariant cohomology of CP^∞.
    """
    a, b, n = d
    rep = Report("freeness", details={"degree": list(d)})
    amb, kern = mv_kernel(d, trunc)
    prev_amb, prev_kern = mv_kernel((a - 1, b, n), trunc)
    f_here = FixedCoords(d, "eap", trunc=trunc)
    f_next = FixedCoords((a + 1, b, n), "eap", trunc=trunc)

    h_els, h_ords = _h_basis(d)
    phi_cols = [amb.vector(phi_fixed(restrict(x))) for x in h_els]
    rel_amb = _rel_cols(amb.orders)
    span_k = from_columns(kern + rel_amb, amb.dim) if amb.dim else []
    rep.checked += 1
    if amb.dim and not all(in_span(span_k, v) for v in phi_cols):
        rep.fail(f"degree {d}: φ of a basis element misses the Mayer–Vietoris kernel")

    d_here = _delta_cols(amb, kern, f_next)
    ker_delta = preimage(d_here, len(kern), f_next.orders)
    ker_delta_amb = [[sum(c * kv[i] for c, kv in zip(y, kern)) for i in range(amb.dim)] for y in ker_delta]
    rep.checked += 1
    if not spans_equal(phi_cols, ker_delta_amb, amb.orders):
        rep.fail(f"degree {d}: image of φ differs from ker δ")

    ker_phi = preimage(phi_cols, len(h_els), amb.orders)
    got = subquotient_factors(ker_phi, _rel_cols(h_ords), len(h_els)) if ker_phi else ()
    want = coker_factors(_delta_cols(prev_amb, prev_kern, f_here), f_here.orders)
    rep.checked += 1
    rep.details["ker_phi"] = list(got)
    rep.details["coker_delta"] = list(want)
    if got != want:
        rep.fail(f"degree {d}: ker φ is {got} but coker δ is {want}")

    ge_rank = sum(1 for beta, _ in cp_group_at(d) if sum(sub_degree(d, monomial_degree(beta))[:2]) == 0)
    ge_want = 1 if (a + b) >= 0 and (a + b) % 2 == 0 else 0
    rep.checked += 1
    if ge_rank != ge_want:
        rep.fail(f"degree {d}: level G/e has rank {ge_rank}, CP^∞ has {ge_want}")
    return rep


# ---------------------------------------------------------------------------
# the basis B over H*(E(A,P))


def dimension_families(n: int, kmax: int) -> list[tuple[str, int, PiDegree]]:
    """The degrees in which the leading-term argument is carried out."""
    out = []
    if n == 0:
        for k in range(0, kmax + 1):
            out.append(("2k", k, (2 * k, 0, 0)))
        for k in range(1, kmax + 1):
            out.append(("2k+1", k, (2 * k + 1, 0, 0)))
        return out
    p = abs(n)
    fams = [
        ("-n+2k", range(0, p), lambda k: -p + 2 * k),
        ("-n+2k+1", range(1, p + 1), lambda k: -p + 2 * k + 1),
        ("n+2k", range(0, kmax + 1), lambda k: p + 2 * k),
        ("n+2k+1", range(1, kmax + 1), lambda k: p + 2 * k + 1),
    ]
    for name, ks, fa in fams:
        for k in ks:
            if k <= kmax:
                out.append((name, k, (fa(k), p, n)))
    return out


def _eap_multiples(d: PiDegree) -> list[tuple[tuple, EAPElement]]:
    a, b, _ = d
    cutoff = max(0, a) + abs(b) + abs(d[2]) + 2
    out = []
    for beta in enumerate_basis_B(d[2], cutoff):
        e = sub_degree(d, monomial_degree(beta))[:2]
        els, _ = _eap_basis(e)
        for eta in els:
            out.append((beta, eta))
    return out


def leading_term_matrix(d: PiDegree, trunc: int = 12) -> tuple[list[list[int]], list[int], list[tuple]]:
    """Rows: the B-multiples η·β in degree d; columns: the natural basis."""
    f = FixedCoords(d, "eap", trunc=trunc)
    rows, labels = [], []
    for beta, eta in _eap_multiples(d):
        x = restrict(CpElement.monomial(beta)).map_coeffs(lambda p: eap_action(p, eta))
        x = FixedElement(x.plus, x.minus)
        rows.append(f.vector(x))
        labels.append((beta, eta))
    return rows, f.orders, labels


def is_unitriangular(rows: list[list[int]], modulus: int) -> bool:
    """Whether some ordering of rows and columns is triangular with unit diagonal."""
    live_rows = set(range(len(rows)))
    live_cols = set(range(len(rows[0]) if rows else 0))

    def red(x):
        return x % modulus if modulus else x

    while live_rows:
        for r in sorted(live_rows):
            supp = [c for c in live_cols if red(rows[r][c])]
            if len(supp) == 1 and red(rows[r][supp[0]]) in (1, modulus - 1 if modulus else -1):
                live_rows.discard(r)
                live_cols.discard(supp[0])
                break
        else:
            return False
    return not live_cols


def leading_term_matrix_check(n: int, kmax: int, trunc: int = 12) -> Report:
    rep = Report("basis", details={"matrices": []})
    for name, k, d in dimension_families(n, kmax):
        rows, orders, labels = leading_term_matrix(d, trunc)
        mods = set(orders)
        rep.checked += 1
        info = {"family": name, "n": n, "k": k, "degree": list(d), "size": len(rows)}
        rep.details["matrices"].append(info)
        if len(mods) > 1:
            rep.fail(f"{name} k={k}: mixed coefficient groups {sorted(mods)}")
            continue
        mod = mods.pop() if mods else 0
        info["ring"] = "Z/2" if mod == 2 else "Z"
        if len(rows) != len(orders):
            rep.fail(f"{name} n={n} k={k}: {len(rows)} multiples for {len(orders)} basis elements")
            continue
        if not rows:
            continue
        dt = det(rows)
        if (mod == 2 and dt % 2 == 0) or (mod == 0 and abs(dt) != 1):
            rep.fail(f"{name} n={n} k={k}: determinant {dt} is not a unit")
        if not is_unitriangular(rows, mod):
            rep.fail(f"{name} n={n} k={k}: not triangular with unit diagonal")
    return rep


# ---------------------------------------------------------------------------
# ψ(ηβ) = ψ(η)β and δ(μx) = δ(μ)x


def psi_beta_check(eta: EAPElement, beta: tuple) -> Report:
    """Compare ψ(η·β) with ψ(η)·β on the fixed set.

    ρ is injective when a + b < 0, so equality there is equality in
    H*(CP^∞_G); elsewhere the identity is moved into that range by ε^{-t}.
    """
    rep = Report("psi-beta")
    lhs = restrict(CpElement.monomial(beta)).map_coeffs(lambda p: eap_action(p, eta))
    rhs = restrict(CpElement.monomial(beta, map_psi(eta)))
    rep.checked += 1
    if lhs.map_coeffs(map_psi) != rhs:
        rep.fail(f"ψ(ηβ) ≠ ψ(η)β for η={eta}, β={beta}")
    d = tuple(x + y for x, y in zip(eta.degree + (0,), monomial_degree(beta)))
    t = max(0, d[0] + d[1] + 1)
    if t:
        shifted = eta.shift(-t)
        lhs2 = restrict(CpElement.monomial(beta)).map_coeffs(lambda p: eap_action(p, shifted))
        rhs2 = restrict(CpElement.monomial(beta, map_psi(shifted)))
        rep.checked += 1
        if lhs2.map_coeffs(map_psi) != rhs2:
            rep.fail(f"ψ(ε^-{t}ηβ) ≠ ψ(ε^-{t}η)β for η={eta}, β={beta}")
    return rep


def _lift(q: EPElement) -> PointElement:
    out = PointElement()
    for (m, n), c in q.terms:
        if n < 0:
            raise HypothesisViolated(f"coefficient ε^{m}ξ^{n} has a negative power of ξ")
        out = out + PointElement.eps_xi(m, n, c) if (m, n) != (0, 0) else out + PointElement.scalar(c)
    return out


def lemma_delta_check(x: FixedElement, mu: EPElement, box: int = 6) -> Report:
    """δ(μx) = δ(μ)x for x with coefficients b·ε^m ξ^n, n ≥ 0."""
    rep = Report("lemma-delta")
    lifted = x.map_coeffs(_lift)
    lhs = x.map_coeffs(lambda q: ep_mul(mu, q)).map_coeffs(map_delta)
    dm = map_delta(mu)
    rhs = lifted.map_coeffs(lambda p: eap_action(p, dm))
    rep.checked += 1
    if lhs != rhs:
        rep.fail("δ(μx) ≠ δ(μ)x")
    units = [
        c
        for poly in (x.plus, x.minus)
        for _, q in poly.terms
        for (m, n), c in q.terms
        if c == 1 and n == 0
    ]
    if units:
        for a in range(-box, box + 1):
            for b in range(-box, box + 1):
                for eta in _eap_basis((a, b))[0]:
                    rep.checked += 1
                    if lifted.map_coeffs(lambda p: eap_action(p, eta)).is_zero():
                        rep.fail(f"multiplication by x kills {eta}")
    return rep


def mv_box(amax: int = 6, bmax: int = 6, nmax: int = 4):
    for n in range(-nmax, nmax + 1):
        for a in range(-amax, amax + 1):
            for b in range(-bmax, bmax + 1):
                yield (a, b, n)


def psi_beta_sweep(box: int = 4, beta_bound: int = 2) -> Report:
    """psi_beta_check for every EAP generator in the box and small β ∈ B."""
    import itertools

    from .projective import in_basis

    rep = Report("psi-beta")
    betas = [m for m in itertools.product(range(beta_bound + 1), repeat=4) if in_basis(m)]
    for a in range(-box, box + 1):
        for b in range(-box, box + 1):
            for eta in _eap_basis((a, b))[0]:
                for beta in betas:
                    rep.merge(psi_beta_check(eta, beta))
    return rep
