"""A small Buchberger engine, projective emptiness and Hilbert numerators.

Internally polynomials are ``{monomial: int}`` dicts.  Over QQ the ints are
kept primitive (fraction-free reduction followed by content removal); over
F_p they are residues kept monic.  Pairs are chosen by the normal strategy
(smallest lcm first) and pruned with the coprime and chain criteria in the
Gebauer-Moeller form.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Callable, Iterable, Sequence

from .errors import PreconditionError, RingMismatchError
from .exactalg import PrimeField
from .polyring import ORDER_KEYS, Poly, Ring, TPoly


__all__ = [
    "TermOrder",
    "Ideal",
    "buchberger",
    "groebner_basis",
    "normal_form",
    "reduces_to_zero",
    "ideals_equal",
    "is_projectively_empty",
    "leading_monomials",
    "hilbert_series_numerator",
    "monomial_ideal_numerator",
    "count_standard_monomials",
    "s_polynomial",
    "find_projective_point",
    "find_affine_point",
]


@dataclass(frozen=True)
class TermOrder:
    tag: str = "grevlex"

    def __post_init__(self):
        if self.tag not in ORDER_KEYS:
            raise PreconditionError(f"unknown term order {self.tag!r}")

    @property
    def key(self):
        return ORDER_KEYS[self.tag]


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")


@dataclass(frozen=True)
class Ideal:
    ring: Ring
    generators: tuple = dc_field(default=())

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero())
        for g in gens:
            if g.ring != self.ring:
                raise RingMismatchError("generator outside the ideal's ring")
        object.__setattr__(self, "generators", gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def _require_homogeneous(self):
        if not self.is_homogeneous():
            raise PreconditionError("ideal generators must be homogeneous")


# -- internal coefficient arithmetic ------------------------------------------


class _Arith:
    """Coefficient handling for one field: ints over QQ, residues over F_p."""

    def __init__(self, field):
        self.field = field
        self.p = field.p if isinstance(field, PrimeField) else None

    def to_internal(self, poly: Poly) -> dict:
        if self.p is not None:
            return {m: c.value for m, c in poly.terms.items()}
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in poly.terms.values()), 1)
        return self.normalize({m: int(c * den) for m, c in poly.terms.items()}, None)

    def to_poly(self, ring: Ring, h: dict, lm) -> Poly:
        if self.p is not None:
            return ring.poly(h)
        lc = h[lm]
        return ring.poly({m: Fraction(c, lc) for m, c in h.items()})

    def normalize(self, h: dict, lm) -> dict:
        if not h:
            return h
        if self.p is not None:
            inv = pow(h[lm], -1, self.p)
            return {m: c * inv % self.p for m, c in h.items()}
        g = reduce(gcd, h.values())
        if lm is not None and h[lm] < 0:
            g = -g
        return {m: c // g for m, c in h.items()} if g != 1 else h

    def sub_multiple(self, h: dict, t, ch, g: dict, lm_g) -> dict:
        """Cancel term ``t`` (coefficient ``ch``) of h using g."""
        shift = tuple(a - b for a, b in zip(t, lm_g))
        out = dict(h)
        if self.p is not None:
            p = self.p
            f = ch * pow(g[lm_g], -1, p) % p
            for m, c in g.items():
                mm = tuple(a + b for a, b in zip(m, shift))
                v = (out.get(mm, 0) - f * c) % p
                if v:
                    out[mm] = v
                else:
                    out.pop(mm, None)
            return out
        lg = g[lm_g]
        d = gcd(lg, ch)
        a, b = lg // d, ch // d
        if a != 1:
            out = {m: c * a for m, c in out.items()}
        for m, c in g.items():
            mm = tuple(x + y for x, y in zip(m, shift))
            v = out.get(mm, 0) - b * c
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
        return out


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Basis:
    def __init__(self, arith: _Arith, key: Callable):
        self.arith = arith
        self.key = key
        self.polys: list[dict] = []
        self.lms: list[tuple] = []

    def lm(self, h: dict):
        return max(h, key=self.key)

    def add(self, h: dict) -> int:
        self.polys.append(h)
        self.lms.append(self.lm(h))
        return len(self.polys) - 1

    def reduce(self, h: dict, active: Iterable[int]) -> dict:
        """Full reduction of h modulo the active basis elements."""
        active = list(active)
        key = self.key
        done: set = set()
        while True:
            rest = [m for m in h if m not in done]
            if not rest:
                break
            t = max(rest, key=key)
            for i in active:
                if _divides(self.lms[i], t):
                    h = self.arith.sub_multiple(h, t, h[t], self.polys[i], self.lms[i])
                    if self.arith.p is None and h:
                        h = self.arith.normalize(h, None)
                    break
            else:
                done.add(t)
        if h:
            h = self.arith.normalize(h, self.lm(h))
        return h

    def spoly(self, i: int, j: int) -> dict:
        f, g = self.polys[i], self.polys[j]
        lf, lg = self.lms[i], self.lms[j]
        lcm = _lcm(lf, lg)
        sf = tuple(a - b for a, b in zip(lcm, lf))
        sg = tuple(a - b for a, b in zip(lcm, lg))
        cf, cg = f[lf], g[lg]
        if self.arith.p is not None:
            p = self.arith.p
            a, b = cg % p, cf % p
        else:
            d = gcd(cf, cg)
            a, b = cg // d, cf // d
        out: dict = {}
        for m, c in f.items():
            mm = tuple(x + y for x, y in zip(m, sf))
            out[mm] = out.get(mm, 0) + a * c
        for m, c in g.items():
            mm = tuple(x + y for x, y in zip(m, sg))
            out[mm] = out.get(mm, 0) - b * c
        if self.arith.p is not None:
            out = {m: c % self.arith.p for m, c in out.items()}
        return {m: c for m, c in out.items() if c}


def _update(basis: _Basis, G: list[int], B: list[tuple], h: int):
    """Gebauer-Moeller installation of the new element h."""
    lms = basis.lms
    lh = lms[h]
    C = [(h, g) for g in G]
    D: list[tuple] = []
    while C:
        pair = C.pop(0)
        g1 = pair[1]
        l1 = _lcm(lh, lms[g1])
        if _coprime(lh, lms[g1]) or not any(
            _divides(_lcm(lh, lms[g2]), l1) for _, g2 in C + D
        ):
            D.append(pair)
    E = [(a, b) for a, b in D if not _coprime(lms[a], lms[b])]
    B_new = []
    for g1, g2 in B:
        l12 = _lcm(lms[g1], lms[g2])
        if _divides(lh, l12) and _lcm(lms[g1], lh) != l12 and _lcm(lms[g2], lh) != l12:
            continue
        B_new.append((g1, g2))
    B_new.extend(E)
    G_new = [g for g in G if not _divides(lh, lms[g])]
    G_new.append(h)
    return G_new, B_new


def buchberger(polys: Sequence[Poly], order: TermOrder | str = GREVLEX) -> list[Poly]:
    """Reduced Groebner basis of the ideal generated by ``polys`` (any polynomials).

    Output is monic and sorted by decreasing leading monomial.
    """
    if isinstance(order, str):
        order = TermOrder(order)
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    ring = polys[0].ring
    if any(p.ring != ring for p in polys):
        raise RingMismatchError("generators live in different rings")
    arith = _Arith(ring.field)
    key = order.key
    basis = _Basis(arith, key)
    G: list[int] = []
    B: list[tuple] = []
    # inputs sorted by leading monomial keep the run deterministic
    inputs = sorted((arith.to_internal(p) for p in polys), key=lambda h: key(max(h, key=key)))
    for h in inputs:
        h = basis.reduce(h, G)
        if h:
            G, B = _update(basis, G, B, basis.add(h))
    while B:
        best = min(
            range(len(B)),
            key=lambda k: (key(_lcm(basis.lms[B[k][0]], basis.lms[B[k][1]])), B[k]),
        )
        i, j = B.pop(best)
        h = basis.reduce(basis.spoly(i, j), G)
        if h:
            G, B = _update(basis, G, B, basis.add(h))
    # minimal then reduced
    G = [g for g in G if not any(k != g and _divides(basis.lms[k], basis.lms[g]) for k in G)]
    reduced = []
    for g in G:
        h = _reduce_tail(basis, g, [k for k in G if k != g])
        reduced.append(arith.to_poly(ring, h, basis.lms[g]))
    reduced.sort(key=lambda p: key(p.leading_monomial(order.tag)), reverse=True)
    return reduced


def _reduce_tail(basis: _Basis, g: int, others: list[int]) -> dict:
    """Reduce every non-leading term of basis element g modulo ``others``."""
    h = dict(basis.polys[g])
    lm = basis.lms[g]
    key = basis.key
    done = {lm}
    while True:
        rest = [m for m in h if m not in done]
        if not rest:
            break
        t = max(rest, key=key)
        for i in others:
            if _divides(basis.lms[i], t):
                h = basis.arith.sub_multiple(h, t, h[t], basis.polys[i], basis.lms[i])
                break
        else:
            done.add(t)
    return basis.arith.normalize(h, lm)


def groebner_basis(ideal: Ideal, order: TermOrder | str = GREVLEX) -> list[Poly]:
    ideal._require_homogeneous()
    return buchberger(list(ideal.generators), order)


def normal_form(p: Poly, gb: Sequence[Poly], order: TermOrder | str = GREVLEX) -> Poly:
    """Remainder of p on division by gb (full reduction, field coefficients)."""
    if isinstance(order, str):
        order = TermOrder(order)
    ring = p.ring
    lead = [(g.leading_monomial(order.tag), g) for g in gb]
    h = p
    rem = ring.zero
    while h:
        t = h.leading_monomial(order.tag)
        c = h.terms[t]
        for lm, g in lead:
            if _divides(lm, t):
                shift = tuple(a - b for a, b in zip(t, lm))
                factor = c / g.terms[lm]
                h = h - Poly(ring, {tuple(x + y for x, y in zip(m, shift)): cg * factor for m, cg in g.terms.items()})
                break
        else:
            rem = rem + Poly(ring, {t: c})
            h = h - Poly(ring, {t: c})
    return rem


def reduces_to_zero(p: Poly, gb: Sequence[Poly], order: TermOrder | str = GREVLEX) -> bool:
    return normal_form(p, gb, order).is_zero()


def s_polynomial(f: Poly, g: Poly, order: TermOrder | str = GREVLEX) -> Poly:
    tag = order.tag if isinstance(order, TermOrder) else order
    lf, lg = f.leading_monomial(tag), g.leading_monomial(tag)
    lcm = _lcm(lf, lg)
    ring = f.ring
    mf = Poly(ring, {tuple(a - b for a, b in zip(lcm, lf)): ring.field.one / f.terms[lf]})
    mg = Poly(ring, {tuple(a - b for a, b in zip(lcm, lg)): ring.field.one / g.terms[lg]})
    return mf * f - mg * g


def ideals_equal(gens_a: Sequence[Poly], gens_b: Sequence[Poly]) -> bool:
    """Mutual containment via normal forms against each side's Groebner basis."""
    ga, gb = buchberger(gens_a), buchberger(gens_b)
    return all(reduces_to_zero(p, gb) for p in gens_a) and all(reduces_to_zero(p, ga) for p in gens_b)


def leading_monomials(gb: Sequence[Poly], order: TermOrder | str = GREVLEX) -> list[tuple]:
    tag = order.tag if isinstance(order, TermOrder) else order
    return [g.leading_monomial(tag) for g in gb]


def is_projectively_empty(ideal: Ideal) -> bool:
    """True iff V(ideal) is empty in projective space over the algebraic closure.

    Certified by a pure power of every variable among the leading monomials.
    """
    ideal._require_homogeneous()
    n = ideal.ring.nvars
    lms = leading_monomials(groebner_basis(ideal))
    if any(sum(m) == 0 for m in lms):
        return True
    pure = {next(i for i, e in enumerate(m) if e) for m in lms if sum(1 for e in m if e) == 1}
    return len(pure) == n


# -- Hilbert series --------------------------------------------------------------


def _minimalize(gens: Iterable[tuple]) -> tuple:
    gens = sorted(set(gens), key=lambda m: (sum(m), m))
    out: list[tuple] = []
    for m in gens:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return tuple(out)


@lru_cache(maxsize=4096)
def _numerator(gens: tuple) -> TPoly:
    if not gens:
        return TPoly([1])
    if any(sum(m) == 0 for m in gens):
        return TPoly()
    # pairwise coprime generators: product formula
    if all(_coprime(a, b) for k, a in enumerate(gens) for b in gens[k + 1 :]):
        out = TPoly([1])
        for m in gens:
            out = out * (TPoly([1]) - TPoly.monomial(sum(m)))
        return out
    *rest, last = gens
    rest = tuple(rest)
    colon = _minimalize(tuple(max(a - b, 0) for a, b in zip(m, last)) for m in rest)
    return _numerator(rest) - TPoly.monomial(sum(last)) * _numerator(colon)


def monomial_ideal_numerator(gens: Iterable[tuple]) -> TPoly:
    """K-polynomial of the quotient by a monomial ideal."""
    return _numerator(_minimalize(gens))


def hilbert_series_numerator(ideal: Ideal) -> TPoly:
    """N(t) with HS(ring/ideal) = N(t) / (1-t)^nvars."""
    ideal._require_homogeneous()
    if not ideal.generators:
        return TPoly([1])
    return monomial_ideal_numerator(leading_monomials(groebner_basis(ideal)))


def count_standard_monomials(lms: Sequence[tuple], nvars: int, degree: int) -> int:
    """Number of degree-``degree`` monomials not divisible by any of ``lms``."""
    count = 0

    def rec(i, left, prefix):
        nonlocal count
        if i == nvars - 1:
            m = tuple(prefix + [left])
            if not any(_divides(g, m) for g in lms):
                count += 1
            return
        for e in range(left + 1):
            rec(i + 1, left - e, prefix + [e])

    if nvars == 0:
        return int(degree == 0 and not any(sum(g) == 0 for g in lms))
    rec(0, degree, [])
    return count


# -- point finding -------------------------------------------------------------


def _rational_roots(values: dict) -> list[Fraction]:
    """Rational roots of a univariate polynomial given as {degree: coefficient}."""
    import sympy

    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t**k for k, c in values.items())
    roots = sympy.Poly(expr, t, domain="QQ").ground_roots()
    return sorted((Fraction(int(r.p), int(r.q)) for r in roots), key=lambda r: (abs(r), r))


def _univariate_in(g: Poly, v: int) -> bool:
    return g.variables() <= {v} and g.degree() > 0


def _specialize(p: Poly, v: int, value) -> Poly:
    ring = p.ring
    out = ring.zero
    for m, c in p.terms.items():
        e = m[v]
        mm = m[:v] + (0,) + m[v + 1 :]
        out = out + Poly(ring, {mm: c * value**e}) if e else out + Poly(ring, {mm: c})
    return out


def find_affine_point(
    polys: Sequence[Poly],
    free_values: Sequence = (0, 1, -1, 2, -2),
) -> list | None:
    """A common zero of ``polys`` with coordinates in the coefficient field.

    Eliminates the last variable with a lex basis, tries its roots (or
    ``free_values`` if it is unconstrained) and recurses.  Over F_p callers
    add the field equations, which makes the search exhaustive; over QQ it is
    exhaustive only on zero-dimensional branches.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return None
    ring = polys[0].ring
    field = ring.field
    n = ring.nvars

    def rec(current: list[Poly], v: int, assigned: dict):
        gb = buchberger(current, LEX)
        if any(g.degree() == 0 for g in gb):
            return None
        if v < 0:
            return [assigned[i] for i in range(n)]
        uni = [g for g in gb if _univariate_in(g, v)]
        if uni:
            g = min(uni, key=lambda q: q.degree())
            coeffs = {m[v]: c for m, c in g.terms.items()}
            if isinstance(field, PrimeField):
                cands = [x for x in field.elements() if not _eval_uni(coeffs, x, field)]
            else:
                cands = _rational_roots(coeffs)
        elif any(v in g.variables() for g in gb):
            cands = [field(x) for x in free_values]
            if isinstance(field, PrimeField):
                cands = list(field.elements())
        else:
            cands = [field.zero]
        for x in cands:
            nxt = [_specialize(g, v, x) for g in gb]
            nxt = [q for q in nxt if not q.is_zero()]
            if any(q.degree() == 0 for q in nxt):
                continue
            got = rec(nxt, v - 1, {**assigned, v: x}) if nxt else _fill(assigned, v, x, n, field)
            if got is not None:
                return got
        return None

    return rec(polys, n - 1, {})


def _fill(assigned, v, x, n, field):
    out = {**assigned, v: x}
    return [out.get(i, field.zero) for i in range(n)]


def _eval_uni(coeffs: dict, x, field):
    s = field.zero
    for k, c in coeffs.items():
        s = s + c * x**k
    return s


def _field_equations(ring: Ring, variables: Iterable[int]) -> list[Poly]:
    p = ring.field.p
    return [ring.var(i) ** p - ring.var(i) for i in variables]


def find_projective_point(ideal: Ideal, rational_only: bool = True) -> list | None:
    """A point of V(ideal) in P^{n-1} with coordinates in the coefficient field.

    Charts are visited in order (first nonzero coordinate equal to 1), so the
    returned point is normalized.  Over F_p the field equations make the answer
    exact: ``None`` means there is no F_p-rational point.
    """
    ideal._require_homogeneous()
    ring = ideal.ring
    n = ring.nvars
    field = ring.field
    fp = isinstance(field, PrimeField)
    for r in range(n):
        fix = [ring.var(s) for s in range(r)] + [ring.var(r) - 1]
        extra = _field_equations(ring, range(r + 1, n)) if fp else []
        system = list(ideal.generators) + fix + extra
        gb = buchberger(system, GREVLEX)
        if any(g.degree() == 0 for g in gb):
            continue
        pt = find_affine_point(gb)
        if pt is not None:
            return pt
    return None
