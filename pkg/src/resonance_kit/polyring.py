"""Sparse multivariate polynomials over a fixed, ordered variable list.

Polynomials are dicts ``exponent tuple -> nonzero scalar`` wrapped in
:class:`Poly`.  Printing and the default term order are graded reverse
lexicographic.  Linear forms and quadratic forms are ordinary polynomials;
the helpers here read off their coefficient vectors and Gram matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InputFormatError, PreconditionError, RingMismatchError
from .exactalg import QQ, DenseMatrix, Residue, rank

Monomial = tuple


def grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m: Monomial):
    return m


ORDER_KEYS = {"grevlex": grevlex_key, "lex": lex_key}


@dataclass(frozen=True)
class Ring:
    """Polynomial ring ``field[names]``."""

    names: tuple
    field: object = QQ

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise PreconditionError(f"repeated variable names in {self.names}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def poly(self, terms: Mapping[Monomial, object]) -> Poly:
        out = {}
        for m, c in terms.items():
            c = self.field(c)
            if c:
                if len(m) != self.nvars:
                    raise PreconditionError(f"monomial {m} has wrong length for {self.nvars} variables")
                out[tuple(m)] = c
        return Poly(self, out)

    @property
    def zero(self) -> Poly:
        return Poly(self, {})

    @property
    def one(self) -> Poly:
        return self.constant(1)

    def constant(self, c) -> Poly:
        return self.poly({(0,) * self.nvars: c})

    def var(self, i) -> Poly:
        if isinstance(i, str):
            i = self.names.index(i)
        m = [0] * self.nvars
        m[i] = 1
        return Poly(self, {tuple(m): self.field.one})

    def gens(self) -> list[Poly]:
        return [self.var(i) for i in range(self.nvars)]

    def linear_form(self, coeffs: Sequence) -> Poly:
        if len(coeffs) != self.nvars:
            raise PreconditionError(f"{len(coeffs)} coefficients for {self.nvars} variables")
        terms = {}
        for i, c in enumerate(coeffs):
            m = [0] * self.nvars
            m[i] = 1
            terms[tuple(m)] = c
        return self.poly(terms)

    def with_field(self, field) -> Ring:
        return Ring(self.names, field)

    def parse(self, text: str) -> Poly:
        return parse_poly(self, text)


class Poly:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{other.ring.names} vs {self.ring.names}")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.field(other)
            if not c:
                return self.ring.zero
            return Poly(self.ring, {m: a * c for m, a in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return Poly(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PreconditionError("negative power")
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> Poly:
        return self * c

    # queries --------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, Residue)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def monomials(self, order: str = "grevlex") -> list[Monomial]:
        return sorted(self.terms, key=ORDER_KEYS[order], reverse=True)

    def leading_monomial(self, order: str = "grevlex") -> Monomial:
        return max(self.terms, key=ORDER_KEYS[order])

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(m), self.ring.field.zero)

    def constant_value(self):
        if any(sum(m) for m in self.terms):
            raise PreconditionError(f"{self} is not constant")
        return self.coefficient((0,) * self.ring.nvars)

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def linear_coefficients(self) -> tuple:
        """Coefficient vector of a linear form (degree 1 or zero)."""
        if self.terms and not (self.is_homogeneous() and self.degree() == 1):
            raise PreconditionError(f"{self} is not a linear form")
        n = self.ring.nvars
        out = [self.ring.field.zero] * n
        for m, c in self.terms.items():
            out[m.index(1)] = c
        return tuple(out)

    def evaluate(self, point: Sequence):
        field = self.ring.field
        total = field.zero
        for m, c in self.terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t = t * x**e
            total = total + t
        return total

    def substitute(self, subst: Sequence[Poly]) -> Poly:
        return linear_change(self, subst)

    def map_coefficients(self, ring: Ring) -> Poly:
        """Same monomials, coefficients coerced into ``ring`` (e.g. reduction mod p)."""
        if ring.nvars != self.ring.nvars:
            raise RingMismatchError("variable count differs")
        return ring.poly(self.terms)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return render_poly(self)


# -- text rendering and parsing ----------------------------------------------


def _render_monomial(names, m) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render_poly(p: Poly, order: str = "grevlex") -> str:
    if not p.terms:
        return "0"
    out = []
    for m in p.monomials(order):
        c = p.terms[m]
        if isinstance(c, Residue):
            neg, mag = False, str(c.value)
        else:
            neg, mag = c < 0, str(abs(c))
        mono = _render_monomial(p.ring.names, m)
        if mono:
            body = mono if mag == "1" else f"{mag}*{mono}"
        else:
            body = mag
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


def parse_poly(ring: Ring, text: str) -> Poly:
    """Parse ``"x0*x4 - x1*x3 + x2^2"``-style text into ``ring``.

    Accepts ``^`` or ``**`` for powers, integer and ``a/b`` coefficients and
    parentheses.  Unknown variable names are an error.
    """
    import sympy
    from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

    symbols = {name: sympy.Symbol(name) for name in ring.names}
    try:
        expr = parse_expr(
            text,
            local_dict=symbols,
            global_dict={"Integer": sympy.Integer, "Rational": sympy.Rational, "Symbol": sympy.Symbol},
            transformations=standard_transformations + (convert_xor,),
            evaluate=True,
        )
    except Exception as exc:
        raise InputFormatError(f"cannot parse polynomial {text!r}: {exc}") from exc
    unknown = {str(s) for s in getattr(expr, "free_symbols", ())} - set(ring.names)
    if unknown:
        raise InputFormatError(f"unknown variables {sorted(unknown)} in {text!r}")
    gens = [symbols[n] for n in ring.names]
    try:
        sp = sympy.Poly(expr, *gens, domain="QQ") if gens else None
    except Exception as exc:
        raise InputFormatError(f"not a polynomial: {text!r}") from exc
    if sp is None:
        try:
            return ring.constant(Fraction(str(sympy.Rational(expr))))
        except Exception as exc:
            raise InputFormatError(f"not a constant: {text!r}") from exc
    terms = {}
    for m, c in sp.terms():
        terms[tuple(int(e) for e in m)] = Fraction(int(c.p), int(c.q))
    return ring.poly(terms)


# -- substitutions -------------------------------------------------------------


def poly_arith(a: Poly, b, op: str) -> Poly:
    """``op`` is ``"add"``, ``"mul"`` or ``"scale"`` (``b`` a scalar)."""
    if op == "add":
        return a + a._coerce(b)
    if op == "mul":
        return a * a._coerce(b)
    if op == "scale":
        return a.scale(b)
    raise PreconditionError(f"unknown operation {op!r}")


def linear_change(p: Poly, subst: Sequence[Poly]) -> Poly:
    """Replace variable i of ``p`` by ``subst[i]`` and expand.

    The substituted forms may live in a different ring; the result lives in
    theirs.
    """
    if len(subst) != p.ring.nvars:
        raise PreconditionError(f"{len(subst)} substitutions for {p.ring.nvars} variables")
    if not subst:
        return p
    target = subst[0].ring
    if any(s.ring != target for s in subst):
        raise RingMismatchError("substitution forms live in different rings")
    if target.field != p.ring.field:
        raise RingMismatchError("substitution changes the coefficient field")
    powers: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = subst[i] ** e
        return powers[key]

    result = target.zero
    for m, c in p.terms.items():
        t = target.constant(c)
        for i, e in enumerate(m):
            if e:
                t = t * power(i, e)
        result = result + t
    return result


# -- quadratic forms -----------------------------------------------------------


def gram_matrix(q: Poly) -> DenseMatrix:
    """Symmetric G with q(x) = x^T G x."""
    field = q.ring.field
    if field.characteristic == 2:
        raise PreconditionError("Gram matrices need characteristic != 2")
    if q.terms and not (q.is_homogeneous() and q.degree() == 2):
        raise PreconditionError(f"{q} is not a quadratic form")
    n = q.ring.nvars
    half = field.one / field(2)
    g = [[field.zero] * n for _ in range(n)]
    for m, c in q.terms.items():
        idx = [i for i, e in enumerate(m) for _ in range(e)]
        i, j = idx
        if i == j:
            g[i][i] = c
        else:
            g[i][j] = g[j][i] = c * half
    return DenseMatrix.from_rows(g, field, n)


def quadric_from_gram(ring: Ring, g: DenseMatrix) -> Poly:
    n = ring.nvars
    terms = {}
    for i in range(n):
        for j in range(i, n):
            c = g[i, j] if i == j else g[i, j] + g[j, i]
            if c:
                m = [0] * n
                m[i] += 1
                m[j] += 1
                terms[tuple(m)] = c
    return ring.poly(terms)


def quadric_rank(q: Poly) -> int:
    if q.ring.field.characteristic == 2:
        raise PreconditionError("quadric rank is undefined in characteristic 2")
    if not q.terms:
        return 0
    return rank(gram_matrix(q))


def restrict_linear(p: Poly, basis: Sequence[Sequence], names: Iterable[str] | None = None) -> Poly:
    """Pull ``p`` back along the parametrization ``t -> sum t_r basis[r]``."""
    k = len(basis)
    names = tuple(names) if names is not None else tuple(f"t{r}" for r in range(k))
    sub_ring = Ring(names, p.ring.field)
    subst = [sub_ring.linear_form([basis[r][i] for r in range(k)]) for i in range(p.ring.nvars)]
    return linear_change(p, subst)


# -- integer polynomials in t (Hilbert numerators) -------------------------


class TPoly:
    """Integer polynomial in one variable t, as a coefficient tuple."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(int(x) for x in coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> TPoly:
        if not d:
            return cls()
        if min(d) < 0:
            raise PreconditionError("negative powers of t")
        c = [0] * (max(d) + 1)
        for k, v in d.items():
            c[k] += v
        return cls(c)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> TPoly:
        return cls.from_dict({k: c})

    def __add__(self, other: TPoly) -> TPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return TPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> TPoly:
        return TPoly(-x for x in self.coeffs)

    def __sub__(self, other: TPoly) -> TPoly:
        return self + (-other)

    def __mul__(self, other: TPoly) -> TPoly:
        if not self.coeffs or not other.coeffs:
            return TPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return TPoly(out)

    def __eq__(self, other):
        return isinstance(other, TPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def as_dict(self) -> dict[int, int]:
        return {k: c for k, c in enumerate(self.coeffs) if c}

    def series(self, nvars: int, up_to: int) -> list[int]:
        """Coefficients of self / (1-t)^nvars through degree ``up_to``."""
        from math import comb

        out = []
        for d in range(up_to + 1):
            s = 0
            for k, c in enumerate(self.coeffs[: d + 1]):
                if c:
                    s += c * (comb(d - k + nvars - 1, nvars - 1) if nvars else int(d == k))
            out.append(s)
        return out

    def __repr__(self):
        return f"TPoly({list(self.coeffs)})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> TPoly:
        """Inverse of ``str``: ``"1 - 5t^2 + 5t^3 - t^5"``."""
        import re

        s = text.replace(" ", "").replace("*", "")
        if s in ("", "0"):
            return cls()
        if s[0] not in "+-":
            s = "+" + s
        d: dict[int, int] = {}
        for sign, num, tee, exp in re.findall(r"([+-])(\d*)(t?)(?:\^(\d+))?", s):
            if not num and not tee:
                raise InputFormatError(f"cannot parse {text!r}")
            c = int(num) if num else 1
            k = (int(exp) if exp else 1) if tee else 0
            d[k] = d.get(k, 0) + (c if sign == "+" else -c)
        rebuilt = "".join(m.group(0) for m in re.finditer(r"[+-]\d*t?(?:\^\d+)?", s))
        if rebuilt != s:
            raise InputFormatError(f"cannot parse {text!r}")
        return cls.from_dict(d)
