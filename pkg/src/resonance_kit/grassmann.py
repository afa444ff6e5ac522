"""Plücker ideals of Gr(2, n) and linear sections of Gr(2, 5).

A codimension-3 section of Gr(2, 5) is given by the annihilator L^perp (three
2-forms).  It is smooth and of the expected dimension exactly when P(L^perp)
contains no decomposable form, so smoothness reuses the resonance engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import InputFormatError, PreconditionError
from .exactalg import QQ, DenseMatrix, PrimeField, kernel, rank, rref
from .groebner import Ideal, ideals_equal
from .polyring import Poly, Ring, linear_change
from .resonance import (
    KernelSubspace,
    WedgeBasis,
    decomposable_in_subspace,
    hyperplane_section_rank,
    meets_grassmannian_over_closure,
)
from .skewpfaff import generic_skew, principal_pfaffians


@dataclass(frozen=True)
class PluckerContext:
    n: int
    field: object = QQ

    def __post_init__(self):
        if self.n < 2:
            raise PreconditionError(f"need n >= 2, got {self.n}")

    @property
    def wedge(self) -> WedgeBasis:
        return WedgeBasis(self.n)

    @cached_property
    def ring(self) -> Ring:
        return generic_skew(self.n, self.field).ring

    def generic_matrix(self):
        return generic_skew(self.n, self.field)


def pluecker_quadrics(ctx: PluckerContext) -> list[Poly]:
    """Coordinates of w ^ w / 2 for the symbolic 2-form w = sum z_ij e_i ^ e_j."""
    if ctx.n < 4:
        raise PreconditionError(f"the Plücker ideal needs n >= 4, got {ctx.n}")
    return ctx.wedge.square_components(ctx.ring.gens())


def pluecker_ideal(ctx: PluckerContext) -> Ideal:
    return Ideal(ctx.ring, tuple(pluecker_quadrics(ctx)))


def pfaffians_match_pluecker(
    ctx: PluckerContext, change: DenseMatrix | None = None, drop: int | None = None
) -> bool:
    """Whether the principal Pfaffians of the generic 5x5 matrix generate the Plücker ideal.

    ``change`` applies the same invertible substitution z -> change z to both
    generator sets; ``drop`` removes one Pfaffian (0-based) first.
    """
    if ctx.n != 5:
        raise PreconditionError(f"the Pfaffian description is for n = 5, got {ctx.n}")
    pfs = principal_pfaffians(ctx.generic_matrix())
    if drop is not None:
        pfs = [p for k, p in enumerate(pfs) if k != drop]
    quads = pluecker_quadrics(ctx)
    if change is not None:
        ring = ctx.ring
        if change.rows != ring.nvars or change.cols != ring.nvars:
            raise PreconditionError(f"change of variables must be {ring.nvars}x{ring.nvars}")
        if rank(change) != ring.nvars:
            raise PreconditionError("change of variables is singular")
        subst = [ring.linear_form(change.row(i)) for i in range(ring.nvars)]
        pfs = [linear_change(p, subst) for p in pfs]
        quads = [linear_change(q, subst) for q in quads]
    return ideals_equal(pfs, quads)


def _echelon(vectors: Sequence[Sequence], field, size: int) -> tuple:
    if not vectors:
        return ()
    r, rk, _ = rref(DenseMatrix.from_rows([list(v) for v in vectors], field, size))
    return tuple(r.row(i) for i in range(rk))


@dataclass(frozen=True)
class LinearSection:
    """P(L) ∩ Gr(2, n), stored with both L and its annihilator L^perp."""

    n: int
    field: object
    span: tuple  # basis of L in the coordinates z_ij
    lperp: tuple  # basis of L^perp, 2-forms on V

    def __post_init__(self):
        size = self.n * (self.n - 1) // 2
        if len(self.span) + len(self.lperp) != size:
            raise PreconditionError("dim L + dim L^perp must equal n(n-1)/2")
        for f in self.lperp:
            for v in self.span:
                if sum((a * b for a, b in zip(f, v)), self.field.zero):
                    raise PreconditionError("L^perp does not annihilate L")

    @classmethod
    def from_lperp(cls, n: int, forms: Sequence[Sequence], field=QQ) -> LinearSection:
        size = n * (n - 1) // 2
        forms = [tuple(field(x) for x in f) for f in forms]
        if any(len(f) != size for f in forms):
            raise PreconditionError(f"each 2-form needs {size} coordinates")
        if forms and rank(DenseMatrix.from_rows(forms, field, size)) != len(forms):
            raise PreconditionError("the 2-forms spanning L^perp are dependent")
        span = tuple(kernel(DenseMatrix.from_rows(forms, field, size))) if forms else _identity(size, field)
        return cls(n, field, span, _echelon(forms, field, size))

    @classmethod
    def from_span(cls, n: int, vectors: Sequence[Sequence], field=QQ) -> LinearSection:
        size = n * (n - 1) // 2
        vectors = [tuple(field(x) for x in v) for v in vectors]
        if vectors and rank(DenseMatrix.from_rows(vectors, field, size)) != len(vectors):
            raise PreconditionError("the spanning vectors of L are dependent")
        lperp = kernel(DenseMatrix.from_rows(vectors, field, size)) if vectors else _identity(size, field)
        return cls(n, field, _echelon(vectors, field, size), _echelon(lperp, field, size))

    @property
    def codim(self) -> int:
        return len(self.lperp)

    def linear_equations(self) -> list[Poly]:
        ring = PluckerContext(self.n, self.field).ring
        return [ring.linear_form(f) for f in self.lperp]

    def to_json(self) -> dict:
        from .io import scalar_to_json

        return {
            "kind": "section",
            "n": self.n,
            "field": self.field.tag,
            "Lperp": [[scalar_to_json(x) for x in f] for f in self.lperp],
        }

    @classmethod
    def from_json(cls, doc: dict) -> LinearSection:
        from .exactalg import field_from_tag
        from .io import scalar_from_json

        n = doc.get("n")
        forms = doc.get("Lperp")
        if not isinstance(n, int) or isinstance(n, bool) or n < 2 or not isinstance(forms, list):
            raise InputFormatError("section needs integer 'n' >= 2 and list 'Lperp'")
        field = field_from_tag(doc.get("field", "Q"))
        size = n * (n - 1) // 2
        for f in forms:
            if not isinstance(f, list) or len(f) != size:
                raise InputFormatError(f"each L^perp row needs {size} scalars")
        return cls.from_lperp(n, [[scalar_from_json(x, field) for x in f] for f in forms], field)

    def __eq__(self, other):
        return (
            isinstance(other, LinearSection)
            and self.n == other.n
            and self.field == other.field
            and self.lperp == other.lperp
        )

    def __hash__(self):
        return hash((self.n, self.lperp))


def _identity(size: int, field) -> tuple:
    return tuple(tuple(field.one if i == j else field.zero for j in range(size)) for i in range(size))


@dataclass
class SmoothnessReport:
    verdict: str  # smooth_transverse | singular_or_degenerate
    witness: tuple | None
    witness_field: object | None
    empty_over_closure: bool
    field: object

    def to_json(self) -> dict:
        from .io import scalar_to_json

        return {
            "verdict": self.verdict,
            "field": self.field.tag,
            "witness": [scalar_to_json(x) for x in self.witness] if self.witness else None,
            "witness_field": self.witness_field.tag if self.witness_field else None,
            "empty_over_closure": self.empty_over_closure,
        }


EXPECTED_CODIM = {4: 1, 5: 3}


def section_smoothness(s: LinearSection) -> SmoothnessReport:
    """Decide smoothness through the decomposable points of P(L^perp).

    Over F_p the verdict concerns F_p-rational points (comparable with
    enumeration); ``empty_over_closure`` is reported alongside.
    """
    want = EXPECTED_CODIM.get(s.n)
    if want is None:
        raise PreconditionError(f"sections are supported for n in {sorted(EXPECTED_CODIM)}, got {s.n}")
    if s.codim != want:
        raise PreconditionError(f"L^perp must have dimension {want} for n = {s.n}, got {s.codim}")
    k = KernelSubspace(WedgeBasis(s.n), s.lperp, s.field)
    closure = meets_grassmannian_over_closure(k)
    w = decomposable_in_subspace(k)
    if w is None:
        return SmoothnessReport("smooth_transverse", None, None, not closure, s.field)
    return SmoothnessReport("singular_or_degenerate", w.omega, w.field, not closure, s.field)


def witness_is_valid(s: LinearSection, report: SmoothnessReport) -> bool:
    """The witness satisfies the Plücker quadrics and lies in P(L^perp)."""
    if report.witness is None:
        return report.verdict == "smooth_transverse"
    fld = report.witness_field
    omega = tuple(fld(x) for x in report.witness)
    wb = WedgeBasis(s.n)
    if not any(omega) or not wb.is_decomposable(omega):
        return False
    forms = [tuple(fld(x) for x in f) for f in s.lperp]
    size = wb.size
    return rank(DenseMatrix.from_rows(forms + [omega], fld, size)) == len(forms)


def rank_test_n4(s: LinearSection) -> str:
    """n = 4: the hyperplane section of Q is singular iff Q restricted to it has rank <= 4."""
    if s.n != 4 or s.codim != 1:
        raise PreconditionError("the rank test needs n = 4 and a hyperplane section")
    low = hyperplane_section_rank(s.lperp[0], s.field) <= 4
    return "singular_or_degenerate" if low else "smooth_transverse"


def bruteforce_section(s: LinearSection, p: int | None = None) -> tuple | None:
    """First point of P(L^perp) ∩ Gr(2, n) over F_p by enumeration."""
    from .resonance import bruteforce_decomposable

    k = KernelSubspace(WedgeBasis(s.n), s.lperp, s.field)
    if p is None and not isinstance(s.field, PrimeField):
        raise PreconditionError("enumeration needs a prime")
    return bruteforce_decomposable(k, p)
