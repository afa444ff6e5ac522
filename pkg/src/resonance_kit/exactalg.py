"""Exact scalars over QQ and prime fields, and dense linear algebra on them.

Rationals are :class:`fractions.Fraction`; residues mod p are
:class:`Residue`.  A field object converts foreign values into its own
scalars (``QQ(3)``, ``GF(5)(7)``) and is carried by every matrix and ring
so that two fields are never silently mixed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import FieldMismatchError, InputFormatError, PreconditionError

__all__ = [
    "QQ",
    "GF",
    "Field",
    "PrimeField",
    "RationalField",
    "Residue",
    "DenseMatrix",
    "field_from_tag",
    "rref",
    "det_and_inverse",
    "rank",
    "kernel",
    "complete_to_basis",
    "normalize_vector",
]


class Residue:
    """An element of Z/pZ, stored as an int in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _other(self, other) -> int:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldMismatchError(f"cannot combine F_{self.p} and F_{other.p} scalars")
            return other.value
        if isinstance(other, int):
            return other
        raise FieldMismatchError(f"cannot combine F_{self.p} scalar with {type(other).__name__}")

    def __add__(self, other):
        return Residue(self.value + self._other(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.value - self._other(other), self.p)

    def __rsub__(self, other):
        return Residue(self._other(other) - self.value, self.p)

    def __mul__(self, other):
        return Residue(self.value * self._other(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = self._other(other) % self.p
        if d == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Residue(self.value * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Residue(self._other(other), self.p) / self

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return Residue(1, self.p) / Residue(pow(self.value, -k, self.p), self.p)
        return Residue(pow(self.value, k, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


@lru_cache(maxsize=None)
def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RationalField:
    """The field of rational numbers."""

    characteristic = 0
    tag = "Q"

    def __call__(self, x) -> Fraction:
        if isinstance(x, Residue):
            raise FieldMismatchError("cannot coerce a residue into QQ")
        if isinstance(x, bool) or isinstance(x, float):
            raise FieldMismatchError(f"refusing inexact or boolean scalar {x!r}")
        if isinstance(x, str):
            try:
                return Fraction(x)
            except ValueError as exc:
                raise InputFormatError(f"not a rational number: {x!r}") from exc
        return Fraction(x)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def __repr__(self):
        return "QQ"


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p, for a prime ``p < 2**31``."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not (2 <= self.p < 2**31) or not _is_prime(self.p):
            raise PreconditionError(f"{self.p!r} is not a prime below 2^31")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def tag(self) -> str:
        return f"Fp:{self.p}"

    def __call__(self, x) -> Residue:
        if isinstance(x, Residue):
            if x.p != self.p:
                raise FieldMismatchError(f"cannot coerce F_{x.p} scalar into F_{self.p}")
            return x
        if isinstance(x, bool) or isinstance(x, float):
            raise FieldMismatchError(f"refusing inexact or boolean scalar {x!r}")
        if isinstance(x, str):
            try:
                x = Fraction(x)
            except ValueError as exc:
                raise InputFormatError(f"not a number: {x!r}") from exc
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise PreconditionError(f"{x} has no reduction mod {self.p}")
            return Residue(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Residue(int(x), self.p)

    @property
    def zero(self) -> Residue:
        return Residue(0, self.p)

    @property
    def one(self) -> Residue:
        return Residue(1, self.p)

    def contains(self, x) -> bool:
        return isinstance(x, Residue) and x.p == self.p

    def elements(self) -> Iterator[Residue]:
        for i in range(self.p):
            yield Residue(i, self.p)

    def __repr__(self):
        return f"GF({self.p})"


Field = RationalField | PrimeField  # type: ignore[operator]

QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag: str):
    """Parse ``"Q"`` or ``"Fp:<p>"``."""
    if tag in ("Q", "QQ"):
        return QQ
    if isinstance(tag, str) and tag.startswith("Fp:"):
        try:
            p = int(tag[3:])
        except ValueError as exc:
            raise InputFormatError(f"bad field tag {tag!r}") from exc
        return PrimeField(p)
    raise InputFormatError(f"unknown field tag {tag!r}")


@dataclass(frozen=True)
class DenseMatrix:
    """Row-major dense matrix over one field."""

    rows: int
    cols: int
    entries: tuple
    field: object = QQ

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise PreconditionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field=QQ, cols: int | None = None) -> DenseMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise PreconditionError("ragged rows")
        return cls(len(rows), cols, tuple(field(x) for r in rows for x in r), field)

    @classmethod
    def identity(cls, n: int, field=QQ) -> DenseMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], field)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> DenseMatrix:
        return DenseMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.field, self.rows
        )

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field!r} @ {other.field!r}")
        if self.cols != other.rows:
            raise PreconditionError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        zero = self.field.zero
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                s = zero
                for k in range(self.cols):
                    if r[k]:
                        s = s + r[k] * other[k, j]
                out.append(s)
        return DenseMatrix(self.rows, other.cols, tuple(out), self.field)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows))


def _check_field(m: DenseMatrix) -> None:
    for x in m.entries:
        if not m.field.contains(x):
            raise FieldMismatchError(f"entry {x!r} does not belong to {m.field!r}")


def normalize_vector(v: Sequence) -> tuple:
    """Scale so that the first nonzero coordinate is 1."""
    for x in v:
        if x:
            return tuple(y / x for y in v)
    return tuple(v)


def _gauss_jordan(rows: list[list], ncols: int, field) -> tuple[list[list], list[int], object]:
    """In-place reduction to RREF; returns (rows, pivot columns, det factor).

    The det factor is the product of pivots times the sign of the row
    swaps, meaningful only for square input of full rank.
    """
    one = field.one
    det = one
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            det = -det
        pv = rows[r][c]
        det = det * pv
        inv = one / pv
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                rr = rows[r]
                rows[i] = [ri[k] - f * rr[k] if rr[k] else ri[k] for k in range(len(ri))]
        pivots.append(c)
        r += 1
    return rows, pivots, det


def rref(m: DenseMatrix) -> tuple[DenseMatrix, int, list[tuple]]:
    """Reduced row echelon form, rank and a normalized right-kernel basis."""
    _check_field(m)
    rows, pivots, _ = _gauss_jordan(m.to_rows(), m.cols, m.field)
    reduced = DenseMatrix(m.rows, m.cols, tuple(x for r in rows for x in r), m.field)
    zero, one = m.field.zero, m.field.one
    basis = []
    pivot_set = set(pivots)
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [zero] * m.cols
        v[f] = one
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        basis.append(normalize_vector(v))
    return reduced, len(pivots), basis


def rank(m: DenseMatrix) -> int:
    return rref(m)[1]


def kernel(m: DenseMatrix) -> list[tuple]:
    return rref(m)[2]


def det_and_inverse(m: DenseMatrix) -> tuple[object, DenseMatrix | None]:
    if not m.is_square():
        raise PreconditionError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    _check_field(m)
    n = m.rows
    zero, one = m.field.zero, m.field.one
    aug = [list(m.row(i)) + [one if i == j else zero for j in range(n)] for i in range(n)]
    rows, pivots, det = _gauss_jordan(aug, n, m.field)
    if pivots != list(range(n)):
        return zero, None
    inv = DenseMatrix(n, n, tuple(x for r in rows for x in r[n:]), m.field)
    return det, inv


def complete_to_basis(vectors: Iterable[Sequence], n: int, field) -> list[tuple]:
    """Extend independent ``vectors`` by standard basis vectors to a basis of field^n."""
    basis = [tuple(field(x) for x in v) for v in vectors]
    if basis and rank(DenseMatrix.from_rows(basis, field, n)) != len(basis):
        raise PreconditionError("vectors to complete are linearly dependent")
    zero, one = field.zero, field.one
    for i in range(n):
        if len(basis) == n:
            break
        e = tuple(one if k == i else zero for k in range(n))
        if rank(DenseMatrix.from_rows(basis + [e], field, n)) == len(basis) + 1:
            basis.append(e)
    return basis
