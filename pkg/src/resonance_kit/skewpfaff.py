"""Skew-symmetric matrices of linear forms, Pfaffians and congruence A -> U A U^t."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Callable, Sequence

from .errors import PreconditionError, RingMismatchError
from .exactalg import DenseMatrix, det_and_inverse
from .polyring import Poly, Ring


class SkewLinearMatrix:
    """n x n skew matrix whose entries live in ``ring`` (usually linear forms).

    Only the strict upper triangle is stored, keyed by 0-based ``(i, j)``
    with ``i < j``; missing keys are zero.
    """

    __slots__ = ("n", "ring", "upper")

    def __init__(self, n: int, ring: Ring, upper: dict):
        if n < 1:
            raise PreconditionError(f"matrix size {n} < 1")
        self.n = n
        self.ring = ring
        clean = {}
        for (i, j), v in upper.items():
            if not (0 <= i < j < n):
                raise PreconditionError(f"entry ({i},{j}) is not strictly upper triangular for n={n}")
            if not isinstance(v, Poly):
                v = ring.constant(v)
            if v.ring != ring:
                raise RingMismatchError(f"entry ({i},{j}) lives in another ring")
            if not v.is_zero():
                clean[(i, j)] = v
        self.upper = clean

    @classmethod
    def from_coefficients(cls, n: int, ring: Ring, upper: Sequence) -> SkewLinearMatrix:
        """``upper`` holds ``(i, j, coeffs)`` with 1-based ``i < j``."""
        entries = {}
        for i, j, coeffs in upper:
            if (i - 1, j - 1) in entries:
                raise PreconditionError(f"entry ({i},{j}) given twice")
            entries[(i - 1, j - 1)] = ring.linear_form(coeffs)
        return cls(n, ring, entries)

    @classmethod
    def from_dense(cls, m: DenseMatrix, ring: Ring | None = None) -> SkewLinearMatrix:
        """Scalar skew matrix; entries become constants of ``ring``."""
        if not m.is_square():
            raise PreconditionError("skew matrix must be square")
        ring = ring or Ring((), m.field)
        n = m.rows
        for i in range(n):
            if m[i, i]:
                raise PreconditionError("nonzero diagonal entry")
            for j in range(i + 1, n):
                if m[i, j] != -m[j, i]:
                    raise PreconditionError(f"not skew at ({i},{j})")
        return cls(n, ring, {(i, j): ring.constant(m[i, j]) for i in range(n) for j in range(i + 1, n)})

    def entry(self, i: int, j: int) -> Poly:
        if i == j:
            return self.ring.zero
        if i < j:
            return self.upper.get((i, j), self.ring.zero)
        return -self.upper.get((j, i), self.ring.zero)

    def rows(self) -> list[list[Poly]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def submatrix(self, indices: Sequence[int]) -> SkewLinearMatrix:
        idx = list(indices)
        return SkewLinearMatrix(
            len(idx),
            self.ring,
            {(a, b): self.entry(idx[a], idx[b]) for a in range(len(idx)) for b in range(a + 1, len(idx))},
        )

    def delete(self, k: int) -> SkewLinearMatrix:
        return self.submatrix([i for i in range(self.n) if i != k])

    def with_field(self, field) -> SkewLinearMatrix:
        """Coefficients coerced into another field (reduction mod p)."""
        ring = self.ring.with_field(field)
        return SkewLinearMatrix(self.n, ring, {k: v.map_coefficients(ring) for k, v in self.upper.items()})

    def linear_coefficients(self, i: int, j: int) -> tuple:
        return self.entry(i, j).linear_coefficients()

    def to_dense(self) -> DenseMatrix:
        """Scalar entries only."""
        return DenseMatrix.from_rows(
            [[self.entry(i, j).constant_value() for j in range(self.n)] for i in range(self.n)],
            self.ring.field,
            self.n,
        )

    def is_linear(self) -> bool:
        return all(v.is_homogeneous() and v.degree() == 1 for v in self.upper.values())

    def __eq__(self, other):
        return (
            isinstance(other, SkewLinearMatrix)
            and self.n == other.n
            and self.ring == other.ring
            and self.upper == other.upper
        )

    def __repr__(self):
        return f"SkewLinearMatrix(n={self.n}, vars={self.ring.names})"

    def __str__(self):
        cells = [[str(self.entry(i, j)) for j in range(self.n)] for i in range(self.n)]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("  ".join(c.rjust(w) for c in r) for r in cells)


def pfaffian_of(entry: Callable[[int, int], object], n: int, zero, one):
    """First-row expansion with memoization over index subsets.

    Pf = sum_k (-1)^(k+1) a[s0, sk] Pf(S minus {s0, sk}) for the sorted index
    tuple S, so a 4x4 block gives a12 a34 - a13 a24 + a14 a23.
    """

    @lru_cache(maxsize=None)
    def pf(idx: tuple):
        if not idx:
            return one
        first, rest = idx[0], idx[1:]
        total = zero
        for k, j in enumerate(rest):
            a = entry(first, j)
            if not a:
                continue
            sub = pf(rest[:k] + rest[k + 1 :])
            if not sub:
                continue
            term = a * sub
            total = total + term if k % 2 == 0 else total - term
        return total

    if n % 2:
        raise PreconditionError(f"Pfaffian of odd size {n}")
    return pf(tuple(range(n)))


def pfaffian(a: SkewLinearMatrix) -> Poly:
    if a.n % 2:
        raise PreconditionError(f"Pfaffian of odd size {a.n}")
    return pfaffian_of(a.entry, a.n, a.ring.zero, a.ring.one)


def pfaffian_scalar(m: DenseMatrix):
    """Pfaffian of a scalar skew matrix."""
    if not m.is_square():
        raise PreconditionError("skew matrix must be square")
    return pfaffian_of(lambda i, j: m[i, j], m.rows, m.field.zero, m.field.one)


def principal_pfaffians(a: SkewLinearMatrix) -> list[Poly]:
    """Signed Pfaffians of the matrices with row/column k deleted, k = 1..n."""
    if a.n % 2 == 0:
        raise PreconditionError(f"principal Pfaffians need odd size, got {a.n}")
    out = []
    for k in range(a.n):
        pf = pfaffian(a.delete(k))
        out.append(pf if k % 2 == 0 else -pf)
    return out


def sub_pfaffians(a: SkewLinearMatrix, size: int = 4) -> dict[tuple, Poly]:
    """All ``size`` x ``size`` Pfaffians on index subsets (0-based keys)."""
    return {idx: pfaffian(a.submatrix(idx)) for idx in combinations(range(a.n), size)}


def base_change(a: SkewLinearMatrix, u: DenseMatrix) -> SkewLinearMatrix:
    """U A U^t; ``u`` must be invertible of size n."""
    if u.rows != a.n or u.cols != a.n:
        raise PreconditionError(f"base change must be {a.n}x{a.n}")
    if u.field != a.ring.field:
        raise RingMismatchError(f"base change over {u.field!r}, matrix over {a.ring.field!r}")
    det, _ = det_and_inverse(u)
    if not det:
        raise PreconditionError("base change matrix is singular")
    n = a.n
    # (U A)[i][l] first, then contract with U^t
    ua = []
    for i in range(n):
        row = []
        for l in range(n):
            s = a.ring.zero
            for k in range(n):
                c = u[i, k]
                if c:
                    e = a.entry(k, l)
                    if e:
                        s = s + e * c
            row.append(s)
        ua.append(row)
    upper = {}
    for i in range(n):
        for j in range(i + 1, n):
            s = a.ring.zero
            for l in range(n):
                c = u[j, l]
                if c and ua[i][l]:
                    s = s + ua[i][l] * c
            upper[(i, j)] = s
    return SkewLinearMatrix(n, a.ring, upper)


def generic_skew(n: int, field=None, prefix: str = "z") -> SkewLinearMatrix:
    """Skew matrix whose upper entries are independent variables z_ij (1-based names)."""
    from .exactalg import QQ

    field = field or QQ
    pairs = list(combinations(range(n), 2))
    sep = "" if n <= 9 else "_"
    ring = Ring(tuple(f"{prefix}{i + 1}{sep}{j + 1}" for i, j in pairs), field)
    return SkewLinearMatrix(n, ring, {pair: ring.var(k) for k, pair in enumerate(pairs)})
