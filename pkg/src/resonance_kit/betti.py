"""Graded Betti tables as arithmetic objects.

``b[(i, j)]`` is the number of summands ``O(-j)`` in homological degree ``i``.
Tables are displayed with columns ``i`` and rows ``j - i``.  Nothing here
computes a resolution; tables are combined by cone, horseshoe and duality,
and every cancellation is supplied by the caller.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InputFormatError, PreconditionError
from .polyring import TPoly


@dataclass(frozen=True)
class BettiTable:
    vars: int
    entries: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.vars, int) or self.vars < 0:
            raise PreconditionError(f"variable count must be a non-negative integer, got {self.vars!r}")
        clean = {}
        for (i, j), b in dict(self.entries).items():
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j, b)):
                raise PreconditionError(f"non-integer entry at ({i!r}, {j!r})")
            if i < 0 or b < 0:
                raise PreconditionError(f"invalid entry b[{i},{j}] = {b}")
            if b:
                clean[(i, j)] = b
        object.__setattr__(self, "entries", clean)

    def __getitem__(self, ij) -> int:
        return self.entries.get(tuple(ij), 0)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.vars == other.vars and self.entries == other.entries

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.entries.items()))))

    def __add__(self, other: BettiTable) -> BettiTable:
        _same_vars(self, other)
        out = dict(self.entries)
        for k, b in other.entries.items():
            out[k] = out.get(k, 0) + b
        return BettiTable(self.vars, out)

    def is_zero(self) -> bool:
        return not self.entries

    def length(self) -> int:
        return max((i for i, _ in self.entries), default=-1)

    def twist(self, d: int) -> BettiTable:
        """Table of M(d): a summand O(-j) becomes O(-j + d)."""
        return BettiTable(self.vars, {(i, j - d): b for (i, j), b in self.entries.items()})

    def shift(self, k: int) -> BettiTable:
        """Homological shift i -> i + k."""
        if any(i + k < 0 for i, _ in self.entries):
            raise PreconditionError(f"shift by {k} makes a homological degree negative")
        return BettiTable(self.vars, {(i + k, j): b for (i, j), b in self.entries.items()})

    # -- I/O ----------------------------------------------------------------------

    def to_json(self) -> dict:
        return {"kind": "betti", "vars": self.vars, "entries": [[i, j, b] for (i, j), b in sorted(self.entries.items())]}

    @classmethod
    def from_json(cls, doc: dict) -> BettiTable:
        if not isinstance(doc, dict):
            raise InputFormatError("Betti table must be a JSON object")
        nv = doc.get("vars")
        entries = doc.get("entries")
        if not isinstance(nv, int) or isinstance(nv, bool) or not isinstance(entries, list):
            raise InputFormatError("Betti table needs integer 'vars' and list 'entries'")
        out = {}
        for e in entries:
            if not (isinstance(e, list) and len(e) == 3 and all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
                raise InputFormatError(f"entry must be [i, j, b] with integers: {e!r}")
            i, j, b = e
            if (i, j) in out:
                raise InputFormatError(f"entry ({i},{j}) given twice")
            out[(i, j)] = b
        try:
            return cls(nv, out)
        except PreconditionError as exc:
            raise InputFormatError(str(exc)) from exc

    def render(self) -> str:
        """Rows ``j - i``, columns ``i``, ``-`` for zero."""
        if not self.entries:
            return "(zero table)"
        cols = range(0, self.length() + 1)
        rows = range(min(j - i for i, j in self.entries), max(j - i for i, j in self.entries) + 1)
        cells = [[str(self[(i, r + i)]) if self[(i, r + i)] else "-" for i in cols] for r in rows]
        w = max(len(c) for line in cells for c in line)
        w = max(w, max(len(str(i)) for i in cols))
        lw = max(len("j\\i"), max(len(str(r)) for r in rows))
        head = "j\\i".rjust(lw) + " |" + "".join(" " + str(i).rjust(w) for i in cols)
        sep = "-" * (lw + 1) + "+" + "-" * (len(head) - lw - 2)
        body = [str(r).rjust(lw) + " |" + "".join(" " + c.rjust(w) for c in line) for r, line in zip(rows, cells)]
        return "\n".join([head, sep, *body])

    def __str__(self):
        return self.render()


def _same_vars(a: BettiTable, b: BettiTable) -> None:
    if a.vars != b.vars:
        raise PreconditionError(f"tables over {a.vars} and {b.vars} variables")


def table(vars: int, entries: Mapping) -> BettiTable:
    return BettiTable(vars, dict(entries))


def hilbert_numerator(b: BettiTable) -> TPoly:
    """Sum of (-1)^i b_ij t^j."""
    out: dict[int, int] = {}
    for (i, j), m in b.entries.items():
        out[j] = out.get(j, 0) + (-m if i % 2 else m)
    return TPoly.from_dict(out)


def cancel(b: BettiTable, i: int, j: int, mult: int) -> BettiTable:
    """Remove ``mult`` copies of O(-j) from degrees i and i + 1."""
    if mult <= 0:
        raise PreconditionError(f"cancellation at ({i},{j}) must have positive multiplicity, got {mult}")
    if b[(i, j)] < mult or b[(i + 1, j)] < mult:
        raise PreconditionError(
            f"cannot cancel {mult} at (i, j) = ({i},{j}): available {b[(i, j)]} and {b[(i + 1, j)]} at i = {i}, {i + 1}"
        )
    out = dict(b.entries)
    out[(i, j)] -= mult
    out[(i + 1, j)] -= mult
    return BettiTable(b.vars, out)


def mapping_cone(
    b_a: BettiTable, b_b: BettiTable, cancellations: Iterable[tuple[int, int, int]] = ()
) -> BettiTable:
    """Cone of a map of resolutions A -> B: C_i = B_i + A_{i-1}, then the listed cancellations."""
    _same_vars(b_a, b_b)
    cone = b_b + b_a.shift(1)
    for i, j, mult in cancellations:
        cone = cancel(cone, i, j, mult)
    return cone


def horseshoe_sum(b_a: BettiTable, b_c: BettiTable) -> BettiTable:
    """Resolution of the middle term of 0 -> A -> B -> C -> 0: B_i = A_i + C_i."""
    return b_a + b_c


def ideal_to_quotient(b_ideal: BettiTable) -> BettiTable:
    """From a resolution of I to one of S/I."""
    if (0, 0) in b_ideal.entries:
        raise PreconditionError("an ideal resolution has no generator of degree 0")
    out = dict(b_ideal.shift(1).entries)
    out[(0, 0)] = 1
    return BettiTable(b_ideal.vars, out)


def dual_betti(b: BettiTable, codim: int, omega_degree: int) -> BettiTable:
    """Resolution of Ext^codim(M, omega) for omega = O(omega_degree): b'_{i,k} = b_{codim - i, -omega_degree - k}."""
    if codim < 0:
        raise PreconditionError(f"codimension must be non-negative, got {codim}")
    if b.length() > codim:
        raise PreconditionError(f"table has length {b.length()} > codimension {codim}")
    return BettiTable(b.vars, {(codim - i, -omega_degree - j): m for (i, j), m in b.entries.items()})


def table_difference(big: BettiTable, small: BettiTable) -> list[tuple[int, int, int]]:
    """Consecutive cancellations (i, j, mult) turning ``big`` into ``small``; raises if none fits."""
    _same_vars(big, small)
    diff = {}
    for k in set(big.entries) | set(small.entries):
        d = big[k] - small[k]
        if d < 0:
            raise PreconditionError(f"{k} grows from {big[k]} to {small[k]}")
        if d:
            diff[k] = d
    out = []
    while diff:
        (i, j) = min(diff)
        d = diff[(i, j)]
        if diff.get((i + 1, j), 0) < d:
            raise PreconditionError(f"excess {d} at {(i, j)} has no partner at {(i + 1, j)}")
        out.append((i, j, d))
        for k in ((i, j), (i + 1, j)):
            diff[k] -= d
            if not diff[k]:
                del diff[k]
    return out


def validate_acm_table(b: BettiTable, hilbert) -> bool:
    """Numerator matches and the length respects the syzygy bound."""
    expected = TPoly.parse(hilbert) if isinstance(hilbert, str) else hilbert
    return hilbert_numerator(b) == expected and b.length() <= b.vars
