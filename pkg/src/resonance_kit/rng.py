"""Seeded generator and random instances, reproducible across implementations.

The generator is splitmix64: the state advances by 0x9E3779B97F4A7C15 and the
output is the state passed through the mixer

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

with all arithmetic mod 2^64.  Scalars are drawn as ``next() % p`` over F_p
and ``next() % 7 - 3`` over QQ.
"""

from __future__ import annotations

from itertools import combinations

from .errors import PreconditionError
from .exactalg import QQ, DenseMatrix, PrimeField, field_from_tag, rank

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        if not isinstance(seed, int) or isinstance(seed, bool) or not (0 <= seed <= MASK):
            raise PreconditionError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
        self.state = seed

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        return self.next() % k

    def scalar(self, field):
        if isinstance(field, PrimeField):
            return field(self.below(field.p))
        return field(self.below(7) - 3)


def _field(field):
    return field_from_tag(field) if isinstance(field, str) else field


def random_skew(n: int, m: int, seed: int, field=QQ):
    """Skew matrix whose upper entries are random linear forms in x0..x{m-1}."""
    from .polyring import Ring
    from .skewpfaff import SkewLinearMatrix

    field = _field(field)
    if n < 1 or m < 1:
        raise PreconditionError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    rng = SplitMix64(seed)
    ring = Ring(tuple(f"x{i}" for i in range(m)), field)
    upper = []
    for i, j in combinations(range(1, n + 1), 2):
        upper.append((i, j, [rng.scalar(field) for _ in range(m)]))
    return SkewLinearMatrix.from_coefficients(n, ring, upper)


def random_forms(n: int, count: int, seed: int, field=QQ, rng: SplitMix64 | None = None) -> list[tuple]:
    """``count`` linearly independent random 2-forms on n letters (redrawn until independent)."""
    field = _field(field)
    size = n * (n - 1) // 2
    if count > size:
        raise PreconditionError(f"cannot pick {count} independent forms in dimension {size}")
    rng = rng or SplitMix64(seed)
    while True:
        forms = [tuple(rng.scalar(field) for _ in range(size)) for _ in range(count)]
        if rank(DenseMatrix.from_rows(forms, field, size)) == count:
            return forms


def random_section(n: int, seed: int, field=QQ, codim: int = 3):
    from .grassmann import LinearSection

    return LinearSection.from_lperp(n, random_forms(n, codim, seed, field), _field(field))


def random_betti(n: int, m: int, seed: int):
    """A table with ``m`` random entries, homological degree <= n, for arithmetic tests."""
    from .betti import BettiTable

    if n < 0 or m < 0:
        raise PreconditionError("need n >= 0 and m >= 0")
    rng = SplitMix64(seed)
    entries = {}
    for _ in range(m):
        i = rng.below(n + 1)
        j = i + rng.below(4)
        entries[(i, j)] = entries.get((i, j), 0) + 1 + rng.below(9)
    return BettiTable(n + 1, entries)


def random_ideal(n: int, m: int, seed: int, field=QQ):
    """``m`` random quadrics in x0..x{n-1}."""
    from .groebner import Ideal
    from .polyring import Ring

    field = _field(field)
    if n < 1 or m < 0:
        raise PreconditionError("need n >= 1 and m >= 0")
    rng = SplitMix64(seed)
    ring = Ring(tuple(f"x{i}" for i in range(n)), field)
    monos = []
    for a in range(n):
        for b in range(a, n):
            e = [0] * n
            e[a] += 1
            e[b] += 1
            monos.append(tuple(e))
    gens = [ring.poly({mono: rng.scalar(field) for mono in monos}) for _ in range(m)]
    return Ideal(ring, tuple(gens))


def random_instance(kind: str, n: int, m: int, seed: int, field="Q"):
    """Deterministic instance for ``(kind, n, m, seed, field)``.

    ``m`` is the variable count for ``skew``, the number of generators for
    ``ideal``, the number of drawn entries for ``betti`` and the codimension
    for ``section``.
    """
    if kind == "skew":
        return random_skew(n, m, seed, field)
    if kind == "section":
        return random_section(n, seed, field, codim=m)
    if kind == "betti":
        return random_betti(n, m, seed)
    if kind == "ideal":
        return random_ideal(n, m, seed, field)
    raise PreconditionError(f"unsupported instance kind {kind!r}")
