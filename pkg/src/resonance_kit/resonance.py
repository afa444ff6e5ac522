"""Resonance of a skew matrix of linear forms and its certificates.

A skew matrix ``A = (l_ij)`` encodes a linear map from 2-forms to linear
forms, ``e_i ^ e_j -> l_ij``.  Its resonance is nontrivial exactly when the
kernel of that map contains a nonzero decomposable 2-form ``a ^ b``.  The
witness yields a base change U with ``(U A U^t)_12 = 0`` and hence a 4x4
Pfaffian of rank at most 4.

Field semantics: over QQ the verdict is about points over the algebraic
closure (decided by a Groebner basis; the witness may only exist after
reduction mod a prime).  Over F_p the verdict is about F_p-rational points,
which is what exhaustive enumeration can see.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .errors import ConsistencyError, PreconditionError, SmallMatrixError
from .exactalg import QQ, DenseMatrix, PrimeField, complete_to_basis, det_and_inverse, kernel, normalize_vector, rank
from .groebner import Ideal, find_projective_point, is_projectively_empty
from .polyring import Poly, Ring, quadric_rank
from .skewpfaff import SkewLinearMatrix, base_change, pfaffian, sub_pfaffians

log = logging.getLogger(__name__)

LIFT_PRIMES = [p for p in range(3, 102) if all(p % d for d in range(2, int(p**0.5) + 1))]


@dataclass(frozen=True)
class WedgeBasis:
    """Lexicographic basis e_i ^ e_j (0-based i < j) of 2-forms on n letters."""

    n: int

    @property
    def pairs(self) -> tuple:
        return tuple(combinations(range(self.n), 2))

    @property
    def size(self) -> int:
        return self.n * (self.n - 1) // 2

    def index(self, i: int, j: int) -> int:
        if not (0 <= i < j < self.n):
            raise PreconditionError(f"({i},{j}) is not a basis pair")
        # position of (i, j) in lexicographic order
        return i * self.n - i * (i + 1) // 2 + (j - i - 1)

    def pair(self, k: int) -> tuple:
        return self.pairs[k]

    def wedge(self, a: Sequence, b: Sequence) -> tuple:
        return tuple(a[i] * b[j] - a[j] * b[i] for i, j in self.pairs)

    def quadruples(self) -> list[tuple]:
        return list(combinations(range(self.n), 4))

    def square_components(self, omega: Sequence) -> list:
        """Coordinates of omega ^ omega / 2 on the basis e_ijkl."""
        ix = self.index
        return [
            omega[ix(i, j)] * omega[ix(k, l)] - omega[ix(i, k)] * omega[ix(j, l)] + omega[ix(i, l)] * omega[ix(j, k)]
            for i, j, k, l in self.quadruples()
        ]

    def is_decomposable(self, omega: Sequence) -> bool:
        return all(not c for c in self.square_components(omega))

    def to_skew(self, omega: Sequence, field) -> DenseMatrix:
        rows = [[field.zero] * self.n for _ in range(self.n)]
        for k, (i, j) in enumerate(self.pairs):
            rows[i][j] = field(omega[k])
            rows[j][i] = -field(omega[k])
        return DenseMatrix.from_rows(rows, field, self.n)

    def from_skew(self, m: DenseMatrix) -> tuple:
        return tuple(m[i, j] for i, j in self.pairs)


@dataclass(frozen=True)
class KernelSubspace:
    """A subspace of 2-forms given by independent normalized basis vectors."""

    wedge: WedgeBasis
    vectors: tuple
    field: object = QQ

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def combination(self, coeffs: Sequence) -> tuple:
        out = [self.field.zero] * self.wedge.size
        for c, v in zip(coeffs, self.vectors):
            if c:
                out = [x + c * y for x, y in zip(out, v)]
        return tuple(out)

    def with_field(self, field) -> KernelSubspace | None:
        """Reduction mod p; None when a coordinate has no reduction or rank drops."""
        try:
            vecs = tuple(tuple(field(x) for x in v) for v in self.vectors)
        except PreconditionError:
            return None
        if vecs and rank(DenseMatrix.from_rows(vecs, field, self.wedge.size)) != len(vecs):
            return None
        return KernelSubspace(self.wedge, vecs, field)

    def contains(self, omega: Sequence) -> bool:
        if not self.vectors:
            return not any(omega)
        m = DenseMatrix.from_rows(list(self.vectors) + [list(omega)], self.field, self.wedge.size)
        return rank(m) == self.dim

    def annihilator(self) -> list[tuple]:
        """Linear equations cutting out this subspace."""
        if not self.vectors:
            return [tuple(self.field.one if k == i else self.field.zero for k in range(self.wedge.size))
                    for i in range(self.wedge.size)]
        return kernel(DenseMatrix.from_rows(self.vectors, self.field, self.wedge.size))


@dataclass(frozen=True)
class Witness:
    """A nonzero decomposable 2-form found in a subspace.

    ``field`` is where ``omega`` lives; it differs from the subspace's field
    when the witness was only found after reduction mod a prime.  ``omega`` is
    None when existence is known but no witness was found.
    """

    omega: tuple | None
    field: object | None
    source: str


# -- the map from 2-forms to linear forms -------------------------------------


def _require_resonance_input(a: SkewLinearMatrix) -> None:
    if a.n < 4:
        raise SmallMatrixError(f"resonance needs n >= 4, got n = {a.n}")
    for (i, j), v in a.upper.items():
        if not (v.is_homogeneous() and v.degree() == 1):
            raise PreconditionError(f"entry ({i + 1},{j + 1}) = {v} is not a linear form")


def coefficient_matrix(a: SkewLinearMatrix) -> DenseMatrix:
    """Rows indexed by variables, columns by the wedge basis."""
    wb = WedgeBasis(a.n)
    cols = [a.linear_coefficients(i, j) for i, j in wb.pairs]
    m = a.ring.nvars
    return DenseMatrix.from_rows([[cols[c][r] for c in range(len(cols))] for r in range(m)], a.ring.field, len(cols))


def apply_partial(a: SkewLinearMatrix, omega: Sequence) -> Poly:
    """The linear form sum omega_ij l_ij."""
    out = a.ring.zero
    for k, (i, j) in enumerate(WedgeBasis(a.n).pairs):
        if omega[k]:
            out = out + a.entry(i, j) * omega[k]
    return out


def kernel_of_partial(a: SkewLinearMatrix) -> KernelSubspace:
    wb = WedgeBasis(a.n)
    if a.ring.nvars == 0:
        one, zero = a.ring.field.one, a.ring.field.zero
        vecs = [tuple(one if k == c else zero for k in range(wb.size)) for c in range(wb.size)]
    else:
        vecs = kernel(coefficient_matrix(a))
    return KernelSubspace(wb, tuple(vecs), a.ring.field)


def wedge_quadrics(k: KernelSubspace) -> tuple[Ring, list[Poly]]:
    """Quadrics in the kernel coordinates whose common zeros are decomposable."""
    ring = Ring(tuple(f"l{r}" for r in range(k.dim)), k.field)
    lam = ring.gens()
    omega = [ring.zero] * k.wedge.size
    for r, v in enumerate(k.vectors):
        for c, x in enumerate(v):
            if x:
                omega[c] = omega[c] + lam[r] * x
    quads = [q for q in k.wedge.square_components(omega) if not q.is_zero()]
    return ring, quads


# -- decomposable elements ------------------------------------------------------


def meets_grassmannian_over_closure(k: KernelSubspace) -> bool:
    """Whether P(k) contains a decomposable point over the algebraic closure."""
    if k.dim == 0:
        return False
    if k.dim == 1:
        return k.wedge.is_decomposable(k.vectors[0])
    ring, quads = wedge_quadrics(k)
    return not is_projectively_empty(Ideal(ring, tuple(quads)))


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("RESONANCE_KIT_THREADS", "1")))
    except ValueError:
        return 1


def grassmannian_points(n: int, p: int, pivots: tuple | None = None):
    """2-planes of F_p^n as RREF row pairs (ints), in canonical order."""
    pivot_pairs = [pivots] if pivots else list(combinations(range(n), 2))
    for c1, c2 in pivot_pairs:
        free1 = [c for c in range(c1 + 1, n) if c != c2]
        free2 = list(range(c2 + 1, n))
        for vals1 in product(range(p), repeat=len(free1)):
            a = [0] * n
            a[c1] = 1
            for c, x in zip(free1, vals1):
                a[c] = x
            for vals2 in product(range(p), repeat=len(free2)):
                b = [0] * n
                b[c2] = 1
                for c, x in zip(free2, vals2):
                    b[c] = x
                yield a, b


def count_grassmannian_points(n: int, p: int) -> int:
    return sum(1 for _ in grassmannian_points(n, p))


def bruteforce_decomposable(k: KernelSubspace, p: int | None = None) -> tuple | None:
    """Enumerate Gr(2, n)(F_p) and return the first plane whose wedge lies in k."""
    field = k.field
    if not isinstance(field, PrimeField):
        if p is None:
            raise PreconditionError("brute force needs a prime field")
        k = k.with_field(PrimeField(p))
        if k is None:
            raise PreconditionError(f"subspace has no faithful reduction mod {p}")
        field = k.field
    if p is not None and field.p != p:
        raise PreconditionError(f"subspace lives over F_{field.p}, not F_{p}")
    p = field.p
    n = k.wedge.n
    wb = k.wedge
    eqs = [[x.value for x in row] for row in k.annihilator()]

    def scan(pivots):
        for a, b in grassmannian_points(n, p, pivots):
            w = [(a[i] * b[j] - a[j] * b[i]) % p for i, j in wb.pairs]
            if all(sum(e * x for e, x in zip(row, w)) % p == 0 for row in eqs):
                return w
        return None

    chunks = list(combinations(range(n), 2))
    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(scan, chunks))
    else:
        results = []
        for c in chunks:
            results.append(scan(c))
            if results[-1] is not None:
                break
    for w in results:
        if w is not None:
            return normalize_vector(tuple(field(x) for x in w))
    return None


def _small_combinations(dim: int, bound: int = 1):
    values = range(-bound, bound + 1)
    for coeffs in product(values, repeat=dim):
        nz = next((c for c in coeffs if c), None)
        if nz == 1:
            yield coeffs


def _rational_witness(k: KernelSubspace) -> tuple | None:
    for v in k.vectors:
        if k.wedge.is_decomposable(v):
            return v
    if k.dim <= 5:
        ring, quads = wedge_quadrics(k)
        pt = find_projective_point(Ideal(ring, tuple(quads)))
        if pt is not None:
            return normalize_vector(k.combination(pt))
    if k.dim <= 8:
        for coeffs in _small_combinations(k.dim):
            omega = k.combination([Fraction(c) for c in coeffs])
            if k.wedge.is_decomposable(omega):
                return normalize_vector(omega)
    return None


def _centered(x, p: int) -> int:
    v = x.value
    return v - p if v > p // 2 else v


def _modular_witness(k: KernelSubspace) -> Witness | None:
    first = None
    for p in LIFT_PRIMES:
        kp = k.with_field(PrimeField(p))
        if kp is None:
            continue
        ring, quads = wedge_quadrics(kp)
        pt = find_projective_point(Ideal(ring, tuple(quads)))
        if pt is None:
            continue
        lifted = k.combination([Fraction(_centered(x, p)) for x in pt])
        if any(lifted) and k.wedge.is_decomposable(lifted):
            log.debug("witness mod %d lifts to QQ", p)
            return Witness(normalize_vector(lifted), QQ, f"lifted from F_{p}")
        if first is None:
            first = Witness(normalize_vector(kp.combination(pt)), kp.field, f"reduction mod {p}")
            # a later prime only helps if it lifts; keep looking a little
        if first is not None and p > 11:
            break
    if first is not None:
        log.debug("keeping the %s witness", first.field.tag)
    return first


def decomposable_in_subspace(
    k: KernelSubspace, strategy: str = "groebner", prime: int | None = None
) -> Witness | None:
    """A nonzero decomposable element of k, or None when there is none.

    ``strategy="bruteforce"`` enumerates Gr(2, n) over F_prime (or over the
    subspace's own prime field).
    """
    if strategy == "bruteforce":
        omega = bruteforce_decomposable(k, prime)
        if omega is None:
            return None
        fld = k.field if isinstance(k.field, PrimeField) else PrimeField(prime)
        return Witness(omega, fld, "enumeration")
    if strategy != "groebner":
        raise PreconditionError(f"unknown strategy {strategy!r}")
    if k.dim == 0:
        return None
    if k.dim == 1:
        v = k.vectors[0]
        return Witness(v, k.field, "single point") if k.wedge.is_decomposable(v) else None
    if isinstance(k.field, PrimeField):
        ring, quads = wedge_quadrics(k)
        pt = find_projective_point(Ideal(ring, tuple(quads)))
        if pt is None:
            return None
        return Witness(normalize_vector(k.combination(pt)), k.field, "groebner")
    if not meets_grassmannian_over_closure(k):
        return None
    omega = _rational_witness(k)
    if omega is not None:
        return Witness(omega, QQ, "groebner")
    w = _modular_witness(k)
    return w if w is not None else Witness(None, None, "unresolved")


# -- constructive directions ---------------------------------------------------


def factor_decomposable(omega, field=None) -> tuple[tuple, tuple]:
    """Write a rank-2 skew form as a ^ b with (a, b) in row echelon form.

    ``omega`` is a scalar :class:`SkewLinearMatrix`, a :class:`DenseMatrix` or
    a vector of wedge coordinates (then ``field`` is required).
    """
    if isinstance(omega, SkewLinearMatrix):
        m = omega.to_dense()
    elif isinstance(omega, DenseMatrix):
        m = omega
    else:
        if field is None:
            raise PreconditionError("field required for a coordinate vector")
        size = len(omega)
        n = next((n for n in range(2, 64) if n * (n - 1) // 2 == size), None)
        if n is None:
            raise PreconditionError(f"{size} is not a binomial(n, 2)")
        m = WedgeBasis(n).to_skew(omega, field)
    field = m.field
    n = m.rows
    if rank(m) != 2:
        raise PreconditionError(f"2-form has rank {rank(m)}, not 2")
    wb = WedgeBasis(n)
    coords = wb.from_skew(m)
    i, j = next(wb.pair(k) for k, c in enumerate(coords) if c)
    from .exactalg import rref

    reduced, _, _ = rref(DenseMatrix.from_rows([m.row(i), m.row(j)], field, n))
    a, b0 = reduced.row(0), reduced.row(1)
    w = wb.wedge(a, b0)
    idx = next(k for k, c in enumerate(coords) if c)
    scale = coords[idx] / w[idx]
    b = tuple(x * scale for x in b0)
    if wb.wedge(a, b) != tuple(coords):
        raise ConsistencyError("factorization does not reproduce the 2-form")
    return tuple(a), b


def generalized_zero(a: SkewLinearMatrix, witness: tuple[Sequence, Sequence]) -> DenseMatrix:
    """Invertible U with rows u, v first and (U A U^t)_12 = 0."""
    field = a.ring.field
    u, v = (tuple(field(x) for x in w) for w in witness)
    if rank(DenseMatrix.from_rows([u, v], field, a.n)) != 2:
        raise PreconditionError("witness vectors are dependent")
    wb = WedgeBasis(a.n)
    if not apply_partial(a, wb.wedge(u, v)).is_zero():
        raise PreconditionError("witness is not in the kernel")
    return DenseMatrix.from_rows(complete_to_basis([u, v], a.n, field), field, a.n)


def low_rank_generalized_pfaffian(a: SkewLinearMatrix, u: DenseMatrix) -> Poly:
    """Pfaffian of rows/columns 1..4 of U A U^t, which needs (U A U^t)_12 = 0."""
    if a.n < 4:
        raise SmallMatrixError(f"need n >= 4, got {a.n}")
    b = base_change(a, u)
    if not b.entry(0, 1).is_zero():
        raise PreconditionError(f"(U A U^t)_12 = {b.entry(0, 1)} is not zero")
    return pfaffian(b.submatrix([0, 1, 2, 3]))


@dataclass
class ResonanceCertificate:
    """Outcome of :func:`resonance_decide` with re-checkable witness data."""

    verdict: str
    field: object
    kernel_dim: int
    over_closure: bool
    witness_field: object | None = None
    omega: tuple | None = None
    witness_a: tuple | None = None
    witness_b: tuple | None = None
    U: DenseMatrix | None = None
    pfaffian: Poly | None = None
    pfaffian_rank: int | None = None
    source: str | None = None
    notes: list = dc_field(default_factory=list)

    @property
    def nontrivial(self) -> bool:
        return self.verdict == "nontrivial"

    def verify(self, a: SkewLinearMatrix) -> bool:
        """Recheck every witness component from scratch against ``a``."""
        if not self.nontrivial or self.witness_a is None:
            return not self.nontrivial or self.witness_a is None
        aw = a if self.witness_field == a.ring.field else a.with_field(self.witness_field)
        field = aw.ring.field
        wa = tuple(field(x) for x in self.witness_a)
        wbv = tuple(field(x) for x in self.witness_b)
        wb = WedgeBasis(a.n)
        if rank(DenseMatrix.from_rows([wa, wbv], field, a.n)) != 2:
            return False
        if not apply_partial(aw, wb.wedge(wa, wbv)).is_zero():
            return False
        det, _ = det_and_inverse(self.U)
        if not det or self.U.row(0) != wa or self.U.row(1) != wbv:
            return False
        transformed = base_change(aw, self.U)
        if not transformed.entry(0, 1).is_zero():
            return False
        q = pfaffian(transformed.submatrix([0, 1, 2, 3]))
        return q == self.pfaffian and quadric_rank(q) <= 4 and self.pfaffian_rank == quadric_rank(q)

    def to_json(self) -> dict:
        from .io import scalar_to_json

        out = {
            "verdict": self.verdict,
            "field": self.field.tag,
            "kernel_dim": self.kernel_dim,
            "nontrivial_over_closure": self.over_closure,
        }
        if self.nontrivial:
            out.update(
                {
                    "witness_field": self.witness_field.tag if self.witness_field else None,
                    "witness_source": self.source,
                    "witness_a": [scalar_to_json(x) for x in self.witness_a] if self.witness_a else None,
                    "witness_b": [scalar_to_json(x) for x in self.witness_b] if self.witness_b else None,
                    "U": [[scalar_to_json(x) for x in r] for r in self.U.to_rows()] if self.U else None,
                    "pfaffian": str(self.pfaffian) if self.pfaffian is not None else None,
                    "pfaffian_rank": self.pfaffian_rank,
                }
            )
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def resonance_decide(a: SkewLinearMatrix) -> ResonanceCertificate:
    _require_resonance_input(a)
    k = kernel_of_partial(a)
    w = decomposable_in_subspace(k)
    field = a.ring.field
    if isinstance(field, PrimeField):
        closure = w is not None or meets_grassmannian_over_closure(k)
    else:
        closure = w is not None
    if w is None:
        return ResonanceCertificate("trivial", field, k.dim, closure)
    cert = ResonanceCertificate("nontrivial", field, k.dim, closure, source=w.source)
    if w.omega is None:
        cert.notes.append("nonempty over the closure but no witness found up to p = 101")
        return cert
    aw = a if w.field == field else a.with_field(w.field)
    if w.field != field:
        cert.notes.append(f"no rational witness found; certificate lives over {w.field.tag}")
    wa, wbv = factor_decomposable(w.omega, w.field)
    u = generalized_zero(aw, (wa, wbv))
    q = low_rank_generalized_pfaffian(aw, u)
    cert.witness_field = w.field
    cert.omega = w.omega
    cert.witness_a, cert.witness_b = wa, wbv
    cert.U = u
    cert.pfaffian = q
    cert.pfaffian_rank = quadric_rank(q)
    return cert


# -- n = 4 rank test -----------------------------------------------------------


def plucker_quadric_4(field=QQ) -> Poly:
    ring = Ring(("z12", "z13", "z14", "z23", "z24", "z34"), field)
    z12, z13, z14, z23, z24, z34 = ring.gens()
    return z12 * z34 - z13 * z24 + z14 * z23


def hyperplane_section_rank(omega: Sequence, field=QQ) -> int:
    """Rank of the Plucker quadric of Gr(2,4) restricted to the hyperplane omega = 0."""
    from .polyring import restrict_linear

    if len(omega) != 6:
        raise PreconditionError("need a 2-form on 4 letters")
    h = kernel(DenseMatrix.from_rows([list(omega)], field, 6))
    return quadric_rank(restrict_linear(plucker_quadric_4(field), h))


# -- cross-check of the equivalent conditions ---------------------------------


@dataclass
class CrosscheckReport:
    certificate: ResonanceCertificate
    comparisons: list = dc_field(default_factory=list)  # (p, groebner verdict, bruteforce verdict)
    checks: dict = dc_field(default_factory=dict)
    skipped_primes: list = dc_field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return all(g == b for _, g, b in self.comparisons) and all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "verdict": self.certificate.verdict,
            "consistent": self.consistent,
            "comparisons": [{"p": p, "groebner": g, "bruteforce": b} for p, g, b in self.comparisons],
            "checks": dict(self.checks),
            "skipped_primes": list(self.skipped_primes),
        }


def _fp_verdicts(a: SkewLinearMatrix) -> tuple[str, str]:
    k = kernel_of_partial(a)
    g = decomposable_in_subspace(k)
    b = decomposable_in_subspace(k, "bruteforce")
    gw = "nontrivial" if g is not None else "trivial"
    bw = "nontrivial" if b is not None else "trivial"
    return gw, bw


def equivalence_crosscheck(a: SkewLinearMatrix, primes: Sequence[int] = (3, 5), strict: bool = True) -> CrosscheckReport:
    """Check the three equivalent resonance conditions on one instance.

    Raises :class:`ConsistencyError` on any disagreement when ``strict``.
    """
    cert = resonance_decide(a)
    report = CrosscheckReport(cert)
    field = a.ring.field
    if isinstance(field, PrimeField):
        report.comparisons.append((field.p, *_fp_verdicts(a)))
        report.checks["rational point implies closure point"] = (not cert.nontrivial) or cert.over_closure
    else:
        for p in primes:
            try:
                ap = a.with_field(PrimeField(p))
            except PreconditionError:
                report.skipped_primes.append(p)
                continue
            report.comparisons.append((p, *_fp_verdicts(ap)))
    if cert.nontrivial and cert.witness_a is not None:
        report.checks["certificate re-verifies"] = cert.verify(a)
        report.checks["generalized Pfaffian has rank <= 4"] = cert.pfaffian_rank <= 4
    # a rank <= 4 Pfaffian in hand (U = identity) forces resonance over the closure
    low = any(quadric_rank(q) <= 4 for q in sub_pfaffians(a).values())
    report.checks["low-rank 4x4 Pfaffian implies resonance"] = (not low) or cert.over_closure
    if a.n == 4:
        report.checks["n=4: resonance iff rank Pf(A) <= 4"] = cert.over_closure == (quadric_rank(pfaffian(a)) <= 4)
        if cert.kernel_dim >= 2:
            # a projective line in P^5 always meets the quadric Gr(2,4)
            report.checks["n=4: kernel of dimension >= 2 forces resonance"] = cert.over_closure
        if cert.kernel_dim == 1:
            k = kernel_of_partial(a)
            report.checks["n=4: rank test on the tangent hyperplane"] = cert.over_closure == (
                hyperplane_section_rank(k.vectors[0], field) <= 4
            )
    if strict and not report.consistent:
        raise ConsistencyError(f"inconsistent resonance verdicts: {report.to_json()}")
    return report
