"""The reproduction suite behind ``resonance-kit verify-paper``."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable

from .betti import BettiTable, dual_betti, hilbert_numerator, horseshoe_sum, ideal_to_quotient, mapping_cone, table_difference
from . import fixtures as F
from .groebner import Ideal, hilbert_series_numerator
from .polyring import Ring, TPoly, quadric_rank
from .skewpfaff import SkewLinearMatrix, pfaffian, principal_pfaffians


@dataclass(frozen=True)
class Fixture:
    id: str
    citation: str
    check: Callable  # (5x5 matrix) -> (passed, detail)


def _del_pezzo_ranks(a):
    ranks = sorted(quadric_rank(p) for p in principal_pfaffians(a))
    return ranks == sorted(F.DEL_PEZZO_RANKS), f"ranks {ranks}"


def _zero_entry_pfaffian(_):
    ring = Ring(("l13", "l14", "l23", "l24", "l34"))
    l13, l14, l23, l24, l34 = ring.gens()
    m = SkewLinearMatrix(4, ring, {(0, 2): l13, (0, 3): l14, (1, 2): l23, (1, 3): l24, (2, 3): l34})
    pf = pfaffian(m)
    ok = pf == l14 * l23 - l13 * l24 and quadric_rank(pf) == 4
    return ok, f"Pf = {pf}, rank {quadric_rank(pf)}"


def _pluecker_n4(_):
    from .grassmann import PluckerContext, pluecker_quadrics

    ctx = PluckerContext(4)
    qs = pluecker_quadrics(ctx)
    expected = ctx.ring.parse("z12*z34 - z13*z24 + z14*z23")
    return qs == [expected], f"{[str(q) for q in qs]}"


def _pluecker_pfaffians_n5(_):
    from .grassmann import PluckerContext, pfaffians_match_pluecker

    ok = pfaffians_match_pluecker(PluckerContext(5))
    return ok, "ideals equal" if ok else "ideals differ"


def _cone():
    return mapping_cone(BettiTable(7, F.TWO_O_V5), BettiTable(7, F.BUNDLE_E), F.CONE_CANCELLATIONS)


def _curve_table():
    return ideal_to_quotient(horseshoe_sum(BettiTable(7, F.I_V5), _cone().twist(-3)))


def _cone_fixture(_):
    c = _cone()
    return c.entries == F.CONE_RESULT, f"{sorted(c.entries.items())}"


def _horseshoe_fixture(_):
    t = _curve_table()
    return t.entries == F.CURVE_TABLE, "\n" + t.render()


def _dual_fixture(_):
    d = dual_betti(BettiTable(7, F.CURVE_TABLE), 5, -7)
    return d[(0, -1)] == 2, f"b'(0,-1) = {d[(0, -1)]}"


def _hilbert_curve(_):
    want = TPoly.parse(F.CURVE_NUMERATOR)
    a = hilbert_numerator(BettiTable(7, F.CURVE_TABLE))
    b = hilbert_numerator(BettiTable(7, F.GENERIC_TABLE))
    return a == want and b == want, f"{a} | {b}"


def _hilbert_s5(a):
    from .grassmann import PluckerContext, pluecker_ideal

    want = TPoly.parse(F.S5_NUMERATOR)
    h1 = hilbert_series_numerator(Ideal(a.ring, tuple(principal_pfaffians(a))))
    h2 = hilbert_series_numerator(pluecker_ideal(PluckerContext(5)))
    return h1 == want and h2 == want, f"{h1} ({a.ring.nvars} vars) | {h2} (10 vars)"


def _table_difference(_):
    steps = table_difference(BettiTable(7, F.CURVE_TABLE), BettiTable(7, F.GENERIC_TABLE))
    return steps == [(1, 3, 5)], f"cancellations {steps}"


FIXTURES = [
    Fixture("del-pezzo-ranks", "principal Pfaffians of the quintic del Pezzo matrix have ranks 5, 5, 5, 6, 6", _del_pezzo_ranks),
    Fixture("zero-entry-pfaffian", "4x4 Pfaffian with l12 = 0 is l14*l23 - l13*l24, of rank <= 4", _zero_entry_pfaffian),
    Fixture("pluecker-n4", "Gr(2,4) is the quadric z12*z34 - z13*z24 + z14*z23", _pluecker_n4),
    Fixture("pluecker-pfaffians-n5", "Gr(2,5) is cut out by the 4x4 Pfaffians of the generic 5x5 skew matrix", _pluecker_pfaffians_n5),
    Fixture("cone", "mapping cone 13O <- 45O(-1) <- 55O(-2) <- 25O(-3) <- 2O(-5)", _cone_fixture),
    Fixture("curve-betti-table", "Betti table of the ACM curve of genus 14 and degree 18", _horseshoe_fixture),
    Fixture("dual-table", "dim K_{5,3}(C, O_C(1)) = 2 and h0(omega_C(-1)) = 2", _dual_fixture),
    Fixture("hilbert-curve", "Hilbert numerator 1 - 5t^2 - 8t^3 + 45t^4 - 56t^5 + 25t^6 - 2t^8 for both tables", _hilbert_curve),
    Fixture("hilbert-s5", "Hilbert numerator 1 - 5t^2 + 5t^3 - t^5 of the del Pezzo surface and of Gr(2,5)", _hilbert_s5),
    Fixture("table-difference", "curve table and generic table differ by one cancellation of multiplicity 5", _table_difference),
]


def verify_fixtures(matrix: SkewLinearMatrix | None = None) -> list[dict]:
    """Run every fixture; ``matrix`` replaces the built-in 5x5 matrix (fault injection)."""
    a = matrix if matrix is not None else F.del_pezzo_matrix()
    out = []
    for fx in FIXTURES:
        try:
            ok, detail = fx.check(a)
        except Exception as exc:  # a crashing fixture is a failing fixture
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append({"id": fx.id, "passed": bool(ok), "detail": detail})
    return out


def summary(results: list[dict]) -> Counter:
    return Counter("pass" if r["passed"] else "fail" for r in results)
