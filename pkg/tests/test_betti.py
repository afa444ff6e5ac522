import pytest
from hypothesis import given, strategies as st

from resonance_kit import fixtures as F
from resonance_kit.betti import (
    BettiTable,
    cancel,
    dual_betti,
    hilbert_numerator,
    horseshoe_sum,
    ideal_to_quotient,
    mapping_cone,
    table_difference,
    validate_acm_table,
)
from resonance_kit.errors import InputFormatError, PreconditionError
from resonance_kit.polyring import TPoly
from resonance_kit.rng import random_betti

CURVE_BETTI = BettiTable(7, F.CURVE_TABLE)
GENERIC = BettiTable(7, F.GENERIC_TABLE)
CURVE = TPoly.parse(F.CURVE_NUMERATOR)

GOLDEN = """\
j\\i |  0  1  2  3  4  5
----+------------------
  0 |  1  -  -  -  -  -
  1 |  -  5  5  -  -  -
  2 |  - 13 45 56 25  -
  3 |  -  -  -  -  -  2"""


def test_hilbert_numerators():
    assert hilbert_numerator(BettiTable(7, {(0, 0): 1})) == TPoly.parse("1")
    assert hilbert_numerator(CURVE_BETTI) == CURVE
    assert hilbert_numerator(GENERIC) == CURVE


def test_cone_examples():
    b = BettiTable(7, F.BUNDLE_E)
    assert mapping_cone(BettiTable(7, {}), b) == b
    cone = mapping_cone(BettiTable(7, F.TWO_O_V5), b, [(0, 0, 2)])
    assert cone.entries == {(0, 0): 13, (1, 1): 45, (2, 2): 55, (3, 3): 25, (4, 5): 2}
    with pytest.raises(PreconditionError, match=r"\(0,0\)"):
        mapping_cone(BettiTable(7, F.TWO_O_V5), b, [(0, 0, 3)])
    with pytest.raises(PreconditionError):
        mapping_cone(BettiTable(7, F.TWO_O_V5), b, [(0, 0, 0)])
    with pytest.raises(PreconditionError):
        mapping_cone(BettiTable(6, F.TWO_O_V5), b)


def test_horseshoe_reproduces_curve_table():
    cone = mapping_cone(BettiTable(7, F.TWO_O_V5), BettiTable(7, F.BUNDLE_E), F.CONE_CANCELLATIONS)
    table = ideal_to_quotient(horseshoe_sum(BettiTable(7, F.I_V5), cone.twist(-3)))
    assert table == CURVE_BETTI
    assert horseshoe_sum(CURVE_BETTI, BettiTable(7, {})) == CURVE_BETTI


def test_dual_examples():
    d = dual_betti(CURVE_BETTI, 5, -7)
    assert d[(0, -1)] == 2
    assert dual_betti(d, 5, -7) == CURVE_BETTI
    assert dual_betti(BettiTable(1, {(0, 0): 1}), 0, -3).entries == {(0, 3): 1}
    with pytest.raises(PreconditionError):
        dual_betti(CURVE_BETTI, 4, -7)


def test_validate_acm_table():
    assert validate_acm_table(CURVE_BETTI, F.CURVE_NUMERATOR)
    assert validate_acm_table(GENERIC, CURVE)
    bad = dict(F.CURVE_TABLE)
    bad[(1, 2)] = 4
    assert not validate_acm_table(BettiTable(7, bad), CURVE)
    assert not validate_acm_table(BettiTable(2, {(0, 0): 1, (3, 3): 1, (4, 3): 1}), "1")


def test_tables_differ_by_one_cancellation():
    assert table_difference(CURVE_BETTI, GENERIC) == [(1, 3, 5)]
    assert cancel(CURVE_BETTI, 1, 3, 5) == GENERIC
    with pytest.raises(PreconditionError):
        table_difference(GENERIC, CURVE_BETTI)


def test_render_golden():
    assert CURVE_BETTI.render() == GOLDEN
    assert BettiTable(3, {}).render() == "(zero table)"


def test_json_round_trip_and_errors():
    assert BettiTable.from_json(CURVE_BETTI.to_json()) == CURVE_BETTI
    with pytest.raises(InputFormatError):
        BettiTable.from_json({"vars": 7, "entries": [[0, 0]]})
    with pytest.raises(InputFormatError):
        BettiTable.from_json({"vars": 7, "entries": [[0, 0, 1], [0, 0, 2]]})
    with pytest.raises(InputFormatError):
        BettiTable.from_json({"vars": 7, "entries": [[-1, 0, 1]]})


seeds = st.integers(0, 2**64 - 1)


@given(seeds, seeds)
def test_horseshoe_adds_numerators(s1, s2):
    a, c = random_betti(4, 6, s1), random_betti(4, 6, s2)
    total = horseshoe_sum(a, c)
    assert hilbert_numerator(total) == hilbert_numerator(a) + hilbert_numerator(c)
    for k in set(a.entries) | set(c.entries):
        assert total[k] == a[k] + c[k]


@given(seeds, st.integers(0, 6), st.integers(-3, 3))
def test_dual_is_an_involution(seed, codim, omega):
    t = random_betti(min(codim, 4), 5, seed)
    assert dual_betti(dual_betti(t, codim, omega), codim, omega) == t


@given(seeds)
def test_cancellation_keeps_numerator(seed):
    t = random_betti(3, 8, seed)
    candidates = [(i, j) for (i, j) in t.entries if t[(i + 1, j)]]
    for i, j in candidates:
        m = min(t[(i, j)], t[(i + 1, j)])
        assert hilbert_numerator(cancel(t, i, j, m)) == hilbert_numerator(t)
