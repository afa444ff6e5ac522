import itertools

import pytest
from hypothesis import given, strategies as st

from resonance_kit.errors import InputFormatError, PreconditionError
from resonance_kit.exactalg import GF, QQ, DenseMatrix, det_and_inverse
from resonance_kit.fixtures import del_pezzo_matrix
from resonance_kit.grassmann import (
    LinearSection,
    PluckerContext,
    bruteforce_section,
    pfaffians_match_pluecker,
    pluecker_ideal,
    pluecker_quadrics,
    rank_test_n4,
    section_smoothness,
    witness_is_valid,
)
from resonance_kit.polyring import Ring, quadric_rank
from resonance_kit.resonance import WedgeBasis, kernel_of_partial
from resonance_kit.rng import SplitMix64, random_forms, random_section


def test_pluecker_n4():
    ctx = PluckerContext(4)
    assert pluecker_quadrics(ctx) == [ctx.ring.parse("z12*z34 - z13*z24 + z14*z23")]


def test_pluecker_n5_ranks():
    qs = pluecker_quadrics(PluckerContext(5))
    assert len(qs) == 5
    assert all(quadric_rank(q) == 6 for q in qs)
    assert len(pluecker_quadrics(PluckerContext(6))) == 15


def test_pluecker_small_n_rejected():
    with pytest.raises(PreconditionError):
        pluecker_ideal(PluckerContext(3))


def test_decomposables_satisfy_pluecker():
    ctx = PluckerContext(5)
    R = Ring(tuple(f"a{i}" for i in range(5)) + tuple(f"b{i}" for i in range(5)))
    a, b = R.gens()[:5], R.gens()[5:]
    subst = [a[i] * b[j] - a[j] * b[i] for i, j in itertools.combinations(range(5), 2)]
    for q in pluecker_quadrics(ctx):
        assert q.substitute(subst).is_zero()


def test_pfaffians_match_pluecker():
    ctx = PluckerContext(5)
    assert pfaffians_match_pluecker(ctx)
    assert not pfaffians_match_pluecker(ctx, drop=2)
    with pytest.raises(PreconditionError):
        pfaffians_match_pluecker(PluckerContext(4))


@given(st.lists(st.integers(0, 4), min_size=10, max_size=10))
def test_pfaffians_match_after_change_of_variables(diag_shift):
    # unipotent upper-triangular change with random off-diagonal row
    rows = [[1 if i == j else 0 for j in range(10)] for i in range(10)]
    rows[0] = [1] + diag_shift[1:]
    change = DenseMatrix.from_rows(rows)
    assert pfaffians_match_pluecker(PluckerContext(5), change=change)


def test_section_round_trip():
    s = random_section(5, 3, QQ)
    assert s.codim == 3 and len(s.span) == 7
    assert LinearSection.from_span(5, s.span, QQ) == s
    assert LinearSection.from_json(s.to_json()) == s
    with pytest.raises(PreconditionError):
        LinearSection.from_lperp(5, [s.lperp[0], s.lperp[0]], QQ)
    with pytest.raises(InputFormatError):
        LinearSection.from_json({"n": 5, "Lperp": [[1, 2]]})


def test_tangent_section_is_singular():
    wb = WedgeBasis(5)
    e12 = tuple(1 if k == 0 else 0 for k in range(10))
    forms = [e12] + random_forms(5, 2, 4, QQ)
    s = LinearSection.from_lperp(5, forms, QQ)
    rep = section_smoothness(s)
    assert rep.verdict == "singular_or_degenerate"
    assert witness_is_valid(s, rep)
    assert wb.is_decomposable(rep.witness)


def test_del_pezzo_kernel_triple_is_singular():
    from resonance_kit.exactalg import rank
    from resonance_kit.resonance import resonance_decide

    # the witness lives over F_3, so the triple is taken there
    cert = resonance_decide(del_pezzo_matrix())
    f3 = cert.witness_field
    forms = [cert.omega]
    for v in kernel_of_partial(del_pezzo_matrix(f3)).vectors:
        if len(forms) < 3 and rank(DenseMatrix.from_rows(forms + [v], f3, 10)) == len(forms) + 1:
            forms.append(v)
    s = LinearSection.from_lperp(5, forms, f3)
    rep = section_smoothness(s)
    assert rep.verdict == "singular_or_degenerate"
    assert witness_is_valid(s, rep)


def test_wrong_codimension_rejected():
    s = LinearSection.from_lperp(5, random_forms(5, 2, 0, QQ), QQ)
    with pytest.raises(PreconditionError):
        section_smoothness(s)
    with pytest.raises(PreconditionError):
        section_smoothness(LinearSection.from_lperp(6, random_forms(6, 3, 0, QQ), QQ))


@pytest.mark.parametrize("seed", range(12))
def test_sections_agree_with_enumeration(seed):
    s = random_section(5, seed, GF(5))
    rep = section_smoothness(s)
    assert (bruteforce_section(s) is None) == (rep.verdict == "smooth_transverse")
    assert witness_is_valid(s, rep)


@given(st.integers(0, 2**32), st.lists(st.integers(0, 4), min_size=9, max_size=9))
def test_verdict_invariant_under_basis_change_of_lperp(seed, uvals):
    F = GF(5)
    u = DenseMatrix.from_rows([uvals[3 * i : 3 * i + 3] for i in range(3)], F)
    det, _ = det_and_inverse(u)
    if not det:
        return
    forms = random_forms(5, 3, seed, F)
    mixed = [tuple(sum((u[i, r] * forms[r][c] for r in range(3)), F.zero) for c in range(10)) for i in range(3)]
    a = section_smoothness(LinearSection.from_lperp(5, forms, F))
    b = section_smoothness(LinearSection.from_lperp(5, mixed, F))
    assert a.verdict == b.verdict


@pytest.mark.parametrize("seed", range(20))
def test_n4_rank_test_agrees(seed):
    field = QQ if seed % 2 else GF(5)
    rng = SplitMix64(seed)
    if seed % 5 == 0:
        # force a decomposable hyperplane: e1 ^ (e2 + c e3)
        c = rng.scalar(field)
        form = (field.one, c, field.zero, field.zero, field.zero, field.zero)
    else:
        form = random_forms(4, 1, seed, field, rng)[0]
    s = LinearSection.from_lperp(4, [form], field)
    assert section_smoothness(s).verdict == rank_test_n4(s)
