import itertools

import pytest
import sympy
from hypothesis import given, strategies as st

from resonance_kit.errors import PreconditionError
from resonance_kit.exactalg import GF, QQ
from resonance_kit.groebner import (
    LEX,
    Ideal,
    buchberger,
    count_standard_monomials,
    find_projective_point,
    groebner_basis,
    hilbert_series_numerator,
    ideals_equal,
    is_projectively_empty,
    leading_monomials,
    monomial_ideal_numerator,
    normal_form,
    reduces_to_zero,
    s_polynomial,
)
from resonance_kit.polyring import Ring, TPoly

R = Ring(("x0", "x1", "x2", "x3"))
XS = sympy.symbols("x0:4")


def sympy_basis(polys, ring, order="grevlex"):
    kw = {"modulus": ring.field.p} if ring.field != QQ else {}
    exprs = [sympy.sympify(str(p).replace("^", "**"), locals=dict(zip(ring.names, XS))) for p in polys]
    gb = sympy.groebner(exprs, *XS[: ring.nvars], order=order, **kw)
    return {ring.parse(str(g.as_expr())) for g in gb.exprs}


def monic(ps, order="grevlex"):
    out = set()
    for p in ps:
        lc = p.coefficient(p.leading_monomial(order))
        out.add(p * (p.ring.field.one / lc))
    return out


def test_small_examples():
    x, y = R.var(0), R.var(1)
    assert set(buchberger([x + y, x - y])) == {x, y}
    assert buchberger([R.zero]) == []
    gb = buchberger([x * x - y * y, x * y])
    assert reduces_to_zero(y**3, gb)
    assert not reduces_to_zero(x + y, gb)


def test_s_polynomial():
    x, y = R.var(0), R.var(1)
    assert s_polynomial(x * x + y, x * y) == y * y


def test_groebner_basis_requires_homogeneous():
    with pytest.raises(PreconditionError):
        groebner_basis(Ideal(R, (R.var(0) + 1,)))


def test_emptiness():
    x, y, z, w = R.gens()
    assert is_projectively_empty(Ideal(R, (x * x, y * y, z * z, w * w)))
    assert not is_projectively_empty(Ideal(R, (x * y, z, w)))
    assert is_projectively_empty(Ideal(R, (x, y, z, w)))
    # four general quadrics in P^3 have no common point
    qs = [R.parse(s) for s in ("x0^2 - x1*x2", "x1^2 - x2*x3", "x2^2 + x0*x3", "x3^2 + x0*x1 + x1*x3")]
    assert is_projectively_empty(Ideal(R, tuple(qs)))


def test_find_projective_point():
    F = R.with_field(GF(5))
    pt = find_projective_point(Ideal(F, (F.parse("x0^2 - x1^2"), F.var(2), F.var(3))))
    assert pt is not None and pt[0] == 1 and pt[1] in (F.field(1), F.field(-1))
    # x0^2 + x1^2 has no F_3 point with x2 = x3 = 0
    F3 = R.with_field(GF(3))
    assert find_projective_point(Ideal(F3, (F3.parse("x0^2 + x1^2"), F3.var(2), F3.var(3)))) is None
    # over Q: t^2 - 2 has no rational root but x0 = 0 chart works
    pt = find_projective_point(Ideal(R, (R.parse("x0^2 - 2*x1^2"), R.var(2))))
    assert pt is not None and pt[0] == 0 and pt[1] == 0 and pt[3] == 1


def test_hilbert_numerators():
    x, y, z, w = R.gens()
    assert hilbert_series_numerator(Ideal(R, ())) == TPoly.parse("1")
    assert hilbert_series_numerator(Ideal(R, (x * y,))) == TPoly.parse("1 - t^2")
    assert hilbert_series_numerator(Ideal(R, (x, y))) == TPoly.parse("1 - 2t + t^2")
    assert monomial_ideal_numerator([(1, 1, 0, 0), (0, 0, 1, 1)]) == TPoly.parse("1 - 2t^2 + t^4")


def test_ideals_equal():
    x, y, z, w = R.gens()
    assert ideals_equal([x * y, x * z], [x * y + x * z, x * z])
    assert not ideals_equal([x * y], [x * y, z * w])


quad_coeffs = st.lists(st.integers(-2, 2), min_size=10, max_size=10)
MONOS = [m for m in itertools.product(range(3), repeat=4) if sum(m) == 2]


def quadric(ring, cs):
    return ring.poly({m: c for m, c in zip(MONOS, cs)})


@given(st.lists(quad_coeffs, min_size=2, max_size=3))
def test_reduced_basis_matches_sympy_over_q(cl):
    polys = [quadric(R, cs) for cs in cl]
    ours = set(buchberger(polys))
    assert ours == monic(sympy_basis(polys, R))


@given(st.lists(quad_coeffs, min_size=2, max_size=3))
def test_reduced_basis_matches_sympy_mod_7(cl):
    F = R.with_field(GF(7))
    polys = [quadric(F, cs) for cs in cl]
    assert set(buchberger(polys)) == monic(sympy_basis(polys, F))


@given(st.lists(quad_coeffs, min_size=2, max_size=3))
def test_lex_basis_matches_sympy(cl):
    polys = [quadric(R, cs) for cs in cl]
    assert set(buchberger(polys, LEX)) == monic(sympy_basis(polys, R, "lex"), "lex")


@given(st.lists(quad_coeffs, min_size=1, max_size=3))
def test_hilbert_numerator_counts_standard_monomials(cl):
    polys = [quadric(R, cs) for cs in cl]
    ideal = Ideal(R, tuple(polys))
    gb = groebner_basis(ideal)
    num = hilbert_series_numerator(ideal)
    series = num.series(4, 4)
    lms = leading_monomials(gb)
    for d in range(5):
        assert series[d] == count_standard_monomials(lms, 4, d)


@given(st.lists(quad_coeffs, min_size=1, max_size=3), quad_coeffs)
def test_normal_form_is_canonical(cl, extra):
    polys = [quadric(R, cs) for cs in cl]
    gb = buchberger(polys)
    p = quadric(R, extra)
    nf = normal_form(p, gb)
    combo = p + polys[0] * 3
    assert normal_form(combo, gb) == nf
    lms = leading_monomials(gb)
    for m in nf.terms:
        assert not any(all(a >= b for a, b in zip(m, lm)) for lm in lms)
