
import pytest
import sympy
from hypothesis import given, strategies as st

from resonance_kit.errors import InputFormatError, PreconditionError, RingMismatchError
from resonance_kit.exactalg import GF
from resonance_kit.polyring import Ring, TPoly, gram_matrix, linear_change, quadric_rank, restrict_linear

R = Ring(("x0", "x1", "x2", "x3", "x4"))


def test_parse_and_render_round_trip():
    q = R.parse("x0*x4 - x1*x3 + x2^2")
    assert str(q) == "x2^2 - x1*x3 + x0*x4"
    assert R.parse(str(q)) == q
    assert R.parse("(x0 + x1)**2") == R.parse("x0^2 + 2*x0*x1 + x1^2")


def test_parse_errors():
    with pytest.raises(InputFormatError):
        R.parse("x0 + y")
    with pytest.raises(InputFormatError):
        R.parse("x0 +")
    with pytest.raises(InputFormatError):
        R.parse("1/x0")


def test_ring_mismatch():
    other = Ring(("a", "b"))
    with pytest.raises(RingMismatchError):
        R.var(0) + other.var(0)
    with pytest.raises(RingMismatchError):
        R.var(0) + R.with_field(GF(5)).var(0)


def test_quadric_ranks():
    assert quadric_rank(R.parse("x0*x4 - x1*x3 + x2^2")) == 5
    assert quadric_rank(R.parse("x0*x1 - x2*x3")) == 4
    assert quadric_rank(R.parse("(x0 + x1)^2")) == 1
    assert quadric_rank(R.zero) == 0
    with pytest.raises(PreconditionError):
        quadric_rank(R.parse("x0^3"))
    with pytest.raises(PreconditionError):
        quadric_rank(R.with_field(GF(2)).parse("x0*x1"))


def test_quadric_rank_depends_on_characteristic():
    # Gram determinant 3/4 vanishes mod 3
    q = "x0^2 + x0*x1 + x1^2"
    assert quadric_rank(R.parse(q)) == 2
    assert quadric_rank(R.with_field(GF(3)).parse(q)) == 1


def test_linear_change_and_restriction():
    q = R.parse("x0*x1")
    S = Ring(("s", "t"))
    s, t = S.gens()
    out = linear_change(q, [s + t, s - t, S.zero, S.zero, S.zero])
    assert out == s * s - t * t
    r = restrict_linear(R.parse("x0^2 + x1^2"), [(1, 1, 0, 0, 0), (0, 0, 1, 0, 0)])
    assert str(r) == "2*t0^2"


def test_evaluate_and_coefficients():
    p = R.parse("2*x0 - x3")
    assert p.linear_coefficients() == (2, 0, 0, -1, 0)
    assert p.evaluate([1, 0, 0, 1, 0]) == 1
    with pytest.raises(PreconditionError):
        R.parse("x0*x1").linear_coefficients()


def test_tpoly_parse_and_series():
    t = TPoly.parse("1 - 5t^2 + 5t^3 - t^5")
    assert str(t) == "1 - 5t^2 + 5t^3 - t^5"
    assert t.as_dict() == {0: 1, 2: -5, 3: 5, 5: -1}
    # Hilbert function of the Grassmannian Gr(2,5) cone: 1, 10, 50, 175
    assert t.series(10, 3) == [1, 10, 50, 175]
    assert TPoly.parse("0") == TPoly.from_dict({})


coeff = st.integers(-3, 3)


@given(st.lists(coeff, min_size=15, max_size=15))
def test_quadric_rank_matches_sympy_hessian(cs):
    mons = [(i, j) for i in range(5) for j in range(i, 5)]
    q = R.zero
    for c, (i, j) in zip(cs, mons):
        q = q + R.var(i) * R.var(j) * c
    xs = sympy.symbols("x0:5")
    expr = sum(c * xs[i] * xs[j] for c, (i, j) in zip(cs, mons))
    assert quadric_rank(q) == sympy.hessian(expr, xs).rank()
    g = gram_matrix(q)
    assert all(g[i, j] == g[j, i] for i in range(5) for j in range(5))


@given(st.lists(coeff, min_size=5, max_size=5), st.lists(coeff, min_size=5, max_size=5))
def test_arithmetic_matches_sympy(a, b):
    xs = sympy.symbols("x0:5")
    pa = R.linear_form(a) * R.linear_form(b) + R.linear_form(a) ** 2
    ea = sympy.expand(sum(c * x for c, x in zip(a, xs)) * sum(c * x for c, x in zip(b, xs)) + sum(c * x for c, x in zip(a, xs)) ** 2)
    assert R.parse(str(ea)) == pa
    assert (pa - pa).is_zero()


def test_fp_parse_reduces_coefficients():
    F = R.with_field(GF(5))
    assert F.parse("6*x0 + x1/2") == F.parse("x0 + 3*x1")
