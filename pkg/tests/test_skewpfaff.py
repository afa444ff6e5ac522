import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from resonance_kit.errors import PreconditionError, RingMismatchError
from resonance_kit.exactalg import GF, QQ, DenseMatrix, det_and_inverse
from resonance_kit.fixtures import del_pezzo_matrix
from resonance_kit.grassmann import PluckerContext, pluecker_quadrics
from resonance_kit.polyring import Ring, quadric_rank
from resonance_kit.skewpfaff import (
    SkewLinearMatrix,
    base_change,
    generic_skew,
    pfaffian,
    pfaffian_scalar,
    principal_pfaffians,
    sub_pfaffians,
)


def matching_pfaffian(entry, n):
    """Sum over perfect matchings with the crossing-number sign."""

    def matchings(idx):
        if not idx:
            yield []
            return
        a = idx[0]
        for k in range(1, len(idx)):
            for rest in matchings(idx[1:k] + idx[k + 1 :]):
                yield [(a, idx[k])] + rest

    total = 0
    for m in matchings(tuple(range(n))):
        crossings = sum(1 for (a, b), (c, d) in itertools.combinations(m, 2) if a < c < b < d or c < a < d < b)
        term = (-1) ** crossings
        for i, j in m:
            term = term * entry(i, j)
        total = total + term
    return total


def scalar_skew(n, values, field=QQ):
    rows = [[field.zero] * n for _ in range(n)]
    it = iter(values)
    for i in range(n):
        for j in range(i + 1, n):
            v = field(next(it))
            rows[i][j], rows[j][i] = v, -v
    return DenseMatrix.from_rows(rows, field, n)


def test_four_by_four_sign_convention():
    a = generic_skew(4)
    assert str(pfaffian(a)) == "z14*z23 - z13*z24 + z12*z34"


def test_odd_sizes_rejected():
    with pytest.raises(PreconditionError):
        pfaffian(generic_skew(3))
    with pytest.raises(PreconditionError):
        principal_pfaffians(generic_skew(4))


def test_two_by_two_and_empty():
    assert pfaffian_scalar(scalar_skew(2, [Fraction(7, 2)])) == Fraction(7, 2)
    assert pfaffian_scalar(DenseMatrix.from_rows([], QQ, 0)) == 1


def test_del_pezzo_principal_pfaffians():
    pfs = principal_pfaffians(del_pezzo_matrix())
    assert sorted(quadric_rank(p) for p in pfs) == [5, 5, 5, 6, 6]
    assert str(pfs[4]) == "x2^2 - x1*x3 + x0*x4"


def test_principal_pfaffians_vanish_on_decomposables():
    a = generic_skew(5)
    R = Ring(tuple(f"a{i}" for i in range(5)) + tuple(f"b{i}" for i in range(5)))
    av, bv = R.gens()[:5], R.gens()[5:]
    subst = [av[i] * bv[j] - av[j] * bv[i] for i, j in itertools.combinations(range(5), 2)]
    for p in principal_pfaffians(a):
        assert p.substitute(subst).is_zero()


def test_generic_pfaffians_are_pluecker_quadrics_up_to_sign():
    quads = pluecker_quadrics(PluckerContext(5))
    for p in principal_pfaffians(generic_skew(5)):
        assert sum(1 for q in quads if p == q or p == -q) == 1


def test_base_change_examples():
    a = generic_skew(4)
    assert base_change(a, DenseMatrix.identity(4)) == a
    swap = DenseMatrix.from_rows([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    b = base_change(a, swap)
    assert b.entry(0, 1) == -a.entry(0, 1)
    assert b.entry(0, 2) == a.entry(1, 2)
    with pytest.raises(PreconditionError):
        base_change(a, DenseMatrix.from_rows([[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    with pytest.raises(RingMismatchError):
        base_change(a, DenseMatrix.identity(4, GF(5)))


def test_sub_pfaffians_count():
    assert len(sub_pfaffians(generic_skew(6))) == 15


def test_json_like_construction_rejects_bad_pairs():
    R = Ring(("x",))
    with pytest.raises(PreconditionError):
        SkewLinearMatrix(3, R, {(1, 0): R.var(0)})
    with pytest.raises(PreconditionError):
        SkewLinearMatrix.from_coefficients(3, R, [(1, 2, [1]), (1, 2, [2])])


@pytest.mark.parametrize("n", [2, 4, 6, 8])
@given(data=st.data())
def test_pfaffian_squared_is_determinant(n, data):
    vals = data.draw(st.lists(st.integers(-3, 3), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    m = scalar_skew(n, vals)
    pf = pfaffian_scalar(m)
    det, _ = det_and_inverse(m)
    assert pf * pf == det
    if n <= 6:
        assert pf == matching_pfaffian(lambda i, j: m[i, j], n)


@given(st.lists(st.integers(0, 6), min_size=15, max_size=15))
def test_pfaffian_squared_is_determinant_mod_7(vals):
    m = scalar_skew(6, vals, GF(7))
    det, _ = det_and_inverse(m)
    assert pfaffian_scalar(m) ** 2 == det


def test_symbolic_pfaffian_matches_matching_expansion():
    a = generic_skew(6)
    assert pfaffian(a) == matching_pfaffian(a.entry, 6)


@given(st.lists(st.integers(-2, 2), min_size=16, max_size=16))
def test_pfaffian_of_congruence_is_det_times_pfaffian(vals):
    u = DenseMatrix.from_rows([vals[4 * i : 4 * i + 4] for i in range(4)])
    det, _ = det_and_inverse(u)
    if not det:
        return
    a = generic_skew(4)
    lhs = pfaffian(base_change(a, u))
    assert lhs == pfaffian(a) * det
    # independent expansion of U A U^t through sympy
    z = sympy.Matrix(4, 4, lambda i, j: 0)
    syms = {str(v): sympy.Symbol(str(v)) for v in a.ring.names}
    for i in range(4):
        for j in range(i + 1, 4):
            s = syms[str(a.entry(i, j))]
            z[i, j], z[j, i] = s, -s
    su = sympy.Matrix(vals).reshape(4, 4)
    t = su * z * su.T
    sym_pf = sympy.expand(t[0, 1] * t[2, 3] - t[0, 2] * t[1, 3] + t[0, 3] * t[1, 2])
    assert a.ring.parse(str(sym_pf)) == lhs
