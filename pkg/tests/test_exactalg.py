from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from resonance_kit.errors import FieldMismatchError, InputFormatError, PreconditionError
from resonance_kit.exactalg import (
    GF,
    QQ,
    DenseMatrix,
    PrimeField,
    Residue,
    complete_to_basis,
    det_and_inverse,
    field_from_tag,
    kernel,
    normalize_vector,
    rank,
    rref,
)

from conftest import rational_matrices


def test_residue_arithmetic():
    F = GF(7)
    a, b = F(3), F(5)
    assert a + b == F(1)
    assert a * b == F(1)
    assert a / b == F(3) * F(3)
    assert -a == F(4)
    assert a ** 6 == F.one
    assert int(F(-1)) == 6


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        GF(3)(1) + GF(5)(1)
    with pytest.raises(FieldMismatchError):
        GF(3)(1) + Fraction(1, 2)
    with pytest.raises(FieldMismatchError):
        QQ(GF(3)(1))
    with pytest.raises(FieldMismatchError):
        QQ(0.5)


def test_fraction_reduces_mod_p():
    assert GF(5)(Fraction(1, 2)) == GF(5)(3)
    with pytest.raises(PreconditionError):
        GF(5)(Fraction(1, 5))


def test_field_tags():
    assert field_from_tag("Q") is QQ
    assert field_from_tag("Fp:11") == GF(11)
    assert GF(11).tag == "Fp:11"
    with pytest.raises(InputFormatError):
        field_from_tag("Fp:x")
    with pytest.raises(PreconditionError):
        PrimeField(9)


def test_rank_examples():
    m = DenseMatrix.from_rows([[1, 2], [2, 4]])
    assert rank(m) == 1
    assert kernel(m) == [(Fraction(1), Fraction(-1, 2))]
    # singular over F_2 only
    m2 = DenseMatrix.from_rows([[1, 1], [1, 3]], GF(2))
    assert rank(m2) == 1
    assert rank(DenseMatrix.from_rows([[1, 1], [1, 3]])) == 2


def test_rref_rejects_mixed_entries():
    m = DenseMatrix.from_rows([[1, 0], [0, 1]], GF(3))
    bad = DenseMatrix(2, 2, (m[0, 0], Fraction(1), m[1, 0], m[1, 1]), GF(3))
    with pytest.raises(FieldMismatchError):
        rref(bad)


def test_det_and_inverse():
    m = DenseMatrix.from_rows([[2, 1], [7, 4]])
    det, inv = det_and_inverse(m)
    assert det == 1
    assert (m @ inv) == DenseMatrix.identity(2)
    det, inv = det_and_inverse(DenseMatrix.from_rows([[1, 2], [2, 4]]))
    assert det == 0 and inv is None
    with pytest.raises(PreconditionError):
        det_and_inverse(DenseMatrix.from_rows([[1, 2, 3]]))


def test_complete_to_basis():
    basis = complete_to_basis([(1, 1, 0), (0, 1, 1)], 3, QQ)
    assert basis[:2] == [(1, 1, 0), (0, 1, 1)]
    assert rank(DenseMatrix.from_rows(basis)) == 3
    with pytest.raises(PreconditionError):
        complete_to_basis([(1, 1, 0), (2, 2, 0)], 3, QQ)


def test_normalize_vector():
    assert normalize_vector((0, Fraction(2), Fraction(4))) == (0, 1, 2)


@given(rational_matrices(3, 5))
def test_rank_and_kernel_match_sympy(rows):
    m = DenseMatrix.from_rows(rows)
    sm = sympy.Matrix(rows)
    assert rank(m) == sm.rank()
    ker = kernel(m)
    assert len(ker) == 5 - sm.rank()
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
        assert next(x for x in v if x) == 1


@given(rational_matrices(3, 3))
def test_det_matches_sympy(rows):
    det, inv = det_and_inverse(DenseMatrix.from_rows(rows))
    assert det == Fraction(str(sympy.Matrix(rows).det()))
    if det:
        assert DenseMatrix.from_rows(rows) @ inv == DenseMatrix.identity(3)


@given(st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), min_size=3, max_size=3))
def test_rref_over_fp_is_idempotent(rows):
    m = DenseMatrix.from_rows(rows, GF(5))
    r, rk, _ = rref(m)
    r2, rk2, _ = rref(r)
    assert r == r2 and rk == rk2
    # the row space has exactly 5^rank elements
    span = {tuple((a * x + b * y + c * z) % 5 for x, y, z in zip(*rows)) for a in range(5) for b in range(5) for c in range(5)}
    assert len(span) == 5**rk


def test_residue_repr_and_hash():
    x = Residue(3, 7)
    assert hash(x) == hash(Residue(10, 7))
    assert str(x) == "3"
