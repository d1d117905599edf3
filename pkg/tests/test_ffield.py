import numpy as np
import pytest

from sumnet.errors import DimensionMismatch, DivisionByZero, NonPrimeModulus
from sumnet.ffield import Field, FieldMatrix, field_new, mat_mul, mat_vec, vstack

PRIMES_TO_97 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                59, 61, 67, 71, 73, 79, 83, 89, 97]


def test_field_new_accepts_primes():
    assert field_new(2).p == 2
    assert field_new(13).characteristic == 13


def test_field_new_rejects_composites():
    for bad in (4, 6, 9, 1, 0, 100):
        with pytest.raises(NonPrimeModulus):
            field_new(bad)


def test_basic_arithmetic():
    gf2 = Field(2)
    assert gf2.add(1, 1) == 0
    gf3 = Field(3)
    assert gf3.inv(2) == 2
    gf5 = Field(5)
    # scan for the inverse of 2 by brute force
    expect = next(a for a in range(1, 5) if (a * 2) % 5 == 1)
    assert gf5.inv(2) == expect == 3
    assert gf5.arith(4, 3, "add") == 2
    assert gf5.arith(1, 3, "sub") == 3
    assert gf5.arith(4, 4, "mul") == 1


def test_inverse_exhaustive_small_primes():
    for p in PRIMES_TO_97:
        fld = Field(p)
        for a in range(1, p):
            assert fld.mul(fld.inv(a), a) == 1


def test_inv_zero_raises():
    with pytest.raises(DivisionByZero):
        Field(7).inv(0)


def test_identity_mat_vec():
    fld = Field(5)
    ident = fld.identity(3)
    x = [1, 4, 2]
    assert list(ident.vec(x)) == x


def test_hand_multiplication_gf2():
    fld = Field(2)
    a = fld.matrix([[1, 1], [0, 1]])
    b = fld.matrix([[1], [1]])
    assert (a @ b).entries.tolist() == [[0], [1]]


def test_mat_mul_associativity_exhaustive_gf2_2x2():
    fld = Field(2)
    mats = [fld.matrix(np.array(bits).reshape(2, 2))
            for bits in np.ndindex(2, 2, 2, 2)]
    for a in mats:
        for b in mats:
            for c in mats:
                assert (a @ b) @ c == a @ (b @ c)


@pytest.mark.parametrize("p", [2, 3, 13])
def test_mat_mul_associativity_random_3x3(p):
    fld = Field(p)
    rng = np.random.default_rng(p)
    for _ in range(100):
        a, b, c = (fld.matrix(rng.integers(0, p, (3, 3))) for _ in range(3))
        assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))


def test_vstack_roundtrip():
    fld = Field(7)
    rng = np.random.default_rng(0)
    blocks = [fld.matrix(rng.integers(0, 7, (h, 4))) for h in (1, 3, 2)]
    stacked = vstack(blocks)
    assert stacked.rows == 6 and stacked.cols == 4
    lo = 0
    for blk in blocks:
        assert stacked.row_slice(lo, lo + blk.rows) == blk
        lo += blk.rows


def test_vstack_shape_example():
    fld = Field(3)
    n = 4
    out = vstack([fld.zeros(1, n), fld.identity(n)])
    assert out.rows == n + 1 and out.cols == n


def test_dimension_mismatch():
    fld = Field(3)
    with pytest.raises(DimensionMismatch):
        mat_mul(fld.zeros(2, 3), fld.zeros(2, 3))
    with pytest.raises(DimensionMismatch):
        mat_vec(fld.zeros(2, 3), [1, 2])
    with pytest.raises(DimensionMismatch):
        vstack([fld.zeros(1, 2), fld.zeros(1, 3)])


def test_entries_reduced_and_immutable():
    fld = Field(5)
    m = fld.matrix([[7, -1], [10, 4]])
    assert m.entries.tolist() == [[2, 4], [0, 4]]
    with pytest.raises(ValueError):
        m.entries[0, 0] = 3
    with pytest.raises(AttributeError):
        m.entries = None


def test_json_roundtrip():
    fld = Field(13)
    rng = np.random.default_rng(3)
    m = fld.matrix(rng.integers(0, 13, (4, 6)))
    again = FieldMatrix.from_json(m.to_json())
    assert again == m
