import numpy as np
import pytest

from loccqss import gf
from loccqss.exceptions import (
    DivisionByZero,
    FieldMismatch,
    NoBuiltinPolynomial,
    NonPrimeCharacteristic,
    ReduciblePolynomial,
)
from loccqss.gf import field_new

PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61]

EXTENSIONS = {
    (2, 2): None,
    (2, 3): None,
    (3, 2): None,
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (5, 2): (2, 1, 1),  # x^2 + x + 2
    (3, 3): (1, 2, 0, 1),  # x^3 + 2x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
    (7, 2): (1, 0, 1),  # x^2 + 1
    (2, 6): (1, 1, 0, 0, 0, 0, 1),  # x^6 + x + 1
}

ALL_FIELDS = [field_new(p, 1, (0, 1)) for p in PRIMES] + [
    field_new(p, m, poly) for (p, m), poly in EXTENSIONS.items()
]


def tables(field):
    q = field.q
    add = np.array([[gf.add_values(field, a, b) for b in range(q)] for a in range(q)])
    mul = np.array([[gf.mul_values(field, a, b) for b in range(q)] for a in range(q)])
    return add, mul


@pytest.mark.parametrize("field", ALL_FIELDS, ids=str)
def test_field_axioms_exhaustive(field):
    q = field.q
    add, mul = tables(field)
    x = np.arange(q)

    assert (add == add.T).all()
    assert (mul == mul.T).all()
    assert (add[0] == x).all()
    assert (mul[1] == x).all()
    assert (mul[0] == 0).all()

    # associativity and distributivity over every triple
    X, Y, Z = np.meshgrid(x, x, x, indexing="ij")
    assert (add[add[X, Y], Z] == add[X, add[Y, Z]]).all()
    assert (mul[mul[X, Y], Z] == mul[X, mul[Y, Z]]).all()
    assert (mul[X, add[Y, Z]] == add[mul[X, Y], mul[X, Z]]).all()

    # every row of the addition table is a permutation, with a unique negative
    for a in range(q):
        assert sorted(add[a]) == list(range(q))
        assert add[a, gf.neg_values(field, a)] == 0
    for a in range(1, q):
        assert mul[a, gf.inv_values(field, a)] == 1
        assert 0 not in mul[a, 1:]


@pytest.mark.parametrize("field", ALL_FIELDS, ids=str)
def test_inverse_methods_agree(field):
    for a in range(1, field.q):
        assert gf.inv_values(field, a) == gf.inv_values_by_power(field, a)


@pytest.mark.parametrize("field", ALL_FIELDS, ids=str)
def test_trace_is_linear_with_uniform_fibers(field):
    q, p = field.q, field.p
    traces = [gf.trace_value(field, x) for x in range(q)]
    assert all(0 <= t < p for t in traces)
    for a in range(q):
        for b in range(0, q, max(1, q // 16)):
            assert traces[gf.add_values(field, a, b)] == (traces[a] + traces[b]) % p
        for c in range(p):
            assert traces[gf.mul_values(field, c, a)] == (c * traces[a]) % p
    counts = np.bincount(traces, minlength=p)
    assert (counts == q // p).all()


def test_field_new_examples():
    f2 = field_new(2)
    assert (f2.p, f2.m, f2.q) == (2, 1, 2)
    f4 = field_new(2, 2, [1, 1, 1])
    assert f4.q == 4
    with pytest.raises(ReduciblePolynomial):
        field_new(2, 2, [1, 0, 1])


def test_field_new_errors():
    with pytest.raises(NonPrimeCharacteristic):
        field_new(4)
    with pytest.raises(NoBuiltinPolynomial):
        field_new(11, 2)
    with pytest.raises(ReduciblePolynomial):
        field_new(2, 2, [1, 1])  # wrong degree
    with pytest.raises(ReduciblePolynomial):
        field_new(2, 2, [1, 1, 0])  # not monic


def test_is_irreducible():
    assert gf.is_irreducible([1, 1, 1], 2)
    assert not gf.is_irreducible([1, 0, 1], 2)
    assert gf.is_irreducible([1, 1, 0, 1], 2)
    assert not gf.is_irreducible([0, 0, 1], 3)


def test_add_examples(f2, f3, f4):
    assert (f2.one + f2.one).value == 0
    assert (f3.element(2) + f3.element(2)).value == 1
    alpha = f4.element(2)
    assert (alpha + alpha).value == 0


def test_mul_examples(f3, f4):
    alpha = f4.element(2)
    assert (alpha * alpha).value == 3  # alpha + 1
    for field in (f3, f4):
        for a in field.elements():
            assert (field.zero * a).is_zero()
    assert (f3.element(2) * f3.element(2)).value == 1


def test_inverse_examples(f3, f4):
    assert gf.inv(f3.one) == f3.one
    assert gf.inv(f4.element(2)).value == 3
    assert gf.inv_by_power(f4.element(2)).value == 3
    with pytest.raises(DivisionByZero):
        gf.inv(f4.zero)
    with pytest.raises(ZeroDivisionError):
        f3.one / f3.zero


def test_operators(f4):
    alpha = f4.element(2)
    assert alpha**3 == f4.one
    assert alpha**0 == f4.one
    assert -alpha == alpha
    assert alpha - alpha == f4.zero
    assert (f4.one / alpha).value == 3
    assert int(alpha) == 2


def test_trace_examples(f3, f4):
    for x in f3.elements():
        assert gf.trace(x) == x.value
    assert gf.trace(f4.element(2)) == 1
    assert gf.trace(f4.one) == 0
    assert gf.trace(f4.zero) == 0


def test_field_mismatch(f2, f3):
    with pytest.raises(FieldMismatch):
        f2.one + f3.one


def test_element_out_of_range(f3):
    with pytest.raises(ValueError):
        f3.element(3)
