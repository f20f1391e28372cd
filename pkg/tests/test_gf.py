from itertools import product

import numpy as np
import pytest

from perfectlike.errors import ParameterError
from perfectlike.gf import ModRing, build_field, factor_prime_power, mod_sum

FIELD_ORDERS = [2, 3, 4, 5, 7, 8, 9]


@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_field_axioms_exhaustive(q):
    F = build_field(q)
    F.check_axioms()
    a, b, c = np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing="ij")
    add, mul = F.add, F.mul
    assert (add[add[a, b], c] == add[a, add[b, c]]).all()
    assert (mul[mul[a, b], c] == mul[a, mul[b, c]]).all()
    assert (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all()
    assert (add == add.T).all() and (mul == mul.T).all()
    x = np.arange(q)
    assert (add[x, F.neg[x]] == 0).all()
    assert (mul[x[1:], F.inv[x[1:]]] == 1).all()
    assert (add[0] == x).all() and (mul[1] == x).all()


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_prime_fields_are_integers_mod_q(q):
    F = build_field(q)
    a, b = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    assert (F.add == (a + b) % q).all()
    assert (F.mul == (a * b) % q).all()


def test_small_field_values():
    assert build_field(3).mul[2, 2] == 1
    F4 = build_field(4)
    assert F4.mul[2, 2] == 3
    assert F4.mul[2, 3] == 1
    assert F4.add[2, 3] == 1


@pytest.mark.parametrize("q", [1, 6, 10, 11, 16, 0])
def test_unsupported_orders(q):
    with pytest.raises(ParameterError):
        build_field(q)


def test_factor_prime_power():
    assert factor_prime_power(9) == (3, 2)
    assert factor_prime_power(8) == (2, 3)
    assert factor_prime_power(7) == (7, 1)
    assert factor_prime_power(6) is None


def test_mod_sum_examples():
    assert mod_sum((0, 0, 0, 0), 4) == 0
    assert mod_sum((1, 2, 3), 4) == 2
    assert mod_sum((2, 2, 1), ModRing(3)) == 2
    with pytest.raises(ParameterError):
        mod_sum((4,), 4)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_field_sum_matches_mod_sum_for_primes(q):
    F = build_field(q)
    ring = ModRing(q)
    for n in range(1, 7):
        if q**n > 20000:
            break
        X = np.array(list(product(range(q), repeat=n)), dtype=np.uint8)
        assert (F.sum(X) == ring.sum(X)).all()


def test_field_and_ring_sums_differ_for_q4():
    F = build_field(4)
    word = np.array([[1, 1]], dtype=np.uint8)
    assert F.sum(word)[0] == 0
    assert ModRing(4).sum(word)[0] == 2


def test_matmul_against_python_loops():
    F = build_field(9)
    rng = np.random.default_rng(1)
    X = rng.integers(0, 9, size=(20, 5), dtype=np.uint8)
    H = rng.integers(0, 9, size=(3, 5), dtype=np.uint8)
    got = F.matmul_t(X, H)
    for r in range(20):
        for k in range(3):
            acc = 0
            for j in range(5):
                acc = F.add[acc, F.mul[X[r, j], H[k, j]]]
            assert got[r, k] == acc
