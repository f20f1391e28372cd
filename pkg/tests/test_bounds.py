from fractions import Fraction
from math import ceil, floor

import pytest

from perfectlike.bounds import (
    ball_volume,
    bounds_table,
    congruence_holds,
    covering_lower_bound,
    packing_even,
    packing_general,
    packing_proof_form,
    packing_upper_bound,
    packing_upper_bound_dist2,
    singleton_check,
    sphere_packing_bound,
)
from perfectlike.construct import punctured_hamming
from perfectlike.errors import ParameterError

APPLICABLE = [(q, n) for q in (3, 4, 5, 7) for n in range(q, 60, q * q)]


def test_packing_examples():
    assert packing_upper_bound(3, 3, 1).bound == 3
    assert packing_upper_bound(3, 12, 1).bound == 19683
    r = packing_upper_bound(4, 4, 2)
    assert r.general_bound == 36
    assert r.bound == 34 == floor(Fraction(256 * 26, 192))
    assert r.improved == packing_even(4, 4, 2)


def test_dist2_examples():
    assert packing_upper_bound_dist2(3, 3, 3).bound == 9
    assert packing_upper_bound_dist2(3, 3, 2).bound == 6
    assert packing_upper_bound_dist2(4, 4, 4).bound == 64


def test_covering_examples():
    assert covering_lower_bound(3, 3, 6).bound == 24
    assert covering_lower_bound(3, 3, 1).bound == 4
    r = covering_lower_bound(3, 12, 1)
    assert r.value == Fraction(6908733, 324)
    assert r.bound == ceil(Fraction(6908733, 324)) == 21324


def test_large_length_bound():
    assert packing_upper_bound(3, 39, 1).bound == 3**35


def test_sphere_and_singleton():
    assert sphere_packing_bound(3, 4).bound == 9
    assert ball_volume(3, 4) == 9
    assert singleton_check(4, 4, 16, 3) == "MDS"
    assert singleton_check(4, 5, 64, 3) == "MDS"
    assert singleton_check(3, 3, 3, 3) == "MDS"
    assert singleton_check(3, 3, 2, 3) == "below"
    assert singleton_check(3, 3, 4, 3) == "violates"


def test_not_applicable_is_structured():
    r = packing_upper_bound(3, 4, 1)
    assert not r.applicable and "n = q mod q^2" in r.reason and r.bound is None
    assert not packing_upper_bound(2, 2, 1).applicable
    assert not covering_lower_bound(3, 5, 2).applicable
    assert str(r).startswith("not applicable")
    assert congruence_holds(3, 12) and not congruence_holds(3, 13)


def test_bad_parameters():
    with pytest.raises(ParameterError):
        packing_upper_bound(3, 3, 0)


@pytest.mark.parametrize("q,n", APPLICABLE)
def test_bound_forms_and_complement(q, n):
    for lam in range(1, q + 1):
        assert packing_general(q, n, lam) == packing_proof_form(q, n, lam)
        assert packing_upper_bound_dist2(q, n, lam).value <= packing_upper_bound(q, n, lam).value
    top = n * (q - 1) + 1
    for mu in range(1, top + 1):
        lam = top - mu
        cov = covering_lower_bound(q, n, mu).value
        assert cov == q**n - packing_general(q, n, lam)


@pytest.mark.parametrize("q", [3, 4])
def test_punctured_hamming_meets_dist2_bound(q):
    C = punctured_hamming(q, 2)
    assert len(C) == packing_upper_bound_dist2(q, C.n, q).bound


def test_bounds_table_rows():
    rows = bounds_table(3, 30, 1, 6)
    assert [r[0] for r in rows] == [3, 12, 21, 30]
    n, p, d, c = rows[0]
    assert (p.bound, d.bound, c.bound) == (3, 3, 24)
