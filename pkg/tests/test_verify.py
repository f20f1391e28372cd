import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perfectlike.bounds import packing_upper_bound
from perfectlike.construct import MdsSumCode, hamming_code, punctured_hamming, shortened_hamming
from perfectlike.catalog import load_embedded_partition
from perfectlike.errors import SemanticsError
from perfectlike.space import Code, ball_counts, decode
from perfectlike.verify import (
    complement_covering_parameter,
    is_completely_regular,
    is_mds,
    is_multifold_packing,
    is_multiple_covering,
    is_one_perfect,
    is_space_partition,
)

SHORT = Code.from_words(3, [(0, 0, 0), (2, 2, 1), (1, 1, 2)])


def brute_ball_counts(code):
    q, n = code.q, code.n
    W = [decode(w, q, n) for w in code.words]
    return [sum(sum(a != b for a, b in zip(decode(v, q, n), w)) <= 1 for w in W) for v in range(q**n)]


def test_packing_examples():
    assert is_multifold_packing(SHORT, 1)
    P = punctured_hamming(3, 2)
    assert is_multifold_packing(P, 3)
    v = is_multifold_packing(P, 2)
    assert not v and v.witness is not None and v.count == 3
    twice = Code.from_words(3, [(1, 1, 1), (1, 1, 1)])
    v = is_multifold_packing(twice, 1)
    assert not v and v.witness == (1, 1, 1)


def test_covering_examples():
    comp = SHORT.complement()
    assert is_multiple_covering(comp, 6)
    v = is_multiple_covering(comp, 7)
    assert not v and v.witness == (0, 0, 0)
    full = Code.full_space(3, 3)
    assert is_multiple_covering(full, 1 + 3 * 2)
    with pytest.raises(SemanticsError):
        is_multiple_covering(Code.from_words(3, [(0, 0, 0)] * 2), 1)


def test_perfect_examples():
    assert is_one_perfect(hamming_code(3, 2).materialize())
    assert is_one_perfect(hamming_code(2, 3).materialize())
    assert not is_one_perfect(SHORT)


def test_ternary_hamming_13_is_perfect():
    C = hamming_code(3, 3).materialize()
    assert C.params == (13, 3**10, 3)
    assert is_one_perfect(C)


def test_completely_regular_examples():
    v = is_completely_regular(SHORT)
    assert v and v.data["quotient"] == [(0, 6, 0), (1, 3, 2), (0, 6, 0)]
    v = is_completely_regular(hamming_code(3, 2).materialize())
    assert v and v.data["radius"] == 1
    v = is_completely_regular(Code.from_words(2, [(0, 0, 0), (0, 0, 1)]))
    assert v and v.data["quotient"] == [(1, 2, 0), (1, 1, 1), (0, 2, 1)]
    v = is_completely_regular(Code.from_words(2, [(0, 0, 0), (0, 1, 1)]))
    assert not v


def brute_completely_regular(code):
    q, n = code.q, code.n
    W = [decode(w, q, n) for w in code.words]
    X = [decode(v, q, n) for v in range(q**n)]
    d = lambda x, y: sum(a != b for a, b in zip(x, y))
    layer = [min(d(x, w) for w in W) for x in X]
    rho = max(layer)
    rows = {}
    for v, x in enumerate(X):
        row = [0] * (rho + 1)
        for u, y in enumerate(X):
            if d(x, y) == 1:
                row[layer[u]] += 1
        if rows.setdefault(layer[v], row) != row:
            return False
    return True


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 3), (2, 4), (3, 2), (3, 3)]), st.data())
def test_complete_regularity_matches_brute_force(qn, data):
    q, n = qn
    idx = data.draw(st.lists(st.integers(0, q**n - 1), min_size=1, max_size=6, unique=True))
    code = Code.from_indices(q, n, idx)
    assert bool(is_completely_regular(code)) == brute_completely_regular(code)


@pytest.mark.parametrize("q,m", [(3, 2), (3, 3), (4, 2)])
def test_optimal_codes_are_completely_regular(q, m):
    C = shortened_hamming(q, m)
    assert len(C) == packing_upper_bound(q, C.n, 1).bound
    assert C.min_distance == 3
    assert is_completely_regular(C)


def test_mds_examples():
    for cls in load_embedded_partition().classes:
        assert is_mds(cls)
    assert is_mds(MdsSumCode(4, 16, 0).as_oracle())
    assert is_mds(SHORT)
    assert not is_mds(Code.from_words(3, [(0, 0, 0), (1, 1, 1)]))


def test_space_partition():
    assert is_space_partition(load_embedded_partition().classes, 4, 4)
    v = is_space_partition([SHORT], 3, 3)
    assert not v and v.count == 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(3, 3), (4, 2), (2, 4), (3, 2)]), st.data())
def test_ball_counts_and_complement_law(qn, data):
    q, n = qn
    idx = data.draw(st.lists(st.integers(0, q**n - 1), min_size=1, max_size=q**n - 1, unique=True))
    code = Code.from_indices(q, n, idx)
    counts = ball_counts(code)
    assert counts.tolist() == brute_ball_counts(code)
    lam = int(counts.max())
    assert is_multifold_packing(code, lam) and not is_multifold_packing(code, lam - 1)
    mu = complement_covering_parameter(q, n, lam)
    comp = code.complement()
    if len(comp):
        assert is_multiple_covering(comp, mu)
        assert not is_multiple_covering(comp, mu + 1)


def test_multiset_ball_counts():
    code = Code.from_words(3, [(0, 0), (0, 0), (0, 1)])
    counts = ball_counts(code)
    assert counts[0] == 3 and counts.max() == 3
    assert counts.tolist() == brute_ball_counts(code)
    assert np.sum(counts) == len(code) * 5
