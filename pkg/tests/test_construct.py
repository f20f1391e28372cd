from itertools import combinations, product

import numpy as np
import pytest

from perfectlike.bounds import packing_upper_bound
from perfectlike.catalog import load_embedded_partition
from perfectlike.construct import (
    DPartition,
    LinearCode,
    MdsSumCode,
    concat_S,
    coset_multifold_packing,
    hamming_code,
    hamming_coset_partition,
    partition_of_S,
    projective_points,
    punctured_hamming,
    romanov_perfect,
    shortened_coset_partition,
    shortened_hamming,
    theorem4_code,
)
from perfectlike.errors import ParameterError
from perfectlike.gf import build_field
from perfectlike.space import Code, FullSpace, Partition, shorten
from perfectlike.verify import is_multifold_packing, is_one_perfect, is_space_partition


def cross_distance(A: Code, B: Code) -> int:
    X, Y = A.symbols, B.symbols
    return int((X[:, None, :] != Y[None, :, :]).sum(-1).min())


def test_hamming_columns_and_codes():
    assert projective_points(3, 2).tolist() == [[0, 1], [1, 0], [1, 1], [1, 2]]
    H = hamming_code(3, 2)
    assert H.H.tolist() == [[0, 1, 1, 1], [1, 0, 1, 2]]
    C = H.materialize()
    assert C.params == (4, 9, 3) and is_one_perfect(C)
    C = hamming_code(2, 3).materialize()
    assert C.params == (7, 16, 3) and is_one_perfect(C)


@pytest.mark.parametrize("q,m", [(3, 2), (3, 3), (4, 2)])
def test_shortening_perfect_codes_meets_packing_bound(q, m):
    C = hamming_code(q, m).materialize()
    bound = packing_upper_bound(q, C.n - 1, 1).bound
    positions = range(1, C.n + 1) if q**C.n <= 10**5 else [1, C.n]
    for j in positions:
        for a in range(q):
            S = shorten(C, j, a)
            assert len(S) == bound
    assert shortened_hamming(q, m) == shorten(C, C.n, 0)


def test_coset_multifold_packings():
    C = coset_multifold_packing(3, 2, 2)
    assert set(C.tuples()) == {(0, 0, 0), (2, 2, 1), (1, 1, 2), (1, 2, 0), (0, 1, 1), (2, 0, 2)}
    assert is_multifold_packing(C, 2) and C.min_distance == 2
    assert coset_multifold_packing(3, 2, 3) == punctured_hamming(3, 2)
    C = coset_multifold_packing(3, 3, 1)
    assert C.params == (12, 3**9, 3) and len(C) == packing_upper_bound(3, 12, 1).bound
    with pytest.raises(ParameterError):
        coset_multifold_packing(3, 2, 4)


def test_distance3_certificate_both_directions():
    # every 2 x 4 ternary matrix: certificate iff the kernel has minimum distance >= 3
    F = build_field(3)
    rng = np.random.default_rng(0)
    for _ in range(300):
        H = rng.integers(0, 3, size=(2, 4), dtype=np.uint8)
        lin = LinearCode(F, H)
        C = lin.materialize()
        d = C.min_distance if len(C) > 1 else 99
        assert lin.distance3_certificate() == (d >= 3)


def test_mds_sum_code():
    for mode in ("FIELD", "MOD_Q"):
        M = MdsSumCode(4, 3, 1, mode)
        C = M.materialize()
        assert len(C) == M.size == 16 and C.min_distance == 2
    X = np.array(list(product(range(4), repeat=3)), dtype=np.uint8)
    M = MdsSumCode(4, 3, 1, "FIELD")
    F = build_field(4)
    assert (M.contains_many(X) == (F.sum(X) == 1)).all()


def test_d_partition_binary():
    D = DPartition(2, 3)
    classes = [sorted(c.tuples()) for c in D.materialize().classes]
    assert classes == [
        [(0, 0, 0, 0), (1, 1, 1, 1)],
        [(0, 0, 1, 1), (1, 1, 0, 0)],
        [(0, 1, 0, 1), (1, 0, 1, 0)],
        [(0, 1, 1, 0), (1, 0, 0, 1)],
    ]


def test_d_partition_ternary():
    D = DPartition(3, 3)
    P = D.materialize()
    assert len(P) == 9 and {len(c) for c in P.classes} == {729}
    assert len(P.ambient) == 6561
    for c in P.classes:
        assert c.min_distance == 3
    assert D.certificate()["columns_pairwise_independent"]


@pytest.mark.parametrize("q,m", [(2, 3), (3, 2), (3, 3)])
def test_block_distance_laws(q, m):
    P = DPartition(q, m).materialize()
    for a, b in combinations(P.classes, 2):
        assert cross_distance(a, b) == 2


@pytest.mark.parametrize("q,m", [(2, 3), (3, 2), (3, 3)])
def test_transversal_property(q, m):
    D = DPartition(q, m)
    n = D.n
    F = D.field
    X = np.array(list(product(range(q), repeat=n)), dtype=np.uint8)
    outside = X[F.sum(X) != 0]
    for x in outside[:: max(1, len(outside) // 400)]:
        nbrs = []
        for j in range(n):
            for a in range(1, q):
                y = x.copy()
                y[j] = F.add[y[j], a]
                nbrs.append(y)
        cls = D.class_indices(np.array(nbrs))
        hit = np.sort(cls[cls >= 0])
        assert hit.tolist() == list(range(n))


def test_quaternary_d_partition_certificate_and_samples():
    D = DPartition(4, 3)
    cert = D.certificate()
    assert cert["columns_pairwise_independent"] and cert["full_rank"] and cert["class_size"] == 4**13
    rng = np.random.default_rng(5)
    cls = rng.integers(0, 16, size=20000)
    X = D.sample_classes(rng, cls)
    assert (D.class_indices(X) == cls).all()
    same = cls[:10000] == cls[10000:]
    d = (X[:10000] != X[10000:]).sum(1)
    assert d[same & (d > 0)].min() >= 3
    assert d[~same].min() >= 2


def test_romanov_perfect_ternary():
    C = romanov_perfect(hamming_coset_partition(3, 2), DPartition(3, 3))
    assert C.params == (13, 3**10, 3)
    assert is_one_perfect(C)
    with pytest.raises(ParameterError):
        romanov_perfect(hamming_coset_partition(3, 2), DPartition(3, 2))


def test_concat_binary():
    B = Partition(FullSpace(2, 2), [Code.from_words(2, [w]) for w in product(range(2), repeat=2)])
    D = DPartition(2, 3)
    S = concat_S(B, D)
    assert S.params == (6, 8, 3)
    P = partition_of_S(B, D).materialize()
    assert len(P) == 8 and {len(c) for c in P.classes} == {8}
    assert is_space_partition(P.classes, 2, 6)
    assert P.classes[0] == S


def test_concat_ternary():
    B = shortened_coset_partition(3, 2)
    D = DPartition(3, 3)
    S = concat_S(B, D)
    assert S.params == (12, 3**9, 3)
    assert len(S) == packing_upper_bound(3, 12, 1).bound
    layout = partition_of_S(B, D)
    P = layout.materialize()
    assert len(P) == 27 and is_space_partition(P.classes, 3, 12)
    assert P.classes[0] == S
    rng = np.random.default_rng(2)
    X = rng.integers(0, 3, size=(3000, 12), dtype=np.uint8)
    idx = P.class_indices(X)
    assert (layout.class_indices(X) == idx).all()


def test_concat_quaternary_is_oracle():
    S = concat_S(load_embedded_partition(), DPartition(4, 3))
    assert S.is_oracle and S.params == (20, 4**17, 3)
    assert (0,) * 20 in S


def test_quaternary_non_shortened_code():
    code = theorem4_code(3)
    assert code.params == (20, 4**17, 3)
    assert (0,) * 20 in code
    assert "non_shortened" in code.structure
    rng = np.random.default_rng(0)
    X = code.sample(rng, 2000)
    assert code.contains_many(X).all()
    with pytest.raises(ParameterError):
        theorem4_code(2)


def test_quaternary_code_next_level():
    code = theorem4_code(4)
    assert code.params == (84, 4**80, 3)
    rng = np.random.default_rng(1)
    X = code.sample(rng, 500)
    assert code.contains_many(X).all()
    Y = X.copy()
    Y[:, 0] = (Y[:, 0] + 1) % 4
    assert not code.contains_many(Y).any()
