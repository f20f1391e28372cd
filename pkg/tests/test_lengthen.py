from itertools import product

import numpy as np
import pytest

from perfectlike.catalog import load_embedded_partition
from perfectlike.construct import DPartition, concat_S, shortened_coset_partition, shortened_hamming
from perfectlike.errors import ParameterError
from perfectlike.lengthen import (
    NOT_UNIQUE,
    classify_H33_partitions,
    colorings,
    exact_covers,
    hamming_isometries,
    lengthen_code,
    lengthen_partition,
    search_partitions,
    shell_graph,
    ternary_mds_codes,
    unique_shell_partition,
)
from perfectlike.space import Code, FullSpace, Partition, decode, shell
from perfectlike.verify import is_one_perfect

SHORT = Code.from_words(3, [(0, 0, 0), (2, 2, 1), (1, 1, 2)])
REP = Code.from_words(3, [(0, 0, 0), (1, 1, 1), (2, 2, 2)])


def brute_lengthenable(B: Code) -> bool:
    """Try every assignment of appended symbols 1..q-1 to the shell words (q = 3)."""
    q, n = B.q, B.n
    sh = shell(B, 2).tuples()
    base = [w + (0,) for w in B.tuples()]
    for labels in product(range(1, q), repeat=len(sh)):
        words = base + [w + (a,) for w, a in zip(sh, labels)]
        C = Code.from_words(q, words)
        if len(C) * (1 + (n + 1) * (q - 1)) == q ** (n + 1) and C.min_distance >= 3:
            return True
    return False


def test_shell_graph_matches_shell():
    for B in (SHORT, shortened_hamming(4, 2)):
        g = shell_graph(B)
        assert (g.vertices == shell(B, 2).words).all()
        assert len(g.beyond) == 0 and len(g.edges1) == 0
        for u, v in g.edges2[:200]:
            assert sum(a != b for a, b in zip(g.word(u), g.word(v))) == 2


def test_lengthen_small_examples():
    cert = lengthen_code(SHORT)
    assert cert.ok
    assert [sorted(p.tuples()) for p in cert.parts] == [[(0, 1, 1), (1, 2, 0), (2, 0, 2)],
                                                        [(0, 2, 2), (1, 0, 1), (2, 1, 0)]]
    assert cert.lengthened.params == (4, 9, 3) and is_one_perfect(cert.lengthened)
    cert = lengthen_code(REP)
    assert [sorted(p.tuples()) for p in cert.parts] == [[(0, 1, 2), (1, 2, 0), (2, 0, 1)],
                                                       [(0, 2, 1), (1, 0, 2), (2, 1, 0)]]
    parts = unique_shell_partition(REP)
    assert [sorted(p.tuples()) for p in parts] == [[(0, 1, 2), (1, 2, 0), (2, 0, 1)],
                                                  [(0, 2, 1), (1, 0, 2), (2, 1, 0)]]


def test_checker_matches_brute_force_on_all_ternary_mds_codes():
    codes = ternary_mds_codes()
    assert len(codes) == 36
    for triple in codes:
        B = Code.from_indices(3, 3, triple)
        assert lengthen_code(B).ok == brute_lengthenable(B)


def test_parameter_errors():
    with pytest.raises(ParameterError):
        lengthen_code(Code.from_words(3, [(0, 0, 0), (1, 1, 1), (2, 2, 0)]))
    with pytest.raises(ParameterError):
        lengthen_code(Code.from_words(3, [(0, 0, 0), (1, 1, 1)]))
    with pytest.raises(ParameterError):
        lengthen_code(Code.from_words(3, [(0, 0), (1, 1), (2, 2)]))


def test_odd_cycle_is_the_negative_witness():
    for c in load_embedded_partition().classes:
        assert shell_graph(c).size == 48
    from perfectlike.lengthen import ShellGraph, _bipartition

    tri = ShellGraph(3, 3, np.array([0, 1, 2]), np.zeros((0, 2), np.int64),
                     np.array([[0, 1], [1, 2], [0, 2]]), np.zeros(0, np.int64))
    color, cycle = _bipartition(tri)
    assert color is None and len(cycle) == 3
    assert colorings(tri, 2) == []


def test_not_unique_when_components_split():
    from perfectlike.lengthen import ShellGraph

    g = ShellGraph(3, 3, np.arange(4), np.zeros((0, 2), np.int64), np.array([[0, 1], [2, 3]]),
                   np.zeros(0, np.int64))
    assert len(colorings(g, 2, limit=5)) == 2


def test_embedded_classes_have_unique_shell_split():
    P = load_embedded_partition()
    for c in P.classes:
        cert = lengthen_code(c)
        assert cert.ok and is_one_perfect(cert.lengthened)
        parts = unique_shell_partition(c)
        assert parts is not NOT_UNIQUE and [len(p) for p in parts] == [16, 16, 16]
        assert all(p.min_distance == 3 for p in parts)


def test_embedded_partition_is_unsat_with_small_core():
    res = lengthen_partition(load_embedded_partition())
    assert not res.sat
    assert res.core_labels == ["2", "3", "C"]
    # the witnesses are genuine common words of the named parts
    assert res.witnesses and all(len(w) == 5 for w in res.witnesses)


def test_core_is_unsat_and_minimal():
    P = load_embedded_partition()
    res = lengthen_partition(P)
    sub = lambda idx: Partition(Code.from_indices(4, 4, np.concatenate([P.classes[i].words for i in idx])),
                                [P.classes[i] for i in idx])
    assert not lengthen_partition(sub(res.core)).sat
    for drop in res.core:
        rest = [i for i in res.core if i != drop]
        assert lengthen_partition(sub(rest)).sat


def test_threads_do_not_change_result():
    P = load_embedded_partition()
    a, b = lengthen_partition(P), lengthen_partition(P, threads=4)
    assert a.core == b.core and a.witnesses == b.witnesses


def test_partition_with_bad_class_is_parameter_error():
    P = shortened_coset_partition(3, 2)
    classes = list(P.classes)
    merged = np.sort(np.concatenate([classes[0].words, classes[1].words]))
    bad = [Code.from_indices(3, 3, merged[:3]), Code.from_indices(3, 3, merged[3:])] + classes[2:]
    with pytest.raises(ParameterError):
        lengthen_partition(Partition(FullSpace(3, 3), bad))


def test_ternary_partition_lengthens_to_perfect_partition():
    res = lengthen_partition(shortened_coset_partition(3, 2))
    assert res.sat
    assert len(res.lengthened) == 9
    assert all(is_one_perfect(c) for c in res.lengthened.classes)


def test_exact_covers_small():
    rows = [(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]
    assert sorted(sorted(s) for s in exact_covers(4, rows)) == [[0, 1], [2, 3], [4, 5]]


def test_isometry_group():
    G = hamming_isometries(3, 3)
    assert G.shape == (1296, 27)
    assert len({tuple(g) for g in G}) == 1296
    X = [decode(v, 3, 3) for v in range(27)]
    for g in G[::97]:
        for u in range(0, 27, 5):
            for v in range(27):
                d = sum(a != b for a, b in zip(X[u], X[v]))
                assert d == sum(a != b for a, b in zip(X[g[u]], X[g[v]]))


def test_classification():
    cls = classify_H33_partitions()
    assert cls.count == 2
    assert cls.total == 40
    assert sorted(c["orbit_size"] for c in cls.classes) == [4, 36]
    assert all(c["lengthening"].sat for c in cls.classes)


def test_S_lengthens_iff_its_partition_does():
    D = DPartition(3, 3)
    for c in classify_H33_partitions().classes:
        S = concat_S(c["representative"], D)
        cert = lengthen_code(S)
        assert cert.ok and cert.lengthened.params == (13, 3**10, 3)
        assert c["lengthening"].sat == cert.ok


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_search_rediscovers_non_lengthenable_partitions(seed):
    found = None
    for f in search_partitions(4, seed, budget=20_000):
        assert len(f.partition) == 16
        assert all(c.min_distance == 3 and len(c) == 16 for c in f.partition.classes)
        if not f.lengthenable:
            found = f
            break
    assert found is not None
    assert len(found.result.core) >= 2


def test_search_is_deterministic():
    def run():
        return [(f.attempt, tuple(c.words.tolist() for c in f.partition.classes).__repr__(), f.result.sat)
                for f in search_partitions(4, 11, budget=3000, max_finds=5)]

    assert run() == run()


def test_search_rejects_other_q():
    with pytest.raises(ParameterError):
        next(search_partitions(3, 0))


def test_search_q5_ends_on_budget():
    assert list(search_partitions(5, 0, budget=300)) == []
