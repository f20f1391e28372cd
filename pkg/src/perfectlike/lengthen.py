"""Deciding whether codes and partitions lengthen to 1-perfect codes.

A code B of length n' - 1 with the parameters of a shortened 1-perfect code
lengthens to the 1-perfect code B0 + B^1 1 + ... + B^(q-1) (q-1) exactly
when its second shell B^(2) splits into q - 1 sets B^a with no two words of
B^(2) at distance 1 and no two words of one B^a at distance 2.  So the
question is a proper (q-1)-colouring of the distance-2 graph on B^(2).
Every positive answer is re-verified by an exhaustive 1-perfect check.
"""

from __future__ import annotations

import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import comb

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from .construct import hamming_length
from .errors import ParameterError
from .space import (
    Code,
    FullSpace,
    Partition,
    decode,
    distance_layers,
    indices_to_words,
    neighbors,
    require_explicit,
    sphere_indices,
)
from .verify import is_one_perfect, is_space_partition

LENGTHENABLE = "LENGTHENABLE"
NOT = "NOT"
NOT_UNIQUE = "NOT_UNIQUE"


# ---------------------------------------------------------------------------
# the shell graph


@dataclass
class ShellGraph:
    q: int
    n: int
    vertices: np.ndarray  # sorted word indices of B^(2)
    edges1: np.ndarray  # (E1, 2) local ids of pairs at distance 1
    edges2: np.ndarray  # (E2, 2) local ids of pairs at distance 2, i < j
    beyond: np.ndarray  # words at distance >= 3 from B (should be empty)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def adjacency(self):
        nv = self.size
        e = self.edges2
        data = np.ones(2 * len(e), dtype=np.int8)
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        return coo_matrix((data, (rows, cols)), shape=(nv, nv)).tocsr()

    def adjacency_lists(self) -> list[np.ndarray]:
        A = self.adjacency()
        return [A.indices[A.indptr[v] : A.indptr[v + 1]] for v in range(self.size)]

    def word(self, v: int) -> tuple:
        return decode(self.vertices[v], self.q, self.n)


def _local_pairs(src_local, targets, local_of):
    """Edges (src, dst) where dst lands in the vertex set; ``targets`` is (K, deg)."""
    hit = local_of[targets]
    s = np.repeat(src_local, targets.shape[1]).reshape(targets.shape)
    ok = hit >= 0
    return np.stack([s[ok], hit[ok]], axis=1)


def shell_graph(B: Code) -> ShellGraph:
    B = require_explicit(B, "shell_graph")
    q, n = B.q, B.n
    layers = distance_layers(B)
    verts = np.flatnonzero(layers == 2)
    beyond = np.flatnonzero(layers >= 3)
    local_of = np.full(q**n, -1, dtype=np.int64)
    local_of[verts] = np.arange(len(verts))
    ids = np.arange(len(verts))
    e1 = _local_pairs(ids, neighbors(verts, q, n), local_of)
    e1 = e1[e1[:, 0] < e1[:, 1]]
    blocks = []
    for block in sphere_indices(verts, q, n, 2):
        hit = local_of[block]
        ok = (hit >= 0) & (hit > ids)
        blocks.append(np.stack([ids[ok], hit[ok]], axis=1))
    e2 = np.concatenate(blocks) if blocks else np.zeros((0, 2), np.int64)
    if len(e2):
        e2 = e2[np.lexsort((e2[:, 1], e2[:, 0]))]
    return ShellGraph(q, n, verts, e1, e2, beyond)


# ---------------------------------------------------------------------------
# colouring


def _bipartition(g: ShellGraph):
    """2-colour the distance-2 graph.  Returns (colours, None) or (None, odd cycle)."""
    A = g.adjacency()
    nv = g.size
    color = np.full(nv, -1, dtype=np.int8)
    parent = np.full(nv, -1, dtype=np.int64)
    depth = np.zeros(nv, dtype=np.int64)
    for root in range(nv):
        if color[root] >= 0:
            continue
        order, pred = breadth_first_order(A, root, directed=False, return_predecessors=True)
        color[root] = 0
        for v in order[1:]:
            p = pred[v]
            parent[v] = p
            depth[v] = depth[p] + 1
            color[v] = 1 - color[p]
    e = g.edges2
    bad = np.flatnonzero(color[e[:, 0]] == color[e[:, 1]]) if len(e) else []
    if len(bad) == 0:
        return color, None
    u, v = (int(x) for x in e[bad[0]])
    # odd cycle through the tree paths to the lowest common ancestor
    pu, pv = [u], [v]
    while depth[pu[-1]] > depth[pv[-1]]:
        pu.append(int(parent[pu[-1]]))
    while depth[pv[-1]] > depth[pu[-1]]:
        pv.append(int(parent[pv[-1]]))
    while pu[-1] != pv[-1]:
        pu.append(int(parent[pu[-1]]))
        pv.append(int(parent[pv[-1]]))
    cycle = pu + pv[-2::-1]
    return None, cycle


class _Colorer:
    """Backtracking k-colouring enumerator with DSATUR vertex choice.

    Colourings are produced up to renaming of colours: a vertex may take a
    new colour only if it is the lowest unused one.
    """

    def __init__(self, adj: list[np.ndarray], k: int):
        self.adj = [a.tolist() for a in adj]
        self.k = k
        self.nv = len(adj)
        self.deg = [len(a) for a in adj]

    def run(self, limit: int):
        nv, k = self.nv, self.k
        color = [-1] * nv
        seen = [[0] * k for _ in range(nv)]  # seen[v][c] = neighbours of v coloured c
        sat = [0] * nv
        out = []
        deg = self.deg

        def pick():
            best, key = -1, None
            for v in range(nv):
                if color[v] < 0:
                    kv = (sat[v], deg[v], -v)
                    if key is None or kv > key:
                        best, key = v, kv
            return best

        def assign(v, c, sign):
            for w in self.adj[v]:
                s = seen[w]
                if sign > 0:
                    if s[c] == 0:
                        sat[w] += 1
                    s[c] += 1
                else:
                    s[c] -= 1
                    if s[c] == 0:
                        sat[w] -= 1

        def rec(done, used):
            if len(out) >= limit:
                return
            if done == nv:
                out.append(list(color))
                return
            v = pick()
            for c in range(min(used + 1, k)):
                if seen[v][c]:
                    continue
                color[v] = c
                assign(v, c, +1)
                rec(done + 1, max(used, c + 1))
                assign(v, c, -1)
                color[v] = -1
                if len(out) >= limit:
                    return

        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, nv + 200))
        try:
            rec(0, 0)
        finally:
            sys.setrecursionlimit(old)
        return out


def colorings(g: ShellGraph, k: int, limit: int = 2) -> list[np.ndarray]:
    """Up to ``limit`` proper k-colourings of the distance-2 graph, up to colour renaming."""
    if k == 2:
        color, _ = _bipartition(g)
        if color is None:
            return []
        ncomp, labels = connected_components(g.adjacency(), directed=False)
        out = [color.astype(np.int64)]
        # flipping any nonempty set of components other than the first gives a new colouring
        for mask in range(1, 2 ** (ncomp - 1)):
            if len(out) >= limit:
                break
            flip = np.array([(mask >> (c - 1)) & 1 if c else 0 for c in range(ncomp)], dtype=bool)
            out.append(np.where(flip[labels], 1 - color, color).astype(np.int64))
        return [_canonical_coloring(c) for c in out[:limit]]
    res = _Colorer(g.adjacency_lists(), k).run(limit)
    return [_canonical_coloring(np.array(c, dtype=np.int64)) for c in res]


def _canonical_coloring(c: np.ndarray) -> np.ndarray:
    """Rename colours by first appearance in vertex order."""
    mapping = {}
    for x in c.tolist():
        if x not in mapping:
            mapping[x] = len(mapping)
    return np.array([mapping[x] for x in c.tolist()], dtype=np.int64)


# ---------------------------------------------------------------------------
# single codes


def lengthening_level(q: int, n: int) -> int:
    """r with n + 1 = (q^r - 1)/(q - 1), i.e. the redundancy of the lengthened code."""
    for r in range(1, 64):
        L = hamming_length(q, r)
        if L == n + 1:
            return r
        if L > n + 1:
            break
    raise ParameterError(f"length {n} is not one less than a 1-perfect length for q={q}")


def check_shortened_parameters(B: Code) -> int:
    """Raise ParameterError unless B is an (n'-1, q^(n'-1-r), 3)_q code; return r."""
    q, n = B.q, B.n
    r = lengthening_level(q, n)
    if len(B) != q ** (n - r):
        raise ParameterError(f"size {len(B)} != {q}^{n - r} for length {n}")
    if not B.is_set or len(B) < 2 or B.min_distance != 3:
        d = B.min_distance if len(B) >= 2 else None
        raise ParameterError(f"minimum distance must be 3, got {d}")
    return r


@dataclass
class LengthenCertificate:
    verdict: str
    parts: list[Code] = field(default_factory=list)  # parts[a-1] = B^a
    lengthened: Code | None = None
    witness: object = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict == LENGTHENABLE

    def __bool__(self) -> bool:
        return self.ok


def _parts_from_coloring(g: ShellGraph, color: np.ndarray, k: int) -> list[Code]:
    return [Code.from_indices(g.q, g.n, g.vertices[color == c]) for c in range(k)]


def assemble(B: Code, parts: list[Code]) -> Code:
    """B0 + B^1 1 + ... : append 0 to B and symbol a to the words of parts[a-1]."""
    q = B.q
    blocks = [B.words * q]
    for a, p in enumerate(parts, start=1):
        blocks.append(p.words * q + a)
    return Code.from_indices(q, B.n + 1, np.concatenate(blocks))


def _negative_from_graph(g: ShellGraph):
    if len(g.beyond):
        w = decode(g.beyond[0], g.q, g.n)
        return f"word {w} is at distance >= 3 from the code", w
    if len(g.edges1):
        u, v = g.edges1[0]
        return "two shell words at distance 1", (g.word(u), g.word(v))
    return None


def lengthen_code(B: Code, graph: ShellGraph | None = None) -> LengthenCertificate:
    """Decide whether B extends to a 1-perfect code by appending one coordinate."""
    B = require_explicit(B, "lengthen_code")
    check_shortened_parameters(B)
    q = B.q
    g = graph if graph is not None else shell_graph(B)
    neg = _negative_from_graph(g)
    if neg:
        return LengthenCertificate(NOT, witness=neg[1], reason=neg[0])
    if q == 2:
        found = [np.zeros(g.size, dtype=np.int64)] if len(g.edges2) == 0 else []
    elif q == 3:
        color, cycle = _bipartition(g)
        if color is None:
            words = [g.word(v) for v in cycle]
            return LengthenCertificate(NOT, witness=words, reason=f"odd cycle of length {len(cycle)}")
        found = [color.astype(np.int64)]
    else:
        found = colorings(g, q - 1, limit=1)
    if not found:
        return LengthenCertificate(NOT, witness=[g.word(v) for v in range(g.size)],
                                   reason=f"shell graph has no proper {q - 1}-colouring")
    parts = _parts_from_coloring(g, found[0], q - 1)
    C = assemble(B, parts)
    check = is_one_perfect(C)
    if not check:
        raise AssertionError(f"lengthened code failed the 1-perfect check: {check.detail}")
    return LengthenCertificate(LENGTHENABLE, parts, C, reason="re-verified 1-perfect")


def unique_shell_partition(B: Code, graph: ShellGraph | None = None):
    """The splitting of B^(2) into q-1 distance-3 codes, if it is unique.

    Returns a list of q-1 codes ordered by their smallest word, or NOT_UNIQUE.
    """
    B = require_explicit(B, "unique_shell_partition")
    check_shortened_parameters(B)
    g = graph if graph is not None else shell_graph(B)
    if _negative_from_graph(g):
        raise ParameterError("code is not lengthenable; its shell has no admissible splitting")
    found = colorings(g, B.q - 1, limit=2)
    if not found:
        raise ParameterError("code is not lengthenable; its shell has no admissible splitting")
    if len(found) > 1:
        return NOT_UNIQUE
    parts = _parts_from_coloring(g, found[0], B.q - 1)
    return sorted(parts, key=lambda p: int(p.words[0]) if len(p) else -1)


# ---------------------------------------------------------------------------
# partitions


@dataclass
class PartitionLengthening:
    sat: bool
    assignments: list | None = None  # per class: list of q-1 codes, entry a-1 is B_i^a
    lengthened: Partition | None = None
    core: list[int] | None = None
    # (label_i, part k of class i, label_j, part l of class j, common word), parts numbered from 1
    witnesses: list = field(default_factory=list)
    labels: list[str] = field(default_factory=list)
    unique: list[bool] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.sat

    @property
    def core_labels(self) -> list[str] | None:
        return None if self.core is None else [self.labels[i] for i in self.core]


class _ClassDomain:
    """Candidate colourings of one class's shell, as tuples of global part ids."""

    def __init__(self, index: int, values: list[tuple[int, ...]], unique: bool):
        self.index = index
        self.values = values
        self.unique = unique


def _analyse_class(B: Code, max_colorings: int):
    cert = lengthen_code(B)
    if not cert:
        return cert, None, False
    g = shell_graph(B)
    found = colorings(g, B.q - 1, limit=max_colorings)
    parts_per = [_parts_from_coloring(g, c, B.q - 1) for c in found]
    return cert, parts_per, len(found) == 1


class _PartitionCSP:
    def __init__(self, parts: list[Code], domains: list[_ClassDomain]):
        self.parts = parts
        self.domains = domains
        self._inter = {}

    def meets(self, a: int, b: int) -> bool:
        key = (a, b) if a < b else (b, a)
        if key not in self._inter:
            self._inter[key] = bool(np.intersect1d(self.parts[a].words, self.parts[b].words,
                                                   assume_unique=True).size)
        return self._inter[key]

    def compatible(self, u: tuple, v: tuple) -> bool:
        return not any(self.meets(a, b) for a, b in zip(u, v))

    def solve(self, subset: list[int]):
        """Backtracking with forward checking; returns {class: value} or None."""
        live = {i: list(range(len(self.domains[i].values))) for i in subset}
        chosen = {}

        def rec():
            if len(chosen) == len(subset):
                return True
            i = min((j for j in subset if j not in chosen), key=lambda j: (len(live[j]), j))
            for vi in list(live[i]):
                val = self.domains[i].values[vi]
                pruned = {}
                dead = False
                for j in subset:
                    if j in chosen or j == i:
                        continue
                    keep = [vj for vj in live[j] if self.compatible(val, self.domains[j].values[vj])]
                    pruned[j] = live[j]
                    live[j] = keep
                    if not keep:
                        dead = True
                        break
                if not dead:
                    chosen[i] = vi
                    if rec():
                        return True
                    del chosen[i]
                for j, old in pruned.items():
                    live[j] = old
            return False

        return dict(chosen) if rec() else None

    def minimal_core(self, subset: list[int], max_trials: int = 50_000) -> list[int]:
        """A smallest unsatisfiable subset, the lexicographically first of its size.

        Subsets are tried by increasing size while the number of trials stays
        under ``max_trials``; past that, fall back to deletion-based
        minimization, which gives an irreducible but possibly larger core.
        """
        trials = 0
        for k in range(1, len(subset)):
            count = comb(len(subset), k)
            if trials + count > max_trials:
                break
            trials += count
            for s in combinations(subset, k):
                if self.solve(list(s)) is None:
                    return list(s)
        core = list(subset)
        for i in list(subset):
            trial = [j for j in core if j != i]
            if trial and self.solve(trial) is None:
                core = trial
        return core


def lengthen_partition(P: Partition, max_colorings: int = 10_000, threads: int = 1) -> PartitionLengthening:
    """Search for a simultaneous lengthening of every class of P into a partition of 1-perfect codes.

    Per class the candidates are its shell colourings (all colour renamings of
    the unique splitting when it is unique).  Two classes clash if, for some
    appended symbol a, their parts B_i^a and B_j^a share a word.
    """
    q = P.q
    labels = list(P.labels)
    for c in P.classes:
        check_shortened_parameters(c)
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            analysed = list(ex.map(lambda c: _analyse_class(c, max_colorings), P.classes))
    else:
        analysed = [_analyse_class(c, max_colorings) for c in P.classes]
    for i, (cert, _, _) in enumerate(analysed):
        if not cert:
            return PartitionLengthening(False, core=[i], witnesses=[(labels[i], cert.reason, cert.witness)],
                                        labels=labels)
    parts: list[Code] = []
    local = []  # local[p] = number of part p among its own class's parts
    domains = []
    for i, (_, per, unique) in enumerate(analysed):
        values = set()
        first = len(parts)
        for colouring in per:
            ids = []
            for p in colouring:
                parts.append(p)
                local.append(len(parts) - first)
                ids.append(len(parts) - 1)
            for perm in permutations(ids):
                values.add(perm)
        domains.append(_ClassDomain(i, sorted(values), unique))
    csp = _PartitionCSP(parts, domains)
    everything = list(range(len(P)))
    sol = csp.solve(everything)
    unique = [d.unique for d in domains]
    if sol is None:
        core = csp.minimal_core(everything)
        wit = []
        for i, j in combinations(core, 2):
            for a in sorted({x for v in domains[i].values for x in v}):
                for b in sorted({x for v in domains[j].values for x in v}):
                    if csp.meets(a, b):
                        w = np.intersect1d(parts[a].words, parts[b].words)[0]
                        wit.append((labels[i], local[a], labels[j], local[b], decode(w, q, P.n)))
        return PartitionLengthening(False, core=core, witnesses=wit, labels=labels, unique=unique)
    assignments = [[parts[p] for p in domains[i].values[sol[i]]] for i in everything]
    classes = [assemble(P.classes[i], assignments[i]) for i in everything]
    for i, C in enumerate(classes):
        v = is_one_perfect(C)
        if not v:
            raise AssertionError(f"class {labels[i]} lengthened to a non-perfect code: {v.detail}")
    if len(P.ambient) == q**P.n:
        v = is_space_partition(classes, q, P.n + 1)
        if not v:
            raise AssertionError(f"lengthened classes do not partition the space: {v.detail}")
        ambient = FullSpace(q, P.n + 1)
    else:
        # a subfamily of classes: the lengthened codes only need to stay disjoint
        union = np.concatenate([C.words for C in classes])
        if len(np.unique(union)) != len(union):
            raise AssertionError("lengthened classes overlap")
        ambient = Code.from_indices(q, P.n + 1, np.sort(union))
    lengthened = Partition(ambient, classes, labels)
    return PartitionLengthening(True, assignments, lengthened, labels=labels, unique=unique)


# ---------------------------------------------------------------------------
# ternary classification


def ternary_mds_codes() -> list[tuple[int, int, int]]:
    """All (3,3,3)_3 codes in H(3,3), as sorted index triples."""
    X = indices_to_words(np.arange(27), 3, 3)
    out = []
    for a in range(27):
        for b in range(a + 1, 27):
            if (X[a] == X[b]).any():
                continue
            c = int(((3 - X[a].astype(int) - X[b]) % 3) @ np.array([9, 3, 1]))
            if c > b:
                out.append((a, b, c))
    return out


def exact_covers(universe: int, rows: list[tuple[int, ...]]):
    """All exact covers of range(universe) by ``rows`` (Knuth's Algorithm X on dicts of sets)."""
    cols = {x: set() for x in range(universe)}
    for r, row in enumerate(rows):
        for x in row:
            cols[x].add(r)

    def select(r):
        removed = []
        for x in rows[r]:
            for r2 in cols[x]:
                for y in rows[r2]:
                    if y != x:
                        cols[y].discard(r2)
            removed.append(cols.pop(x))
        return removed

    def deselect(r, removed):
        for x in reversed(rows[r]):
            cols[x] = removed.pop()
            for r2 in cols[x]:
                for y in rows[r2]:
                    if y != x:
                        cols[y].add(r2)

    sol = []

    def search():
        if not cols:
            yield list(sol)
            return
        c = min(cols, key=lambda x: (len(cols[x]), x))
        for r in sorted(cols[c]):
            sol.append(r)
            removed = select(r)
            yield from search()
            deselect(r, removed)
            sol.pop()

    yield from search()


def hamming_isometries(q: int, n: int) -> np.ndarray:
    """All coordinate permutations composed with per-coordinate symbol permutations,
    as an array of vertex permutations of shape (n! * (q!)^n, q^n)."""
    X = indices_to_words(np.arange(q**n), q, n).astype(np.int64)
    pw = q ** np.arange(n - 1, -1, -1)
    sym = list(permutations(range(q)))
    out = []
    for perm in permutations(range(n)):
        Y = X[:, perm]
        for sp in product(sym, repeat=n):
            Z = np.stack([np.array(sp[j])[Y[:, j]] for j in range(n)], axis=1)
            out.append(Z @ pw)
    return np.array(out, dtype=np.int64)


def canonical_partition(blocks, group: np.ndarray) -> tuple:
    """Lexicographically least image of a partition (list of index tuples) under ``group``."""
    B = np.array(blocks, dtype=np.int64)
    imgs = np.sort(group[:, B], axis=2)  # (G, k, size)
    best = None
    for img in imgs:
        key = tuple(sorted(map(tuple, img.tolist())))
        if best is None or key < best:
            best = key
    return best


@dataclass
class Classification:
    total: int
    classes: list[dict]

    @property
    def count(self) -> int:
        return len(self.classes)


def classify_H33_partitions() -> Classification:
    """Enumerate all partitions of H(3,3) into (3,3,3)_3 codes and split them into
    orbits of the isometry group of H(3,3) (order 1296)."""
    codes = ternary_mds_codes()
    group = hamming_isometries(3, 3)
    orbits: dict[tuple, list] = {}
    total = 0
    for sol in exact_covers(27, codes):
        total += 1
        blocks = sorted(codes[r] for r in sol)
        key = canonical_partition(blocks, group)
        orbits.setdefault(key, []).append(blocks)
    classes = []
    for key in sorted(orbits):
        rep = [list(b) for b in key]
        part = Partition(FullSpace(3, 3), [Code.from_indices(3, 3, b) for b in rep])
        res = lengthen_partition(part)
        classes.append({"representative": part, "orbit_size": len(orbits[key]), "lengthening": res})
    return Classification(total, classes)


# ---------------------------------------------------------------------------
# randomized search for partitions of H(q,q) into (q, q^(q-2), 3) codes


class _MdsBuilder:
    """Randomized backtracking for (q, q^(q-2), 3)_q codes through a given word,
    restricted to a set of free vertices.  The first q-2 coordinates index
    the codewords; each codeword chooses a 2-symbol tail."""

    def __init__(self, q: int):
        self.q = q
        k = q - 2
        self.prefixes = indices_to_words(np.arange(q**k), q, k).astype(np.int64)
        self.tails = indices_to_words(np.arange(q * q), q, 2).astype(np.int64)
        P = self.prefixes
        dp = (P[:, None, :] != P[None, :, :]).sum(-1)
        self.near1 = [np.flatnonzero(dp[i] == 1) for i in range(len(P))]
        self.near2 = [np.flatnonzero(dp[i] == 2) for i in range(len(P))]
        T = self.tails
        dt = (T[:, None, :] != T[None, :, :]).sum(-1)
        self.clash1 = dt <= 1  # tails for prefixes at distance 1 must differ twice
        self.clash2 = dt == 0  # ... at distance 2 must differ at least once
        self.word_index = (P @ (q ** np.arange(k - 1, -1, -1)) * (q * q))[:, None] + np.arange(q * q)[None, :]

    def codes_through(self, v: int, free: np.ndarray, rng, limit: int, budget: list):
        q = self.q
        prefix_v, tail_v = divmod(v, q * q)
        dom = free[self.word_index].copy()  # (P, q^2) admissible tails per prefix
        out = []
        dom[prefix_v] = False
        dom[prefix_v, tail_v] = True
        chosen = np.full(len(self.prefixes), -1, dtype=np.int64)

        def rec(dom, depth):
            if len(out) >= limit or budget[0] <= 0:
                return
            budget[0] -= 1
            open_ = np.flatnonzero(chosen < 0)
            if not len(open_):
                out.append(self.word_index[np.arange(len(chosen)), chosen].copy())
                return
            sizes = dom[open_].sum(1)
            if sizes.min() == 0:
                return
            cand = open_[sizes == sizes.min()]
            p = int(cand[0]) if depth == 0 and prefix_v in cand else int(rng.choice(cand))
            tails = np.flatnonzero(dom[p])
            rng.shuffle(tails)
            for t in tails:
                nd = dom.copy()
                nd[p] = False
                nd[self.near1[p]] &= ~self.clash1[t]
                nd[self.near2[p]] &= ~self.clash2[t]
                chosen[p] = t
                rec(nd, depth + 1)
                chosen[p] = -1
                if len(out) >= limit or budget[0] <= 0:
                    return

        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, len(self.prefixes) + 200))
        try:
            # the prefix of v is fixed first
            nd = dom.copy()
            nd[prefix_v] = False
            nd[self.near1[prefix_v]] &= ~self.clash1[tail_v]
            nd[self.near2[prefix_v]] &= ~self.clash2[tail_v]
            chosen[prefix_v] = tail_v
            rec(nd, 1)
        finally:
            sys.setrecursionlimit(old)
        return out


@dataclass
class SearchFind:
    partition: Partition
    result: PartitionLengthening
    attempt: int

    @property
    def lengthenable(self) -> bool:
        return self.result.sat


def all_mds_codes(q: int) -> np.ndarray:
    """Every (q, q^(q-2), 3)_q code, one row of sorted word indices each.

    Each such code has exactly one word with all-zero prefix, so the codes
    through those q^2 words are all of them.  Practical for q = 4 (6912 codes).
    """
    if q not in _ALL_CODES:
        b = _MdsBuilder(q)
        free = np.ones(q**q, dtype=bool)
        rng = np.random.default_rng(0)
        rows = []
        for v in range(q * q):
            rows += [np.sort(c) for c in b.codes_through(v, free, rng, 10**9, [10**12])]
        rows = np.array(rows, dtype=np.int64)
        _ALL_CODES[q] = rows[np.lexsort(rows.T[::-1])]
    return _ALL_CODES[q]


_ALL_CODES: dict[int, np.ndarray] = {}


def _cover_from_list(rows: np.ndarray, nv: int, rng, budget: list, attempt_nodes: int):
    """One randomized exact-cover descent over a fixed row list (most constrained vertex first)."""
    incidence = np.zeros((len(rows), nv), dtype=bool)
    incidence[np.arange(len(rows))[:, None], rows] = True
    local = [attempt_nodes]

    def rec(active, free):
        if not free.any():
            return []
        if budget[0] <= 0 or local[0] <= 0:
            return None
        budget[0] -= 1
        local[0] -= 1
        counts = np.bincount(rows[active].ravel(), minlength=nv)
        counts = np.where(free, counts, np.iinfo(np.int64).max)
        low = counts.min()
        if low == 0:
            return None
        v = int(rng.choice(np.flatnonzero(counts == low)))
        cand = np.flatnonzero(active & incidence[:, v])
        rng.shuffle(cand)
        for r in cand:
            clash = incidence[:, rows[r]].any(1)
            nf = free.copy()
            nf[rows[r]] = False
            rest = rec(active & ~clash, nf)
            if rest is not None:
                return [rows[r]] + rest
            if budget[0] <= 0 or local[0] <= 0:
                return None
        return None

    return rec(np.ones(len(rows), dtype=bool), np.ones(nv, dtype=bool))


def _cover_by_building(builder: _MdsBuilder, rng, budget: list, branching: int):
    """One randomized descent that builds each class on demand through the first free vertex."""
    q = builder.q

    def fill(free):
        if not free.any():
            return []
        if budget[0] <= 0:
            return None
        v = int(np.flatnonzero(free)[0])
        for code in builder.codes_through(v, free, rng, branching, budget):
            nf = free.copy()
            nf[code] = False
            rest = fill(nf)
            if rest is not None:
                return [code] + rest
            if budget[0] <= 0:
                return None
        return None

    return fill(np.ones(q**q, dtype=bool))


def search_partitions(q: int, seed: int, budget: int = 200_000, max_finds: int | None = None,
                      attempt_nodes: int = 200, branching: int = 4):
    """Randomized exact-cover search for partitions of H(q,q) into (q, q^(q-2), 3)_q codes.

    Yields a SearchFind for every new partition found, each checked with
    ``lengthen_partition``.  ``budget`` bounds the total number of search
    nodes; running out is a normal end of the stream.  Same seed, same stream.
    For q = 4 the descent picks from the full list of codes and restarts
    after ``attempt_nodes`` nodes; for q = 5 classes are built on demand.
    """
    if q not in (4, 5):
        raise ParameterError("search is implemented for q in {4, 5}")
    rng = np.random.default_rng(seed)
    left = [int(budget)]
    if q == 4:
        rows = all_mds_codes(q)
        attempt_fn = lambda: _cover_from_list(rows, q**q, rng, left, attempt_nodes)
    else:
        builder = _MdsBuilder(q)
        attempt_fn = lambda: _cover_by_building(builder, rng, left, branching)
    seen = set()
    attempt = 0
    finds = 0
    while left[0] > 0 and (max_finds is None or finds < max_finds):
        attempt += 1
        blocks = attempt_fn()
        if blocks is None:
            continue
        blocks = sorted((np.sort(b) for b in blocks), key=lambda b: int(b[0]))
        key = tuple(tuple(b.tolist()) for b in blocks)
        if key in seen:
            continue
        seen.add(key)
        part = Partition(FullSpace(q, q), [Code.from_indices(q, q, b) for b in blocks])
        finds += 1
        yield SearchFind(part, lengthen_partition(part), attempt)
