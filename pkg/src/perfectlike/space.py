"""Words, codes and partitions in the Hamming space H(n, q).

A word is a tuple of symbols in {0, ..., q-1}.  Internally a word is packed
into a single int64 index read as a base-q number with the first symbol
most significant, so the index order is the lexicographic order of words
and a dense array of length q**n can be indexed by words directly.

Codes are multisets: an explicit ``Code`` keeps a sorted int64 array of word
indices in which a word of multiplicity k appears k times.  ``OracleCode``
stands for a code too large to list; it only answers membership queries
and carries its declared parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

import numpy as np

from . import config
from .errors import (
    BudgetExceeded,
    EmptyCodeError,
    EnumerationRequired,
    ParameterError,
    UndefinedDistanceError,
)

_INDEX_LIMIT = 2**63


# ---------------------------------------------------------------------------
# word packing


def powers(q: int, n: int) -> np.ndarray:
    """Positional weights q**(n-1-j) for j = 0..n-1."""
    return np.array([q ** (n - 1 - j) for j in range(n)], dtype=np.int64)


def _check_index_range(q: int, n: int) -> None:
    if q < 2 or n < 0:
        raise ParameterError(f"bad space H({n},{q})")
    if q**n >= _INDEX_LIMIT:
        raise ParameterError(f"H({n},{q}) has too many vertices to index with int64; use an oracle")


def encode(word: Sequence[int], q: int) -> int:
    idx = 0
    for s in word:
        s = int(s)
        if not 0 <= s < q:
            raise ParameterError(f"symbol {s} out of range for q={q}")
        idx = idx * q + s
    return idx


def decode(index: int, q: int, n: int) -> tuple[int, ...]:
    out = []
    index = int(index)
    for _ in range(n):
        index, s = divmod(index, q)
        out.append(s)
    return tuple(reversed(out))


def words_to_indices(X, q: int) -> np.ndarray:
    X = np.asarray(X, dtype=np.int64)
    if X.ndim == 1:
        X = X[None, :]
    n = X.shape[1]
    _check_index_range(q, n)
    if X.size and (X.min() < 0 or X.max() >= q):
        raise ParameterError(f"symbol out of range for q={q}")
    return X @ powers(q, n) if n else np.zeros(len(X), dtype=np.int64)


def indices_to_words(idx, q: int, n: int) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64)
    return ((idx[..., None] // powers(q, n)) % q).astype(np.uint8)


def space_size(q: int, n: int) -> int:
    return q**n


def check_budget(q: int, n: int, what: str = "operation") -> int:
    size = q**n
    limit = config.get_budget()
    if size > limit:
        raise BudgetExceeded(f"{what} needs all {size} vertices of H({n},{q}); budget is {limit}")
    return size


# ---------------------------------------------------------------------------
# codes


class Code:
    """Explicit multiset of words of length ``n`` over {0..q-1}."""

    is_oracle = False

    def __init__(self, q: int, n: int, words=(), *, indices: bool | None = None):
        _check_index_range(q, n)
        self.q, self.n = int(q), int(n)
        arr = np.asarray(words)
        if indices is None:
            indices = arr.ndim == 1
        if arr.size == 0:
            idx = np.zeros(0, dtype=np.int64)
        elif indices and arr.ndim == 1:
            idx = arr.astype(np.int64)
            if idx.min() < 0 or idx.max() >= q**n:
                raise ParameterError("word index out of range")
        else:
            arr = np.atleast_2d(arr)
            if arr.shape[1] != n:
                raise ParameterError(f"words of length {arr.shape[1]} in a length-{n} code")
            idx = words_to_indices(arr, q)
        self.words = np.sort(idx)
        self.words.setflags(write=False)

    @classmethod
    def from_words(cls, q: int, words: Iterable[Sequence[int]], n: int | None = None) -> "Code":
        words = [tuple(int(s) for s in w) for w in words]
        if n is None:
            if not words:
                raise ParameterError("cannot infer length of an empty word list")
            n = len(words[0])
        if any(len(w) != n for w in words):
            raise ParameterError("ragged word list")
        return cls(q, n, np.array(words, dtype=np.int64).reshape(len(words), n), indices=False)

    @classmethod
    def from_indices(cls, q: int, n: int, idx) -> "Code":
        return cls(q, n, np.asarray(idx, dtype=np.int64).ravel(), indices=True)

    @classmethod
    def full_space(cls, q: int, n: int) -> "Code":
        check_budget(q, n, "full space")
        return cls.from_indices(q, n, np.arange(q**n, dtype=np.int64))

    def __len__(self) -> int:
        return len(self.words)

    size = property(__len__)

    @property
    def symbols(self) -> np.ndarray:
        return indices_to_words(self.words, self.q, self.n)

    def tuples(self) -> list[tuple[int, ...]]:
        return [tuple(int(s) for s in row) for row in self.symbols]

    def __iter__(self):
        return iter(self.tuples())

    @cached_property
    def is_set(self) -> bool:
        return len(self.words) < 2 or bool((np.diff(self.words) != 0).all())

    def distinct(self) -> "Code":
        return Code.from_indices(self.q, self.n, np.unique(self.words))

    def multiplicity(self, word) -> int:
        i = encode(word, self.q)
        return int(np.searchsorted(self.words, i, "right") - np.searchsorted(self.words, i, "left"))

    def contains_indices(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        pos = np.searchsorted(self.words, idx)
        pos = np.minimum(pos, max(len(self.words) - 1, 0))
        return (self.words[pos] == idx) if len(self.words) else np.zeros(idx.shape, bool)

    def contains_many(self, X) -> np.ndarray:
        return self.contains_indices(words_to_indices(X, self.q))

    def __contains__(self, word) -> bool:
        if len(word) != self.n:
            return False
        return bool(self.contains_indices(np.array([encode(word, self.q)]))[0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Code):
            return NotImplemented
        return (self.q, self.n) == (other.q, other.n) and np.array_equal(self.words, other.words)

    __hash__ = None

    def union(self, other: "Code") -> "Code":
        _same_space(self, other)
        return Code.from_indices(self.q, self.n, np.concatenate([self.words, other.words]))

    def complement(self) -> "Code":
        check_budget(self.q, self.n, "complement")
        mask = np.ones(self.q**self.n, dtype=bool)
        mask[self.words] = False
        return Code.from_indices(self.q, self.n, np.flatnonzero(mask))

    def mask(self) -> np.ndarray:
        check_budget(self.q, self.n, "membership mask")
        m = np.zeros(self.q**self.n, dtype=bool)
        m[self.words] = True
        return m

    @cached_property
    def min_distance(self) -> int:
        return min_distance(self)

    @property
    def params(self) -> tuple[int, int, int | None]:
        d = self.min_distance if len(self) >= 2 else None
        return (self.n, len(self), d)

    def __repr__(self) -> str:
        return f"Code(q={self.q}, n={self.n}, size={len(self)})"


@dataclass(eq=False)
class OracleCode:
    """A code known only through a membership predicate.

    ``membership`` maps an (K, n) uint8 array of words to a boolean array.
    ``sampler(rng, k)`` returns k uniformly random codewords when available.
    The declared size and minimum distance are backed by ``structure``,
    which records how they were certified.
    """

    q: int
    n: int
    size: int
    d: int
    membership: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    sampler: Callable | None = field(default=None, repr=False)
    structure: dict = field(default_factory=dict, repr=False)

    is_oracle = True

    def __len__(self) -> int:
        return self.size

    @property
    def min_distance(self) -> int:
        return self.d

    @property
    def params(self):
        return (self.n, self.size, self.d)

    def contains_many(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.uint8))
        if X.shape[1] != self.n:
            raise ParameterError(f"words of length {X.shape[1]} queried against length {self.n}")
        return np.asarray(self.membership(X), dtype=bool)

    def __contains__(self, word) -> bool:
        if len(word) != self.n:
            return False
        return bool(self.contains_many(np.array([word], dtype=np.uint8))[0])

    def sample(self, rng: np.random.Generator, k: int) -> np.ndarray:
        if self.sampler is None:
            raise EnumerationRequired("this oracle code has no sampler")
        return self.sampler(rng, k)


def require_explicit(code, what: str = "operation") -> Code:
    if getattr(code, "is_oracle", False):
        raise EnumerationRequired(f"{what} needs an explicit code, got an oracle {code!r}")
    return code


def _same_space(a, b) -> None:
    if (a.q, a.n) != (b.q, b.n):
        raise ParameterError(f"codes live in different spaces: H({a.n},{a.q}) vs H({b.n},{b.q})")


@dataclass(frozen=True)
class FullSpace:
    q: int
    n: int

    @property
    def size(self) -> int:
        return self.q**self.n

    def __len__(self) -> int:
        return self.size


class Partition:
    """Ordered list of pairwise disjoint explicit codes covering ``ambient``."""

    def __init__(self, ambient, classes: Sequence[Code], labels: Sequence[str] | None = None,
                 *, check: bool = True):
        if not classes:
            raise ParameterError("a partition needs at least one class")
        self.ambient = ambient
        self.classes = list(classes)
        self.labels = [str(i) for i in range(len(classes))] if labels is None else [str(s) for s in labels]
        if len(self.labels) != len(self.classes):
            raise ParameterError("one label per class required")
        self.q, self.n = ambient.q, ambient.n
        for c in self.classes:
            _same_space(c, ambient)
        if check:
            self.validate()

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, i) -> Code:
        return self.classes[i]

    def __iter__(self):
        return iter(self.classes)

    def validate(self) -> None:
        allw = np.concatenate([c.words for c in self.classes])
        if len(np.unique(allw)) != len(allw):
            raise ParameterError("partition classes overlap (or a class has repeated words)")
        if len(allw) != len(self.ambient):
            raise ParameterError(f"classes cover {len(allw)} words, ambient has {len(self.ambient)}")
        if isinstance(self.ambient, Code) and not self.ambient.contains_indices(allw).all():
            raise ParameterError("a class word lies outside the ambient code")

    def index_map(self) -> np.ndarray:
        """Array over H(n,q) giving the class index of each word, -1 if none."""
        check_budget(self.q, self.n, "partition index map")
        out = np.full(self.q**self.n, -1, dtype=np.int32)
        for i, c in enumerate(self.classes):
            out[c.words] = i
        return out

    def class_of(self, word) -> int:
        i = encode(word, self.q)
        for k, c in enumerate(self.classes):
            if c.contains_indices(np.array([i]))[0]:
                return k
        return -1

    @cached_property
    def _lookup(self):
        words = np.concatenate([c.words for c in self.classes])
        owner = np.concatenate([np.full(len(c), k, dtype=np.int32) for k, c in enumerate(self.classes)])
        order = np.argsort(words, kind="stable")
        sizes = np.array([len(c) for c in self.classes])
        offsets = np.concatenate([[0], np.cumsum(sizes)[:-1]])
        return words[order], owner[order], words, sizes, offsets

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def class_indices(self, X) -> np.ndarray:
        """Class index of each row of ``X`` (an (K, n) symbol array), -1 if in no class."""
        idx = words_to_indices(np.atleast_2d(X), self.q)
        words, owner = self._lookup[:2]
        pos = np.minimum(np.searchsorted(words, idx), len(words) - 1)
        return np.where(words[pos] == idx, owner[pos], -1)

    def sample_classes(self, rng: np.random.Generator, cls) -> np.ndarray:
        """One uniformly random word from class ``cls[k]`` for every k."""
        cls = np.asarray(cls, dtype=np.int64)
        _, _, flat, sizes, offsets = self._lookup
        pick = offsets[cls] + (rng.random(len(cls)) * sizes[cls]).astype(np.int64)
        return indices_to_words(flat[pick], self.q, self.n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return (self.labels == other.labels and len(self) == len(other)
                and all(a == b for a, b in zip(self.classes, other.classes)))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Partition(H({self.n},{self.q}), {len(self)} classes)"


# ---------------------------------------------------------------------------
# distances


def distance(x: Sequence[int], y: Sequence[int], q: int | None = None) -> int:
    """Hamming distance: the number of coordinates where ``x`` and ``y`` differ."""
    if len(x) != len(y):
        raise ParameterError(f"length mismatch: {len(x)} vs {len(y)}")
    if q is not None:
        for s in (*x, *y):
            if not 0 <= int(s) < q:
                raise ParameterError(f"symbol {s} out of range for q={q}")
    return sum(1 for a, b in zip(x, y) if a != b)


def neighbors(idx, q: int, n: int) -> np.ndarray:
    """All distance-1 neighbours, shape (K, n*(q-1)), position-major."""
    idx = np.asarray(idx, dtype=np.int64).ravel()
    digits = indices_to_words(idx, q, n).astype(np.int64)
    out = np.empty((len(idx), n * (q - 1)), dtype=np.int64)
    pw = powers(q, n)
    col = 0
    for j in range(n):
        d = digits[:, j]
        for delta in range(1, q):
            out[:, col] = idx + (((d + delta) % q) - d) * pw[j]
            col += 1
    return out


def _sphere_patterns(q: int, n: int, r: int):
    for pos in combinations(range(n), r):
        for deltas in product(range(1, q), repeat=r):
            yield pos, deltas


def sphere_indices(idx, q: int, n: int, r: int):
    """Yield blocks of words at distance exactly ``r`` from each of ``idx``."""
    idx = np.asarray(idx, dtype=np.int64).ravel()
    digits = indices_to_words(idx, q, n).astype(np.int64)
    pw = powers(q, n)
    for pos, deltas in _sphere_patterns(q, n, r):
        out = idx.copy()
        for j, delta in zip(pos, deltas):
            d = digits[:, j]
            out += (((d + delta) % q) - d) * pw[j]
        yield out


def _pairwise_min(X: np.ndarray, chunk: int = 512) -> int:
    best = X.shape[1] + 1
    M = len(X)
    for i0 in range(0, M, chunk):
        blk = X[i0 : i0 + chunk]
        D = (blk[:, None, :] != X[None, :, :]).sum(-1)
        r = np.arange(len(blk))
        D[r, r + i0] = best
        best = min(best, int(D.min()))
    return best


def min_distance(code: Code) -> int:
    """Minimum pairwise distance of an explicit code; 0 iff some word is repeated."""
    code = require_explicit(code, "min_distance")
    M, q, n = len(code), code.q, code.n
    if M < 2:
        raise UndefinedDistanceError(f"minimum distance undefined for a code with {M} word(s)")
    if not code.is_set:
        return 0
    if M * M * n <= 50_000_000:
        return _pairwise_min(code.symbols)
    if q**n <= config.get_budget():
        mask = code.mask()
        member = lambda ix: mask[ix]
    else:
        member = code.contains_indices
    for r in range(1, n + 1):
        for block in sphere_indices(code.words, q, n, r):
            if member(block).any():
                return r
    raise AssertionError("unreachable: distinct words are at distance <= n")


def distance_layers(code: Code, max_depth: int | None = None) -> np.ndarray:
    """Distance from ``code`` for every vertex, by breadth-first expansion.

    Returns an int8 array over H(n,q); vertices beyond ``max_depth`` hold -1.
    """
    code = require_explicit(code, "distance_layers")
    q, n = code.q, code.n
    check_budget(q, n, "distance layers")
    dist = np.full(q**n, -1, dtype=np.int8)
    frontier = np.unique(code.words)
    if len(frontier) == 0:
        raise EmptyCodeError("empty code")
    dist[frontier] = 0
    depth = 0
    while len(frontier) and (max_depth is None or depth < max_depth):
        depth += 1
        nxt = []
        for i0 in range(0, len(frontier), 1 << 16):
            nb = neighbors(frontier[i0 : i0 + (1 << 16)], q, n).ravel()
            nb = nb[dist[nb] < 0]
            nb = np.unique(nb)
            dist[nb] = depth
            nxt.append(nb)
        frontier = np.unique(np.concatenate(nxt)) if nxt else np.zeros(0, np.int64)
    return dist


def shell(code: Code, i: int) -> Code:
    """The set C^(i) of vertices at distance exactly ``i`` from ``code``."""
    if not 0 <= i <= code.n:
        raise ParameterError(f"shell index {i} outside 0..{code.n}")
    dist = distance_layers(code, max_depth=i)
    return Code.from_indices(code.q, code.n, np.flatnonzero(dist == i))


def ball_counts(code: Code) -> np.ndarray:
    """For every vertex, the number of codewords (with multiplicity) within distance 1."""
    code = require_explicit(code, "ball_counts")
    q, n = code.q, code.n
    size = check_budget(q, n, "ball counts")
    counts = np.bincount(code.words, minlength=size).astype(np.int64)
    for i0 in range(0, len(code), 1 << 16):
        nb = neighbors(code.words[i0 : i0 + (1 << 16)], q, n)
        counts += np.bincount(nb.ravel(), minlength=size)
    return counts


# ---------------------------------------------------------------------------
# surgeries


def shorten(code: Code, j: int, alpha: int) -> Code:
    """Words with ``alpha`` at 1-based position ``j``, with that coordinate removed."""
    code = require_explicit(code, "shorten")
    if not 1 <= j <= code.n:
        raise ParameterError(f"position {j} outside 1..{code.n}")
    X = code.symbols
    sel = X[X[:, j - 1] == alpha]
    if len(sel) == 0:
        raise EmptyCodeError(f"no codeword has symbol {alpha} at position {j}")
    return Code(code.q, code.n - 1, np.delete(sel, j - 1, axis=1), indices=False)


def puncture(code: Code, j: int) -> Code:
    """Delete coordinate ``j`` (1-based) from every word, keeping multiplicities."""
    code = require_explicit(code, "puncture")
    if not 1 <= j <= code.n:
        raise ParameterError(f"position {j} outside 1..{code.n}")
    X = np.delete(code.symbols, j - 1, axis=1)
    return Code(code.q, code.n - 1, X.reshape(len(X), code.n - 1), indices=False)


def lengthen(code: Code, symbol: int) -> Code:
    """Append ``symbol`` to every word."""
    X = code.symbols
    X = np.hstack([X, np.full((len(X), 1), symbol, dtype=np.uint8)])
    return Code(code.q, code.n + 1, X, indices=False)


def concatenate_blocks(D: Sequence[Code], B: Sequence[Code]) -> Code:
    """Union over i of all concatenations xy with x in D[i], y in B[i]."""
    if len(D) != len(B) or not D:
        raise ParameterError("concatenate_blocks needs two nonempty lists of equal length")
    q = D[0].q
    n1, n2 = D[0].n, B[0].n
    for c in (*D, *B):
        require_explicit(c, "concatenate_blocks")
    if any(c.q != q for c in (*D, *B)):
        raise ParameterError("mixed alphabets")
    if any(c.n != n1 for c in D) or any(c.n != n2 for c in B):
        raise ParameterError("mixed lengths")
    _check_index_range(q, n1 + n2)
    shift = np.int64(q**n2)
    parts = [(d.words[:, None] * shift + b.words[None, :]).ravel() for d, b in zip(D, B)]
    return Code.from_indices(q, n1 + n2, np.concatenate(parts))


def translate(code: Code, t: Sequence[int], field=None) -> Code:
    """Add ``t`` symbolwise (field addition; mod q if q is not a prime power)."""
    code = require_explicit(code, "translate")
    if len(t) != code.n:
        raise ParameterError("translation vector has the wrong length")
    t = np.asarray(t, dtype=np.uint8)
    if field is None:
        from .gf import build_field, factor_prime_power
        field = build_field(code.q) if factor_prime_power(code.q) and code.q <= 9 else None
    X = code.symbols
    if field is None:
        Y = (X.astype(np.int64) + t) % code.q
    else:
        Y = field.add[X, t[None, :]]
    return Code(code.q, code.n, Y.reshape(len(Y), code.n), indices=False)
