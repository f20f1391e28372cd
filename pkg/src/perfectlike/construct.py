"""Code constructions: Hamming codes, coset packings, sum-codes and concatenations.

Conventions fixed here (all indexing is reproducible across runs):

* Parity-check columns of Hamming codes are the projective points of
  GF(q)^m with first nonzero coordinate 1, sorted lexicographically.
* Shortening and puncturing of Hamming codes act on the last coordinate.
* A syndrome vector (s_1, ..., s_r) is indexed by the base-q number with
  s_1 most significant.
* The sum-codes M_a and the first-symbol shift use field addition, which is
  integer addition mod q when q is prime.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import config
from .errors import ParameterError
from .gf import FieldTable, ModRing, build_field
from .space import (
    Code,
    FullSpace,
    OracleCode,
    Partition,
    concatenate_blocks,
    indices_to_words,
    powers,
    puncture,
)

# ---------------------------------------------------------------------------
# linear algebra over GF(q)


def rref(A: np.ndarray, F: FieldTable):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = np.array(A, dtype=np.uint8, copy=True)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if not len(nz):
            continue
        p = r + nz[0]
        A[[r, p]] = A[[p, r]]
        A[r] = F.mul[F.inv[A[r, c]], A[r]]
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = F.sub(A[i], F.mul[A[i, c], A[r]])
        pivots.append(c)
        r += 1
    return A[:r], pivots


def kernel_basis(H: np.ndarray, F: FieldTable) -> np.ndarray:
    R, piv = rref(H, F)
    n = H.shape[1]
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, p in enumerate(piv):
            basis[k, p] = F.neg[R[row, f]]
    return basis


def particular_solution(H: np.ndarray, s, F: FieldTable) -> np.ndarray | None:
    """Some x with H x = s, or None."""
    aug = np.hstack([H, np.asarray(s, dtype=np.uint8).reshape(-1, 1)])
    R, piv = rref(aug, F)
    n = H.shape[1]
    if piv and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.uint8)
    for row, p in enumerate(piv):
        x[p] = R[row, n]
    return x


class LinearCode:
    """Kernel of a parity-check matrix ``H`` (r x n) over GF(q)."""

    def __init__(self, field: FieldTable | int, H):
        self.field = build_field(field) if isinstance(field, int) else field
        self.H = np.atleast_2d(np.asarray(H, dtype=np.uint8))
        self.H.setflags(write=False)
        self.q = self.field.q
        self.r, self.n = self.H.shape
        self._R, self._pivots = rref(self.H, self.field)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def dimension(self) -> int:
        return self.n - self.rank

    @property
    def size(self) -> int:
        return self.q**self.dimension

    def generator(self) -> np.ndarray:
        return kernel_basis(self.H, self.field)

    def syndromes(self, X) -> np.ndarray:
        return self.field.matmul_t(X, self.H)

    def syndrome_index(self, X) -> np.ndarray:
        return self.syndromes(X).astype(np.int64) @ powers(self.q, self.r)

    def contains_many(self, X) -> np.ndarray:
        return ~self.syndromes(X).any(axis=1)

    def distance3_certificate(self) -> bool:
        """True iff H has no zero column and no two columns are scalar multiples."""
        F, cols = self.field, self.H.T
        if (~cols.any(axis=1)).any():
            return False
        seen = set()
        for c in cols:
            lead = c[np.flatnonzero(c)[0]]
            normal = tuple(F.mul[F.inv[lead], c])
            if normal in seen:
                return False
            seen.add(normal)
        return True

    def span(self, G: np.ndarray, offset=None) -> np.ndarray:
        k = len(G)
        self._budget(k)
        coeffs = indices_to_words(np.arange(self.q**k, dtype=np.int64), self.q, k)
        X = self.field.matmul_t(coeffs, G.T) if k else np.zeros((1, self.n), np.uint8)
        if offset is not None:
            X = self.field.add[X, np.asarray(offset, dtype=np.uint8)[None, :]]
        return X

    def _budget(self, k: int) -> None:
        if self.q**k > config.get_budget():
            raise ParameterError(f"materializing {self.q}^{k} words exceeds the budget")

    def materialize(self) -> Code:
        return Code(self.q, self.n, self.span(self.generator()), indices=False)

    def coset_leader(self, syndrome) -> np.ndarray | None:
        return particular_solution(self.H, syndrome, self.field)

    def coset(self, syndrome) -> Code:
        """All words x with H x = syndrome."""
        x0 = self.coset_leader(syndrome)
        if x0 is None:
            raise ParameterError(f"syndrome {tuple(syndrome)} is not attained")
        return Code(self.q, self.n, self.span(self.generator(), x0), indices=False)

    def cosets(self) -> list[Code]:
        """All cosets in syndrome-index order (requires H of full row rank)."""
        if self.rank != self.r:
            raise ParameterError("H must have full row rank to index cosets by syndrome")
        return [self.coset(s) for s in product(range(self.q), repeat=self.r)]

    def dual(self) -> "LinearCode":
        return LinearCode(self.field, self.generator())

    def __repr__(self) -> str:
        return f"LinearCode(q={self.q}, n={self.n}, k={self.dimension})"


# ---------------------------------------------------------------------------
# Hamming codes and their relatives


def projective_points(q: int, m: int) -> np.ndarray:
    """Canonical representatives (first nonzero = 1) of PG(m-1, q), lexicographic; shape (N, m)."""
    pts = [p for p in product(range(q), repeat=m) if any(p) and p[next(i for i, x in enumerate(p) if x)] == 1]
    return np.array(sorted(pts), dtype=np.uint8)


def hamming_length(q: int, m: int) -> int:
    return (q**m - 1) // (q - 1)


def hamming_code(q: int, m: int) -> LinearCode:
    """The q-ary Hamming code of redundancy m: ((q^m-1)/(q-1), q^(n-m), 3)."""
    if m < 1:
        raise ParameterError("m must be >= 1")
    F = build_field(q)
    return LinearCode(F, projective_points(q, m).T)


def shortened_hamming(q: int, m: int) -> Code:
    """Hamming code shortened with symbol 0 at its last coordinate."""
    H = hamming_code(q, m)
    return LinearCode(H.field, H.H[:, :-1]).materialize()


def punctured_hamming(q: int, m: int) -> Code:
    return puncture(hamming_code(q, m).materialize(), hamming_length(q, m))


def coset_multifold_packing(q: int, m: int, lam: int) -> Code:
    """Union of the shortened pieces with last symbol 0, 1, ..., lam-1 of the Hamming code.

    Each piece is a coset of the shortened Hamming code inside the punctured
    Hamming code, so the union has minimum distance >= 2 and is a lam-fold
    1-packing of length (q^m - q)/(q - 1) and size lam * q^(n-m).
    """
    if not 1 <= lam <= q:
        raise ParameterError(f"lambda must lie in 1..{q}")
    Ham = hamming_code(q, m)
    F = Ham.field
    short = LinearCode(F, Ham.H[:, :-1])
    last = Ham.H[:, -1]
    pieces = [short.coset(F.neg[F.mul[alpha, last]]) for alpha in range(lam)]
    return Code.from_indices(q, short.n, np.concatenate([p.words for p in pieces]))


def hamming_coset_partition(q: int, m: int) -> Partition:
    """H((q^m-1)/(q-1), q) split into the q^m cosets of the Hamming code (all 1-perfect)."""
    Ham = hamming_code(q, m)
    return Partition(FullSpace(q, Ham.n), Ham.cosets())


def shortened_coset_partition(q: int, m: int) -> Partition:
    """H(n'-1, q), n' = (q^m-1)/(q-1), split into the q^m cosets of the shortened Hamming code."""
    Ham = hamming_code(q, m)
    short = LinearCode(Ham.field, Ham.H[:, :-1])
    return Partition(FullSpace(q, short.n), short.cosets())


# ---------------------------------------------------------------------------
# sum-codes and the D-partition


@dataclass(frozen=True)
class MdsSumCode:
    """M_a: words whose symbol sum equals ``a``; an (n, q^(n-1), 2) MDS code."""

    q: int
    n: int
    a: int = 0
    mode: str = "FIELD"  # or "MOD_Q"

    def __post_init__(self):
        if self.mode not in ("FIELD", "MOD_Q"):
            raise ParameterError(f"unknown sum mode {self.mode!r}")
        if not 0 <= self.a < self.q:
            raise ParameterError("a out of range")

    @property
    def size(self) -> int:
        return self.q ** (self.n - 1)

    @property
    def min_distance(self) -> int:
        return 2

    def sums(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.uint8))
        return build_field(self.q).sum(X) if self.mode == "FIELD" else ModRing(self.q).sum(X)

    def contains_many(self, X) -> np.ndarray:
        return self.sums(X) == self.a

    def materialize(self) -> Code:
        full = indices_to_words(np.arange(self.q**self.n, dtype=np.int64), self.q, self.n) \
            if self.q**self.n <= config.get_budget() else None
        if full is None:
            raise ParameterError("M_a too large to materialize")
        return Code(self.q, self.n, full[self.contains_many(full)], indices=False)

    def as_oracle(self) -> OracleCode:
        return OracleCode(self.q, self.n, self.size, 2, self.contains_many,
                          structure={"construction": f"sum-code M_{self.a}", "mode": self.mode})


class DPartition:
    """Partition of the field-sum-zero code M_0 of length q^(m-1) into q^(m-1)
    codes (q^(m-1), q^(q^(m-1)-m), 3).

    D_0 is the kernel of the m x q^(m-1) matrix with columns (1, h),
    h in GF(q)^(m-1) lexicographic; D_i is the coset of D_0 inside M_0
    whose syndrome under the last m-1 rows has index i.
    """

    def __init__(self, q: int, m: int):
        if m < 2:
            raise ParameterError("m must be >= 2")
        self.q, self.m = q, m
        self.field = F = build_field(q)
        self.n = q ** (m - 1)
        hs = np.array(list(product(range(q), repeat=m - 1)), dtype=np.uint8).reshape(self.n, m - 1)
        self.H = np.vstack([np.ones((1, self.n), dtype=np.uint8), hs.T])
        self.code = LinearCode(F, self.H)
        self.tail = LinearCode(F, self.H[1:])
        self.G = self.code.generator()
        self.leaders = np.array(
            [particular_solution(self.H, (0, *s), F) for s in product(range(q), repeat=m - 1)],
            dtype=np.uint8,
        )

    @property
    def num_classes(self) -> int:
        return self.n

    def __len__(self) -> int:
        return self.n

    @property
    def class_size(self) -> int:
        return self.q ** (self.n - self.m)

    def class_indices(self, X) -> np.ndarray:
        """Index of the D-class containing each row; -1 for words outside M_0."""
        X = np.atleast_2d(np.asarray(X, dtype=np.uint8))
        in_m0 = self.field.sum(X) == 0
        return np.where(in_m0, self.tail.syndrome_index(X), -1)

    def sample_classes(self, rng: np.random.Generator, cls) -> np.ndarray:
        cls = np.asarray(cls, dtype=np.int64)
        coeffs = rng.integers(0, self.q, size=(len(cls), len(self.G)), dtype=np.uint8)
        X = self.field.matmul_t(coeffs, self.G.T)
        return self.field.add[X, self.leaders[cls]]

    def certificate(self) -> dict:
        """Structural facts giving minimum distance 3 inside each class."""
        return {
            "columns_pairwise_independent": self.code.distance3_certificate(),
            "full_rank": self.code.rank == self.m,
            "first_row_all_ones": bool((self.H[0] == 1).all()),
            "class_size": self.class_size,
        }

    def class_code(self, i: int) -> Code:
        return Code(self.q, self.n, self.code.span(self.G, self.leaders[i]), indices=False)

    def materialize(self) -> Partition:
        classes = [self.class_code(i) for i in range(self.n)]
        ambient = MdsSumCode(self.q, self.n, 0).materialize()
        return Partition(ambient, classes)


def mds_partition_D(q: int, m: int) -> DPartition:
    return DPartition(q, m)


# ---------------------------------------------------------------------------
# concatenation constructions


def _explicit_classes(part) -> list[Code]:
    if isinstance(part, Partition):
        return part.classes
    return part.materialize().classes


def romanov_perfect(C_partition: Partition, D_partition) -> Code:
    """Union of D_i C_i over i: a 1-perfect code of length q^(m-1) + n'."""
    C = _explicit_classes(C_partition)
    D = _explicit_classes(D_partition)
    if len(C) != len(D):
        raise ParameterError(f"{len(D)} D-classes vs {len(C)} perfect codes")
    q, n_c = C[0].q, C[0].n
    if len(C) != 1 + n_c * (q - 1):
        raise ParameterError(f"H({n_c},{q}) splits into {1 + n_c * (q - 1)} perfect codes, got {len(C)}")
    if D[0].n != len(D):
        raise ParameterError(f"D-classes have length {D[0].n}, expected {len(D)}")
    return concatenate_blocks(D, C)


def _level(q: int, n_b: int) -> int:
    """m such that n_b + 1 = (q^(m-1) - 1)/(q - 1)."""
    for r in range(1, 64):
        if hamming_length(q, r) == n_b + 1:
            return r + 1
        if hamming_length(q, r) > n_b + 1:
            break
    raise ParameterError(f"length {n_b} is not of the form (q^r - q)/(q - 1) for q={q}")


class _Blocks:
    """Shared layout checks for S and its partition."""

    def __init__(self, B, D: DPartition):
        if not isinstance(D, DPartition):
            raise ParameterError("D must be a DPartition")
        if B.q != D.q:
            raise ParameterError("B and D use different alphabets")
        m = _level(B.q, B.n)
        if m != D.m:
            raise ParameterError(f"B has length {B.n} (level m={m}) but D has m={D.m}")
        if B.num_classes != D.num_classes:
            raise ParameterError(f"{B.num_classes} B-classes vs {D.num_classes} D-classes")
        self.B, self.D = B, D
        self.q, self.m = B.q, m
        self.n_head = D.n
        self.n = D.n + B.n  # = (q^m - q)/(q - 1)
        self.block_size = D.class_size * B.q ** (B.n - (m - 1))
        self.code_size = D.num_classes * self.block_size


class SPartition(_Blocks):
    """The q^m codes S_(s,a) partitioning H(n-1, q).

    S_(s,a) is the union over i of (D_{i+s mod n''} with a added to the
    first symbol) concatenated with B_i.  Class index is a*n'' + s, so class 0
    is S itself.
    """

    @property
    def num_classes(self) -> int:
        return self.q * self.n_head

    def __len__(self) -> int:
        return self.num_classes

    def split(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.uint8))
        if X.shape[1] != self.n:
            raise ParameterError(f"expected words of length {self.n}")
        return X[:, : self.n_head], X[:, self.n_head :]

    def class_indices(self, X) -> np.ndarray:
        F = self.field
        u, v = self.split(X)
        a = F.sum(u)
        u = u.copy()
        u[:, 0] = F.sub(u[:, 0], a)
        j = self.D.class_indices(u)
        i = self.B.class_indices(v)
        s = (j - i) % self.n_head
        return np.where(i >= 0, a.astype(np.int64) * self.n_head + s, -1)

    @property
    def field(self) -> FieldTable:
        return self.D.field

    def sample_classes(self, rng: np.random.Generator, cls) -> np.ndarray:
        cls = np.asarray(cls, dtype=np.int64)
        a, s = np.divmod(cls, self.n_head)
        i = rng.integers(0, self.n_head, size=len(cls))
        u = self.D.sample_classes(rng, (i + s) % self.n_head)
        u[:, 0] = self.field.add[u[:, 0], a.astype(np.uint8)]
        v = self.B.sample_classes(rng, i)
        return np.hstack([u, v])

    def code(self, index: int = 0):
        return concat_code(self, index)

    def materialize(self) -> Partition:
        if self.q**self.n > config.get_budget():
            raise ParameterError("partition too large to materialize")
        Dp = [self.D.class_code(i) for i in range(self.n_head)]
        Bp = _explicit_classes(self.B)
        F = self.field
        classes = []
        for a in range(self.q):
            for s in range(self.n_head):
                Ds = []
                for i in range(self.n_head):
                    X = Dp[(i + s) % self.n_head].symbols
                    X[:, 0] = F.add[X[:, 0], a]
                    Ds.append(Code(self.q, self.n_head, X, indices=False))
                classes.append(concatenate_blocks(Ds, Bp))
        return Partition(FullSpace(self.q, self.n), classes)


def concat_code(layout: SPartition, index: int = 0):
    """The class ``index`` of ``layout``: explicit when it fits the budget, otherwise an oracle."""
    q, n, size = layout.q, layout.n, layout.code_size
    if q**n <= config.get_budget() and isinstance(layout.B, Partition):
        if index:
            return layout.materialize().classes[index]
        Dp = [layout.D.class_code(i) for i in range(layout.n_head)]
        return concatenate_blocks(Dp, layout.B.classes)

    def membership(X):
        return layout.class_indices(X) == index

    def sampler(rng, k):
        return layout.sample_classes(rng, np.full(k, index, dtype=np.int64))

    structure = {
        "construction": "union of D_i B_i",
        "q": q,
        "m": layout.m,
        "class_index": index,
        "D_certificate": layout.D.certificate(),
        "D_classes": layout.n_head,
        "block_size": layout.block_size,
    }
    return OracleCode(q, n, size, 3, membership, sampler, structure)


def concat_S(B_partition, D_partition):
    """S = union of D_i B_i: an (n-1, q^(n-1-m), 3) code; oracle when too large."""
    return concat_code(SPartition(B_partition, D_partition), 0)


def partition_of_S(B_partition, D_partition) -> SPartition:
    return SPartition(B_partition, D_partition)


def quaternary_levels(m: int):
    """Yield (level, B-partition, D-partition) from level 3 up to ``m`` for q = 4."""
    from .catalog import load_embedded_partition
    if m < 3:
        raise ParameterError("the quaternary family starts at m = 3")
    B = load_embedded_partition()
    for level in range(3, m + 1):
        D = DPartition(4, level)
        yield level, B, D
        B = SPartition(B, D)


def theorem4_code(m: int) -> OracleCode:
    """Quaternary ((4^m-4)/3, 4^(n-m), 3) code that is not a shortened 1-perfect code.

    Level 3 concatenates the embedded non-lengthenable H(4,4) partition with
    the D-partition; each further level uses the S-partition of the previous
    level as its B-partition.
    """
    _, B, D = list(quaternary_levels(m))[-1]
    layout = SPartition(B, D)
    n = layout.n
    code = concat_code(layout, 0)
    if not code.is_oracle:
        raise AssertionError("expected an oracle code")
    assert n == (4**m - 4) // 3 and code.size == 4 ** (n - m)
    code.structure.update({
        "declared": (n, f"4^{n - m}", 3),
        "base_partition": "embedded H(4,4) partition into sixteen (4,16,3)_4 codes",
        "non_shortened": (
            "the level-3 B-partition (embedded H(4,4) partition) admits no lengthening to a partition "
            "of H(5,4) into 1-perfect codes; S lengthens to a 1-perfect code iff its B-partition "
            "lengthens to a partition into 1-perfect codes, and every higher level's B-partition "
            "contains the previous level's S, so it is not lengthenable either"
        ),
    })
    return code
