"""Small finite fields GF(q), q <= 9, and plain mod-q arithmetic.

Field elements are the integers 0..q-1.  For q = p^e the element with
base-p digits (c_0, c_1, ..., c_{e-1}) (least significant first) stands
for the polynomial c_0 + c_1 x + ... + c_{e-1} x^{e-1} modulo a fixed
irreducible polynomial:

    GF(4) = GF(2)[x] / (x^2 + x + 1)      2 -> x, 3 -> x + 1
    GF(8) = GF(2)[x] / (x^3 + x + 1)
    GF(9) = GF(3)[x] / (x^2 + 1)

For prime q the tables are integer arithmetic mod q.  The encoding is
fixed so that every construction built on top of it is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ParameterError

SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9)

# coefficient lists, lowest degree first, monic
IRREDUCIBLE = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
}


def factor_prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    return (p, e) if r == 1 else None


@dataclass(frozen=True, eq=False)
class FieldTable:
    """Lookup tables for GF(q).  ``add``, ``mul`` are q x q uint8 arrays."""

    q: int
    prime: int
    degree: int
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)  # inv[0] is 0 and meaningless

    @property
    def is_prime(self) -> bool:
        return self.degree == 1

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def sum(self, X: np.ndarray, axis: int = -1) -> np.ndarray:
        """Field sum of the symbols of ``X`` along ``axis``."""
        X = np.asarray(X)
        if self.is_prime:
            return (X.astype(np.int64).sum(axis=axis) % self.q).astype(np.uint8)
        X = np.moveaxis(X, axis, -1)
        acc = np.zeros(X.shape[:-1], dtype=np.uint8)
        for j in range(X.shape[-1]):
            acc = self.add[acc, X[..., j]]
        return acc

    def matmul_t(self, X: np.ndarray, H: np.ndarray) -> np.ndarray:
        """Rows of ``X`` times ``H`` transposed: returns X @ H^T over the field.

        ``X`` has shape (M, n), ``H`` shape (r, n); result (M, r).
        """
        X = np.atleast_2d(np.asarray(X, dtype=np.uint8))
        H = np.atleast_2d(np.asarray(H, dtype=np.uint8))
        if self.is_prime:
            return ((X.astype(np.int64) @ H.T.astype(np.int64)) % self.q).astype(np.uint8)
        out = np.zeros((X.shape[0], H.shape[0]), dtype=np.uint8)
        for k in range(H.shape[0]):
            acc = np.zeros(X.shape[0], dtype=np.uint8)
            for j in range(H.shape[1]):
                h = H[k, j]
                if h:
                    acc = self.add[acc, self.mul[h, X[:, j]]]
            out[:, k] = acc
        return out

    def check_axioms(self) -> None:
        """Exhaustively assert the field axioms (cheap for q <= 9)."""
        q, A, M = self.q, self.add.astype(int), self.mul.astype(int)
        r = np.arange(q)
        assert (A[0] == r).all() and (M[1] == r).all()
        assert (A == A.T).all() and (M == M.T).all()
        a, b, c = np.meshgrid(r, r, r, indexing="ij")
        assert (A[A[a, b], c] == A[a, A[b, c]]).all()
        assert (M[M[a, b], c] == M[a, M[b, c]]).all()
        assert (M[a, A[b, c]] == A[M[a, b], M[a, c]]).all()
        assert (A[r, self.neg] == 0).all()
        assert (M[r[1:], self.inv[1:]] == 1).all()


def _poly_tables(p: int, e: int, modulus: tuple[int, ...]):
    q = p**e
    digits = np.array([[(x // p**i) % p for i in range(e)] for x in range(q)], dtype=int)
    weights = p ** np.arange(e)
    add = np.empty((q, q), dtype=np.uint8)
    mul = np.empty((q, q), dtype=np.uint8)
    for a in range(q):
        for b in range(q):
            add[a, b] = int(((digits[a] + digits[b]) % p) @ weights)
            prod = np.zeros(2 * e - 1, dtype=int)
            for i in range(e):
                prod[i : i + e] += digits[a][i] * digits[b]
            prod %= p
            # reduce by the monic modulus from the top down
            for k in range(2 * e - 2, e - 1, -1):
                c = prod[k]
                if c:
                    prod[k - e : k + 1] -= c * np.array(modulus)
                    prod %= p
            mul[a, b] = int(prod[:e] @ weights)
    return add, mul


@lru_cache(maxsize=None)
def build_field(q: int) -> FieldTable:
    """Return the lookup tables of GF(q) for q in {2, 3, 4, 5, 7, 8, 9}."""
    pe = factor_prime_power(q) if isinstance(q, int) else None
    if pe is None:
        raise ParameterError(f"q={q!r} is not a prime power")
    if q not in SUPPORTED_ORDERS:
        raise ParameterError(f"GF({q}) is out of range (q must be one of {SUPPORTED_ORDERS})")
    p, e = pe
    if e == 1:
        r = np.arange(q)
        add = ((r[:, None] + r[None, :]) % q).astype(np.uint8)
        mul = ((r[:, None] * r[None, :]) % q).astype(np.uint8)
    else:
        add, mul = _poly_tables(p, e, IRREDUCIBLE[q])
    neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.uint8)
    inv = np.zeros(q, dtype=np.uint8)
    for a in range(1, q):
        inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
    for t in (add, mul, neg, inv):
        t.setflags(write=False)
    return FieldTable(q, p, e, add, mul, neg, inv)


@dataclass(frozen=True)
class ModRing:
    """Integers modulo q.  Kept apart from FieldTable on purpose: for q = 4, 8, 9
    the mod-q sum of a word is not its field sum."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 2:
            raise ParameterError(f"modulus must be an integer >= 2, got {self.q!r}")

    def sum(self, X: np.ndarray, axis: int = -1) -> np.ndarray:
        return (np.asarray(X, dtype=np.int64).sum(axis=axis) % self.q).astype(np.uint8)


def mod_sum(word, ring: ModRing | int) -> int:
    """Integer sum of the symbols of ``word`` reduced mod q."""
    q = ring.q if isinstance(ring, ModRing) else int(ring)
    symbols = [int(s) for s in word]
    if any(s < 0 or s >= q for s in symbols):
        raise ParameterError(f"symbol out of range for q={q}: {tuple(symbols)}")
    return sum(symbols) % q
