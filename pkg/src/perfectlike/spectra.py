"""Distance distributions, Krawtchouk polynomials and the dual transform.

Everything here is exact: integers and ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import EmptyCodeError, ParameterError
from .space import Code, check_budget, indices_to_words, require_explicit


def krawtchouk(q: int, n: int, k: int, i: int) -> int:
    """K_k(i) = sum_j (-1)^j (q-1)^(k-j) C(i,j) C(n-i,k-j); zero for k > n."""
    if k < 0 or not 0 <= i <= n:
        raise ParameterError(f"krawtchouk indices out of range: k={k}, i={i}, n={n}")
    return sum((-1) ** j * (q - 1) ** (k - j) * comb(i, j) * comb(n - i, k - j) for j in range(k + 1))


def krawtchouk_k1(q: int, n: int, i: int) -> int:
    return n * (q - 1) - q * i


def krawtchouk_k2(q: int, n: int, i: int) -> Fraction:
    t = n * (q - 1) - q * i
    return Fraction(t * t, 2) - Fraction(n * (q - 1) ** 2, 2) + Fraction(q * (q - 2) * i, 2)


def alpha(q: int, n: int, i: int) -> int:
    """(n(q-1) - qi)(n(q-1) - qi + q), the test polynomial of the packing bound."""
    t = n * (q - 1) - q * i
    return t * (t + q)


@dataclass(frozen=True)
class DistanceDistribution:
    q: int
    n: int
    A: tuple  # Fractions A_0..A_n
    size: int
    profiles: np.ndarray | None = None  # per-codeword A_i(x), shape (M, n+1)

    def __getitem__(self, i) -> Fraction:
        return self.A[i]

    def __iter__(self):
        return iter(self.A)


@dataclass(frozen=True)
class DualDistribution:
    q: int
    n: int
    B: tuple

    def __getitem__(self, k) -> Fraction:
        return self.B[k]

    def __iter__(self):
        return iter(self.B)


def _profiles_pairwise(X: np.ndarray, n: int, chunk: int = 512) -> np.ndarray:
    out = np.zeros((len(X), n + 1), dtype=np.int64)
    for i0 in range(0, len(X), chunk):
        D = (X[i0 : i0 + chunk, None, :] != X[None, :, :]).sum(-1)
        for i in range(n + 1):
            out[i0 : i0 + chunk, i] = (D == i).sum(1)
    return out


def _profiles_dp(code: Code) -> np.ndarray:
    # F[v, i] = number of codewords at distance i from v, built one coordinate at a time
    q, n = code.q, code.n
    check_budget(q, n, "distance profile table")
    dtype = np.int32 if len(code) < 2**31 else np.int64
    F = np.zeros((q**n, n + 1), dtype=dtype)
    np.add.at(F[:, 0], code.words, 1)
    F = F.reshape((q,) * n + (n + 1,))
    for ax in range(n):
        other = F.sum(axis=ax, keepdims=True, dtype=dtype) - F
        F[..., 1:] += other[..., :-1]
        del other
    F = F.reshape(q**n, n + 1)
    return F[code.words].astype(np.int64)


def distance_profiles(code: Code) -> np.ndarray:
    """Row x holds A_i(x) = #{y in C : d(x, y) = i}, multiplicities counted."""
    code = require_explicit(code, "distance_distribution")
    M, q, n = len(code), code.q, code.n
    if M == 0:
        raise EmptyCodeError("empty code")
    if M * M * n <= 4 * q**n * n * n or q**n > 2**26:
        return _profiles_pairwise(code.symbols, n)
    return _profiles_dp(code)


def distance_distribution(code: Code) -> DistanceDistribution:
    P = distance_profiles(code)
    M = len(code)
    A = tuple(Fraction(int(s), M) for s in P.sum(axis=0))
    return DistanceDistribution(code.q, code.n, A, M, P)


def weight_distribution(code: Code) -> tuple[int, ...]:
    X = require_explicit(code, "weight_distribution").symbols
    w = (X != 0).sum(1)
    return tuple(int(c) for c in np.bincount(w, minlength=code.n + 1))


def dual_distribution(A: DistanceDistribution | tuple, size: int | None = None,
                      q: int | None = None, n: int | None = None) -> DualDistribution:
    """B_k = (1/|C|) sum_i A_i K_k(i), k = 0..n."""
    if isinstance(A, DistanceDistribution):
        q, n, size, vals = A.q, A.n, size or A.size, A.A
    else:
        vals = tuple(Fraction(a) for a in A)
        if q is None or size is None:
            raise ParameterError("q and size are required with a bare sequence")
        n = len(vals) - 1 if n is None else n
    if len(vals) != n + 1:
        raise ParameterError("distribution has the wrong length")
    B = tuple(
        sum((Fraction(a) * krawtchouk(q, n, k, i) for i, a in enumerate(vals)), Fraction(0)) / size
        for k in range(n + 1)
    )
    return DualDistribution(q, n, B)


def lemma_lhs(A, q: int, n: int) -> Fraction:
    """n(q-1)A_0 + 2(q-1)A_1 + 2A_2."""
    A = tuple(A)
    a2 = Fraction(A[2]) if len(A) > 2 else Fraction(0)
    return n * (q - 1) * Fraction(A[0]) + 2 * (q - 1) * Fraction(A[1]) + 2 * a2


@dataclass(frozen=True)
class LemmaReport:
    lhs: Fraction
    rhs_odd: int
    rhs_even: int | None
    verdict: str  # "satisfied-odd", "satisfied-even" or "violated"
    equality: bool
    forced_ok: bool | None  # on equality: A_0 == 1 and A_1 == lambda - 1

    @property
    def satisfied(self) -> bool:
        return self.verdict != "violated"


def lemma_check(A, q: int, n: int, lam: int) -> LemmaReport:
    """Compare the distance-distribution functional against the lambda-fold packing limit.

    The even form applies when q, n and lambda are all even.
    """
    if q <= 2:
        raise ParameterError("the packing inequality is stated for q > 2 only")
    A = tuple(Fraction(a) for a in A)
    lhs = lemma_lhs(A, q, n)
    rhs_odd = (n + 1) * (q - 1) * lam - q + 1
    even = q % 2 == 0 and n % 2 == 0 and lam % 2 == 0
    rhs_even = rhs_odd - 1 if even else None
    rhs = rhs_even if even else rhs_odd
    if lhs > rhs:
        verdict = "violated"
    else:
        verdict = "satisfied-even" if even else "satisfied-odd"
    equality = lhs == rhs
    forced = (A[0] == 1 and A[1] == lam - 1) if equality else None
    return LemmaReport(lhs, rhs_odd, rhs_even, verdict, equality, forced)


def format_row(values, tsv: bool = False) -> str:
    cells = [f"{Fraction(v).numerator}/{Fraction(v).denominator}" if tsv else str(Fraction(v))
             for v in values]
    return "\t".join(cells) if tsv else " ".join(cells)
