"""Closed-form size bounds for multifold packings and multiple coverings of radius-1 balls."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, floor

from .errors import ParameterError


@dataclass(frozen=True)
class BoundReport:
    q: int
    n: int
    param: int  # lambda for packings, mu for coverings
    applicable: bool
    formula: str
    value: Fraction | None = None
    bound: int | None = None  # floor for upper bounds, ceiling for lower bounds
    improved: Fraction | None = None  # even-case refinement of a packing bound
    general_bound: int | None = None
    reason: str = ""
    note: str = ""

    def __str__(self) -> str:
        if not self.applicable:
            return f"not applicable: {self.reason}"
        return str(self.bound)


def congruence_holds(q: int, n: int) -> bool:
    """n = q (mod q^2), tested literally."""
    return n % (q * q) == q % (q * q)


def _applicability(q: int, n: int) -> str:
    if q <= 2:
        return "requires q > 2"
    if not congruence_holds(q, n):
        return f"requires n = q mod q^2 (n={n}, q={q})"
    return ""


def _positive(**kw):
    for k, v in kw.items():
        if not isinstance(v, int) or v < 1:
            raise ParameterError(f"{k} must be a positive integer, got {v!r}")


def packing_general(q: int, n: int, lam: int) -> Fraction:
    return Fraction(q**n * ((n + 1) * lam - 1), n * n * (q - 1) + n * q)


def packing_proof_form(q: int, n: int, lam: int) -> Fraction:
    """The same bound as it appears before simplification: alpha(0) in the denominator."""
    return Fraction(q**n * ((n + 1) * (q - 1) * lam - q + 1), n * (q - 1) * (n * (q - 1) + q))


def packing_even(q: int, n: int, lam: int) -> Fraction:
    return Fraction(q**n * ((n + 1) * (q - 1) * lam - q), n * (q - 1) * (n * (q - 1) + q))


def packing_upper_bound(q: int, n: int, lam: int) -> BoundReport:
    """Upper bound on a lambda-fold 1-packing in H(n,q), q > 2, n = q mod q^2.

    When q, n, lambda are all even the improved bound is also computed and
    ``bound`` is its floor.  Equality forces a multiplicity-free code.
    """
    _positive(q=q, n=n, lam=lam)
    why = _applicability(q, n)
    if why:
        return BoundReport(q, n, lam, False, "packing", reason=why)
    general = packing_general(q, n, lam)
    if general != packing_proof_form(q, n, lam):
        raise AssertionError(f"bound forms disagree at q={q} n={n} lambda={lam}")
    improved = None
    best = general
    if q % 2 == 0 and n % 2 == 0 and lam % 2 == 0:
        improved = packing_even(q, n, lam)
        best = min(general, improved)
    return BoundReport(
        q, n, lam, True, "packing-even" if improved is not None else "packing",
        value=general, bound=floor(best), improved=improved, general_bound=floor(general),
        note="equality implies no repeated codewords",
    )


def packing_upper_bound_dist2(q: int, n: int, lam: int) -> BoundReport:
    """lambda q^n / (n(q-1) + q) for lambda-fold 1-packings with minimum distance 2."""
    _positive(q=q, n=n, lam=lam)
    why = _applicability(q, n)
    if why:
        return BoundReport(q, n, lam, False, "packing-dist2", reason=why)
    v = Fraction(lam * q**n, n * (q - 1) + q)
    return BoundReport(q, n, lam, True, "packing-dist2", value=v, bound=floor(v), general_bound=floor(v))


def covering_lower_bound(q: int, n: int, mu: int) -> BoundReport:
    """Lower bound q^n (n+1) mu / (n^2(q-1) + nq) on an (n, ., 1, mu) multiple covering."""
    _positive(q=q, n=n, mu=mu)
    why = _applicability(q, n)
    if why:
        return BoundReport(q, n, mu, False, "covering", reason=why)
    v = Fraction(q**n * (n + 1) * mu, n * n * (q - 1) + n * q)
    return BoundReport(q, n, mu, True, "covering", value=v, bound=ceil(v), general_bound=ceil(v))


def ball_volume(q: int, n: int, r: int = 1) -> int:
    return sum(comb(n, i) * (q - 1) ** i for i in range(r + 1))


def sphere_packing_bound(q: int, n: int, lam: int = 1, r: int = 1) -> BoundReport:
    _positive(q=q, n=n, lam=lam)
    v = Fraction(lam * q**n, ball_volume(q, n, r))
    return BoundReport(q, n, lam, True, f"sphere-packing-r{r}", value=v, bound=floor(v), general_bound=floor(v))


def singleton_check(q: int, n: int, M: int, d: int) -> str:
    """'MDS' if M = q^(n-d+1), 'below' if smaller, 'violates' if larger."""
    if not 1 <= d <= n:
        raise ParameterError(f"minimum distance {d} outside 1..{n}")
    top = q ** (n - d + 1)
    if M == top:
        return "MDS"
    return "below" if M < top else "violates"


def bounds_table(q: int, nmax: int, lam: int = 1, mu: int | None = None):
    """Rows (n, packing, dist2, covering) for every applicable n <= nmax."""
    rows = []
    for n in range(1, nmax + 1):
        if _applicability(q, n):
            continue
        p = packing_upper_bound(q, n, lam)
        d2 = packing_upper_bound_dist2(q, n, lam)
        c = covering_lower_bound(q, n, mu) if mu else None
        rows.append((n, p, d2, c))
    return rows
