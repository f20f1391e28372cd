"""Exhaustive decision procedures over H(n, q).

All checks here scan a dense vertex array, so they are limited by the
vertex budget (see ``perfectlike.config``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bounds import singleton_check
from .errors import SemanticsError
from .space import (
    Code,
    ball_counts,
    check_budget,
    decode,
    distance_layers,
    neighbors,
    require_explicit,
)


@dataclass
class Verdict:
    ok: bool
    witness: tuple | None = None
    count: int | None = None
    detail: str = ""
    data: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _first_violator(code: Code, bad: np.ndarray) -> int:
    on_code = code.words[bad[code.words]]
    if len(on_code):
        return int(on_code[0])
    return int(np.flatnonzero(bad)[0])


def is_multifold_packing(code: Code, lam: int) -> Verdict:
    """Every vertex is within distance 1 of at most ``lam`` codewords (with multiplicity)."""
    code = require_explicit(code, "is_multifold_packing")
    counts = ball_counts(code)
    bad = counts > lam
    top = int(counts.max())
    if not bad.any():
        return Verdict(True, count=top, detail=f"max ball count {top} <= {lam}")
    v = _first_violator(code, bad)
    return Verdict(False, decode(v, code.q, code.n), int(counts[v]),
                   f"vertex covered {int(counts[v])} > {lam} times")


def is_multiple_covering(code: Code, mu: int) -> Verdict:
    """Every vertex has at least ``mu`` codewords within distance 1.  Sets only."""
    code = require_explicit(code, "is_multiple_covering")
    if not code.is_set:
        raise SemanticsError("multiple coverings are ordinary sets; got a code with repeated words")
    counts = ball_counts(code)
    bad = counts < mu
    low = int(counts.min())
    if not bad.any():
        return Verdict(True, count=low, detail=f"min ball count {low} >= {mu}")
    v = int(np.flatnonzero(bad)[0])
    return Verdict(False, decode(v, code.q, code.n), int(counts[v]),
                   f"vertex covered {int(counts[v])} < {mu} times")


def is_one_perfect(code: Code) -> Verdict:
    code = require_explicit(code, "is_one_perfect")
    q, n = code.q, code.n
    check_budget(q, n, "is_one_perfect")
    if len(code) * (1 + n * (q - 1)) != q**n:
        return Verdict(False, detail=f"size {len(code)} times ball volume {1 + n * (q - 1)} != {q}^{n}")
    pk = is_multifold_packing(code, 1)
    if not pk:
        return Verdict(False, pk.witness, pk.count, pk.detail)
    return Verdict(True, detail="1-fold packing of full sphere-packing size")


def quotient_matrix(code: Code):
    """Shell structure of ``code``: returns (layers, rho, per-vertex neighbour counts by shell).

    ``counts[v, j]`` is the number of neighbours of v lying in shell j.
    """
    code = require_explicit(code, "quotient_matrix")
    q, n = code.q, code.n
    layers = distance_layers(code)
    rho = int(layers.max())
    counts = np.zeros((q**n, rho + 1), dtype=np.int32)
    step = 1 << 15
    for v0 in range(0, q**n, step):
        idx = np.arange(v0, min(v0 + step, q**n), dtype=np.int64)
        nb_layers = layers[neighbors(idx, q, n)]
        for j in range(rho + 1):
            counts[v0 : v0 + len(idx), j] = (nb_layers == j).sum(1)
    return layers, rho, counts


def is_completely_regular(code: Code) -> Verdict:
    """Check that the distance partition {C^(0), ..., C^(rho)} is equitable.

    On success ``data['quotient']`` is the (rho+1) x (rho+1) matrix whose
    row i gives the neighbour counts of any word of C^(i) in each shell.
    """
    code = require_explicit(code, "is_completely_regular").distinct()
    layers, rho, counts = quotient_matrix(code)
    quotient = []
    for i in range(rho + 1):
        members = np.flatnonzero(layers == i)
        rows = counts[members]
        ref = rows[0]
        diff = (rows != ref).any(1)
        if diff.any():
            v = int(members[np.flatnonzero(diff)[0]])
            return Verdict(False, decode(v, code.q, code.n),
                           detail=f"shell {i} is not equitable: {rows[diff][0].tolist()} vs {ref.tolist()}",
                           data={"radius": rho})
        quotient.append(tuple(int(x) for x in ref))
    return Verdict(True, detail=f"covering radius {rho}", data={"radius": rho, "quotient": quotient})


def is_mds(code) -> Verdict:
    """M = q^(n-d+1).  Oracle codes are judged on their declared parameters."""
    n, M, d = code.n, len(code), code.min_distance
    tri = singleton_check(code.q, n, M, d)
    return Verdict(tri == "MDS", detail=f"({n},{M},{d})_{code.q}: {tri}")


def is_space_partition(classes, q: int, n: int) -> Verdict:
    """Classes pairwise disjoint and covering H(n,q)."""
    size = check_budget(q, n, "partition check")
    seen = np.zeros(size, dtype=np.int32)
    for c in classes:
        seen += np.bincount(c.words, minlength=size)
    if (seen > 1).any():
        v = int(np.flatnonzero(seen > 1)[0])
        return Verdict(False, decode(v, q, n), int(seen[v]), "word in more than one class")
    if (seen == 0).any():
        v = int(np.flatnonzero(seen == 0)[0])
        return Verdict(False, decode(v, q, n), 0, "word in no class")
    return Verdict(True, detail=f"{len(classes)} classes partition H({n},{q})")


def complement_covering_parameter(q: int, n: int, lam: int) -> int:
    """mu = n(q-1) + 1 - lambda."""
    return n * (q - 1) + 1 - lam
