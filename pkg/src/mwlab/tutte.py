"""Tutte polynomials by two independent routes, plus nbc and basis counting.

``whitney_table`` enumerates every subset and is treated as ground truth;
``tutte_delcon`` is the deletion-contraction engine that must agree with it
coefficient for coefficient.  All coefficients are Python ints.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

import numpy as np

from .errors import EngineMismatch, GroundSetTooLarge, InvariantViolation
from .matroid import Matroid, circuits, contract, delete, loops_and_coloops

DEFAULT_MAX_N = 24


def max_ground_size() -> int:
    """Ground-set cap for subset enumeration; ``MWLAB_MAX_N`` overrides the default."""
    raw = os.environ.get("MWLAB_MAX_N")
    return int(raw) if raw else DEFAULT_MAX_N


def _check_cap(n, max_n):
    cap = max_ground_size() if max_n is None else max_n
    if n > cap:
        raise GroundSetTooLarge(f"ground set of size {n} exceeds cap {cap}")


@dataclass(frozen=True)
class WhitneyTable:
    """``w[i][j]`` counts subsets with corank ``i`` and nullity ``j``."""

    n: int
    r: int
    w: tuple[tuple[int, ...], ...]

    def total(self) -> int:
        return sum(sum(row) for row in self.w)


@dataclass(frozen=True)
class TuttePolynomial:
    """Dense table ``t[i][j]``: coefficient of x**i * y**j, shape (r+1) x (n-r+1)."""

    n: int
    r: int
    t: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.t) != self.r + 1 or any(len(row) != self.n - self.r + 1 for row in self.t):
            raise InvariantViolation("coefficient table has the wrong shape")
        if any(c < 0 for row in self.t for c in row):
            raise InvariantViolation("Tutte coefficients must be non-negative")

    def coefficient(self, i: int, j: int) -> int:
        if 0 <= i <= self.r and 0 <= j <= self.n - self.r:
            return self.t[i][j]
        return 0

    def terms(self):
        """Non-zero ``(i, j, coeff)`` triples in lexicographic order."""
        return [(i, j, c) for i, row in enumerate(self.t) for j, c in enumerate(row) if c]

    def __str__(self):
        parts = []
        for i, j, c in sorted(self.terms(), key=lambda t: (-(t[0] + t[1]), -t[0])):
            mono = "*".join(
                s for s in (_power("x", i), _power("y", j)) if s
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"


def _power(var, k):
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def _popcounts(n: int) -> np.ndarray:
    pop = np.zeros(1 << n, dtype=np.int8)
    for e in range(n):
        b = 1 << e
        pop.reshape(-1, 2, b)[:, 1, :] += 1
    return pop


def subset_ranks(M: Matroid, max_n: Optional[int] = None) -> np.ndarray:
    """Rank of every subset of the ground set, indexed by bitmask."""
    _check_cap(M.n, max_n)
    n = M.n
    size = 1 << n
    indep = np.zeros(size, dtype=bool)
    indep[np.fromiter(M.bases, dtype=np.int64, count=len(M.bases))] = True
    # independent sets are the subsets of bases: push membership downwards one bit at a time
    for e in range(n):
        v = indep.reshape(-1, 2, 1 << e)
        v[:, 0, :] |= v[:, 1, :]
    rank = np.where(indep, _popcounts(n), -1).astype(np.int8)
    # rank(A) = largest independent subset of A: subset-max transform
    for e in range(n):
        v = rank.reshape(-1, 2, 1 << e)
        np.maximum(v[:, 1, :], v[:, 0, :], out=v[:, 1, :])
    return rank


def whitney_table(M: Matroid, max_n: Optional[int] = None) -> WhitneyTable:
    rank = subset_ranks(M, max_n).astype(np.int64)
    pop = _popcounts(M.n).astype(np.int64)
    width = M.n - M.r + 1
    corank = M.r - rank
    nullity = pop - rank
    counts = np.bincount(corank * width + nullity, minlength=(M.r + 1) * width)
    w = tuple(
        tuple(int(counts[i * width + j]) for j in range(width)) for i in range(M.r + 1)
    )
    return WhitneyTable(M.n, M.r, w)


def tutte_from_whitney(W: WhitneyTable) -> TuttePolynomial:
    """Expand sum w[i][j] (x-1)^i (y-1)^j exactly."""
    rows, cols = W.r + 1, W.n - W.r + 1
    t = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for j in range(cols):
            w = W.w[i][j]
            if not w:
                continue
            for a in range(i + 1):
                xa = comb(i, a) * (-1) ** (i - a)
                for b in range(j + 1):
                    t[a][b] += w * xa * comb(j, b) * (-1) ** (j - b)
    return TuttePolynomial(W.n, W.r, tuple(map(tuple, t)))


def _add(p: dict, q: dict) -> dict:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + v
    return out


def tutte_delcon(M: Matroid) -> TuttePolynomial:
    """Deletion-contraction on the lowest-indexed ordinary element, memoized per call."""
    memo: dict = {}

    def rec(m: Matroid) -> dict:
        key = (m.n, m.basis_set)
        hit = memo.get(key)
        if hit is not None:
            return hit
        loops, coloops = loops_and_coloops(m)
        ordinary = m.ground & ~(loops | coloops)
        if not ordinary:
            poly = {(coloops.bit_count(), loops.bit_count()): 1}
        else:
            e = (ordinary & -ordinary).bit_length() - 1
            poly = _add(rec(delete(m, e)), rec(contract(m, e)))
        memo[key] = poly
        return poly

    poly = rec(M)
    t = [[0] * (M.n - M.r + 1) for _ in range(M.r + 1)]
    for (i, j), c in poly.items():
        t[i][j] = c
    return TuttePolynomial(M.n, M.r, tuple(map(tuple, t)))


def tutte(M: Matroid, cross_check: bool = False) -> TuttePolynomial:
    T = tutte_delcon(M)
    if cross_check:
        oracle = tutte_from_whitney(whitney_table(M))
        if oracle != T:
            raise EngineMismatch(f"engines disagree on {M!r}")
    return T


def evaluate(T: TuttePolynomial, x: int, y: int) -> int:
    total = 0
    for row in reversed(T.t):
        acc = 0
        for c in reversed(row):
            acc = acc * y + c
        total = total * x + acc
    return total


def nbc_count(M: Matroid, order: Optional[Sequence[int]] = None, max_n: Optional[int] = None) -> int:
    """Count subsets containing no broken circuit.

    ``order`` lists the ground set from least to greatest; the natural order
    is used when omitted.  A loop makes the empty set a broken circuit, so
    the count is then 0.
    """
    _check_cap(M.n, max_n)
    n = M.n
    if order is None:
        order = range(n)
    order = list(order)
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the ground set")
    position = {e: k for k, e in enumerate(order)}
    hit = np.zeros(1 << n, dtype=bool)
    for c in circuits(M):
        least = min((e for e in range(n) if c >> e & 1), key=position.__getitem__)
        hit[c & ~(1 << least)] = True
    # a subset is bad if it contains any broken circuit: push marks upwards
    for e in range(n):
        v = hit.reshape(-1, 2, 1 << e)
        v[:, 1, :] |= v[:, 0, :]
    return int((1 << n) - int(hit.sum()))


def basis_count(M: Matroid) -> int:
    return len(M.bases)
