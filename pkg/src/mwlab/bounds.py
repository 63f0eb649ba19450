"""Exact checks of the counting bounds behind the density, cocircuit and loop results.

Integer comparisons use Python ints and :class:`fractions.Fraction`.  The
only floating point lives in :func:`density_threshold` (guarded by a
high-precision recomputation near integers), :func:`check_log_inequality`,
and the transcendental steps of :func:`check_density_chain`, which run in
mpmath at 60 significant digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Any, NamedTuple, Optional

import mpmath

from .errors import BadRange, DomainError, HypothesisUnmet, RankTooSmall, RankZero
from .matroid import Matroid, loops_and_coloops, min_cocircuit_size
from .tutte import TuttePolynomial, basis_count, evaluate, tutte

# reference n_r values for r = 1..16; comparison data only
REFERENCE_NR_TABLE = {
    1: 4, 2: 8, 3: 12, 4: 16, 5: 21, 6: 25, 7: 29, 8: 33,
    9: 37, 10: 42, 11: 46, 12: 50, 13: 54, 14: 59, 15: 64, 16: 68,
}

_DPS = 60
_NEAR_INT = 1e-9


@dataclass(frozen=True)
class GapValue:
    n: int
    r: int
    value: int


class Step(NamedTuple):
    label: str
    left: Any
    right: Any
    holds: bool
    relation: str = ">="


@dataclass
class ChainReport:
    steps: list[Step] = field(default_factory=list)
    conclusion: Optional[bool] = None

    @property
    def overall(self) -> bool:
        return all(s.holds for s in self.steps)

    def add(self, label, left, right, relation=">="):
        if relation == ">=":
            ok = left >= right
        elif relation == ">":
            ok = left > right
        elif relation == "=":
            ok = left == right
        else:
            raise ValueError(f"unknown relation {relation!r}")
        self.steps.append(Step(label, left, right, bool(ok), relation))
        return ok

    def step(self, label: str) -> Step:
        for s in self.steps:
            if s.label == label:
                return s
        raise KeyError(label)


def gap_f(n: int, r: int) -> GapValue:
    """f(n, r) = 2^(n-r) - 2 C(n, r), exactly."""
    if r < 0 or r > n:
        raise BadRange(f"need 0 <= r <= n, got n={n}, r={r}")
    return GapValue(n, r, 2 ** (n - r) - 2 * comb(n, r))


def _exact_log2(x) -> Optional[int]:
    if isinstance(x, int) and x > 0 and x & (x - 1) == 0:
        return x.bit_length() - 1
    return None


def _log_terms_exact(r: int) -> Optional[tuple[int, int, int]]:
    l1 = _exact_log2(r)
    l2 = None if l1 is None else _exact_log2(l1)
    l3 = None if l2 is None else _exact_log2(l2)
    if l3 is None:
        return None
    return l1, l2, l3


def _log_terms_mp(r: int):
    with mpmath.workdps(_DPS):
        l1 = mpmath.log(r, 2)
        l2 = mpmath.log(l1, 2)
        l3 = mpmath.log(l2, 2)
    return l1, l2, l3


def density_threshold(r: int) -> int:
    """ceil(r (log r + log log r + log log log r)), logarithms base 2."""
    if r < 4:
        raise RankTooSmall(f"density threshold needs r >= 4, got {r}")
    exact = _log_terms_exact(r)
    if exact is not None:
        return r * sum(exact)
    l1 = math.log2(r)
    value = r * (l1 + math.log2(l1) + math.log2(math.log2(l1)))
    if abs(value - round(value)) > _NEAR_INT:
        return math.ceil(value)
    with mpmath.workdps(_DPS):
        value = r * sum(_log_terms_mp(r))
        return int(mpmath.ceil(value))


def minimal_nr(r: int) -> int:
    """Least n >= r with f(n, r) >= 0, by upward scan."""
    if r < 1:
        raise BadRange(f"need r >= 1, got {r}")
    n = r
    while gap_f(n, r).value < 0:
        n += 1
    assert n == r or gap_f(n - 1, r).value < 0
    return n


class NrRow(NamedTuple):
    r: int
    reference: Optional[int]
    oracle: int
    threshold: Optional[int]

    @property
    def agrees(self) -> Optional[bool]:
        return None if self.reference is None else self.reference == self.oracle

    @property
    def oracle_within_threshold(self) -> Optional[bool]:
        return None if self.threshold is None else self.oracle <= self.threshold


def nr_table(max_r: int) -> list[NrRow]:
    rows = []
    for r in range(1, max_r + 1):
        thr = density_threshold(r) if r >= 4 else None
        rows.append(NrRow(r, REFERENCE_NR_TABLE.get(r), minimal_nr(r), thr))
    return rows


def check_forward_difference(n: int, r: int) -> ChainReport:
    if not n > 2 * r:
        raise HypothesisUnmet(f"forward-difference lemma needs n > 2r, got n={n}, r={r}")
    f0 = gap_f(n, r).value
    f1 = gap_f(n + 1, r).value
    rep = ChainReport()
    rep.add("f(n+1,r) - f(n,r) = 2^(n-r) - 2C(n,r-1)", f1 - f0,
            2 ** (n - r) - 2 * comb(n, r - 1), "=")
    rep.add("C(n,r) > C(n,r-1)", comb(n, r), comb(n, r - 1), ">")
    rep.add("f(n+1,r) > 2f(n,r)", f1, 2 * f0, ">")
    return rep


class LogCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def check_log_inequality(x: float) -> LogCheck:
    """(log x)(log log x) >= log x + log log x + log log log x + 1, base 2."""
    if not x > 2:
        raise DomainError(f"log log log x is undefined for x={x}")
    l1 = math.log2(x)
    l2 = math.log2(l1)
    l3 = math.log2(l2)
    lhs = l1 * l2
    rhs = l1 + l2 + l3 + 1
    return LogCheck(lhs, rhs, lhs >= rhs - 1e-12)


def check_density_chain(n: int, r: int) -> ChainReport:
    """Audit the chain 2^(n0-r) >= ... >= 2C(n0, r) at n0 = density_threshold(r), then extend to n."""
    if r < 5:
        raise HypothesisUnmet(f"the chain uses 2^(r+1) <= r!, which needs r >= 5 (got r={r})")
    n0 = density_threshold(r)
    if n < n0:
        raise HypothesisUnmet(f"n={n} is below the density threshold {n0} for r={r}")

    rep = ChainReport()
    with mpmath.workdps(_DPS):
        exact = _log_terms_exact(r)
        l1, l2, l3 = exact if exact is not None else _log_terms_mp(r)
        L = mpmath.mpf(l1) + l2 + l3
        # compare powers of two through their exponents
        rep.add("2^(n0-r) >= 2^(rL)/2^r", mpmath.mpf(n0), r * L)
        ident = r * mpmath.log(r * mpmath.mpf(l1) * l2, 2)
        rep.steps.append(Step("2^(rL) = (r log r loglog r)^r", r * L, ident,
                              bool(abs(r * L - ident) <= mpmath.mpf(10) ** (-40) * (1 + abs(ident))), "="))
        rep.add("log inequality at x=r", mpmath.mpf(l1) * l2, L + 1)
        rep.add("r log r loglog r >= n0", r * mpmath.mpf(l1) * l2, mpmath.mpf(n0))
    rep.add("r! >= 2^(r+1)", factorial(r), 2 ** (r + 1))
    rep.add("n0^r/2^r >= 2 n0^r/r!", Fraction(n0 ** r, 2 ** r), Fraction(2 * n0 ** r, factorial(r)))
    rep.add("2 n0^r/r! >= 2C(n0,r)", Fraction(2 * n0 ** r, factorial(r)), 2 * comb(n0, r))
    rep.add("2^(n0-r) >= 2C(n0,r)", 2 ** (n0 - r), 2 * comb(n0, r))
    rep.add("n0 > 2r", n0, 2 * r, ">")
    rep.add("2^(n-r) >= 2C(n,r)", 2 ** (n - r), 2 * comb(n, r))
    return rep


def binomial_identity_sum(r: int, y: int = 2) -> int:
    """C(2r-2,r-1) + C(2r-3,r-2) y + ... + C(r,1) y^(r-2) + y^(r-1)."""
    if y == 0:
        return comb(2 * r - 2, r - 1)
    total, c, p = 0, 1, y ** (r - 1)
    for k in range(r):
        # c = C(r-1+k, k), p = y^(r-1-k)
        total += c * p
        c = c * (r + k) // (k + 1)
        p //= y
    return total


def printed_summation(r: int, y: int = 2) -> int:
    """The literal sum over j of C(r-j-1, j) y^(r-1-j); kept to expose that it differs."""
    return sum(comb(r - j - 1, j) * y ** (r - 1 - j) for j in range(r))


def check_binomial_identity(r: int) -> tuple[int, bool]:
    if r < 1:
        raise BadRange(f"need r >= 1, got {r}")
    lhs = binomial_identity_sum(r)
    return lhs, lhs == 2 ** (2 * r - 2)


def _values(M: Matroid, T: Optional[TuttePolynomial]):
    T = tutte(M) if T is None else T
    return evaluate(T, 2, 0), evaluate(T, 0, 2), basis_count(M), T


def check_cocircuit_chain(M: Matroid, T: Optional[TuttePolynomial] = None) -> ChainReport:
    n, r = M.n, M.r
    try:
        m = min_cocircuit_size(M)
    except RankZero:
        m = None
    if m is None or m < r + 1:
        raise HypothesisUnmet(f"minimum cocircuit size {m} is below r+1={r + 1}")
    t20, t02, t11, T = _values(M, T)

    rep = ChainReport()
    rep.add("(a) n >= 2r", n, 2 * r)
    top = sum(T.coefficient(0, n - r - k) * 2 ** (n - r - k) for k in range(r))
    rep.add("(b0) top pure-y terms = 2^(n-2r+1) * identity sum", top,
            Fraction(2) ** (n - 2 * r + 1) * binomial_identity_sum(r), "=")
    rep.add("(b) T(0,2) >= 2^(n-1)", t02, 2 ** (n - 1))
    rep.add("(c) 2^(n-1) >= 2C(n,r)", 2 ** (n - 1), 2 * comb(n, r))
    rep.add("(d) 2C(n,r) >= 2T(1,1)", 2 * comb(n, r), 2 * t11)
    rep.conclusion = t20 + t02 >= 2 * t11
    return rep


def check_loops_chain(M: Matroid, T: Optional[TuttePolynomial] = None) -> ChainReport:
    n, r = M.n, M.r
    loops, coloops = loops_and_coloops(M)
    if coloops:
        raise HypothesisUnmet("matroid has an isthmus")
    if loops.bit_count() < r - 1:
        raise HypothesisUnmet(f"{loops.bit_count()} loops, fewer than r-1={r - 1}")
    t20, t02, t11, _ = _values(M, T)

    rep = ChainReport()
    rep.add("T(0,2) >= 2^(n-r)", t02, 2 ** (n - r))
    rep.add("2^(n-r) >= 2C(n-r+1,r)", 2 ** (n - r), 2 * comb(n - r + 1, r))
    rep.add("2C(n-r+1,r) >= 2T(1,1)", 2 * comb(n - r + 1, r), 2 * t11)
    rep.conclusion = t20 + t02 >= 2 * t11
    return rep
