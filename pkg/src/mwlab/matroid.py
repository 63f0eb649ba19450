"""Matroids stored as explicit collections of bitmask-encoded bases.

Element ``i`` of the ground set corresponds to bit ``1 << i``.  All
operations are pure; a :class:`Matroid` is never mutated after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Optional, Union

from .errors import (
    BadEndpoint,
    EmptyBases,
    ExchangeViolation,
    InvariantViolation,
    MixedCardinality,
    RankOutOfRange,
    RankZero,
)

Subset = Union[int, Iterable[int]]


def bits(mask: int) -> Iterator[int]:
    """Yield the element indices set in ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def elements(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def mask_of(subset: Subset) -> int:
    if isinstance(subset, int):
        return subset
    m = 0
    for e in subset:
        m |= 1 << e
    return m


def _drop_bit(mask: int, e: int) -> int:
    # remove position e and shift the higher bits down by one
    low = mask & ((1 << e) - 1)
    return low | ((mask >> (e + 1)) << e)


@dataclass(frozen=True, eq=False)
class Matroid:
    """Ground set ``0..n-1``, rank ``r`` and the bases as bitmasks.

    ``bases`` keeps the order it was given in (duplicates dropped) so that
    files round-trip exactly; equality and hashing ignore that order.
    """

    n: int
    r: int
    bases: tuple[int, ...]
    provenance: Optional[str] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "bases", tuple(dict.fromkeys(self.bases)))

    @cached_property
    def basis_set(self) -> frozenset[int]:
        return frozenset(self.bases)

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.n == other.n and self.r == other.r and self.basis_set == other.basis_set

    def __hash__(self):
        return hash((self.n, self.r, self.basis_set))

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def is_basis(self, subset: Subset) -> bool:
        return mask_of(subset) in self.basis_set

    def basis_sets(self) -> list[tuple[int, ...]]:
        return [elements(b) for b in self.bases]

    def __repr__(self):
        tag = f", {self.provenance}" if self.provenance else ""
        return f"Matroid(n={self.n}, r={self.r}, bases={len(self.bases)}{tag})"


@dataclass(frozen=True)
class SubsetFamily:
    members: tuple[int, ...]
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, subset):
        return mask_of(subset) in self.members

    def as_sets(self) -> set[frozenset[int]]:
        return {frozenset(bits(m)) for m in self.members}

    def sizes(self) -> list[int]:
        return [m.bit_count() for m in self.members]


def exchange_witness(bases: Iterable[int]) -> Optional[tuple[int, int, int]]:
    """Return ``(b1, b2, e)`` violating basis exchange, or None if the axiom holds."""
    bases = list(bases)
    basis_set = set(bases)
    union = _union(bases)
    swaps = {}
    for b in bases:
        cand = union & ~b
        for e in bits(b):
            rest = b & ~(1 << e)
            ok = 0
            for f in bits(cand):
                if (rest | (1 << f)) in basis_set:
                    ok |= 1 << f
            swaps[b, e] = ok
    for b1 in bases:
        for b2 in bases:
            diff = b1 & ~b2
            if not diff:
                continue
            avail = b2 & ~b1
            for e in bits(diff):
                if not swaps[b1, e] & avail:
                    return b1, b2, e
    return None


def _union(masks: Iterable[int]) -> int:
    u = 0
    for m in masks:
        u |= m
    return u


def from_bases(n: int, basis_list: Iterable[Subset], provenance: Optional[str] = None) -> Matroid:
    """Build a matroid from an explicit basis list, validating the exchange axiom."""
    masks = [mask_of(b) for b in basis_list]
    if not masks:
        raise EmptyBases("basis list is empty")
    ground = (1 << n) - 1
    for m in masks:
        if m & ~ground or m < 0:
            raise RankOutOfRange(f"basis {elements(m)} not inside ground set of size {n}")
    sizes = {m.bit_count() for m in masks}
    if len(sizes) != 1:
        raise MixedCardinality(f"bases have differing cardinalities {sorted(sizes)}")
    w = exchange_witness(set(masks))
    if w is not None:
        b1, b2, e = w
        raise ExchangeViolation(
            f"exchange fails for B1={elements(b1)}, B2={elements(b2)}, e={e}",
            witness=(elements(b1), elements(b2), e),
        )
    return Matroid(n, sizes.pop(), tuple(masks), provenance)


def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n:
        raise RankOutOfRange(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
    bases = tuple(mask_of(c) for c in combinations(range(n), r))
    return Matroid(n, r, bases, f"U{r},{n}")


def graphic(vertex_count: int, edges: Iterable[tuple[int, int]]) -> Matroid:
    """Cycle matroid of a multigraph; edge ``i`` becomes element ``i``."""
    edges = [tuple(e) for e in edges]
    for u, v in edges:
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise BadEndpoint(f"edge ({u}, {v}) outside 0..{vertex_count - 1}")
    parent = list(range(vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = vertex_count
    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            components -= 1
    r = vertex_count - components

    bases = []
    for combo in combinations(range(len(edges)), r):
        if _is_forest(vertex_count, [edges[i] for i in combo]):
            bases.append(mask_of(combo))
    return Matroid(len(edges), r, tuple(bases), "graphic")


def _is_forest(vertex_count, edges) -> bool:
    parent = list(range(vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        a, b = find(u), find(v)
        if a == b:
            return False
        parent[a] = b
    return True


def dual(M: Matroid) -> Matroid:
    g = M.ground
    return Matroid(M.n, M.n - M.r, tuple(g ^ b for b in M.bases), "dual")


def direct_sum(M1: Matroid, M2: Matroid) -> Matroid:
    shift = M1.n
    bases = tuple(b1 | (b2 << shift) for b1 in M1.bases for b2 in M2.bases)
    return Matroid(M1.n + M2.n, M1.r + M2.r, bases, "sum")


def add_loops(M: Matroid, k: int) -> Matroid:
    if k < 0:
        raise ValueError("loop count must be non-negative")
    if k == 0:
        return M
    return Matroid(M.n + k, M.r, M.bases, "loops")


def delete(M: Matroid, e: int) -> Matroid:
    """M with element e deleted; remaining labels are shifted down to stay dense."""
    bit = 1 << e
    keep = [b for b in M.bases if not b & bit]
    if keep:
        return Matroid(M.n - 1, M.r, tuple(_drop_bit(b, e) for b in keep))
    # e is a coloop: deletion equals contraction
    return contract(M, e)


def contract(M: Matroid, e: int) -> Matroid:
    bit = 1 << e
    keep = [b for b in M.bases if b & bit]
    if keep:
        return Matroid(M.n - 1, M.r - 1, tuple(_drop_bit(b, e) for b in keep))
    # e is a loop
    return delete(M, e)


def rank_of(M: Matroid, A: Subset) -> int:
    a = mask_of(A)
    return max((b & a).bit_count() for b in M.bases)


def closure(M: Matroid, A: Subset) -> int:
    a = mask_of(A)
    ra = rank_of(M, a)
    cl = a
    for e in range(M.n):
        if not a >> e & 1 and rank_of(M, a | (1 << e)) == ra:
            cl |= 1 << e
    return cl


def circuits(M: Matroid) -> SubsetFamily:
    """All circuits, collected as fundamental circuits of each (basis, non-basis element) pair."""
    found = set()
    g = M.ground
    bs = M.basis_set
    for b in M.bases:
        for e in bits(g & ~b):
            c = 1 << e
            for f in bits(b):
                if ((b & ~(1 << f)) | (1 << e)) in bs:
                    c |= 1 << f
            found.add(c)
    return SubsetFamily(tuple(found), "circuits")


def hyperplanes(M: Matroid) -> set[int]:
    if M.r == 0:
        raise RankZero("a rank-0 matroid has no hyperplanes")
    bs = M.basis_set
    found = set()
    seen = set()
    for b in M.bases:
        for f in bits(b):
            ind = b & ~(1 << f)
            if ind in seen:
                continue
            seen.add(ind)
            # I + e has rank r exactly when it is a basis
            flat = ind
            for e in bits(M.ground & ~ind):
                if (ind | (1 << e)) not in bs:
                    flat |= 1 << e
            found.add(flat)
    return found


def cocircuits(M: Matroid) -> SubsetFamily:
    if M.r == 0:
        raise RankZero("cocircuits are undefined for a rank-0 matroid")
    fam = SubsetFamily(tuple(M.ground ^ h for h in hyperplanes(M)), "cocircuits")
    via_dual = circuits(dual(M))
    if fam.members != via_dual.members:
        raise InvariantViolation("hyperplane complements differ from circuits of the dual")
    return fam


def min_cocircuit_size(M: Matroid) -> Optional[int]:
    if M.r == 0:
        return None
    return min(cocircuits(M).sizes())


def loops_and_coloops(M: Matroid) -> tuple[int, int]:
    in_some = 0
    in_all = M.ground
    for b in M.bases:
        in_some |= b
        in_all &= b
    return M.ground & ~in_some, in_all


def is_u12_direct_sum(M: Matroid) -> bool:
    if M.n != 2 * M.r:
        return False
    loops, coloops = loops_and_coloops(M)
    if loops or coloops:
        return False
    cs = circuits(M).members
    if any(c.bit_count() != 2 for c in cs):
        return False
    if len(cs) != M.n // 2:
        return False
    covered = 0
    for c in cs:
        if covered & c:
            return False
        covered |= c
    return covered == M.ground
