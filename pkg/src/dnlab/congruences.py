"""Congruences, quotients, and the Frege / Tarski / Leibniz relations of finite g-matrices.

A partition is a tuple of block ids in restricted-growth form: element 0 is in
block 0 and each new block gets the next id in order of first occurrence.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import FiniteAlgebra, find_homomorphisms, is_homomorphism
from .errors import GuardError, InternalConsistencyError, PreconditionError

__all__ = [
    "MAX_CONGRUENCE_ENUM", "canonical_partition", "blocks", "identity_partition",
    "total_partition", "refines", "partition_join", "is_congruence", "all_congruences",
    "GMatrix", "frege_relation", "largest_congruence_below", "tarski_congruence",
    "leibniz_congruence", "quotient", "PointRegularity", "is_point_regular",
]

MAX_CONGRUENCE_ENUM = 10


def canonical_partition(labels: Sequence) -> tuple[int, ...]:
    ids: dict = {}
    return tuple(ids.setdefault(x, len(ids)) for x in labels)


def blocks(p: Sequence[int]) -> list[frozenset[int]]:
    out: dict[int, set[int]] = {}
    for i, b in enumerate(p):
        out.setdefault(b, set()).add(i)
    return [frozenset(out[b]) for b in sorted(out)]


def identity_partition(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def total_partition(n: int) -> tuple[int, ...]:
    return (0,) * n


def refines(p: Sequence[int], q: Sequence[int]) -> bool:
    """True iff every block of p lies inside a block of q (p is below q)."""
    seen: dict[int, int] = {}
    return all(seen.setdefault(a, b) == b for a, b in zip(p, q))


def partition_join(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    n = len(p)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for rel in (p, q):
        first: dict[int, int] = {}
        for i, b in enumerate(rel):
            j = first.setdefault(b, i)
            parent[find(i)] = find(j)
    return canonical_partition([find(i) for i in range(n)])


def _as_partition(A: FiniteAlgebra, partition) -> np.ndarray:
    labels = list(partition)
    if len(labels) != A.size:
        raise ValueError(f"partition has {len(labels)} entries, algebra has {A.size} elements")
    try:
        return np.array(canonical_partition(labels), dtype=np.int64)
    except TypeError as e:
        raise ValueError("partition labels must be hashable") from e


def _m_compatible(T: np.ndarray, blk: np.ndarray, box=None) -> bool:
    same = blk[:, None] == blk[None, :]
    B = blk[T]
    for pos in range(3):
        Bp = np.moveaxis(B, pos, 0)
        differs = (Bp[:, None] != Bp[None, :]).reshape(len(blk), len(blk), -1).any(axis=2)
        if (same & differs).any():
            return False
    if box is not None:
        bb = blk[box]
        if (same & (bb[:, None] != bb[None, :])).any():
            return False
    return True


def _join_meet_criterion(A: FiniteAlgebra, blk: np.ndarray) -> bool:
    """Joins of related pairs are related; so are existing meets of related pairs."""
    same = blk[:, None] == blk[None, :]
    rel = np.argwhere(same)
    J = A.join_table
    Mt = A.meet_table
    a, b = rel[:, 0][:, None], rel[:, 1][:, None]
    c, d = rel[:, 0][None, :], rel[:, 1][None, :]
    if (blk[J[a, c]] != blk[J[b, d]]).any():
        return False
    m1, m2 = Mt[a, c], Mt[b, d]
    both = (m1 >= 0) & (m2 >= 0)
    return not (both & (blk[np.maximum(m1, 0)] != blk[np.maximum(m2, 0)])).any()


def is_congruence(A: FiniteAlgebra, partition) -> bool:
    """Compatibility with m (and box), checked one argument position at a time.

    On distributive nearlattices the join / existing-meet criterion is
    evaluated too and must agree.
    """
    blk = _as_partition(A, partition)
    verdict = _m_compatible(A.m_table, blk, A.box)
    if A.is_dn:
        alt = _join_meet_criterion(A, blk)
        if A.box is not None:
            bb = blk[A.box]
            same = blk[:, None] == blk[None, :]
            alt = alt and not (same & (bb[:, None] != bb[None, :])).any()
        if alt != verdict:
            raise InternalConsistencyError("m-compatibility and the join/meet criterion disagree")
    return verdict


def all_congruences(A: FiniteAlgebra) -> list[tuple[int, ...]]:
    """Every congruence, in lexicographic order of restricted growth strings.

    Partitions are grown one element at a time; a prefix is abandoned as soon as
    two related assigned elements send some assigned triple to unrelated values.
    """
    n = A.size
    if n > MAX_CONGRUENCE_ENUM:
        raise GuardError(f"congruence enumeration over {n} elements exceeds the guard {MAX_CONGRUENCE_ENUM}")
    T = A.m_table
    box = A.box
    out = []
    blk = np.zeros(n, dtype=np.int64)

    def viable(k: int) -> bool:
        sub = T[:k + 1, :k + 1, :k + 1]
        inside = sub <= k
        b = blk[:k + 1]
        lab = np.where(inside, b[np.minimum(sub, k)], -1)
        same = b[:, None] == b[None, :]
        for pos in range(3):
            L = np.moveaxis(lab, pos, 0)
            x, y = L[:, None], L[None, :]
            clash = ((x != y) & (x >= 0) & (y >= 0)).reshape(k + 1, k + 1, -1).any(axis=2)
            if (same & clash).any():
                return False
        if box is not None:
            bx = box[:k + 1]
            ok = bx <= k
            lb = np.where(ok, b[np.minimum(bx, k)], -1)
            clash = (lb[:, None] != lb[None, :]) & (lb[:, None] >= 0) & (lb[None, :] >= 0)
            if (same & clash).any():
                return False
        return True

    def extend(k: int, nblocks: int):
        if k == n:
            p = tuple(int(v) for v in blk)
            if not is_congruence(A, p):
                raise InternalConsistencyError(f"pruned search produced a non-congruence {p}")
            out.append(p)
            return
        for b in range(nblocks + 1):
            blk[k] = b
            if viable(k):
                extend(k + 1, max(nblocks, b + 1))

    blk[0] = 0
    if viable(0):
        extend(1, 1)
    return out


class GMatrix:
    """An algebra with an explicit closure system on its universe."""

    def __init__(self, algebra: FiniteAlgebra, closed: Iterable[Iterable[int]]):
        self.algebra = algebra
        family = {frozenset(algebra.index(x) for x in S) for S in closed}
        universe = frozenset(range(algebra.size))
        if universe not in family:
            raise ValueError("a closure system must contain the universe")
        for F, G in itertools.combinations(family, 2):
            if F & G not in family:
                raise ValueError("a closure system must be closed under intersection")
        self.closed = sorted(family, key=lambda s: (len(s), sorted(s)))

    def closure(self, S: Iterable[int]) -> frozenset[int]:
        S = frozenset(S)
        out = frozenset(range(self.algebra.size))
        for F in self.closed:
            if S <= F:
                out &= F
        return out


def frege_relation(G: GMatrix) -> tuple[int, ...]:
    return canonical_partition([G.closure({a}) for a in range(G.algebra.size)])


def largest_congruence_below(A: FiniteAlgebra, equivalence: Sequence[int]) -> tuple[int, ...]:
    below = [c for c in all_congruences(A) if refines(c, equivalence)]
    best = identity_partition(A.size)
    for c in below:
        best = partition_join(best, c)
    if best not in below:
        raise InternalConsistencyError("join of congruences below the relation is not one of them")
    return best


def tarski_congruence(G: GMatrix) -> tuple[int, ...]:
    return largest_congruence_below(G.algebra, frege_relation(G))


def leibniz_congruence(A: FiniteAlgebra, F: Iterable) -> tuple[int, ...]:
    """Greatest congruence with no block meeting both F and its complement."""
    F = {A.index(x) for x in F}
    return largest_congruence_below(A, canonical_partition([i in F for i in range(A.size)]))


def quotient(A: FiniteAlgebra, theta: Sequence[int]) -> FiniteAlgebra:
    """Block algebra; each block is named after its first element."""
    if not is_congruence(A, theta):
        raise PreconditionError("quotient needs a congruence")
    blk = np.array(canonical_partition(theta), dtype=np.int64)
    reps = [int(np.flatnonzero(blk == b)[0]) for b in range(blk.max() + 1)]
    rep = np.array(reps)
    table = blk[A.m_table[np.ix_(rep, rep, rep)]]
    Q = FiniteAlgebra(
        table, [A.names[r] for r in reps],
        {k: int(blk[v]) for k, v in A.constants.items()},
        None if A.box is None else [int(blk[A.box[r]]) for r in reps],
        label=f"{A.label}/theta" if A.label else "",
    )
    nat = tuple(int(b) for b in blk)
    if not is_homomorphism(A, Q, nat) or nat not in find_homomorphisms(A, Q):
        raise InternalConsistencyError("the natural map onto the quotient is not a homomorphism")
    return Q


@dataclass(frozen=True)
class PointRegularity:
    ok: bool
    algebra: FiniteAlgebra | None = None
    pair: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __bool__(self):
        return self.ok


def is_point_regular(algebras: Iterable[FiniteAlgebra]) -> PointRegularity:
    """Distinct congruences have distinct blocks of the top element, in every member."""
    algebras = list(algebras)
    for A in algebras:
        if "top" not in A.constants:
            raise PreconditionError(f"{A.label or A!r} declares no top")
    for A in algebras:
        top = A.constants["top"]
        seen: dict[frozenset[int], tuple[int, ...]] = {}
        for c in all_congruences(A):
            key = frozenset(i for i in range(A.size) if c[i] == c[top])
            if key in seen:
                return PointRegularity(False, A, (seen[key], c))
            seen[key] = c
    return PointRegularity(True)
