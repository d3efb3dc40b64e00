"""Filters and Frink filters of finite distributive nearlattices.

Subsets are handled as frozensets of element indices.  Exhaustive routines
enumerate all 2^n subsets as rows of a boolean matrix.
"""
from __future__ import annotations

import itertools
from typing import Iterable

import numpy as np

from .algebra import FiniteAlgebra
from .errors import GuardError, InternalConsistencyError, PreconditionError

__all__ = [
    "MAX_SUBSET_ENUM", "as_subset", "upset_of", "is_filter", "is_m_closed", "generated_filter",
    "all_filters", "lower_bounds", "upper_bounds", "is_frink_filter", "all_frink_filters",
    "frink_closure", "frink_lattice_is_distributive", "all_subsets",
]

# 2^16 rows is still instant in numpy; beyond that enumeration becomes a chore
MAX_SUBSET_ENUM = 16


def as_subset(A: FiniteAlgebra, S: Iterable) -> frozenset[int]:
    return frozenset(A.index(s) for s in S)


def _sorted(family: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    return sorted(family, key=lambda s: (len(s), sorted(s)))


def upset_of(A: FiniteAlgebra, X: Iterable[int]) -> frozenset[int]:
    X = list(X)
    if not X:
        return frozenset()
    return frozenset(int(j) for j in np.flatnonzero(A.leq[X].any(axis=0)))


def all_subsets(n: int) -> np.ndarray:
    """Boolean matrix whose row r is the subset with bitmask r."""
    if n > MAX_SUBSET_ENUM:
        raise GuardError(f"subset enumeration over {n} elements exceeds the guard {MAX_SUBSET_ENUM}")
    r = np.arange(2 ** n)[:, None]
    return ((r >> np.arange(n)[None, :]) & 1).astype(bool)


def _def_mask(A: FiniteAlgebra, S: np.ndarray) -> np.ndarray:
    """Rows that are nonempty, up-closed and closed under existing binary meets."""
    ok = S.any(axis=1)
    up = (S.astype(np.int64) @ A.leq.astype(np.int64)) > 0
    ok &= ~(up & ~S).any(axis=1)
    Mt = A.meet_table
    for i, j in itertools.combinations(range(A.size), 2):
        k = Mt[i, j]
        if k >= 0:
            ok &= ~(S[:, i] & S[:, j] & ~S[:, k])
    return ok


def _m_mask(A: FiniteAlgebra, S: np.ndarray) -> np.ndarray:
    """Rows that are nonempty and contain m(a, b, c) whenever they contain a and b."""
    ok = S.any(axis=1)
    T = A.m_table
    for a, b in itertools.product(range(A.size), repeat=2):
        both = S[:, a] & S[:, b]
        for v in np.unique(T[a, b, :]):
            ok &= ~(both & ~S[:, v])
    return ok


def _rows(A: FiniteAlgebra, subsets: Iterable[frozenset[int]]) -> np.ndarray:
    subsets = list(subsets)
    S = np.zeros((len(subsets), A.size), dtype=bool)
    for r, s in enumerate(subsets):
        S[r, list(s)] = True
    return S


def is_m_closed(A: FiniteAlgebra, S: Iterable) -> bool:
    return bool(_m_mask(A, _rows(A, [as_subset(A, S)]))[0])


def is_filter(A: FiniteAlgebra, S: Iterable) -> bool:
    """Filter test by definition, asserted equal to the m-closure criterion."""
    S = _rows(A, [as_subset(A, S)])
    by_def = bool(_def_mask(A, S)[0])
    if by_def != bool(_m_mask(A, S)[0]):
        raise InternalConsistencyError("filter definition and m-closure criterion disagree")
    return by_def


def all_filters(A: FiniteAlgebra) -> list[frozenset[int]]:
    S = all_subsets(A.size)
    ok = _def_mask(A, S)
    if not np.array_equal(ok, _m_mask(A, S)):
        raise InternalConsistencyError("filter definition and m-closure criterion disagree")
    return _sorted(frozenset(map(int, np.flatnonzero(row))) for row in S[ok])


def generated_filter(A: FiniteAlgebra, X: Iterable, check: bool = True) -> frozenset[int]:
    """Least filter containing X: all finite meets of elements of [X).

    Finite meets are reached by closing [X) under existing binary meets.  With
    ``check`` the result is compared to the intersection of all filters
    containing X (skipped when the algebra is too large to enumerate).
    """
    X = as_subset(A, X)
    if not X:
        raise PreconditionError("generated_filter needs a nonempty set")
    F = set(upset_of(A, X))
    Mt = A.meet_table
    grew = True
    while grew:
        grew = False
        for i, j in itertools.combinations(sorted(F), 2):
            k = int(Mt[i, j])
            if k >= 0 and k not in F:
                F.add(k)
                grew = True
    F = frozenset(F)
    if check and A.size <= MAX_SUBSET_ENUM:
        oracle = frozenset(range(A.size))
        for G in all_filters(A):
            if X <= G:
                oracle &= G
        if oracle != F:
            raise InternalConsistencyError(f"generated filter {sorted(F)} differs from oracle {sorted(oracle)}")
    return F


# Frink filters

def _masks(A: FiniteAlgebra):
    n = A.size
    lower = [sum(1 << i for i in range(n) if A.leq[i, j]) for j in range(n)]
    upper = [sum(1 << j for j in range(n) if A.leq[i, j]) for i in range(n)]
    return lower, upper


def _lu_mask(X, lower, upper, full):
    ell = full
    for x in X:
        ell &= lower[x]
    out = full
    for y in range(len(upper)):
        if ell >> y & 1:
            out &= upper[y]
    return out


def lower_bounds(A: FiniteAlgebra, X: Iterable) -> frozenset[int]:
    X = as_subset(A, X)
    return frozenset(i for i in range(A.size) if all(A.leq[i, x] for x in X))


def upper_bounds(A: FiniteAlgebra, X: Iterable) -> frozenset[int]:
    X = as_subset(A, X)
    return frozenset(j for j in range(A.size) if all(A.leq[x, j] for x in X))


def _frink_bits(A: FiniteAlgebra, max_x: int | None):
    """Bitmask pairs (X, X^lu) for all X with |X| <= max_x (None: every X)."""
    n = A.size
    lower, upper = _masks(A)
    full = (1 << n) - 1
    top = n if max_x is None else min(max_x, n)
    out = []
    for k in range(top + 1):
        for X in itertools.combinations(range(n), k):
            out.append((sum(1 << x for x in X), _lu_mask(X, lower, upper, full)))
    return out


def _is_frink_bits(s: int, pairs) -> bool:
    return all(lu & ~s == 0 for xs, lu in pairs if xs & ~s == 0)


def is_frink_filter(A: FiniteAlgebra, S: Iterable) -> bool:
    """X^lu within S for every X within S of size <= 3 (and X empty).

    On algebras of size <= 5 the verdict is asserted equal to the check over
    every finite X.
    """
    s = sum(1 << i for i in as_subset(A, S))
    verdict = _is_frink_bits(s, _frink_bits(A, 3))
    if A.size <= 5 and verdict != _is_frink_bits(s, _frink_bits(A, None)):
        raise InternalConsistencyError("bounded Frink check disagrees with the full check")
    return verdict


def all_frink_filters(A: FiniteAlgebra) -> list[frozenset[int]]:
    n = A.size
    if n > MAX_SUBSET_ENUM:
        raise GuardError(f"subset enumeration over {n} elements exceeds the guard {MAX_SUBSET_ENUM}")
    pairs = _frink_bits(A, 3)
    full_pairs = _frink_bits(A, None) if n <= 5 else None
    found = []
    for s in range(1 << n):
        ok = _is_frink_bits(s, pairs)
        if full_pairs is not None and ok != _is_frink_bits(s, full_pairs):
            raise InternalConsistencyError("bounded Frink check disagrees with the full check")
        if ok:
            found.append(frozenset(i for i in range(n) if s >> i & 1))
    family = set(found)
    if frozenset(range(n)) not in family:
        raise InternalConsistencyError("the universe is not a Frink filter")
    for F, G in itertools.combinations(found, 2):
        if F & G not in family:
            raise InternalConsistencyError("Frink filters are not closed under intersection")
    return _sorted(found)


def frink_closure(family: list[frozenset[int]], S: Iterable[int]) -> frozenset[int]:
    """Least member of a closure system containing S."""
    S = frozenset(S)
    out = None
    for F in family:
        if S <= F:
            out = F if out is None else out & F
    return out


def frink_lattice_is_distributive(A: FiniteAlgebra) -> bool:
    """Distributivity of the inclusion lattice of Frink filters, by exhaustive triples."""
    fam = all_frink_filters(A)
    join = {}
    for F, G in itertools.product(fam, repeat=2):
        join[F, G] = frink_closure(fam, F | G)
    for x, y, z in itertools.product(fam, repeat=3):
        if x & join[y, z] != join[x & y, x & z]:
            return False
    return True
