"""Distributive nearlattices (and box expansions) of small size, up to isomorphism.

Removing a minimal element from a finite distributive nearlattice leaves one,
so size n is reached from size n-1 by adjoining a new minimal element below a
nonempty upset.  A second, independent route filters raw operation tables by
the identities and is used as a cross-check at tiny sizes.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from pathlib import Path

import numpy as np

from .algebra import FiniteAlgebra, from_hasse, with_top
from .errors import GuardError, HasseError, PreconditionError
from .modal import box_tables, check_modal

__all__ = [
    "MAX_ENUM_SIZE", "MAX_RAW_SIZE", "canonical_form", "canonical_key", "enumerate_dn",
    "catalog_up_to", "raw_table_models", "enumerate_raw", "enumerate_modal", "write_catalog",
]

MAX_ENUM_SIZE = 7
MAX_RAW_SIZE = 4


def _invariants(A: FiniteAlgebra) -> list[tuple]:
    leq = A.leq
    lt = leq & ~np.eye(A.size, dtype=bool)
    covers = lt & ~((lt.astype(np.int64) @ lt.astype(np.int64)) > 0)
    out = []
    for i in range(A.size):
        out.append((int(leq[:, i].sum()), -int(leq[i].sum()), int(covers[:, i].sum()),
                    int(covers[i].sum()), int((A.m_table[i] == i).sum())))
    return out


def _relabel(A: FiniteAlgebra, q: np.ndarray):
    """Table, constants and box after moving old element q[r] to position r."""
    p = np.empty_like(q)
    p[q] = np.arange(len(q))
    T = p[A.m_table[np.ix_(q, q, q)]]
    consts = {k: int(p[v]) for k, v in A.constants.items()}
    box = None if A.box is None else p[A.box[q]]
    return T, consts, box


def _key(T, consts, box) -> bytes:
    key = T.astype(np.uint8).tobytes()
    key += b"|" + bytes(v for _, v in sorted(consts.items()))
    if box is not None:
        key += b"|" + box.astype(np.uint8).tobytes()
    return key


def _best_perm(A: FiniteAlgebra):
    inv = _invariants(A)
    order = sorted(range(A.size), key=lambda i: (inv[i], i))
    classes = [list(g) for _, g in itertools.groupby(order, key=lambda i: inv[i])]
    best = None
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        q = np.array([i for part in parts for i in part], dtype=np.int64)
        k = _key(*_relabel(A, q))
        if best is None or k < best[0]:
            best = (k, q)
    return best


def canonical_key(A: FiniteAlgebra) -> bytes:
    """Equal for two algebras iff they are isomorphic (constants and box included)."""
    return _best_perm(A)[0]


def canonical_form(A: FiniteAlgebra) -> FiniteAlgebra:
    """Relabeling with the least table among invariant-respecting permutations."""
    _, q = _best_perm(A)
    T, consts, box = _relabel(A, q)
    names = [A.names[i] for i in q]
    return FiniteAlgebra(T, names, consts, None if box is None else list(box), A.label)


def _upsets(A: FiniteAlgebra):
    """Nonempty up-closed subsets, as boolean masks."""
    n = A.size
    leq = A.leq
    for r in range(1, 2 ** n):
        S = np.array([(r >> i) & 1 for i in range(n)], dtype=bool)
        if not (leq[S].any(axis=0) & ~S).any():
            yield S


def _covers(leq: np.ndarray) -> list[tuple[int, int]]:
    lt = leq & ~np.eye(len(leq), dtype=bool)
    between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
    return [(int(i), int(j)) for i, j in np.argwhere(lt & ~between)]


def _relabel_plain(A: FiniteAlgebra, label: str) -> FiniteAlgebra:
    n = A.size
    return FiniteAlgebra(A.m_table, [str(i) for i in range(n)], label=label)


@lru_cache(maxsize=None)
def enumerate_dn(size: int) -> tuple[FiniteAlgebra, ...]:
    """One canonical representative per isomorphism class, sorted by canonical key."""
    if not 1 <= size <= MAX_ENUM_SIZE:
        raise GuardError(f"size must be between 1 and {MAX_ENUM_SIZE}, got {size}")
    if size == 1:
        return (_relabel_plain(FiniteAlgebra(np.zeros((1, 1, 1), dtype=np.int64)), "dn1_0"),)
    found: dict[bytes, FiniteAlgebra] = {}
    for P in enumerate_dn(size - 1):
        n = P.size
        old = _covers(P.leq)
        for U in _upsets(P):
            minimal = [j for j in np.flatnonzero(U) if not (P.leq[:, j] & U).sum() > 1]
            covers = old + [(n, int(j)) for j in minimal]
            try:
                A = from_hasse([str(i) for i in range(n + 1)], covers)
            except HasseError:
                continue
            if not A.is_dn:
                continue
            A = canonical_form(A)
            found.setdefault(canonical_key(A), A)
    return tuple(_relabel_plain(found[k], f"dn{size}_{i}") for i, k in enumerate(sorted(found)))


def catalog_up_to(size: int, tops: bool = False) -> list[FiniteAlgebra]:
    out = [A for s in range(1, size + 1) for A in enumerate_dn(s)]
    return [with_top(A) for A in out] if tops else out


# raw tables

def raw_table_models(n: int) -> list[np.ndarray]:
    """Every n x n x n table satisfying (P1)-(P4), found by cell-wise backtracking.

    Cells are filled in a fixed order; after each assignment all ground
    instances of the identities whose both sides are already determined are
    compared.  Unknown cells use the extra value n, which propagates.
    """
    if not 1 <= n <= MAX_RAW_SIZE:
        raise GuardError(f"raw table search is limited to sizes 1..{MAX_RAW_SIZE}")
    U = n
    T = np.full((n + 1,) * 3, U, dtype=np.int64)
    for x, y in itertools.product(range(n), repeat=2):
        T[x, y, x] = x
    i = np.arange(n)
    x, y, z, u, w = (g.ravel() for g in np.meshgrid(i, i, i, i, i, indexing="ij"))
    x4, y4, z4, w4 = (g.ravel() for g in np.meshgrid(i, i, i, i, indexing="ij"))

    def clash(lhs, rhs):
        return ((lhs != rhs) & (lhs < U) & (rhs < U)).any()

    def consistent():
        if clash(T[T[x, y, z], T[y, T[u, x, z], z], w], T[w, w, T[y, T[x, u, z], z]]):
            return False
        a = T[x4, y4, w4]
        if clash(T[x4, T[y4, y4, z4], w4], T[a, a, T[x4, z4, w4]]):
            return False
        return not clash(T[x4, x4, T[y4, z4, w4]], T[T[x4, x4, y4], T[x4, x4, z4], w4])

    # join cells first, so the order-shaped instances prune early
    cells = [(a, a, b) for a in range(n) for b in range(n) if a != b]
    cells += [c for c in itertools.product(range(n), repeat=3) if c[0] != c[2] and c[0] != c[1]]
    out = []

    def fill(k):
        if k == len(cells):
            out.append(T[:n, :n, :n].copy())
            return
        c = cells[k]
        for v in range(n):
            T[c] = v
            if consistent():
                fill(k + 1)
        T[c] = U

    fill(0)
    return out


def enumerate_raw(n: int) -> list[FiniteAlgebra]:
    found = {}
    for table in raw_table_models(n):
        A = canonical_form(FiniteAlgebra(table))
        found.setdefault(canonical_key(A), A)
    return [_relabel_plain(found[k], f"raw{n}_{i}") for i, k in enumerate(sorted(found))]


# box expansions

def enumerate_modal(base, size: int | None = None) -> list[FiniteAlgebra]:
    """All box expansions passing check_modal, one per isomorphism class.

    ``base`` is a list of algebras; with ``size`` only members of that size are used.
    """
    out = []
    for A in base:
        if size is not None and A.size != size:
            continue
        if A.top is None:
            raise PreconditionError(f"{A.label or A!r} has no greatest element")
        A = with_top(A)
        seen = set()
        for box in box_tables(A):
            B = A.replace(box=list(box))
            if not check_modal(B):
                continue
            k = canonical_key(B)
            if k not in seen:
                seen.add(k)
                out.append(B)
    return out


def write_catalog(algebras, out_dir: str | Path, style: str = "hasse") -> dict[int, int]:
    """Write e0.alg, e1.alg, ... and index.txt with one ``size N count K`` line per size."""
    from .io import dump_algebra

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if any(out.glob("*.alg")):
        # stale members would silently join the catalog when it is read back
        raise FileExistsError(f"{out} already contains .alg files")
    counts: dict[int, int] = {}
    for i, A in enumerate(algebras):
        (out / f"e{i}.alg").write_text(dump_algebra(A, style=style, comment=A.label or None))
        counts[A.size] = counts.get(A.size, 0) + 1
    lines = [f"size {s} count {c}" for s, c in sorted(counts.items())]
    (out / "index.txt").write_text("\n".join(lines) + "\n")
    return counts
