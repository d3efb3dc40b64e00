"""Finite ternary algebras and the nearlattice identities.

Elements are indices ``0..n-1``; names are for presentation only.  The order
is always the one derived from the table, ``i <= j`` iff ``m(i, i, j) == j``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import HasseError, InternalConsistencyError, PreconditionError
from .formulas import Box, Const, M, Term, Var, variables_of

__all__ = [
    "FiniteAlgebra", "AlgebraClass", "CheckResult", "eval_term", "Evaluator",
    "valuations", "check_nearlattice", "check_distributive", "order_characterization",
    "upset_is_distributive", "from_hasse", "mn_eval", "mn_meet_form",
    "find_homomorphisms", "is_homomorphism", "with_top", "chain",
]


class FiniteAlgebra:
    """A total ternary table plus optional constants and a unary ``box``."""

    def __init__(self, m_table, names: Sequence[str] | None = None,
                 constants: Mapping[str, int | str] | None = None,
                 box: Sequence[int] | None = None, label: str = ""):
        table = np.array(m_table, dtype=np.int64)
        if table.ndim != 3 or len(set(table.shape)) != 1 or table.shape[0] == 0:
            raise ValueError(f"m_table must have shape (n, n, n), got {table.shape}")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise ValueError("m_table has entries outside 0..n-1")
        table.setflags(write=False)
        self.m_table = table
        self.size = n
        self.names = tuple(str(s) for s in names) if names is not None else tuple(str(i) for i in range(n))
        if len(self.names) != n or len(set(self.names)) != n:
            raise ValueError("element names must be n unique strings")
        self.label = label
        self.constants = {k: self.index(v) for k, v in (constants or {}).items()}
        if box is not None:
            box_arr = np.array([self.index(b) for b in box], dtype=np.int64)
            if box_arr.shape != (n,):
                raise ValueError("box table must have one entry per element")
            box_arr.setflags(write=False)
            self.box = box_arr
        else:
            self.box = None

    def index(self, element: int | str) -> int:
        if isinstance(element, (int, np.integer)):
            if not 0 <= element < self.size:
                raise ValueError(f"element index {element} out of range")
            return int(element)
        if element in self.names:
            return self.names.index(element)
        if isinstance(element, str) and element.isdigit() and int(element) < self.size:
            return int(element)
        raise ValueError(f"unknown element {element!r}")

    def m(self, i: int, j: int, k: int) -> int:
        return int(self.m_table[i, j, k])

    def replace(self, **changes) -> "FiniteAlgebra":
        kw = dict(m_table=self.m_table, names=self.names, constants=dict(self.constants),
                  box=None if self.box is None else list(self.box), label=self.label)
        kw.update(changes)
        return FiniteAlgebra(**kw)

    def __repr__(self):
        tag = f" {self.label!r}" if self.label else ""
        return f"<FiniteAlgebra{tag} size={self.size} constants={sorted(self.constants)}>"

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (self.size == other.size and np.array_equal(self.m_table, other.m_table)
                and self.constants == other.constants
                and _box_key(self) == _box_key(other))

    def __hash__(self):
        return hash((self.m_table.tobytes(), tuple(sorted(self.constants.items())), _box_key(self)))

    # derived structure

    @cached_property
    def join_table(self) -> np.ndarray:
        n = self.size
        idx = np.arange(n)
        return self.m_table[idx[:, None], idx[:, None], idx[None, :]]

    @cached_property
    def leq(self) -> np.ndarray:
        """leq[i, j] iff m(i, i, j) == j."""
        return self.join_table == np.arange(self.size)[None, :]

    @cached_property
    def meet_table(self) -> np.ndarray:
        """Order-theoretic greatest lower bounds; -1 where no meet exists."""
        return _bounds_table(self.leq, lower=True)

    @cached_property
    def top(self) -> int | None:
        col = np.flatnonzero(self.leq.all(axis=0))
        return int(col[0]) if len(col) == 1 else None

    def upset(self, a: int) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.leq[a])]

    def meet(self, x: int, y: int) -> int | None:
        v = int(self.meet_table[x, y])
        return None if v < 0 else v

    @cached_property
    def is_dn(self) -> bool:
        return bool(check_nearlattice(self)) and bool(check_distributive(self))


def _box_key(A: FiniteAlgebra):
    return None if A.box is None else tuple(int(v) for v in A.box)


def _bounds_table(leq: np.ndarray, lower: bool) -> np.ndarray:
    """Greatest common lower bound (or least common upper bound) per pair, -1 if none."""
    n = leq.shape[0]
    rel = leq if lower else leq.T
    out = np.full((n, n), -1, dtype=np.int64)
    for x in range(n):
        for y in range(x, n):
            common = np.flatnonzero(rel[:, x] & rel[:, y])
            if len(common) == 0:
                continue
            # the bound must dominate every other common bound
            best = [c for c in common if rel[common, c].all()]
            if len(best) == 1:
                out[x, y] = out[y, x] = best[0]
    return out


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    identity: str | None = None
    witness: tuple | None = None
    upset_witness: int | None = None

    def __bool__(self):
        return self.ok

    def describe(self, A: FiniteAlgebra | None = None) -> str:
        if self.ok:
            return "pass"
        wit = self.witness
        if A is not None and wit is not None:
            wit = tuple(A.names[i] for i in wit)
        msg = f"fail ({self.identity} at {wit})"
        if self.upset_witness is not None:
            name = A.names[self.upset_witness] if A is not None else self.upset_witness
            msg += f"; upset of {name} is not a distributive lattice"
        return msg


class AlgebraClass:
    """A finite, individually validated list of distributive nearlattices."""

    def __init__(self, members: Iterable[FiniteAlgebra]):
        self.members = tuple(members)
        if not self.members:
            raise PreconditionError("an algebra class must be nonempty")
        for i, A in enumerate(self.members):
            if not A.is_dn:
                raise PreconditionError(f"class member {i} ({A.label or A!r}) is not a distributive nearlattice")

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def __contains__(self, A):
        return any(A is B or A == B for B in self.members)


# evaluation

def eval_term(A: FiniteAlgebra, t: Term, asg: Mapping[Var, int]) -> int:
    if isinstance(t, Var):
        if t not in asg:
            raise KeyError(f"variable {t} is not assigned")
        return asg[t]
    if isinstance(t, Const):
        if t.name not in A.constants:
            raise KeyError(f"constant {t.name!r} is not declared in the algebra")
        return A.constants[t.name]
    if isinstance(t, Box):
        if A.box is None:
            raise KeyError("the algebra has no box operation")
        return int(A.box[eval_term(A, t.a, asg)])
    return int(A.m_table[eval_term(A, t.a, asg), eval_term(A, t.b, asg), eval_term(A, t.c, asg)])


def valuations(n: int, k: int) -> np.ndarray:
    """All k-tuples over range(n) in lexicographic (mixed radix) order, shape (n**k, k)."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((n,) * k, dtype=np.int64).reshape(k, -1).T


class Evaluator:
    """Evaluates terms under every valuation of a fixed variable list at once."""

    def __init__(self, A: FiniteAlgebra, variables: Sequence[Var]):
        self.A = A
        self.variables = list(variables)
        self.rows = valuations(A.size, len(self.variables))
        self.count = len(self.rows)
        self._cache: dict[Term, np.ndarray] = {}
        self._pos = {v: i for i, v in enumerate(self.variables)}

    def __call__(self, t: Term) -> np.ndarray:
        hit = self._cache.get(t)
        if hit is not None:
            return hit
        if isinstance(t, Var):
            if t not in self._pos:
                raise KeyError(f"variable {t} is not assigned")
            out = self.rows[:, self._pos[t]]
        elif isinstance(t, Const):
            if t.name not in self.A.constants:
                raise KeyError(f"constant {t.name!r} is not declared in the algebra")
            out = np.full(self.count, self.A.constants[t.name], dtype=np.int64)
        elif isinstance(t, Box):
            if self.A.box is None:
                raise KeyError("the algebra has no box operation")
            out = self.A.box[self(t.a)]
        else:
            out = self.A.m_table[self(t.a), self(t.b), self(t.c)]
        self._cache[t] = out
        return out

    def assignment(self, row: int) -> dict[Var, int]:
        return {v: int(x) for v, x in zip(self.variables, self.rows[row])}


# identity checks

def _first(mask: np.ndarray):
    bad = np.argwhere(mask)
    return None if len(bad) == 0 else tuple(int(v) for v in bad[0])


def check_nearlattice(A: FiniteAlgebra) -> CheckResult:
    """(P1) m(x,y,x)=x over n^2 pairs, then (P2) over n^5 tuples (x,y,z,u,w)."""
    T = A.m_table
    n = A.size
    i = np.arange(n)
    x, y = np.ix_(i, i)
    wit = _first(T[x, y, x] != x)
    if wit is not None:
        return CheckResult(False, "P1", wit)
    x, y, z, u, w = np.ix_(i, i, i, i, i)
    lhs = T[T[x, y, z], T[y, T[u, x, z], z], w]
    rhs = T[w, w, T[y, T[x, u, z], z]]
    wit = _first(lhs != rhs)
    if wit is not None:
        return CheckResult(False, "P2", wit)
    return CheckResult(True)


def upset_is_distributive(A: FiniteAlgebra, a: int) -> bool:
    """Lattice distributivity of [a) with order-theoretic meets and joins."""
    up = A.upset(a)
    J = A.join_table
    Mt = A.meet_table
    for x, y, z in itertools.product(up, repeat=3):
        if Mt[x, y] < 0 or Mt[x, z] < 0 or Mt[x, J[y, z]] < 0:
            return False
        if Mt[x, J[y, z]] != J[Mt[x, y], Mt[x, z]]:
            return False
    return True


def check_distributive(A: FiniteAlgebra) -> CheckResult:
    """(P3) and (P4) over n^4 tuples (x,y,z,w), cross-checked against upset distributivity."""
    if not check_nearlattice(A):
        raise PreconditionError("check_distributive requires a nearlattice")
    T = A.m_table
    i = np.arange(A.size)
    x, y, z, w = np.ix_(i, i, i, i)
    p3 = T[x, T[y, y, z], w] != T[T[x, y, w], T[x, y, w], T[x, z, w]]
    p4 = T[x, x, T[y, z, w]] != T[T[x, x, y], T[x, x, z], w]
    w3, w4 = _first(p3), _first(p4)
    bad_upsets = [a for a in range(A.size) if not upset_is_distributive(A, a)]
    verdicts = {w3 is None, w4 is None, not bad_upsets}
    if len(verdicts) != 1:
        raise InternalConsistencyError(
            f"P3 ok={w3 is None}, P4 ok={w4 is None}, upsets ok={not bad_upsets} disagree")
    if w3 is None:
        return CheckResult(True)
    return CheckResult(False, "P3", w3, bad_upsets[0])


def order_characterization(A: FiniteAlgebra) -> tuple[bool, bool]:
    """(nearlattice, distributive) decided through the derived order alone.

    The table must induce a partial order in which every pair has a least upper
    bound equal to m(i,i,j), every principal upset is a lattice, and
    m(x,y,a) = (x v a) meet_a (y v a).  Distributivity then means every upset is
    a distributive lattice.
    """
    leq = A.leq
    n = A.size
    if not leq.diagonal().all():
        return False, False
    if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
        return False, False
    if (leq.astype(np.int64) @ leq.astype(np.int64) > 0)[~leq].any():
        return False, False
    lub = _bounds_table(leq, lower=False)
    if (lub < 0).any() or not np.array_equal(lub, A.join_table):
        return False, False
    Mt = A.meet_table
    for a in range(n):
        up = A.upset(a)
        for x, y in itertools.product(up, repeat=2):
            if Mt[x, y] < 0 or not leq[a, Mt[x, y]]:
                return False, False
    J = A.join_table
    for x, y, a in itertools.product(range(n), repeat=3):
        if A.m_table[x, y, a] != Mt[J[x, a], J[y, a]]:
            return False, False
    return True, all(upset_is_distributive(A, a) for a in range(n))


# constructors

def from_hasse(names: Sequence[str], covers: Iterable[tuple[int | str, int | str]],
               constants: Mapping[str, int | str] | None = None,
               box: Sequence[int | str] | None = None, label: str = "") -> FiniteAlgebra:
    """Build the nearlattice of a finite order given by covering pairs (lower, upper).

    The table is synthesized as m(x, y, a) = (x v a) meet_a (y v a).
    """
    names = [str(s) for s in names]
    n = len(names)
    if n == 0:
        raise HasseError("an algebra needs at least one element")

    def idx(e):
        if isinstance(e, (int, np.integer)):
            return int(e)
        if e in names:
            return names.index(e)
        raise HasseError(f"unknown element {e!r}")

    leq = np.eye(n, dtype=bool)
    for lo, hi in covers:
        lo, hi = idx(lo), idx(hi)
        if lo == hi:
            raise HasseError(f"cycle detected: {names[lo]} < {names[lo]}")
        leq[lo, hi] = True
    for k in range(n):
        leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
    cyc = np.argwhere(leq & leq.T & ~np.eye(n, dtype=bool))
    if len(cyc):
        a, b = cyc[0]
        raise HasseError(f"cycle detected through {names[a]} and {names[b]}")
    join = np.full((n, n), -1, dtype=np.int64)
    for x in range(n):
        for y in range(x, n):
            ub = np.flatnonzero(leq[x] & leq[y])
            if len(ub) == 0:
                raise HasseError(f"no join: {names[x]} and {names[y]} have no common upper bound")
            minimal = [u for u in ub if not any(leq[v, u] and v != u for v in ub)]
            if len(minimal) != 1:
                shown = ", ".join(names[u] for u in minimal)
                raise HasseError(f"no join: {names[x]} and {names[y]} have incomparable minimal upper bounds {shown}")
            join[x, y] = join[y, x] = minimal[0]
    meet = _bounds_table(leq, lower=True)
    for a in range(n):
        up = np.flatnonzero(leq[a])
        for x, y in itertools.combinations(up, 2):
            if meet[x, y] < 0:
                raise HasseError(f"upset of {names[a]} is not a lattice: {names[x]} and {names[y]} have no meet")
    table = np.empty((n, n, n), dtype=np.int64)
    for x, y, a in itertools.product(range(n), repeat=3):
        table[x, y, a] = meet[join[x, a], join[y, a]]
    return FiniteAlgebra(table, names, constants, box, label)


def chain(n: int, label: str = "") -> FiniteAlgebra:
    return from_hasse([str(i) for i in range(n)], [(i, i + 1) for i in range(n - 1)],
                      label=label or f"chain{n}")


def with_top(A: FiniteAlgebra) -> FiniteAlgebra:
    """Copy of A declaring the constant ``top`` as its greatest element."""
    if A.top is None:
        raise PreconditionError("the algebra has no greatest element")
    if A.constants.get("top") == A.top:
        return A
    return A.replace(constants={**A.constants, "top": A.top})


# iterated operation

def mn_meet_form(A: FiniteAlgebra, args: Sequence[int], b: int) -> int:
    """(a0 v b) meet (a1 v b) meet ... meet (an v b), meets taken in [b)."""
    J = A.join_table
    acc = int(J[args[0], b])
    for a in args[1:]:
        acc = A.meet(acc, int(J[a, b]))
        if acc is None:
            raise PreconditionError("meet does not exist; not a nearlattice")
    return acc


def mn_eval(A: FiniteAlgebra, args: Sequence[int], b: int) -> int:
    """m^n(args..., b) by the defining recursion, cross-checked against the meet form."""
    if not args:
        raise ValueError("mn_eval needs at least one argument")
    if not A.is_dn:
        raise PreconditionError("mn_eval requires a distributive nearlattice")
    T = A.m_table
    acc = int(T[args[0], args[0], b])
    for a in args[1:]:
        acc = int(T[acc, a, b])
    if acc != mn_meet_form(A, args, b):
        raise InternalConsistencyError(f"m^n recursion and meet form disagree at {tuple(args)}, {b}")
    return acc


# homomorphisms

def is_homomorphism(A: FiniteAlgebra, B: FiniteAlgebra, h: Sequence[int],
                    constants: bool = True, box: bool = True) -> bool:
    h = np.asarray(h, dtype=np.int64)
    if not np.array_equal(h[A.m_table], B.m_table[np.ix_(h, h, h)]):
        return False
    if constants:
        for name, v in A.constants.items():
            if B.constants.get(name) != h[v]:
                return False
    if box and A.box is not None and B.box is not None:
        if not np.array_equal(h[A.box], B.box[h]):
            return False
    return True


def find_homomorphisms(A: FiniteAlgebra, B: FiniteAlgebra, constants: bool = True,
                       box: bool = True) -> list[tuple[int, ...]]:
    """Every map A -> B preserving m (and declared constants / box), by backtracking."""
    n = A.size
    T, S = A.m_table, B.m_table
    fixed: dict[int, int] = {}
    if constants:
        for name, v in A.constants.items():
            if name not in B.constants:
                return []
            target = B.constants[name]
            if fixed.get(v, target) != target:
                return []
            fixed[v] = target
    use_box = box and A.box is not None and B.box is not None
    # constraints become checkable exactly when their largest index is assigned
    trip = np.array(list(itertools.product(range(n), repeat=3)), dtype=np.int64).reshape(-1, 3)
    vals = T[trip[:, 0], trip[:, 1], trip[:, 2]]
    last = np.maximum(trip.max(axis=1), vals)
    due = [(trip[last == k], vals[last == k]) for k in range(n)]
    if use_box:
        src = np.arange(n)
        blast = np.maximum(src, A.box)
        box_due = [(src[blast == k], A.box[blast == k]) for k in range(n)]
    h = np.full(n, -1, dtype=np.int64)
    out = []

    def consistent(k: int) -> bool:
        args, v = due[k]
        if not np.array_equal(h[v], S[h[args[:, 0]], h[args[:, 1]], h[args[:, 2]]]):
            return False
        if use_box:
            i, v = box_due[k]
            if not np.array_equal(h[v], B.box[h[i]]):
                return False
        return True

    def extend(k: int):
        if k == n:
            out.append(tuple(int(x) for x in h))
            return
        choices = [fixed[k]] if k in fixed else range(B.size)
        for c in choices:
            h[k] = c
            if consistent(k):
                extend(k + 1)
        h[k] = -1

    extend(0)
    return out
