"""Box operators on distributive nearlattices with a greatest element."""
from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .algebra import CheckResult, FiniteAlgebra, with_top
from .errors import PreconditionError

__all__ = ["modal_algebra", "check_modal", "check_identity_M", "is_monotone", "box_tables"]


def modal_algebra(A: FiniteAlgebra, box: Sequence) -> FiniteAlgebra:
    """Copy of A with ``top`` declared and the given box table."""
    return with_top(A).replace(box=list(box))


def _top_and_box(A: FiniteAlgebra) -> tuple[int, np.ndarray]:
    if "top" not in A.constants:
        raise PreconditionError("modal algebras need a declared top")
    if A.box is None:
        raise PreconditionError("the algebra has no box table")
    return A.constants["top"], A.box


def check_modal(A: FiniteAlgebra) -> CheckResult:
    """box 1 = 1, and box(a meet b) = box a meet box b for every existing meet."""
    top, box = _top_and_box(A)
    if box[top] != top:
        return CheckResult(False, "box 1 = 1", (top,))
    Mt = A.meet_table
    for a, b in itertools.product(range(A.size), repeat=2):
        k = Mt[a, b]
        if k < 0:
            continue
        if Mt[box[a], box[b]] != box[k]:
            return CheckResult(False, "box preserves meets", (a, b))
    return CheckResult(True)


def check_identity_M(A: FiniteAlgebra) -> CheckResult:
    """box m(x,y,z) = m(box(x v z), box(y v z), box z) over all triples."""
    top, box = _top_and_box(A)
    if box[top] != top:
        raise PreconditionError("identity (M) is only meaningful when box 1 = 1")
    T = A.m_table
    J = A.join_table
    i = np.arange(A.size)
    x, y, z = np.ix_(i, i, i)
    lhs = box[T[x, y, z]]
    rhs = T[box[J[x, z]], box[J[y, z]], box[z]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return CheckResult(False, "M", tuple(int(v) for v in bad[0]))
    return CheckResult(True)


def is_monotone(A: FiniteAlgebra) -> bool:
    box = A.box
    leq = A.leq
    return bool((~leq | leq[np.ix_(box, box)]).all())


def box_tables(A: FiniteAlgebra):
    """Every unary table fixing the greatest element, in lexicographic order."""
    top = A.top
    if top is None:
        raise PreconditionError("the algebra has no greatest element")
    n = A.size
    for rest in itertools.product(range(n), repeat=n - 1):
        rest = list(rest)
        yield tuple(rest[:top] + [top] + rest[top:])
