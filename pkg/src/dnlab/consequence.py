"""Semantic consequence over a finite list of algebras, in three modes.

plain
    every valuation gives m^n(h p0, ..., h pn, h c) <= h c; with no premises,
    h c is above everything.
degrees
    every common lower bound of the premise values lies below h c.
truth
    whenever all premises evaluate to ``top`` so does the conclusion.

Valuations run over the query's variables sorted by index, in mixed-radix
order with the first variable most significant.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algebra import Evaluator, FiniteAlgebra
from .congruences import leibniz_congruence
from .errors import GuardError, InternalConsistencyError, PreconditionError
from .filters import all_filters
from .formulas import M, Term, Var, build_mn, format_term, formulas_up_to, join, variables_of

__all__ = [
    "MODES", "ConsequenceQuery", "Verdict", "consequence", "equivalent_in_class",
    "AuditReport", "audit_dn_term", "dn_term_claims", "sfilters", "leibniz_hypothesis",
]

MODES = ("plain", "degrees", "truth")


@dataclass(frozen=True)
class Verdict:
    holds: bool
    mode: str = "plain"
    algebra_index: int | None = None
    algebra: FiniteAlgebra | None = None
    valuation: dict | None = None
    lower_bound: int | None = None

    def __bool__(self):
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return "holds"
        A = self.algebra
        where = A.label or f"algebra #{self.algebra_index}"
        vals = ", ".join(f"{v}={A.names[i]}" for v, i in sorted(self.valuation.items(), key=lambda kv: kv[0].index))
        msg = f"fails in {where}" + (f" at {vals}" if vals else "")
        if self.lower_bound is not None:
            msg += f"; lower bound {A.names[self.lower_bound]} of the premises is not below the conclusion"
        return msg


@dataclass(frozen=True)
class ConsequenceQuery:
    premises: tuple
    conclusion: Term
    mode: str
    algebras: Sequence[FiniteAlgebra] = field(repr=False)

    def run(self) -> Verdict:
        return consequence(self.premises, self.conclusion, self.algebras, self.mode)


def _query_vars(premises: Sequence[Term], conclusion: Term) -> list[Var]:
    return sorted(variables_of(list(premises) + [conclusion]), key=lambda v: v.index)


def _failing_rows(A: FiniteAlgebra, ev: Evaluator, premises, conclusion, mode):
    """Boolean mask of failing valuations, and for degrees mode the first bad lower bound per row."""
    c = ev(conclusion)
    ps = [ev(p) for p in premises]
    leq = A.leq
    if mode == "truth":
        top = A.constants["top"]
        bad = c != top
        for p in ps:
            bad &= p == top
        return bad, None
    if not ps:
        return ~leq[:, c].all(axis=0), None
    if mode == "plain":
        T = A.m_table
        acc = T[ps[0], ps[0], c]
        for p in ps[1:]:
            acc = T[acc, p, c]
        below = leq[acc, c]
        if not np.array_equal(below, acc == c):
            raise InternalConsistencyError("m^n below the conclusion but not equal to it")
        return ~below, None
    lower = np.ones((A.size, ev.count), dtype=bool)
    for p in ps:
        lower &= leq[:, p]
    sep = lower & ~leq[:, c]
    return sep.any(axis=0), sep


def _run(items, premises, conclusion, mode) -> Verdict:
    for pos, (A, ev) in enumerate(items):
        bad, sep = _failing_rows(A, ev, premises, conclusion, mode)
        rows = np.flatnonzero(bad)
        if len(rows):
            r = int(rows[0])
            a = int(np.flatnonzero(sep[:, r])[0]) if sep is not None else None
            return Verdict(False, mode, pos, A, ev.assignment(r), a)
    return Verdict(True, mode)


def _check_mode(algebras, mode):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == "truth":
        for A in algebras:
            if "top" not in A.constants:
                raise PreconditionError(f"truth mode needs a declared top in {A.label or A!r}")


def consequence(premises: Sequence[Term], conclusion: Term, algebras: Iterable[FiniteAlgebra],
                mode: str = "plain") -> Verdict:
    """Decide premises |- conclusion over every member and valuation.

    On failure the witness is the first member, then the first valuation.
    """
    algebras = list(algebras)
    if not algebras:
        raise PreconditionError("the algebra class is empty")
    _check_mode(algebras, mode)
    premises = tuple(premises)
    vs = _query_vars(premises, conclusion)
    return _run(((A, Evaluator(A, vs)) for A in algebras), premises, conclusion, mode)


def equivalent_in_class(s: Term, t: Term, algebras: Iterable[FiniteAlgebra]) -> Verdict:
    """s = t under every valuation; cross-checked against plain consequence both ways."""
    algebras = list(algebras)
    vs = _query_vars([s], t)
    verdict = Verdict(True)
    for pos, A in enumerate(algebras):
        ev = Evaluator(A, vs)
        rows = np.flatnonzero(ev(s) != ev(t))
        if len(rows):
            verdict = Verdict(False, "equation", pos, A, ev.assignment(int(rows[0])))
            break
    both = bool(consequence([s], t, algebras)) and bool(consequence([t], s, algebras))
    if both != verdict.holds:
        raise InternalConsistencyError("equation check and mutual consequence disagree")
    return verdict


# audit of the DN-term properties

@dataclass
class AuditReport:
    instances: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


class _Shared:
    """Evaluators over a fixed variable list, shared by many queries."""

    def __init__(self, algebras, variables):
        self.items = [(A, Evaluator(A, variables)) for A in algebras]

    def holds(self, premises, conclusion, mode="plain") -> bool:
        return _run(self.items, tuple(premises), conclusion, mode).holds

    def equal(self, s, t) -> bool:
        return all(np.array_equal(ev(s), ev(t)) for _, ev in self.items)


MAX_AUDIT_FORMULAS = 40


def _pool(depth_bound, var_bound):
    if not (0 <= depth_bound <= 3 and 1 <= var_bound <= 3):
        raise GuardError("audit bounds are limited to depth <= 3 and vars <= 3")
    pool = formulas_up_to(depth_bound, var_bound)
    if len(pool) > MAX_AUDIT_FORMULAS:
        raise GuardError(f"{len(pool)} formulas within the bounds; the audit allows {MAX_AUDIT_FORMULAS}")
    return pool


def dn_term_claims(depth_bound: int = 1, var_bound: int = 2, max_premises: int = 2):
    """Unconditional consequence claims (schema, premises, conclusion) implied by a DN-term."""
    pool = _pool(depth_bound, var_bound)
    for f, g, h in itertools.product(pool, repeat=3):
        yield "A2", (M(f, g, h),), join(f, h)
        yield "A2", (M(f, g, h),), join(g, h)
        yield "A3", (join(f, h), join(g, h)), M(f, g, h)
    for k in range(1, max_premises + 1):
        for args in itertools.product(pool, repeat=k):
            for psi in pool:
                mn = build_mn(args, psi)
                for a in args:
                    yield "mn-upper", (mn,), join(a, psi)
                yield "mn-lower", tuple(join(a, psi) for a in args), mn
                yield "mn-above-base", (psi,), mn


def audit_dn_term(algebras: Iterable[FiniteAlgebra], depth_bound: int = 1, var_bound: int = 2,
                  max_premises: int = 2) -> AuditReport:
    """Instantiate the DN-term schemas A1-A4, the m^n bounds, and P3/P4 over the bounds.

    Every instance is evaluated in plain mode; the report lists the failures.
    """
    algebras = list(algebras)
    pool = _pool(depth_bound, var_bound)
    sem = _Shared(algebras, [Var(i) for i in range(max(var_bound, 4))])
    rep = AuditReport()

    def note(ok, schema, premises, conclusion, extra=""):
        rep.instances += 1
        if not ok:
            text = ", ".join(format_term(p) for p in premises) + " |- " + format_term(conclusion)
            rep.violations.append((schema, text + extra))

    for claim in dn_term_claims(depth_bound, var_bound, max_premises):
        note(sem.holds(claim[1], claim[2]), *claim)
    for f, g, h in itertools.product(pool, repeat=3):
        lhs = sem.holds([join(f, g)], h)
        rhs = sem.holds([f], h) and sem.holds([g], h)
        note(lhs == rhs, "A1", [join(f, g)], h, " iff both disjuncts entail it")
    for k in range(1, max_premises + 1):
        for args in itertools.product(pool, repeat=k):
            for phi in pool:
                direct = sem.holds(args, phi)
                single = sem.holds([build_mn(args, phi)], phi)
                note(not direct or single, "A4", [build_mn(args, phi)], phi)
                note(not single or direct, "mn-reflect", args, phi)
    x, y, z, w = (Var(i) for i in range(4))
    p3 = (M(x, join(y, z), w), join(M(x, y, w), M(x, z, w)))
    p4 = (join(x, M(y, z, w)), M(join(x, y), join(x, z), w))
    for name, (s, t) in (("P3", p3), ("P4", p4)):
        rep.instances += 1
        if not sem.equal(s, t):
            rep.violations.append((name, f"{format_term(s)} = {format_term(t)}"))
    return rep


def sfilters(A: FiniteAlgebra, algebras: Sequence[FiniteAlgebra]) -> list[frozenset[int]]:
    """Empty set plus the filters of A, spot-checked for closure under valid claims."""
    algebras = list(algebras)
    if not any(A is B or A == B for B in algebras):
        raise PreconditionError("the algebra is not a member of the class")
    family = [frozenset()] + all_filters(A)
    sem = _Shared(algebras, [Var(0), Var(1)])
    ev = Evaluator(A, [Var(0), Var(1)])
    rows = np.zeros((len(family), A.size), dtype=bool)
    for r, F in enumerate(family):
        rows[r, list(F)] = True
    for _, premises, conclusion in dn_term_claims(0, 2, 2):
        if not sem.holds(premises, conclusion):
            raise InternalConsistencyError("a DN-term claim fails over the class")
        inside = np.ones((len(family), ev.count), dtype=bool)
        for p in premises:
            inside &= rows[:, ev(p)]
        if (inside & ~rows[:, ev(conclusion)]).any():
            raise InternalConsistencyError("a filter is not closed under a valid consequence")
    return family


def leibniz_hypothesis(A: FiniteAlgebra) -> bool:
    """Every filter F equals the block of top in the Leibniz congruence of F."""
    if "top" not in A.constants:
        raise PreconditionError("the hypothesis refers to a declared top")
    top = A.constants["top"]
    for F in all_filters(A):
        theta = leibniz_congruence(A, F)
        if F != frozenset(i for i in range(A.size) if theta[i] == theta[top]):
            return False
    return True
