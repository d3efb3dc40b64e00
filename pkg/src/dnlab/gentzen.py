"""Sequent calculus for distributive nearlattices: proofs, checking, search, certificates.

Rules (Gamma is a finite set, written with commas)::

    Axiom      phi |- phi
    Weakening  Gamma |- phi  /  Gamma, psi |- phi
    Cut        Gamma |- phi ,  Gamma, phi |- psi  /  Gamma |- psi
    OrLeft     phi |- chi ,  psi |- chi  /  phi|psi |- chi
    OrRightL   Gamma |- phi  /  Gamma |- phi|psi
    OrRightR   Gamma |- psi  /  Gamma |- phi|psi
    MLeft1     m(phi,psi,chi) |- phi|chi
    MLeft2     m(phi,psi,chi) |- psi|chi
    MRight     Gamma |- phi|chi ,  Gamma |- psi|chi  /  Gamma |- m(phi,psi,chi)
    MnLeft     phi0, ..., phin |- phi  /  m^n(phi0, ..., phin, phi) |- phi

Search is guided by an exact validity test: a sequent with nonempty premises
is derivable iff the meet of the premises is below the conclusion in every
distributive lattice, which can be read off the two-element chain.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .formulas import (PLAIN, Box, Const, M, Signature, Term, Var, build_mn, format_term,
                       is_join, join, parse_formula)

__all__ = [
    "RULES", "Sequent", "ProofNode", "ProofCheck", "parse_sequent", "format_sequent",
    "check_proof", "prove", "SearchReport", "search", "proof_height", "proof_size",
    "write_certificate", "read_certificate", "CertificateError", "soundness_audit",
    "SoundnessResult", "derivable",
]

ARITY = {
    "Axiom": 0, "MLeft1": 0, "MLeft2": 0,
    "Weakening": 1, "OrRightL": 1, "OrRightR": 1, "MnLeft": 1,
    "Cut": 2, "OrLeft": 2, "MRight": 2,
}
RULES = tuple(ARITY)


def _tkey(t: Term) -> str:
    return format_term(t)


@dataclass(frozen=True)
class Sequent:
    premises: frozenset
    conclusion: Term

    def __init__(self, premises: Iterable[Term], conclusion: Term):
        object.__setattr__(self, "premises", frozenset(premises))
        object.__setattr__(self, "conclusion", conclusion)

    def sorted_premises(self) -> list[Term]:
        return sorted(self.premises, key=_tkey)

    def __str__(self):
        return format_sequent(self)


def format_sequent(s: Sequent) -> str:
    left = ", ".join(_tkey(p) for p in s.sorted_premises())
    return f"{left} |- {_tkey(s.conclusion)}" if left else f"|- {_tkey(s.conclusion)}"


def _split_top(text: str, sep: str = ",") -> list[str]:
    """Split on separators outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_sequent(text: str, sig: Signature = PLAIN) -> Sequent:
    """``p1, p2 |- q``; the left side may be empty."""
    if text.count("|-") != 1:
        raise ValueError(f"a sequent needs exactly one '|-': {text!r}")
    left, right = text.split("|-")
    prem = [parse_formula(p, sig) for p in _split_top(left)] if left.strip() else []
    return Sequent(prem, parse_formula(right, sig))


_SUBST_ORDER = {"phi": 0, "psi": 1, "chi": 2}


def _subst_key(name: str):
    if name in _SUBST_ORDER:
        return (0, _SUBST_ORDER[name], 0)
    mt = re.fullmatch(r"phi(\d+)", name)
    return (1, int(mt.group(1)), 0) if mt else (2, 0, name)


@dataclass(frozen=True, eq=False)
class ProofNode:
    sequent: Sequent
    rule: str
    children: tuple = ()
    subst: tuple = ()
    _hash: int = field(default=0, repr=False)

    def __init__(self, sequent: Sequent, rule: str, children: Sequence["ProofNode"] = (),
                 subst: Mapping[str, Term] | Iterable[tuple[str, Term]] = ()):
        items = subst.items() if isinstance(subst, Mapping) else subst
        items = tuple(sorted(items, key=lambda kv: _subst_key(kv[0])))
        object.__setattr__(self, "sequent", sequent)
        object.__setattr__(self, "rule", rule)
        object.__setattr__(self, "children", tuple(children))
        object.__setattr__(self, "subst", items)
        object.__setattr__(self, "_hash", hash((sequent, rule, self.children, items)))

    @property
    def inst(self) -> dict[str, Term]:
        return dict(self.subst)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ProofNode) or self._hash != other._hash:
            return False
        return (self.rule == other.rule and self.sequent == other.sequent
                and self.subst == other.subst and self.children == other.children)


def proof_height(p: ProofNode, _memo=None) -> int:
    memo = {} if _memo is None else _memo
    key = id(p)
    if key not in memo:
        memo[key] = 1 + max((proof_height(c, memo) for c in p.children), default=0)
    return memo[key]


def proof_size(p: ProofNode) -> int:
    """Number of distinct nodes (the certificate length)."""
    seen = set()
    stack = [p]
    while stack:
        q = stack.pop()
        if q in seen:
            continue
        seen.add(q)
        stack.extend(q.children)
    return len(seen)


# checking

@dataclass(frozen=True)
class ProofCheck:
    ok: bool
    path: tuple = ()
    reason: str = ""

    def __bool__(self):
        return self.ok


_NEEDS = {
    "Axiom": ("phi",), "Weakening": ("phi", "psi"), "Cut": ("phi", "psi"),
    "OrLeft": ("phi", "psi", "chi"), "OrRightL": ("phi", "psi"), "OrRightR": ("phi", "psi"),
    "MLeft1": ("phi", "psi", "chi"), "MLeft2": ("phi", "psi", "chi"),
    "MRight": ("phi", "psi", "chi"),
}


def _expected(node: ProofNode) -> tuple[Sequent, list[Sequent]] | str:
    """The rule instance's conclusion and premises, or a reason string."""
    s = node.inst
    G = node.sequent.premises
    r = node.rule
    if r == "MnLeft":
        args = []
        while f"phi{len(args)}" in s:
            args.append(s[f"phi{len(args)}"])
        if not args or "phi" not in s or set(s) != {"phi"} | {f"phi{i}" for i in range(len(args))}:
            return "bad instantiation for MnLeft"
        phi = s["phi"]
        return Sequent([build_mn(args, phi)], phi), [Sequent(args, phi)]
    if set(s) != set(_NEEDS[r]):
        return f"bad instantiation for {r}: expected {', '.join(_NEEDS[r])}"
    phi, psi, chi = s.get("phi"), s.get("psi"), s.get("chi")
    if r == "Axiom":
        return Sequent([phi], phi), []
    if r == "Weakening":
        return Sequent(G, phi), [Sequent(G - {psi}, phi), Sequent(G, phi)]
    if r == "Cut":
        return Sequent(G, psi), [Sequent(G, phi), Sequent(G | {phi}, psi)]
    if r == "OrLeft":
        return Sequent([join(phi, psi)], chi), [Sequent([phi], chi), Sequent([psi], chi)]
    if r == "OrRightL":
        return Sequent(G, join(phi, psi)), [Sequent(G, phi)]
    if r == "OrRightR":
        return Sequent(G, join(phi, psi)), [Sequent(G, psi)]
    if r == "MLeft1":
        return Sequent([M(phi, psi, chi)], join(phi, chi)), []
    if r == "MLeft2":
        return Sequent([M(phi, psi, chi)], join(psi, chi)), []
    return Sequent(G, M(phi, psi, chi)), [Sequent(G, join(phi, chi)), Sequent(G, join(psi, chi))]


def _check_node(node: ProofNode) -> str | None:
    if node.rule not in ARITY:
        return f"unknown rule {node.rule!r}"
    if len(node.children) != ARITY[node.rule]:
        return f"{node.rule} takes {ARITY[node.rule]} premises, got {len(node.children)}"
    exp = _expected(node)
    if isinstance(exp, str):
        return exp
    concl, prem = exp
    if node.rule == "Cut":
        cut = node.inst["phi"]
        left, right = node.children[0].sequent, node.children[1].sequent
        if left.conclusion != cut or cut not in right.premises:
            return "cut formula mismatch"
    if node.sequent != concl:
        return f"conclusion is not an instance of {node.rule}"
    if node.rule == "Weakening":
        psi = node.inst["psi"]
        child = node.children[0].sequent
        if psi not in node.sequent.premises or child.conclusion != node.sequent.conclusion \
                or not (child.premises == prem[0].premises or child.premises == prem[1].premises):
            return "premise 1 does not match Weakening"
        return None
    for k, (child, want) in enumerate(zip(node.children, prem), start=1):
        if child.sequent != want:
            return f"premise {k} does not match {node.rule}"
    return None


def check_proof(p: ProofNode) -> ProofCheck:
    """Every node is an instance of its rule with the recorded instantiation.

    The failing node is reported by its path of child indices from the root.
    """
    done: set[int] = set()
    stack = [(p, ())]
    while stack:
        node, path = stack.pop()
        if id(node) in done:
            continue
        if not isinstance(node, ProofNode):
            return ProofCheck(False, path, "not a proof node")
        reason = _check_node(node)
        if reason:
            return ProofCheck(False, path, reason)
        done.add(id(node))
        for i in reversed(range(len(node.children))):
            stack.append((node.children[i], path + (i,)))
    return ProofCheck(True)


# validity on the two-element chain, with truth tables packed into ints

class _Chain2:
    def __init__(self, atoms: Sequence[Term]):
        k = len(atoms)
        if k > 20:
            raise ValueError("too many distinct atoms for truth-table evaluation")
        self.full = (1 << (1 << k)) - 1
        self.atom = {}
        for i, a in enumerate(atoms):
            bits = 0
            for r in range(1 << k):
                if r >> i & 1:
                    bits |= 1 << r
            self.atom[a] = bits
        self.memo: dict[Term, int] = {}

    def __call__(self, t: Term) -> int:
        hit = self.memo.get(t)
        if hit is not None:
            return hit
        if isinstance(t, M):
            # m(a, b, c) = (a v c) meet (b v c) = (a and b) or c on two values
            v = (self(t.a) & self(t.b)) | self(t.c)
        else:
            v = self.atom[t]
        self.memo[t] = v
        return v

    def valid(self, premises: Iterable[Term], conclusion: Term) -> bool:
        acc = self.full
        n = 0
        for p in premises:
            acc &= self(p)
            n += 1
        return n > 0 and acc & ~self(conclusion) & self.full == 0


def _atoms(terms: Iterable[Term]) -> list[Term]:
    seen: dict[Term, None] = {}
    stack = list(terms)
    while stack:
        t = stack.pop()
        if isinstance(t, Box):
            raise ValueError("the calculus has no rules for box")
        if isinstance(t, M):
            stack.extend((t.a, t.b, t.c))
        else:
            seen.setdefault(t)
    return sorted(seen, key=_tkey)


def derivable(s: Sequent) -> bool:
    """Exact derivability of a sequent, decided semantically."""
    sem = _Chain2(_atoms(list(s.premises) + [s.conclusion]))
    return sem.valid(s.premises, s.conclusion)


# proof construction helpers

def _rank(t: Term) -> int:
    if isinstance(t, M):
        return _rank(t.a) + _rank(t.c) + (1 if t.a == t.b else 2 + _rank(t.b))
    return 0


class _BoundExceeded(Exception):
    pass


class _Builder:
    def __init__(self, sem: _Chain2, mn_bound: int):
        self.sem = sem
        self.mn_bound = mn_bound
        self.memo: dict[Sequent, ProofNode | None] = {}
        self.misses: list[str] = []

    # structural plumbing

    def weaken(self, p: ProofNode, target: Iterable[Term]) -> ProofNode:
        have = set(p.sequent.premises)
        for psi in sorted(set(target) - have, key=_tkey):
            have.add(psi)
            p = ProofNode(Sequent(have, p.sequent.conclusion), "Weakening", [p],
                          {"phi": p.sequent.conclusion, "psi": psi})
        return p

    def axiom(self, G: frozenset, phi: Term) -> ProofNode:
        return self.weaken(ProofNode(Sequent([phi], phi), "Axiom", [], {"phi": phi}), G)

    def cut(self, lemma: ProofNode, cont: ProofNode) -> ProofNode:
        """From G |- psi and G, psi |- phi infer G |- phi (skipped if psi is already in G)."""
        G = lemma.sequent.premises
        psi = lemma.sequent.conclusion
        if psi in G:
            return cont
        phi = cont.sequent.conclusion
        return ProofNode(Sequent(G, phi), "Cut", [lemma, cont], {"phi": psi, "psi": phi})

    def or_right(self, p: ProofNode, other: Term, left: bool) -> ProofNode:
        G, t = p.sequent.premises, p.sequent.conclusion
        if left:
            return ProofNode(Sequent(G, join(t, other)), "OrRightL", [p], {"phi": t, "psi": other})
        return ProofNode(Sequent(G, join(other, t)), "OrRightR", [p], {"phi": other, "psi": t})

    def m_right(self, a: ProofNode, b: ProofNode, phi, psi, chi) -> ProofNode:
        return ProofNode(Sequent(a.sequent.premises, M(phi, psi, chi)), "MRight", [a, b],
                         {"phi": phi, "psi": psi, "chi": chi})

    def mn_cut(self, G: frozenset, phi: Term, main: ProofNode, sides: dict) -> ProofNode:
        """G |- phi from Phi |- phi and G |- f v phi for each f in Phi.

        Builds G |- m^n(Phi, phi) by (|- m) steps, applies (m^n |-) to the main
        proof, weakens, and cuts.
        """
        Phi = sorted(main.sequent.premises, key=_tkey)
        n = len(Phi) - 1
        if n > self.mn_bound:
            raise _BoundExceeded(f"m^{n} needed, bound is {self.mn_bound}")
        chain = sides[Phi[0]]
        for k in range(1, len(Phi)):
            prev = build_mn(Phi[:k], phi)
            chain = self.m_right(self.or_right(chain, phi, left=True), sides[Phi[k]], prev, Phi[k], phi)
        mn = build_mn(Phi, phi)
        inst = {"phi": phi, **{f"phi{i}": f for i, f in enumerate(Phi)}}
        left = ProofNode(Sequent([mn], phi), "MnLeft", [main], inst)
        return self.cut(chain, self.weaken(left, G))

    # goal-directed search

    def prove(self, G: frozenset, phi: Term) -> ProofNode | None:
        key = Sequent(G, phi)
        if key in self.memo:
            return self.memo[key]
        self.memo[key] = None
        p = None
        if self.sem.valid(G, phi):
            try:
                p = self._prove(G, phi)
            except _BoundExceeded as e:
                self.misses.append(f"{format_sequent(key)}: {e}")
                p = None
        self.memo[key] = p
        return p

    def _need(self, G, phi) -> ProofNode:
        p = self.prove(frozenset(G), phi)
        if p is None:
            raise _BoundExceeded(f"subgoal {format_sequent(Sequent(G, phi))} not proved")
        return p

    def _prove(self, G: frozenset, phi: Term) -> ProofNode:
        sem = self.sem
        if phi in G:
            return self.axiom(G, phi)
        if isinstance(phi, M) and phi.a != phi.b:
            a = self._need(G, join(phi.a, phi.c))
            b = self._need(G, join(phi.b, phi.c))
            return self.m_right(a, b, phi.a, phi.b, phi.c)
        if len(G) > 1:
            for g in sorted(G, key=lambda t: (_rank(t), _tkey(t))):
                if sem.valid([g], phi):
                    return self.weaken(self._need([g], phi), G)
        if len(G) == 1:
            (g,) = G
            if is_join(g):
                left = self._need([g.a], phi)
                right = self._need([g.c], phi)
                return ProofNode(Sequent(G, phi), "OrLeft", [left, right],
                                 {"phi": g.a, "psi": g.c, "chi": phi})
            if isinstance(g, M):
                if phi == join(g.a, g.c):
                    return ProofNode(Sequent(G, phi), "MLeft1", [], {"phi": g.a, "psi": g.b, "chi": g.c})
                if phi == join(g.b, g.c):
                    return ProofNode(Sequent(G, phi), "MLeft2", [], {"phi": g.a, "psi": g.b, "chi": g.c})
                args = _mn_args(g, phi)
                if args is not None and len(args) - 1 <= self.mn_bound:
                    inst = {"phi": phi, **{f"phi{i}": f for i, f in enumerate(args)}}
                    return ProofNode(Sequent(G, phi), "MnLeft", [self._need(args, phi)], inst)
        # unpack a premise m(p, q, r) into p v r and q v r
        meets = [g for g in G if isinstance(g, M) and g.a != g.b]
        if meets:
            g = max(meets, key=lambda t: (_rank(t), _tkey(t)))
            l1, l2 = join(g.a, g.c), join(g.b, g.c)
            rest = (G - {g}) | {l1, l2}
            inner = self.weaken(self._need(rest, phi), G)
            step2 = self.weaken(ProofNode(Sequent([g], l2), "MLeft2", [], {"phi": g.a, "psi": g.b, "chi": g.c}),
                                G | {l1})
            step1 = self.weaken(ProofNode(Sequent([g], l1), "MLeft1", [], {"phi": g.a, "psi": g.b, "chi": g.c}), G)
            return self.cut(step1, self.cut(step2, inner))
        # split a disjunctive premise, keeping the other premises as context
        joins = [g for g in G if is_join(g)]
        if joins:
            for g in joins:
                if sem.valid(G - {g}, phi):
                    return self.weaken(self._need(G - {g}, phi), G)
            g = max(joins, key=lambda t: (_rank(t), _tkey(t)))
            return self._cases(G, g, phi)
        # only atoms on the left: the conclusion is a disjunction with a valid side
        if is_join(phi):
            if sem.valid(G, phi.a):
                return self.or_right(self._need(G, phi.a), phi.c, left=True)
            if sem.valid(G, phi.c):
                return self.or_right(self._need(G, phi.c), phi.a, left=False)
        raise _BoundExceeded("no rule applies")

    def _cases(self, G: frozenset, g: M, chi: Term) -> ProofNode:
        p, q = g.a, g.c
        D = G - {g}
        with_p = self._need(D | {p}, chi)
        with_q = self._need(D | {q}, chi)

        def side(f, target):
            if f in G:
                return self.or_right(self.axiom(G, f), target, left=True)
            return None

        # G |- p v chi, from D, q |- p v chi
        pchi = join(p, chi)
        main_a = self.or_right(with_q, p, left=False)
        sides_a = {}
        for f in main_a.sequent.premises:
            s = side(f, pchi)
            if s is None:
                # f is q: p v q |- q v (p v chi) by cases, then weaken
                left = self.or_right(self.or_right(self.axiom(frozenset([p]), p), chi, left=True), q, left=False)
                right = self.or_right(self.axiom(frozenset([q]), q), pchi, left=True)
                s = self.weaken(ProofNode(Sequent([g], join(q, pchi)), "OrLeft", [left, right],
                                          {"phi": p, "psi": q, "chi": join(q, pchi)}), G)
            sides_a[f] = s
        p_or_chi = self.mn_cut(G, pchi, main_a, sides_a)
        sides_b = {}
        for f in with_p.sequent.premises:
            sides_b[f] = side(f, chi) or p_or_chi
        return self.mn_cut(G, chi, with_p, sides_b)


def _mn_args(g: Term, phi: Term) -> list[Term] | None:
    """Arguments a0..an with g == m^n(a0, ..., an, phi), if g has that shape."""
    rev = []
    t = g
    while isinstance(t, M) and t.c == phi:
        if t.a == t.b:
            rev.append(t.a)
            return rev[::-1]
        rev.append(t.b)
        t = t.a
    return None


@dataclass
class SearchReport:
    proof: ProofNode | None
    sequent: Sequent
    depth: int
    mn_bound: int
    valid: bool
    height: int | None = None
    notes: list = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.proof is not None

    def describe(self) -> str:
        if self.found:
            return f"proof found: height {self.height}, {proof_size(self.proof)} nodes"
        why = "; ".join(self.notes) if self.notes else "no derivation"
        return f"not found within depth {self.depth}, mn_bound {self.mn_bound} ({why})"


def search(s: Sequent, depth: int = 64, mn_bound: int = 6) -> SearchReport:
    """Goal-directed backward search; the report keeps the bounds and any misses.

    Cut formulas are limited to joins of two subformulas of the goal and
    m^k compounds with k <= mn_bound.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    sem = _Chain2(_atoms(list(s.premises) + [s.conclusion]))
    valid = sem.valid(s.premises, s.conclusion)
    rep = SearchReport(None, s, depth, mn_bound, valid)
    if not s.premises:
        rep.notes.append("the calculus derives no sequent with empty premises")
        return rep
    if not valid:
        rep.notes.append("the sequent is not valid in the two-element chain")
        return rep
    b = _Builder(sem, mn_bound)
    p = b.prove(s.premises, s.conclusion)
    rep.notes.extend(b.misses)
    if p is not None:
        h = proof_height(p)
        if h > depth:
            rep.notes.append(f"the proof found has height {h}")
            return rep
        chk = check_proof(p)
        if not chk:
            raise AssertionError(f"search built an invalid proof: {chk.reason} at {chk.path}")
        rep.proof, rep.height = p, h
    return rep


def prove(s: Sequent, depth: int = 64, mn_bound: int = 6) -> ProofNode | None:
    return search(s, depth, mn_bound).proof


# certificates

class CertificateError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def write_certificate(p: ProofNode) -> str:
    """One node per line in post-order; shared subproofs appear once; the root is last."""
    ids: dict[ProofNode, int] = {}
    lines = []
    stack = [(p, False)]
    while stack:
        node, expanded = stack.pop()
        if node in ids:
            continue
        if not expanded:
            stack.append((node, True))
            for c in reversed(node.children):
                if c not in ids:
                    stack.append((c, False))
            continue
        kids = ",".join(str(ids[c]) for c in node.children) or "-"
        subst = ", ".join(f"{k}={format_term(v)}" for k, v in node.subst)
        ids[node] = len(ids) + 1
        lines.append(f"{ids[node]}. {format_sequent(node.sequent)} ; {node.rule} ; from {kids} ; subst {subst}")
    return "\n".join(lines) + "\n"


_LINE_RE = re.compile(r"^(\d+)\.\s+(.*?)\s+;\s+(\w+)\s+;\s+from\s+(\S+)\s+;\s+subst\s*(.*)$")


def read_certificate(text: str, sig: Signature = PLAIN) -> ProofNode:
    nodes: dict[int, ProofNode] = {}
    last = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        mt = _LINE_RE.match(raw.strip())
        if not mt:
            raise CertificateError("expected 'ID. sequent ; rule ; from ids ; subst ...'", ln)
        nid = int(mt.group(1))
        if nid in nodes:
            raise CertificateError(f"duplicate id {nid}", ln)
        try:
            seq = parse_sequent(mt.group(2), sig)
            subst = {}
            if mt.group(5).strip():
                for part in _split_top(mt.group(5)):
                    name, _, term = part.strip().partition("=")
                    subst[name.strip()] = parse_formula(term, sig)
        except ValueError as e:
            raise CertificateError(str(e), ln) from e
        kids = []
        if mt.group(4) != "-":
            for c in mt.group(4).split(","):
                if not c.isdigit() or int(c) not in nodes:
                    raise CertificateError(f"reference to unknown node {c}", ln)
                kids.append(nodes[int(c)])
        nodes[nid] = last = ProofNode(seq, mt.group(3), kids, subst)
    if last is None:
        raise CertificateError("empty certificate")
    return last


# soundness against semantics

@dataclass(frozen=True)
class SoundnessResult:
    consistent: bool
    check: ProofCheck | None = None
    verdict: object = None
    proof: ProofNode | None = None

    def __bool__(self):
        return self.consistent


def soundness_audit(p: ProofNode | Sequent, algebras) -> SoundnessResult:
    """A certified sequent must hold in plain mode over the class.

    A proof that fails check_proof is rejected before any evaluation.  Given a
    bare sequent, the search runs first; if nothing is found the semantic
    verdict (with countermodel when it fails) is reported.
    """
    from .consequence import consequence

    if isinstance(p, Sequent):
        found = prove(p)
        if found is None:
            v = consequence(p.sorted_premises(), p.conclusion, algebras)
            return SoundnessResult(True, None, v, None)
        p = found
    chk = check_proof(p)
    if not chk:
        return SoundnessResult(False, chk, None, p)
    s = p.sequent
    v = consequence(s.sorted_premises(), s.conclusion, algebras)
    return SoundnessResult(v.holds, chk, v, p)
