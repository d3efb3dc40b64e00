import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dnlab.consequence import consequence
from dnlab.enumerate import catalog_up_to
from dnlab.formulas import PLAIN, Var, join
from dnlab.gentzen import (RULES, CertificateError, ProofNode, Sequent, check_proof, derivable, format_sequent,
                           parse_sequent, proof_height, proof_size, prove, read_certificate, search,
                           soundness_audit, write_certificate)
from test_formulas import terms

x0, x1 = Var(0), Var(1)


def test_sequent_syntax():
    s = parse_sequent("x1, m(x0,x1,x2) |- x0")
    assert format_sequent(s) == "m(x0,x1,x2), x1 |- x0"
    assert parse_sequent("|- x0").premises == frozenset()
    assert str(parse_sequent("|- x0")) == "|- x0"
    with pytest.raises(ValueError):
        parse_sequent("x0, x1")
    with pytest.raises(ValueError):
        parse_sequent("x0 |- x1 |- x2")


def test_commutativity_proof():
    p = prove(parse_sequent("x0|x1 |- x1|x0"))
    assert proof_height(p) == 3 and proof_size(p) == 5
    assert p.rule == "OrLeft"
    assert check_proof(p)


def test_meet_right():
    p = prove(parse_sequent("x0|x2, x1|x2 |- m(x0,x1,x2)"))
    assert p.rule == "MRight" and proof_height(p) == 3


def test_axiom_certificate_is_one_line():
    p = prove(parse_sequent("m(x0,x1,x2) |- x0|x2"))
    assert write_certificate(p) == "1. m(x0,x1,x2) |- x0|x2 ; MLeft1 ; from - ; subst phi=x0, psi=x1, chi=x2\n"


def test_mn_left_rule():
    p = prove(parse_sequent("m(x0|x0,x0|x1,x0) |- x0"))
    assert p.rule == "MnLeft"
    assert format_sequent(p.children[0].sequent) == "x0, x0|x1 |- x0"


@pytest.mark.parametrize("text, note", [
    ("x0 |- x1", "not valid in the two-element chain"),
    ("|- x0", "no sequent with empty premises"),
])
def test_search_misses_carry_reason(text, note):
    rep = search(parse_sequent(text))
    assert not rep.found and note in rep.describe()
    assert "depth 64, mn_bound 6" in rep.describe()


def test_depth_bound():
    s = parse_sequent("x0|x1 |- x1|x0")
    assert not search(s, depth=2).found
    assert search(s, depth=3).found
    with pytest.raises(ValueError):
        search(s, depth=0)


def test_certificate_round_trip():
    for text in ["x0|x1 |- x1|x0", "x0|x2, x1|x2, x0|x1 |- m(x0,x1,x2)|m(x1,x0,x2)",
                 "(x0|x1)|x2 |- x0|(x1|x2)"]:
        p = prove(parse_sequent(text))
        q = read_certificate(write_certificate(p))
        assert q == p and check_proof(q)


@pytest.mark.parametrize("text, msg", [
    ("garbage", "line 1: expected"),
    ("1. x0 |- x0 ; Axiom ; from 5 ; subst phi=x0", "unknown node 5"),
    ("1. x0 |- x0 ; Axiom ; from - ; subst phi=x0\n1. x0 |- x0 ; Axiom ; from - ; subst phi=x0", "duplicate id"),
    ("", "empty certificate"),
    ("1. x0 |- m(x0 ; Axiom ; from - ; subst phi=x0", "line 1"),
])
def test_certificate_errors(text, msg):
    with pytest.raises(CertificateError, match=msg):
        read_certificate(text)


def test_check_proof_rejections():
    p = prove(parse_sequent("x0|x1 |- x1|x0"))
    assert check_proof(ProofNode(p.sequent, "Bogus", p.children, p.subst)).reason == "unknown rule 'Bogus'"
    mutated = ProofNode(Sequent(p.sequent.premises, join(x0, x1)), p.rule, p.children, p.subst)
    assert not check_proof(mutated)
    # right sequent, wrong justification one level down
    second = p.children[1]
    bad_leaf = ProofNode(second.sequent, "Axiom", (), {"phi": x1})
    broken = ProofNode(p.sequent, p.rule, (p.children[0], bad_leaf), p.subst)
    chk = check_proof(broken)
    assert not chk and chk.path == (1,)


def test_cut_formula_mismatch():
    lemma = prove(parse_sequent("x0 |- x0|x1"))
    cont = prove(parse_sequent("x0, x0|x1 |- x0|x1"))
    good = ProofNode(parse_sequent("x0 |- x0|x1"), "Cut", (lemma, cont), {"phi": join(x0, x1), "psi": join(x0, x1)})
    assert check_proof(good)
    bad = ProofNode(good.sequent, "Cut", (lemma, cont), {"phi": x1, "psi": join(x0, x1)})
    assert check_proof(bad).reason == "cut formula mismatch"


def test_soundness_audit():
    cat = catalog_up_to(4)
    p = prove(parse_sequent("x0|x1 |- x1|x0"))
    assert soundness_audit(p, cat)
    mutated = ProofNode(parse_sequent("x0|x1 |- x0"), p.rule, p.children, p.subst)
    res = soundness_audit(mutated, cat)
    assert not res and res.verdict is None and not res.check
    miss = soundness_audit(parse_sequent("x0 |- x1"), cat)
    assert miss and miss.proof is None and not miss.verdict.holds


def test_rules_table():
    assert set(RULES) == {"Axiom", "Weakening", "Cut", "OrLeft", "OrRightL", "OrRightR", "MLeft1", "MLeft2",
                          "MRight", "MnLeft"}


@settings(max_examples=60, deadline=None)
@given(st.lists(terms(2, PLAIN), min_size=1, max_size=2), terms(2, PLAIN))
def test_two_element_oracle_matches_catalog(prem, phi):
    s = Sequent(prem, phi)
    assert derivable(s) == consequence(s.sorted_premises(), phi, catalog_up_to(5)).holds


@settings(max_examples=40, deadline=None)
@given(st.lists(terms(2, PLAIN), min_size=1, max_size=2), terms(2, PLAIN))
def test_search_finds_every_valid_sequent(prem, phi):
    s = Sequent(prem, phi)
    rep = search(s)
    assert rep.found == derivable(s)
    if rep.found:
        assert check_proof(rep.proof) and rep.proof.sequent == s
