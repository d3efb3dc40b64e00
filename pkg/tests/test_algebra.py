import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from dnlab.algebra import (AlgebraClass, Evaluator, FiniteAlgebra, chain, check_distributive, check_nearlattice,
                           eval_term, find_homomorphisms, from_hasse, is_homomorphism, mn_eval, mn_meet_form,
                           order_characterization, upset_is_distributive, valuations, with_top)
from dnlab.enumerate import catalog_up_to
from dnlab.errors import HasseError, PreconditionError
from dnlab.formulas import M, Var, parse_formula
from test_formulas import terms
from dnlab.formulas import PLAIN


def test_fig1_is_a_distributive_nearlattice(fig1):
    assert check_nearlattice(fig1) and check_distributive(fig1)
    assert fig1.names[fig1.top] == "1"
    i = fig1.index
    assert fig1.m(i("u"), i("w"), i("y")) == i("y")
    assert fig1.m(i("u"), i("w"), i("b")) == i("y")
    assert mn_eval(fig1, [i("u"), i("w")], i("b")) == i("y")
    # a and b have no common lower bound; u and w meet in y
    assert fig1.meet(i("a"), i("b")) is None
    assert fig1.meet(i("u"), i("w")) == i("y")


def test_fig1_table_matches_order_oracle(fig1):
    le = oracles.leq_of(fig1)
    n = fig1.size

    def lub(x, y):
        ub = [u for u in range(n) if le[x][u] and le[y][u]]
        return [u for u in ub if all(le[u][v] for v in ub)][0]

    for x, y, a in itertools.product(range(n), repeat=3):
        up = [u for u in range(n) if le[a][u]]
        assert fig1.m(x, y, a) == oracles.glb(le, (lub(x, a), lub(y, a)), up)


def test_pentagon_fails_P3_with_witness(pentagon):
    assert check_nearlattice(pentagon)
    r = check_distributive(pentagon)
    assert not r and r.identity == "P3"
    assert tuple(pentagon.names[k] for k in r.witness) == ("b", "a", "c", "0")
    assert r.upset_witness == 0
    assert not upset_is_distributive(pentagon, 0)
    assert order_characterization(pentagon) == (True, False)


def test_diamond_is_nearlattice_not_distributive():
    M3 = from_hasse(list("0abc1"), [("0", x) for x in "abc"] + [(x, "1") for x in "abc"])
    assert check_nearlattice(M3) and not check_distributive(M3)
    assert not oracles.identities_hold(oracles.table(M3), 5)


def test_non_nearlattice_is_rejected_by_distributivity_check():
    T = np.zeros((2, 2, 2), dtype=int)
    A = FiniteAlgebra(T)
    r = check_nearlattice(A)
    assert not r and r.identity == "P1"
    with pytest.raises(PreconditionError):
        check_distributive(A)
    assert order_characterization(A) == (False, False)


@pytest.mark.parametrize("names, covers, msg", [
    ("ab", [("a", "b"), ("b", "a")], "cycle"),
    ("abc", [], "no common upper bound"),
    ("abcd", [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")], "incomparable minimal upper bounds"),
    ("ab", [("a", "z")], "unknown element"),
])
def test_from_hasse_errors(names, covers, msg):
    with pytest.raises(HasseError, match=msg):
        from_hasse(list(names), covers)


def test_catalog_members_pass_naive_identities(cat4):
    for A in cat4:
        assert oracles.identities_hold(oracles.table(A), A.size)
        assert check_distributive(A)


def test_algebra_class_rejects_non_members(pentagon, fig1):
    with pytest.raises(PreconditionError):
        AlgebraClass([fig1, pentagon])
    assert len(AlgebraClass([fig1]).members) == 1


def test_equality_ignores_names():
    assert chain(3) == chain(3).replace(names=["p", "q", "r"])
    assert chain(3) != with_top(chain(3))
    assert with_top(chain(3)).constants == {"top": 2}


def test_mn_meet_form_agrees(fig1):
    for args in itertools.product(range(fig1.size), repeat=3):
        for b in range(fig1.size):
            assert mn_eval(fig1, args, b) == mn_meet_form(fig1, args, b)


def test_homomorphism_counts(fig2, chain2):
    assert len(find_homomorphisms(fig2, fig2)) == 2
    assert len(find_homomorphisms(chain2, fig2, constants=False)) == 7


def test_homomorphisms_preserve_mn(fig2, chain2):
    # brute force over all maps agrees with the backtracking search
    B = fig2
    A = with_top(chain(3))
    found = {tuple(h) for h in find_homomorphisms(A, B, constants=False)}
    brute = {h for h in itertools.product(range(B.size), repeat=A.size)
             if is_homomorphism(A, B, h, constants=False)}
    assert found == brute and found
    for h in found:
        for args in itertools.product(range(A.size), repeat=3):
            for b in range(A.size):
                assert h[mn_eval(A, args, b)] == mn_eval(B, [h[a] for a in args], h[b])


def test_valuation_order():
    assert valuations(2, 2).tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]


@settings(max_examples=60, deadline=None)
@given(terms(3, PLAIN), st.integers(0, 21))
def test_evaluator_matches_eval_term(t, k):
    A = catalog_up_to(5)[k]
    vs = [Var(i) for i in range(5)]
    ev = Evaluator(A, vs)
    got = ev(t)
    for row in range(0, ev.count, max(1, ev.count // 50)):
        assert got[row] == eval_term(A, t, ev.assignment(row))


def test_eval_term_on_join(fig1):
    i = fig1.index
    t = parse_formula("x0|x1")
    assert eval_term(fig1, t, {Var(0): i("a"), Var(1): i("b")}) == i("u")
    assert eval_term(fig1, M(Var(0), Var(0), Var(0)), {Var(0): 3}) == 3
