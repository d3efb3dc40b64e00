import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dnlab.formulas import (M, PLAIN, Box, Const, FormulaSyntaxError, Signature, Var, build_mn, constants_of,
                            depth, format_term, formulas_up_to, is_join, join, parse_formula, subterms,
                            substitute, variables_of)

SIG = Signature(("top", "bot1"), True)


def terms(max_depth=6, sig=SIG):
    leaves = st.builds(Var, st.integers(0, 4))
    if sig.constants:
        leaves = leaves | st.sampled_from([Const(c) for c in sig.constants])

    def grow(inner):
        out = st.builds(M, inner, inner, inner)
        return out | st.builds(Box, inner) if sig.has_box else out

    return st.recursive(leaves, grow, max_leaves=3 ** max_depth).filter(lambda t: depth(t) <= max_depth)


@settings(max_examples=300)
@given(terms())
def test_print_parse_round_trip(t):
    assert parse_formula(format_term(t), SIG) == t


@settings(max_examples=200)
@given(terms(4), terms(3), terms(3))
def test_substitution_distributes_over_m(a, s, u):
    mp = {Var(0): s, Var(1): u}
    t = M(a, Var(0), Var(1))
    assert substitute(t, mp) == M(substitute(a, mp), s, u)
    assert substitute(a, {}) == a


@given(terms(3), terms(3))
def test_build_mn_singleton_is_join(a, b):
    assert build_mn([a], b) == join(a, b)
    assert is_join(build_mn([a], b))


def test_join_sugar_is_left_associative():
    t = parse_formula("x0|x1|x2")
    assert t == join(join(Var(0), Var(1)), Var(2))
    assert format_term(parse_formula("x0|(x1|x2)")) == "x0|(x1|x2)"
    assert format_term(parse_formula("m(x0 , x0, x1)")) == "x0|x1"


def test_box_and_constants():
    t = parse_formula("box(x0)|top", SIG)
    assert t == join(Box(Var(0)), Const("top"))
    assert constants_of(t) == ["top"]


@pytest.mark.parametrize("text, pos", [
    ("m(x0,x1)", 7), ("x0|", 3), ("y", 0), ("top", 0), ("box(x0)", 0), ("x0)", 2), ("", 0),
])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(FormulaSyntaxError) as e:
        parse_formula(text, PLAIN)
    assert e.value.pos == pos


def test_helpers():
    t = parse_formula("m(x2,x0|x1,x2)")
    assert variables_of(t) == [Var(2), Var(0), Var(1)]
    assert depth(t) == 2 and depth(Var(0)) == 0
    assert [format_term(s) for s in subterms(parse_formula("x0|x1"))] == ["x0", "x1", "x0|x1"]
    assert format_term(build_mn([Var(0), Var(1), Var(2)], Var(3))) == "m(m(x0|x3,x1,x3),x2,x3)"


def test_formula_pool_sizes():
    # n atoms give n + n**3 formulas of depth <= 1
    assert len(formulas_up_to(0, 2)) == 2
    assert len(formulas_up_to(1, 2)) == 10
    assert len(formulas_up_to(1, 3)) == 30
    assert len(formulas_up_to(1, 1, ("top",))) == 10
    assert len(formulas_up_to(1, 1, box=True)) == 3
    pool = formulas_up_to(2, 2)
    assert len(set(pool)) == len(pool)
