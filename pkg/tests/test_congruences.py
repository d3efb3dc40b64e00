import itertools

import pytest

import oracles
from dnlab.algebra import chain, check_distributive, check_nearlattice, find_homomorphisms, with_top
from dnlab.congruences import (GMatrix, all_congruences, blocks, canonical_partition, frege_relation,
                               identity_partition, is_congruence, is_point_regular, largest_congruence_below,
                               leibniz_congruence, partition_join, quotient, refines, tarski_congruence,
                               total_partition)
from dnlab.errors import PreconditionError
from dnlab.filters import all_filters

FIG2_CONGRUENCES = [(0, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 0), (0, 1, 1, 1), (0, 1, 2, 0), (0, 1, 2, 1),
                    (0, 1, 2, 2), (0, 1, 2, 3)]


def test_partition_helpers():
    assert canonical_partition("xyx") == (0, 1, 0)
    assert blocks((0, 1, 0)) == [frozenset({0, 2}), frozenset({1})]
    assert refines((0, 1, 2), (0, 0, 1)) and not refines((0, 0, 1), (0, 1, 2))
    assert partition_join((0, 0, 1, 2), (0, 1, 1, 2)) == (0, 0, 0, 1)


def test_fig2_congruences(fig2):
    assert all_congruences(fig2) == FIG2_CONGRUENCES
    naive = sorted(oracles.canon(p) for p in oracles.set_partitions(4) if oracles.naive_is_congruence(fig2, p))
    assert naive == FIG2_CONGRUENCES
    # collapsing only the two bottoms breaks compatibility
    assert not is_congruence(fig2, (0, 0, 1, 2))


def test_congruences_match_naive_on_catalog(cat4):
    for A in cat4:
        naive = {oracles.canon(p) for p in oracles.set_partitions(A.size) if oracles.naive_is_congruence(A, p)}
        assert set(all_congruences(A)) == naive


def test_fig1_congruence_lattice(fig1):
    cons = all_congruences(fig1)
    assert len(cons) == 64
    assert set(cons) == oracles.congruence_lattice(fig1)
    assert identity_partition(10) in cons and total_partition(10) in cons


def test_fig1_quotients_are_dn(fig1):
    for theta in all_congruences(fig1):
        Q = quotient(fig1, theta)
        assert check_nearlattice(Q) and check_distributive(Q)
        assert Q.size == len(set(theta))
    assert quotient(fig1, total_partition(10)).size == 1
    assert quotient(fig1, (0, 1, 2, 0, 1, 2, 3, 4, 5, 6)).names == ("a", "b", "c", "u", "v", "w", "1")


def test_quotient_map_is_homomorphism(fig2):
    Q = quotient(fig2, (0, 1, 1, 1))
    assert Q.names == ("a", "b")
    assert (0, 1, 1, 1) in {tuple(h) for h in find_homomorphisms(fig2, Q, constants=False)}


def test_malformed_partition(fig2):
    with pytest.raises(ValueError):
        is_congruence(fig2, (0, 1))


def test_gmatrix_validation(fig2):
    with pytest.raises(ValueError, match="universe"):
        GMatrix(fig2, [[0]])
    with pytest.raises(ValueError, match="intersection"):
        GMatrix(fig2, [[0, 3], [1, 3], [0, 1, 2, 3]])


def test_fig1_frege_and_tarski(fig1):
    n = fig1.size
    G = GMatrix(fig1, [frozenset()] + all_filters(fig1))
    assert frege_relation(G) == identity_partition(n)
    H = GMatrix(fig1, [range(n), [fig1.index("1")]])
    assert frege_relation(H) == (0,) * 9 + (1,)
    tarski = tarski_congruence(H)
    assert tarski == (0, 1, 2, 0, 1, 2, 3, 4, 5, 6)
    assert tarski == oracles.largest_congruence_below(fig1, frege_relation(H))


def test_tarski_is_maximal(fig1):
    H = GMatrix(fig1, [range(10), [9], [6, 9], [3, 6, 7, 9], [0, 3, 6, 7, 9]])
    frege = frege_relation(H)
    t = tarski_congruence(H)
    assert refines(t, frege)
    for c in all_congruences(fig1):
        if refines(c, frege):
            assert refines(c, t)


def test_leibniz(fig2):
    top = fig2.constants["top"]
    assert leibniz_congruence(fig2, [top]) == identity_partition(4)
    assert leibniz_congruence(fig2, ["a", "1"]) == (0, 1, 2, 0)
    for F in all_filters(fig2):
        omega = leibniz_congruence(fig2, F)
        assert omega == oracles.largest_congruence_below(fig2, [i in F for i in range(4)])
        assert all((i in F) == (j in F) for i, j in itertools.product(range(4), repeat=2) if omega[i] == omega[j])


def test_point_regularity(fig2):
    assert is_point_regular([fig2]).ok
    assert is_point_regular([with_top(chain(2)), with_top(chain(1))]).ok
    r = is_point_regular([with_top(chain(3))])
    assert not r.ok
    p, q = r.pair
    top = 2
    assert p != q and oracles.naive_is_congruence(r.algebra, p) and oracles.naive_is_congruence(r.algebra, q)
    assert {i for i in range(3) if p[i] == p[top]} == {i for i in range(3) if q[i] == q[top]}
    with pytest.raises(PreconditionError):
        is_point_regular([chain(2)])


def test_largest_congruence_below_identity(fig2):
    assert largest_congruence_below(fig2, identity_partition(4)) == identity_partition(4)
