import random
from itertools import permutations

import pytest
from hypothesis import given, settings

from chainpoly.analysis import random_poset
from chainpoly.poset import (
    CycleError,
    Labeling,
    NotGradedError,
    Poset,
    PosetError,
    RedundantCoverError,
    all_chains,
    antichain,
    chain_poset,
    count_linear_extensions,
    euler_zigzag_number,
    is_natural,
    is_zigzag,
    linear_extensions,
    maximal_chains,
    natural_labeling,
    rank_function,
    zigzag_poset,
)

from conftest import posets
from oracles import (
    alternating_permutations,
    chains_by_subsets,
    extensions_by_permutations,
    leq_matrix,
    maximal_chains_by_subsets,
)


def test_zigzag_covers():
    assert zigzag_poset(1).covers == frozenset()
    assert zigzag_poset(3).covers == {(0, 1), (2, 1)}
    assert zigzag_poset(4).covers == {(0, 1), (2, 1), (2, 3)}
    with pytest.raises(PosetError):
        zigzag_poset(0)


def test_construction_rejects_cycles_and_redundancy():
    with pytest.raises(CycleError) as info:
        Poset(3, frozenset({(0, 1), (1, 2), (2, 0)}))
    assert set(info.value.cycle) == {0, 1, 2}
    with pytest.raises(RedundantCoverError):
        Poset(3, frozenset({(0, 1), (1, 2), (0, 2)}))
    assert Poset.from_relations(3, [(0, 1), (1, 2), (0, 2)]).covers == {(0, 1), (1, 2)}


def test_reachability_matches_closure():
    P = Poset.from_relations(5, [(0, 2), (1, 2), (2, 4), (3, 4)])
    le = leq_matrix(5, P.covers)
    for x in range(5):
        for y in range(5):
            assert P.leq(x, y) == le[x][y]


def test_all_chains_examples():
    assert set(all_chains(antichain(2))) == {(0,), (1,)}
    assert set(all_chains(zigzag_poset(3))) == {(0,), (1,), (2,), (0, 1), (2, 1)}
    assert len(all_chains(chain_poset(3))) == 7


@settings(max_examples=80, deadline=None)
@given(posets(max_size=6))
def test_all_chains_match_subset_oracle(P):
    assert set(all_chains(P)) == chains_by_subsets(P.size, P.covers)


@settings(max_examples=80, deadline=None)
@given(posets(max_size=6))
def test_maximal_chains_match_subset_oracle(P):
    assert set(maximal_chains(P)) == maximal_chains_by_subsets(P.size, P.covers)


def test_maximal_chains_examples():
    assert set(maximal_chains(zigzag_poset(5))) == {(0, 1), (2, 1), (2, 3), (4, 3)}
    assert maximal_chains(antichain(1)) == [(0,)]
    chains = maximal_chains(zigzag_poset(4))
    assert len(chains) == 3 and all(len(c) == 2 for c in chains)


@pytest.mark.parametrize("n", range(2, 16))
def test_zigzag_maximal_chains_and_rank(n):
    chains = maximal_chains(zigzag_poset(n))
    assert len(chains) == n - 1
    assert all(len(c) - 1 == 1 for c in chains)
    g = rank_function(zigzag_poset(n))
    assert g.rank == 1
    assert g.rho == tuple(k % 2 for k in range(n))


def test_rank_function_single_and_not_graded():
    assert rank_function(zigzag_poset(1)).rank == 0
    P = Poset(4, frozenset({(0, 1), (1, 2), (3, 2)}))
    with pytest.raises(NotGradedError) as info:
        rank_function(P)
    assert {tuple(c) for c in info.value.witness} == {(0, 1, 2), (3, 2)}


@settings(max_examples=60, deadline=None)
@given(posets(max_size=6))
def test_rank_function_agrees_with_maximal_chain_lengths(P):
    lengths = {len(c) - 1 for c in maximal_chains_by_subsets(P.size, P.covers)}
    if len(lengths) == 1:
        g = rank_function(P)
        assert g.rank == lengths.pop()
        assert all(g.rho[x] == 0 for x in P.minimal)
        assert all(g.rho[j] == g.rho[i] + 1 for i, j in P.covers)
    else:
        with pytest.raises(NotGradedError) as info:
            rank_function(P)
        a, b = info.value.witness
        assert len(a) != len(b)


def test_is_natural_examples():
    Z3 = zigzag_poset(3)
    assert is_natural(Z3, Labeling((1, 3, 2)))
    assert not is_natural(Z3, Labeling((1, 2, 3)))
    assert is_natural(antichain(4), Labeling((1, 2, 3, 4)))


def test_labeling_must_be_bijection():
    with pytest.raises(PosetError):
        Labeling((1, 1, 3))
    with pytest.raises(PosetError):
        Labeling((0, 1, 2))


def test_natural_labeling_examples():
    assert natural_labeling(chain_poset(2)).labels == (1, 2)
    assert natural_labeling(zigzag_poset(3)).labels == (1, 3, 2)
    assert natural_labeling(antichain(3)).labels == (1, 2, 3)


@settings(max_examples=100, deadline=None)
@given(posets(max_size=7))
def test_natural_labeling_is_natural(P):
    assert is_natural(P, natural_labeling(P))


def test_linear_extensions_examples():
    assert list(linear_extensions(zigzag_poset(3))) == [(0, 2, 1), (2, 0, 1)]
    assert len(list(linear_extensions(zigzag_poset(4)))) == 5
    assert list(linear_extensions(chain_poset(5))) == [(0, 1, 2, 3, 4)]


@settings(max_examples=60, deadline=None)
@given(posets(max_size=6))
def test_linear_extensions_match_permutation_oracle(P):
    exts = list(linear_extensions(P))
    assert exts == extensions_by_permutations(P.size, P.covers)  # both lexicographic
    assert count_linear_extensions(P) == len(exts)


@pytest.mark.parametrize("n", range(1, 9))
def test_zigzag_extensions_are_euler_numbers(n):
    expected = alternating_permutations(n)
    assert sum(1 for _ in linear_extensions(zigzag_poset(n))) == expected
    assert euler_zigzag_number(n) == expected


def test_is_zigzag_is_literal():
    assert is_zigzag(zigzag_poset(7))
    flipped = Poset(3, frozenset({(1, 0), (1, 2)}))
    assert not is_zigzag(flipped)


def test_random_poset_is_reproducible():
    a = [random_poset(random.Random(5), 6) for _ in range(3)]
    b = [random_poset(random.Random(5), 6) for _ in range(3)]
    assert a == b


def test_natural_labelings_are_extensions():
    P = zigzag_poset(4)
    naturals = {p for p in permutations(range(1, 5)) if is_natural(P, Labeling(p))}
    assert len(naturals) == 5
