from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import stv_order_oracle
from stablemarriage.core import Profile
from stablemarriage.voting import (
    Election,
    get_rule,
    iter_stv_order,
    majority_quota,
    plurality_rule,
    popularity_orders,
    stv_order,
    stv_rule,
    stv_tally,
    stv_winner,
)


@st.composite
def elections(draw, max_k=6, max_voters=9):
    k = draw(st.integers(1, max_k))
    voters = draw(st.integers(1, max_voters))
    ballots = tuple(tuple(draw(st.permutations(list(range(k))))) for _ in range(voters))
    return Election(k, ballots)


def test_single_candidate():
    e = Election(1, ((0,), (0,)))
    assert stv_winner(e) == 0
    assert stv_order(e) == [0]


def test_first_preference_majority_wins():
    a, b, c = 0, 1, 2
    e = Election(3, ((a, b, c), (a, c, b), (b, a, c)))
    assert e.quota == 2
    assert stv_winner(e) == a


def test_example1_women_ballots(example1):
    e = Election(3, example1.women, names=("m1", "m2", "m3"))
    tally = stv_tally(e)
    assert tally.winner == 0
    first = tally.rounds[0]
    assert first.counts == {0: 1, 1: 1, 2: 1}
    assert first.eliminated == 2
    assert tally.rounds[1].counts == {0: 2, 1: 1}
    assert tally.trace_lines(e) == [
        "round 1: counts m1:1 m2:1 m3:1; eliminated=m3",
        "round 2: counts m1:2 m2:1; winner=m1",
    ]


def test_example1_orders(example1):
    assert stv_order(Election(3, example1.women)) == [0, 1, 2]
    assert stv_order(Election(3, example1.men)) == [1, 0, 2]
    assert popularity_orders(example1) == ([0, 1, 2], [1, 0, 2])


def test_singleton_and_unanimous_orders():
    assert popularity_orders(Profile(((0,),), ((0,),))) == ([0], [0])
    n = 5
    common = (3, 1, 4, 0, 2)
    rng = random.Random(0)
    men = tuple(tuple(rng.sample(range(n), n)) for _ in range(n))
    p = Profile(men, (common,) * n)
    assert popularity_orders(p)[0] == list(common)


def test_election_validation():
    with pytest.raises(ValueError):
        Election(2, ((0, 0),))
    with pytest.raises(ValueError):
        Election(0, ())
    with pytest.raises(ValueError):
        Election(2, ((0, 1),) * 4, quota=2)
    assert Election(2, ((0, 1),) * 4, quota=3).quota == 3
    assert majority_quota(4) == 3 and majority_quota(5) == 3


def test_index_last_is_eliminated_on_ties():
    # four candidates, one first preference each: the last index goes first
    ballots = ((0, 1, 2, 3), (1, 0, 2, 3), (2, 0, 1, 3), (3, 1, 0, 2))
    tally = stv_tally(Election(4, ballots))
    assert tally.rounds[0].eliminated == 3


def test_lazy_order_is_a_generator(example1):
    it = stv_rule(example1.women, 3)
    assert next(iter(it)) == 0
    assert list(iter_stv_order(Election(3, example1.women))) == [0, 1, 2]


def test_plurality_and_registry(example1):
    assert plurality_rule(((1, 0, 2), (1, 2, 0), (0, 1, 2)), 3) == [1, 0, 2]
    assert get_rule("plurality") is plurality_rule
    with pytest.raises(ValueError):
        get_rule("borda")


@given(elections())
@settings(max_examples=150)
def test_order_matches_recounting_oracle(e):
    assert stv_order(e) == stv_order_oracle(e.ballots, e.n_candidates)


@given(elections(), st.randoms(use_true_random=False))
@settings(max_examples=100)
def test_winner_is_anonymous(e, rnd):
    shuffled = list(e.ballots)
    rnd.shuffle(shuffled)
    assert stv_winner(Election(e.n_candidates, tuple(shuffled))) == stv_winner(e)


@given(elections())
@settings(max_examples=100)
def test_order_tail_reruns_without_winner(e):
    order = stv_order(e)
    assert sorted(order) == list(range(e.n_candidates))
    rest = [c for c in range(e.n_candidates) if c != order[0]]
    if rest:
        assert stv_tally(e, alive=rest).winner == order[1]
    else:
        with pytest.raises(ValueError):
            stv_tally(e, alive=rest)
