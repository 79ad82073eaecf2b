from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import stable_wives
from stablemarriage.core import (
    BlockingPair,
    BoundExceeded,
    Matching,
    Profile,
    ProfileError,
    all_matchings,
    all_stable_matchings,
    blocking_pairs,
    format_profile,
    is_stable,
    matching_from_json,
    matching_from_wives,
    matching_to_json,
    parse_profile,
    profile_from_json,
    profile_to_json,
    swap_genders,
)
from stablemarriage.gale_shapley import female_optimal, male_optimal
from stablemarriage.generators import random_profile


@st.composite
def profiles(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    perm = st.permutations(list(range(n)))
    men = tuple(tuple(draw(perm)) for _ in range(n))
    women = tuple(tuple(draw(perm)) for _ in range(n))
    return Profile(men, women)


def test_parse_example1(example1):
    assert example1.n == 3
    assert example1.men[0] == (0, 1, 2)
    assert example1.women[1] == (2, 0, 1)


def test_parse_singleton_with_semicolons():
    p = parse_profile("n=1; m 1: 1; w 1: 1")
    assert p == Profile(((0,),), ((0,),))


def test_duplicate_entry_is_rejected():
    with pytest.raises(ProfileError, match="duplicate entry"):
        parse_profile("m 1: 1 1 2")


def test_errors_carry_line_numbers():
    text = "n=2\nm 1: 1 2\nm 2: 1 3\nw 1: 1 2\nw 2: 2 1\n"
    with pytest.raises(ProfileError) as info:
        parse_profile(text)
    assert info.value.line == 3
    assert str(info.value).startswith("line 3:")


@pytest.mark.parametrize(
    "text",
    [
        "n=2\nm 1: 1 2\nw 1: 1 2\nw 2: 2 1\n",  # missing m 2
        "n=2\nm 1: 1 2\nm 1: 2 1\nw 1: 1 2\nw 2: 2 1\n",
        "n=2\nm 3: 1 2\n",
        "n=x\n",
        "q 1: 1\n",
        "",
    ],
)
def test_malformed_inputs(text):
    with pytest.raises(ProfileError):
        parse_profile(text)


def test_json_mirror_round_trip(example1):
    data = profile_to_json(example1)
    assert data["men"][0] == [1, 2, 3]
    assert profile_from_json(data) == example1
    assert parse_profile('{"n": 1, "men": [[1]], "women": [[1]]}').n == 1
    with pytest.raises(ProfileError):
        profile_from_json({"n": 2, "men": [[1]], "women": [[1]]})


@given(profiles())
def test_text_format_round_trips(p):
    assert parse_profile(format_profile(p)) == p


def test_rank_tables(example1):
    p = example1
    for m, lst in enumerate(p.men):
        for k, w in enumerate(lst):
            assert p.man_rank[m][w] == k + 1
    assert p.woman_rank[1] == (2, 3, 1)


def test_swap_genders(example1):
    s = swap_genders(example1)
    assert s.men == example1.women and s.women == example1.men
    assert swap_genders(s) == example1
    same = Profile(example1.men, example1.men)
    assert swap_genders(same) == same


def test_blocking_pairs_example1(example1):
    assert is_stable(example1, matching_from_wives([1, 2, 3]))
    bad = matching_from_wives([2, 1, 3])
    assert not is_stable(example1, bad)
    assert BlockingPair(0, 0) in blocking_pairs(example1, bad)


def test_singleton_matching_is_stable():
    p = Profile(((0,),), ((0,),))
    assert is_stable(p, Matching((0,)))
    assert all_stable_matchings(p) == [Matching((0,))]


def test_matching_validation_and_json():
    with pytest.raises(ValueError):
        Matching((0, 0))
    mu = matching_from_wives([2, 3, 1])
    assert matching_to_json(mu) == [[1, 2], [2, 3], [3, 1]]
    assert matching_from_json(matching_to_json(mu)) == mu
    assert mu.transpose().transpose() == mu
    assert mu.husband == (2, 0, 1)


def test_all_stable_matchings_example1(example1):
    found = all_stable_matchings(example1)
    assert matching_from_wives([1, 2, 3]) in found
    assert matching_from_wives([1, 3, 2]) in found


def test_isomorphic_preferences_have_one_stable_matching():
    # every man and woman ranks partners so that (i, i) is mutually first
    men = ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    p = Profile(men, men)
    assert len(all_stable_matchings(p)) == 1


def test_enumeration_bound():
    p = random_profile(random.Random(1), 4)
    with pytest.raises(BoundExceeded):
        all_stable_matchings(p, bound=3)


@given(profiles(max_n=5))
@settings(max_examples=60)
def test_stability_agrees_with_blocking_pairs_exhaustively(p):
    for mu in all_matchings(p.n):
        assert is_stable(p, mu) == (not blocking_pairs(p, mu))


@given(profiles(max_n=5))
@settings(max_examples=80)
def test_enumeration_matches_independent_scan(p):
    found = all_stable_matchings(p)
    assert [mu.wife for mu in found] == stable_wives(p)
    assert found and male_optimal(p) in found and female_optimal(p) in found


@given(profiles(max_n=5))
@settings(max_examples=40)
def test_stability_survives_gender_swap(p):
    s = swap_genders(p)
    for perm in itertools.islice(itertools.permutations(range(p.n)), 30):
        mu = Matching(perm)
        assert is_stable(p, mu) == is_stable(s, mu.transpose())
