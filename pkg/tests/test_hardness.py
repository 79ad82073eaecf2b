from __future__ import annotations

import itertools
import random

import pytest

from oracles import hamiltonian_by_permutations
from stablemarriage.core import BoundExceeded, Profile, is_stable
from stablemarriage.gale_shapley import female_optimal, male_optimal
from stablemarriage.generators import random_digraph
from stablemarriage.hardness import (
    DiGraph,
    HTShapeError,
    build_reduction_profile,
    decode_graph,
    decode_path,
    encode_path_report,
    format_graph,
    graph_from_edges,
    hamiltonian_path_oracle,
    ht_procedure,
    parse_graph,
    with_w1_report,
)


def ht_shell(g: int, v_lists) -> Profile:
    """Size g+3 profile with the given v-women lists and ascending tails elsewhere."""
    size = g + 3
    asc = tuple(range(size))
    women = [asc, asc] + [tuple(v) for v in v_lists]
    women.append(asc)
    return Profile((asc,) * size, tuple(women))


def test_decode_edgeless_and_complete():
    g = 3
    end = g + 2
    first = [(2 + i, end) for i in range(g)]
    edgeless = ht_shell(g, [tuple(h) + tuple(x for x in range(6) if x not in h) for h in first])
    assert decode_graph(edgeless).edges == frozenset()
    last = [(2 + i,) + tuple(x for x in range(6) if x not in (2 + i, end)) + (end,) for i in range(g)]
    complete = ht_shell(g, last)
    assert decode_graph(complete).is_complete()


def test_digraph_validation_and_format():
    with pytest.raises(ValueError):
        DiGraph(2, frozenset({(0, 0)}))
    g = graph_from_edges(3, [(1, 2), (2, 3)])
    assert parse_graph(format_graph(g)) == g
    assert parse_graph("# c\nn=2\ne 1 2\n").edges == frozenset({(0, 1)})
    with pytest.raises(ValueError, match="line 2"):
        parse_graph("n=2\nx 1 2\n")


def test_round_trip_random_graphs():
    rng = random.Random(1)
    for _ in range(100):
        g = random_digraph(rng, rng.randint(2, 7))
        assert decode_graph(build_reduction_profile(g)) == g


def test_reduction_first_choices_and_optimal_matchings():
    rng = random.Random(2)
    for _ in range(50):
        g = random_digraph(rng, rng.randint(2, 6))
        hp = build_reduction_profile(g)
        assert len({lst[0] for lst in hp.men}) == hp.n
        assert len({lst[0] for lst in hp.women}) == hp.n
        mo, fo = male_optimal(hp), female_optimal(hp)
        assert all(mo.wife[m] == hp.men[m][0] for m in range(hp.n))
        assert all(fo.husband[w] == hp.women[w][0] for w in range(hp.n))
        assert decode_path(hp) is None
        mu = ht_procedure(hp)
        assert mu == mo and mu.husband[0] == 1


def test_reduction_rejects_complete_graph():
    with pytest.raises(ValueError):
        build_reduction_profile(graph_from_edges(2, [(1, 2), (2, 1)]))
    with pytest.raises(ValueError):
        build_reduction_profile(DiGraph(1, frozenset()))


def test_spelled_path_is_decoded_and_rewarded():
    g = graph_from_edges(4, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)])
    hp = build_reduction_profile(g)
    path = hamiltonian_path_oracle(g)
    assert path is not None
    manipulated = with_w1_report(hp, encode_path_report(hp, path))
    assert decode_path(manipulated) == path
    mu = ht_procedure(manipulated)
    assert mu == female_optimal(manipulated) and mu.husband[0] == 0
    assert is_stable(manipulated, mu)


def test_non_p_man_in_path_slots():
    g = graph_from_edges(3, [(1, 2), (2, 3)])
    hp = build_reduction_profile(g)
    report = (0, 2, 1, 3, 4, 5)  # m2 sits in a successor slot
    assert decode_path(with_w1_report(hp, report)) is None


def test_edgeless_graph_always_male_optimal():
    g = DiGraph(3, frozenset())
    hp = build_reduction_profile(g)
    for report in itertools.permutations(range(hp.n)):
        q = with_w1_report(hp, report)
        assert ht_procedure(q) == male_optimal(q)


def test_ht_requires_size():
    with pytest.raises(HTShapeError):
        ht_procedure(Profile(((0,),), ((0,),)))


def test_hamiltonian_oracle():
    cycle = graph_from_edges(3, [(1, 2), (2, 3), (3, 1)])
    path = hamiltonian_path_oracle(cycle)
    assert path is not None and cycle.is_hamiltonian_path(path)
    assert hamiltonian_path_oracle(DiGraph(3, frozenset())) is None
    with pytest.raises(BoundExceeded):
        hamiltonian_path_oracle(DiGraph(11, frozenset()))
    rng = random.Random(3)
    for _ in range(60):
        g = random_digraph(rng, 6, density=rng.choice([0.2, 0.35, 0.5]))
        found = hamiltonian_path_oracle(g)
        assert (found is not None) == hamiltonian_by_permutations(g.n, g.edges)
        if found is not None:
            assert g.is_hamiltonian_path(found)


def test_ht_output_is_stable_on_arbitrary_lists():
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(4, 8)
        men = tuple(tuple(rng.sample(range(n), n)) for _ in range(n))
        women = tuple(tuple(rng.sample(range(n), n)) for _ in range(n))
        p = Profile(men, women)
        assert is_stable(p, ht_procedure(p))
