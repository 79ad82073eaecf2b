"""Seeded random profiles and digraphs for the property suites.

All generation goes through ``random.Random`` (MT19937) so a seed reproduces
the same fixtures on any CPython.
"""
from __future__ import annotations

import random

from .core import MEN, WOMEN, Profile
from .gale_shapley import female_optimal, male_optimal
from .hardness import DiGraph
from .manipulation import Witness, universally_manipulable_by

GENERATOR_NAME = "python-random-mt19937"


def random_profile(rng: random.Random, n: int) -> Profile:
    men = tuple(tuple(rng.sample(range(n), n)) for _ in range(n))
    women = tuple(tuple(rng.sample(range(n), n)) for _ in range(n))
    return Profile(men, women)


def random_digraph(rng: random.Random, n: int, density: float = 0.5, complete_ok: bool = False) -> DiGraph:
    while True:
        edges = frozenset(
            (i, j) for i in range(n) for j in range(n) if i != j and rng.random() < density
        )
        g = DiGraph(n, edges)
        if complete_ok or not g.is_complete() or n < 2:
            return g


def _move_after(lst: list[int], anchor: int, x: int) -> list[int]:
    out = [y for y in lst if y != x]
    out.insert(out.index(anchor) + 1, x)
    return out


def plant_universal_pattern(p: Profile, w: int) -> Profile:
    """Rewrite a few lists towards the universal-manipulability pattern for ``w``.

    The result is not guaranteed to satisfy it; callers re-check.
    """
    mo, fo = male_optimal(p), female_optimal(p)
    m, n = mo.husband[w], fo.husband[w]
    if m == n:
        return p
    v = mo.wife[n]
    q = p.with_list(MEN, n, _move_after(list(p.men[n]), v, w))
    q = q.with_list(MEN, m, _move_after(list(q.men[m]), w, v))
    vl = list(q.women[v])
    if vl.index(m) > vl.index(n):
        i, j = vl.index(n), vl.index(m)
        vl[i], vl[j] = vl[j], vl[i]
        q = q.with_list(WOMEN, v, vl)
    return q


def universally_manipulable_profile(
    rng: random.Random, n: int, max_tries: int = 10_000
) -> tuple[Profile, int, Witness]:
    """Random profile that some woman can manipulate universally."""
    for _ in range(max_tries):
        p = random_profile(rng, n)
        for w in rng.sample(range(n), n):
            for q in (p, plant_universal_pattern(p, w)):
                witness = universally_manipulable_by(q, w)
                if witness is not None:
                    return q, w, witness
    raise RuntimeError(f"no universally manipulable profile found for n={n}")
