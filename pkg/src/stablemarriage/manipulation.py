"""Single-agent manipulation: the universal scheme, exhaustive search, the
first/last rewrite against the rank-sum procedure, and the STV reduction profile."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .core import MEN, WOMEN, BoundExceeded, Matching, Profile
from .gale_shapley import female_optimal, gale_shapley, male_optimal

Procedure = Callable[[Profile], Matching]

DEFAULT_MANIPULATION_BOUND = 6
DEFAULT_REDUCTION_CAP = 600

STRICTLY_BETTER = "strictly-better"
UNCHANGED = "unchanged"
STRICTLY_WORSE = "strictly-worse"


@dataclass(frozen=True)
class Witness:
    """Male-optimal partner m, female-optimal partner n and the woman v."""

    m: int
    n: int
    v: int


@dataclass(frozen=True)
class ManipulationReport:
    gender: str
    agent: int
    truthful_partner: int
    manipulated_partner: int
    reported_list: tuple[int, ...]
    verdict: str

    def to_json(self) -> dict:
        own, other = ("m", "w") if self.gender == MEN else ("w", "m")
        return {
            "agent": f"{own}{self.agent + 1}",
            "truthful_partner": f"{other}{self.truthful_partner + 1}",
            "manipulated_partner": f"{other}{self.manipulated_partner + 1}",
            "reported_list": [x + 1 for x in self.reported_list],
            "verdict": self.verdict,
        }


def verdict(p: Profile, gender: str, agent: int, truthful: int, manipulated: int) -> str:
    rank = p.rank(gender)[agent]
    if rank[manipulated] < rank[truthful]:
        return STRICTLY_BETTER
    if rank[manipulated] > rank[truthful]:
        return STRICTLY_WORSE
    return UNCHANGED


def universally_manipulable_by(p: Profile, w: int) -> Witness | None:
    """Witness (m, n, v) if woman ``w`` can force her female-optimal partner.

    Adjacency is required in both men's lists: n ranks v immediately above w,
    and m ranks w immediately above v.
    """
    outcome = gale_shapley(p, MEN)
    if outcome.proposal_count(w) < 2:
        return None
    mo = outcome.matching
    m = mo.husband[w]
    n = female_optimal(p).husband[w]
    if m == n:
        return None
    v = mo.wife[n]
    wr, mr = p.woman_rank, p.man_rank
    if wr[v][m] >= wr[v][n]:
        return None
    if mr[n][w] != mr[n][v] + 1:
        return None
    if mr[m][v] != mr[m][w] + 1:
        return None
    return Witness(m, n, v)


def move_to_end(lst: Sequence[int], x: int) -> tuple[int, ...]:
    return tuple(y for y in lst if y != x) + (x,)


def universal_manipulation(p: Profile, w: int) -> Profile:
    """Move w's male-optimal partner to the bottom of her list."""
    witness = universally_manipulable_by(p, w)
    if witness is None:
        raise ValueError(f"profile is not universally manipulable by w{w + 1}")
    return p.with_list(WOMEN, w, move_to_end(p.women[w], witness.m))


def evaluate_report(
    proc: Procedure, p: Profile, gender: str, agent: int, reported: Sequence[int]
) -> ManipulationReport:
    truthful = proc(p).partner(gender, agent)
    got = proc(p.with_list(gender, agent, reported)).partner(gender, agent)
    return ManipulationReport(
        gender, agent, truthful, got, tuple(reported), verdict(p, gender, agent, truthful, got)
    )


def brute_force_manipulation(
    proc: Procedure,
    p: Profile,
    gender: str,
    agent: int,
    bound: int = DEFAULT_MANIPULATION_BOUND,
) -> ManipulationReport | None:
    """Try every reported list for one agent.

    Returns the report reaching the agent's best achievable partner (earliest
    list in lexicographic order among those) when it is strictly better than
    telling the truth, else None.
    """
    if p.n > bound:
        raise BoundExceeded(f"n={p.n} exceeds manipulation search bound {bound}")
    rank = p.rank(gender)[agent]
    truthful = proc(p).partner(gender, agent)
    best_rank = rank[truthful]
    best = None
    for reported in itertools.permutations(range(p.n)):
        got = proc(p.with_list(gender, agent, reported)).partner(gender, agent)
        if rank[got] < best_rank:
            best_rank = rank[got]
            best = (got, reported)
            if best_rank == 1:
                break
    if best is None:
        return None
    got, reported = best
    return ManipulationReport(gender, agent, truthful, got, reported, STRICTLY_BETTER)


def firstlast_heuristic(p: Profile, man: int) -> Profile:
    """Put the man's male-optimal partner first and female-optimal partner last."""
    best = male_optimal(p).wife[man]
    worst = female_optimal(p).wife[man]
    middle = [w for w in p.men[man] if w not in (best, worst)]
    tail = [worst] if worst != best else []
    return p.with_list(MEN, man, [best] + middle + tail)


# ---------------------------------------------------------------------------
# STV lexicographic-regret reduction from 3-COVER


@dataclass
class STVReduction:
    """The reduction profile plus the names behind every index.

    Women are indexed so that STV's index-last tie-break eliminates z1, z2 and
    the dummy women first.  Men n and p lead the men's index order.
    """

    universe: int
    subsets: tuple[tuple[int, ...], ...]
    men_names: list[str]
    women_names: list[str]
    men_heads: list[list[str]]
    women_heads: list[list[str]]
    manipulator_head: list[str]
    man_index: dict[str, int] = field(init=False)
    woman_index: dict[str, int] = field(init=False)

    def __post_init__(self):
        self.man_index = {name: i for i, name in enumerate(self.men_names)}
        self.woman_index = {name: i for i, name in enumerate(self.women_names)}

    @property
    def size(self) -> int:
        return len(self.men_names)

    @property
    def manipulator(self) -> int:
        return self.man_index["h"]

    def _complete(self, head: Sequence[str], index: dict[str, int]) -> tuple[int, ...]:
        ids = [index[x] for x in head]
        seen = set(ids)
        return tuple(ids + [i for i in range(self.size) if i not in seen])

    def report(self, head: Sequence[str]) -> tuple[int, ...]:
        """A full list for the manipulator starting with the named women."""
        return self._complete(head, self.woman_index)

    def cover_head(self, chosen: Iterable[int]) -> list[str]:
        """z1 first, then a_j at position j+1 for chosen j and b_j otherwise."""
        chosen = set(chosen)
        m = len(self.subsets)
        return ["z1"] + [f"a{j}" if j in chosen else f"b{j}" for j in range(1, m + 1)] + ["z2"]

    def profile(self, manipulator_head: Sequence[str] | None = None) -> Profile:
        head = self.manipulator_head if manipulator_head is None else list(manipulator_head)
        men = []
        for name, mhead in zip(self.men_names, self.men_heads):
            men.append(self._complete(head if name == "h" else mhead, self.woman_index))
        women = [self._complete(whead, self.man_index) for whead in self.women_heads]
        return Profile(tuple(men), tuple(women))


def build_stv_reduction(
    universe: int,
    subsets: Sequence[Iterable[int]],
    cap: int = DEFAULT_REDUCTION_CAP,
) -> STVReduction:
    """Assemble the men's and women's preference heads of the reduction.

    ``universe`` is |S| (elements 1..universe) and ``subsets`` the 3-element
    S_1..S_m.  Unlisted preferences are completed in ascending index order.
    One of the dummies voting (z_{1,1,k}, y) is replaced by a man voting
    (z2, y) so that z2, like every other woman, is somebody's first choice;
    the tally once the z-women are gone is unchanged.
    """
    n = universe
    sets = tuple(tuple(sorted(set(s))) for s in subsets)
    m = len(sets)
    if n < 3 or n % 3:
        raise ValueError("universe size must be a positive multiple of 3")
    if m < 1:
        raise ValueError("at least one subset is required")
    for s in sets:
        if len(s) != 3 or not all(1 <= k <= n for k in s):
            raise ValueError(f"subset {s} is not a 3-element subset of 1..{n}")

    men: list[tuple[str, list[str]]] = []
    dummies: list[str] = []

    def dummy(i: int, j: int, k: int, rest: list[str]) -> None:
        z = f"z{i},{j},{k}"
        dummies.append(z)
        men.append((f"x{i},{j},{k}", [z] + rest))

    men.append(("n", ["y"]))
    for k in range(1, 12 * m - 1):
        dummy(1, 1, k, ["y"])
    men.append(("x", ["z2", "y"]))
    men.append(("p", ["w", "y", "z1"]))
    for k in range(1, 12 * m - 1):
        dummy(2, 1, k, ["w", "y"])
    men.append(("q", ["e0", "w", "y"]))
    for k in range(1, 10 * m + 2 * n // 3):
        dummy(3, 1, k, ["e0", "w", "y"])
    for j in range(1, n + 1):
        men.append((f"f{j}", [f"e{j}", "w", "y"]))
        for k in range(1, 12 * m - 2):
            dummy(4, j, k, [f"e{j}", "w", "y"])
    for j in range(1, m + 1):
        men.append((f"r{j}", [f"g{j}", "w", "y"]))
        for k in range(1, 12 * m):
            dummy(5, j, k, [f"g{j}", "w", "y"])
    for j, s in enumerate(sets, start=1):
        a, b, c, d, g = f"a{j}", f"b{j}", f"c{j}", f"d{j}", f"g{j}"
        men.append((f"c{j}*", [c, d, "w", "y"]))
        for k in range(1, 6 * m + 4 * j - 5):
            dummy(6, j, k, [c, d, "w", "y"])
        for k in s:
            dummy(7, j, k, [c, f"e{k}", "w", "y"])
            dummy(8, j, k, [c, f"e{k}", "w", "y"])
        men.append((f"d{j}*", [d, c, "w", "y"]))
        for k in range(1, 6 * m + 4 * j - 1):
            dummy(9, j, k, [d, c, "w", "y"])
        dummy(10, j, 1, [d, "e0", "w", "y"])
        dummy(11, j, 1, [d, "e0", "w", "y"])
        men.append((f"a{j}*", [a, g, "w", "y"]))
        for k in range(1, 6 * m + 4 * j - 3):
            dummy(12, j, k, [a, g, "w", "y"])
        dummy(13, j, 1, [a, c, "w", "y"])
        dummy(14, j, 1, [a, b, "w", "y"])
        dummy(15, j, 1, [a, b, "w", "y"])
        men.append((f"b{j}*", [b, g, "w", "y"]))
        for k in range(1, 6 * m + 4 * j - 3):
            dummy(16, j, k, [b, g, "w", "y"])
        dummy(17, j, 1, [b, d, "w", "y"])
        dummy(18, j, 1, [b, a, "w", "y"])
        dummy(19, j, 1, [b, a, "w", "y"])
    men.append(("h", ["z1", "z2"]))

    women_names = ["y", "w"] + [f"e{k}" for k in range(n + 1)] + [f"g{j}" for j in range(1, m + 1)]
    for j in range(1, m + 1):
        women_names += [f"a{j}", f"b{j}", f"c{j}", f"d{j}"]
    women_names += ["z1", "z2"] + dummies

    size = len(women_names)
    if len(men) != size:
        raise AssertionError(f"construction is not square: {len(men)} men, {size} women")
    if size > cap:
        raise BoundExceeded(f"reduction profile would have {size} people per side (cap {cap})")

    # men n and p first so STV over the women's ballots orders them first and second
    lead = ["n", "p", "q", "h", "x"] + [f"r{j}" for j in range(1, m + 1)]
    by_name = dict(men)
    men_names = lead + [name for name, _ in men if name not in lead]
    men_heads = [by_name[name] for name in men_names]

    fixed_first = {"y": "n", "w": "q", "z1": "p", "z2": "h"}
    fixed_first.update({f"g{j}": f"r{j}" for j in range(1, m + 1)})
    free_men = iter(name for name in men_names if name not in fixed_first.values())
    women_heads = []
    for woman in women_names:
        first = fixed_first.get(woman) or next(free_men)
        if woman == "w":
            head = [first, "p", "n"]
        else:
            head = [first] + [x for x in ("n", "p") if x != first]
        women_heads.append(head)

    truthful = ["z1", "z2"] + [f"b{j}" for j in range(1, m + 1)]
    return STVReduction(n, sets, men_names, women_names, men_heads, women_heads, truthful)


def build_stv_reduction_profile(
    universe: int, subsets: Sequence[Iterable[int]], cap: int = DEFAULT_REDUCTION_CAP
) -> Profile:
    return build_stv_reduction(universe, subsets, cap).profile()
