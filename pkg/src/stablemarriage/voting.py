"""Single-winner STV, iterated into a full ordering, and popularity orders.

Conventions: a candidate wins once its count reaches the quota (>=); the
fewest-vote candidate is eliminated, ties going against the highest index;
several candidates at or above quota resolve by count, then lowest index.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .core import Profile

# (ballots over candidates 0..k-1, k) -> candidate order, most popular first.
# May be lazy; consumers that need every position call list() on it.
VotingRule = Callable[[Sequence[Sequence[int]], int], Iterable[int]]


def majority_quota(n_ballots: int) -> int:
    return n_ballots // 2 + 1


@dataclass(frozen=True)
class Election:
    n_candidates: int
    ballots: tuple[tuple[int, ...], ...]
    quota: int | None = None
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "ballots", tuple(tuple(b) for b in self.ballots))
        if self.n_candidates < 1:
            raise ValueError("an election needs at least one candidate")
        for b in self.ballots:
            if sorted(b) != list(range(self.n_candidates)):
                raise ValueError(f"ballot {b} does not rank every candidate exactly once")
        if self.quota is None:
            object.__setattr__(self, "quota", majority_quota(len(self.ballots)))
        elif self.quota < -(-(len(self.ballots) + 1) // 2):
            raise ValueError(f"quota {self.quota} is below half the electorate")
        if self.names is not None and len(self.names) != self.n_candidates:
            raise ValueError("one name per candidate required")

    def name(self, c: int) -> str:
        return self.names[c] if self.names else str(c + 1)


@dataclass
class Round:
    counts: dict[int, int]
    eliminated: int | None = None
    winner: int | None = None


@dataclass
class Tally:
    winner: int
    rounds: list[Round] = field(default_factory=list)

    def trace_lines(self, e: Election) -> list[str]:
        lines = []
        for k, rnd in enumerate(self.rounds, start=1):
            counts = " ".join(f"{e.name(c)}:{v}" for c, v in rnd.counts.items())
            if rnd.winner is not None:
                outcome = f"winner={e.name(rnd.winner)}"
            else:
                outcome = f"eliminated={e.name(rnd.eliminated)}"
            lines.append(f"round {k}: counts {counts}; {outcome}")
        return lines


def _tally(ballots: Sequence[Sequence[int]], alive: Sequence[int], quota: int, record: bool) -> Tally:
    alive = sorted(alive)
    if not alive:
        raise ValueError("an election needs at least one candidate")
    live = set(alive)
    pos = [0] * len(ballots)
    piles: dict[int, list[int]] = {c: [] for c in alive}

    def place(b: int) -> None:
        ballot = ballots[b]
        i = pos[b]
        while ballot[i] not in live:
            i += 1
        pos[b] = i
        piles[ballot[i]].append(b)

    for b in range(len(ballots)):
        place(b)

    rounds: list[Round] = []
    while True:
        counts = {c: len(piles[c]) for c in alive}
        top = max(counts.values())
        if top >= quota or len(alive) == 1:
            winner = min(c for c in alive if counts[c] == top)
            if record:
                rounds.append(Round(counts, winner=winner))
            return Tally(winner, rounds)
        low = min(counts.values())
        loser = max(c for c in alive if counts[c] == low)
        if record:
            rounds.append(Round(counts, eliminated=loser))
        alive.remove(loser)
        live.discard(loser)
        for b in piles.pop(loser):
            place(b)


def stv_tally(e: Election, alive: Sequence[int] | None = None) -> Tally:
    """STV with the full round trace, restricted to ``alive`` candidates."""
    if alive is None:
        alive = range(e.n_candidates)
    return _tally(e.ballots, alive, e.quota, record=True)


def stv_winner(e: Election) -> int:
    return _tally(e.ballots, range(e.n_candidates), e.quota, record=False).winner


def iter_stv_order(e: Election) -> Iterator[int]:
    """Repeatedly elect and remove the STV winner.

    The quota stays fixed by the (unchanged) number of ballots.
    """
    remaining = list(range(e.n_candidates))
    while remaining:
        w = _tally(e.ballots, remaining, e.quota, record=False).winner
        yield w
        remaining.remove(w)


def stv_order(e: Election) -> list[int]:
    return list(iter_stv_order(e))


def stv_rule(ballots: Sequence[Sequence[int]], n_candidates: int) -> Iterator[int]:
    return iter_stv_order(Election(n_candidates, tuple(ballots)))


def plurality_rule(ballots: Sequence[Sequence[int]], n_candidates: int) -> list[int]:
    """First-place counts, descending; ties by lowest index."""
    counts = [0] * n_candidates
    for b in ballots:
        counts[b[0]] += 1
    return sorted(range(n_candidates), key=lambda c: (-counts[c], c))


RULES: dict[str, VotingRule] = {"stv": stv_rule, "plurality": plurality_rule}


def get_rule(name: str) -> VotingRule:
    try:
        return RULES[name]
    except KeyError:
        raise ValueError(f"unknown voting rule {name!r}; expected one of {sorted(RULES)}") from None


def popularity_orders(p: Profile, rule: VotingRule = stv_rule) -> tuple[list[int], list[int]]:
    """Order the men by the women's ballots and the women by the men's."""
    return list(rule(p.women, p.n)), list(rule(p.men, p.n))
