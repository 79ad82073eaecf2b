"""Deferred acceptance for either proposing side, with proposal traces."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .core import MEN, WOMEN, Matching, Profile, swap_genders


@dataclass(frozen=True)
class GSOutcome:
    matching: Matching
    proposers: str
    # receiver index -> proposers in the order their proposals were made,
    # rejected ones included
    proposals_received: dict[int, list[int]]

    def proposal_count(self, receiver: int) -> int:
        return len(self.proposals_received[receiver])


def _deferred_acceptance(
    proposer_lists: Sequence[Sequence[int]],
    receiver_rank: Sequence[Sequence[int]],
    order: Sequence[int] | None = None,
) -> tuple[list[int], dict[int, list[int]]]:
    n = len(proposer_lists)
    nxt = [0] * n
    held = [-1] * n  # receiver -> proposer currently held
    received: dict[int, list[int]] = {r: [] for r in range(n)}
    free = deque(range(n) if order is None else order)
    while free:
        q = free.popleft()
        r = proposer_lists[q][nxt[q]]
        nxt[q] += 1
        received[r].append(q)
        current = held[r]
        if current == -1:
            held[r] = q
        elif receiver_rank[r][q] < receiver_rank[r][current]:
            held[r] = q
            free.append(current)
        else:
            free.append(q)
    partner = [0] * n
    for r, q in enumerate(held):
        partner[q] = r
    return partner, received


def gale_shapley(p: Profile, proposers: str = MEN, order: Sequence[int] | None = None) -> GSOutcome:
    """Run deferred acceptance with ``proposers`` proposing.

    Free proposers are served first-in-first-out; ``order`` seeds the initial
    queue (default index order).  The resulting matching does not depend on it.
    The returned matching is always expressed man -> woman.
    """
    if proposers == MEN:
        wives, received = _deferred_acceptance(p.men, p.woman_rank, order)
        return GSOutcome(Matching(tuple(wives)), MEN, received)
    if proposers == WOMEN:
        husbands, received = _deferred_acceptance(p.women, p.man_rank, order)
        return GSOutcome(Matching(tuple(husbands)).transpose(), WOMEN, received)
    raise ValueError(f"unknown gender tag {proposers!r}")


def male_optimal(p: Profile) -> Matching:
    return gale_shapley(p, MEN).matching


def female_optimal(p: Profile) -> Matching:
    return gale_shapley(swap_genders(p), MEN).matching.transpose()
