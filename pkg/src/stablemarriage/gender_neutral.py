"""Gender signatures and the gender-neutralising pre-round.

A signature canonicalises one gender's preference lists.  The peer-indifferent
variant takes the lexicographically least vector over every choice of anchor
member, renaming the other gender so the anchor's list reads 1..n and sorting
the remaining members' renamed lists.  The simple variant is the plain
concatenation in index order.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Sequence

from .core import MEN, WOMEN, Matching, Profile, swap_genders

PEER_INDIFFERENT = "peer-indifferent"
SIMPLE = "simple"
SIGNATURE_MODES = (PEER_INDIFFERENT, SIMPLE)

Procedure = Callable[[Profile], Matching]


@dataclass(frozen=True, order=True)
class Signature:
    digits: tuple[int, ...]

    def __str__(self) -> str:
        if all(d <= 9 for d in self.digits):
            return "".join(map(str, self.digits))
        return " ".join(map(str, self.digits))


def _canonical(lists: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], list[int]]:
    """Least signature vector plus the member order that realises it.

    Members with identical renamed blocks keep index order; among anchors that
    reach the same vector the lowest index wins.
    """
    n = len(lists)
    best: tuple[int, ...] | None = None
    best_order: list[int] = []
    for anchor in range(n):
        rename = [0] * n
        for pos, x in enumerate(lists[anchor]):
            rename[x] = pos + 1
        blocks = sorted(
            (tuple(rename[x] for x in lists[k]), k) for k in range(n) if k != anchor
        )
        vec = tuple(range(1, n + 1)) + tuple(d for block, _ in blocks for d in block)
        if best is None or vec < best:
            best = vec
            best_order = [anchor] + [k for _, k in blocks]
    return best, best_order


def gender_signature(p: Profile, gender: str) -> Signature:
    return Signature(_canonical(p.prefs(gender))[0])


def canonical_order(p: Profile, gender: str) -> list[int]:
    """Members of ``gender`` in the order their blocks appear in the signature."""
    return _canonical(p.prefs(gender))[1]


def simple_signature(p: Profile, gender: str) -> Signature:
    return Signature(tuple(x + 1 for lst in p.prefs(gender) for x in lst))


def signatures(p: Profile, mode: str = PEER_INDIFFERENT) -> tuple[Signature, Signature]:
    """(male signature, female signature) under the chosen variant."""
    if mode == PEER_INDIFFERENT:
        return gender_signature(p, MEN), gender_signature(p, WOMEN)
    if mode == SIMPLE:
        return simple_signature(p, MEN), simple_signature(p, WOMEN)
    raise ValueError(f"unknown signature mode {mode!r}; expected one of {SIGNATURE_MODES}")


def gn_rule(p: Profile, mode: str = PEER_INDIFFERENT) -> tuple[Profile, bool]:
    """Swap the genders iff the male signature is strictly smaller."""
    male, female = signatures(p, mode)
    if male < female:
        return swap_genders(p), True
    return p, False


def _oriented_choice(p: Profile, candidates: Sequence[Matching]) -> Matching:
    # Transposition-covariant choice: the side with the larger plain
    # concatenation reads the candidates from the other side.  Only a profile
    # equal to its own gender swap falls through, and there an involution is
    # the one neutral answer when available.
    male, female = signatures(p, SIMPLE)
    if male < female:
        return min(candidates, key=lambda mu: mu.wife)
    if male > female:
        return min(candidates, key=lambda mu: mu.husband)
    symmetric = [mu for mu in candidates if mu.wife == mu.husband]
    return min(symmetric or candidates, key=lambda mu: mu.wife)


def gn_wrap(proc: Procedure, mode: str = PEER_INDIFFERENT) -> Procedure:
    """Make ``proc`` gender neutral by running it behind the gn-rule.

    When the two signatures tie, the plain rule would leave ``p`` and its swap
    both unswapped, which is only neutral if the stable matching is unique.  In
    that case both orientations are run and a transposition-covariant choice is
    made between them.
    """

    @functools.wraps(proc)
    def wrapped(p: Profile) -> Matching:
        male, female = signatures(p, mode)
        if male < female:
            return proc(swap_genders(p)).transpose()
        if male > female:
            return proc(p)
        direct = proc(p)
        flipped = proc(swap_genders(p)).transpose()
        if direct == flipped:
            return direct
        return _oriented_choice(p, [direct, flipped])

    base = getattr(proc, "__name__", "proc")
    wrapped.__name__ = f"gn:{base}"
    wrapped.__qualname__ = wrapped.__name__
    return wrapped


def signature_tiebreak(p: Profile, candidates: Sequence[Matching]) -> Matching:
    """Pick one of several stable matchings in a gender-neutral way.

    The gender with the larger signature decides: its members, read in
    canonical order, compare the candidates by their partners' ranks.
    """
    unique = list(dict.fromkeys(candidates))
    if not unique:
        raise ValueError("signature_tiebreak needs at least one candidate")
    if len(unique) == 1:
        return unique[0]
    male, female = signatures(p, PEER_INDIFFERENT)
    if male == female:
        return _oriented_choice(p, unique)
    gender = MEN if male > female else WOMEN
    order = canonical_order(p, gender)
    rank = p.rank(gender)

    def key(mu: Matching) -> tuple[int, ...]:
        return tuple(rank[x][mu.partner(gender, x)] for x in order)

    return min(unique, key=key)
