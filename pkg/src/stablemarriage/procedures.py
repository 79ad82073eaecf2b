"""Voting-informed stable marriage procedures and the procedure registry."""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .core import MEN, WOMEN, Matching, Profile, is_stable
from .gale_shapley import female_optimal, male_optimal
from .gender_neutral import PEER_INDIFFERENT, gn_wrap, signature_tiebreak
from .hardness import ht_procedure
from .voting import VotingRule, get_rule, stv_rule

Procedure = Callable[[Profile], Matching]


def sum_score(p: Profile, mu: Matching) -> int:
    """Men's ranks of their wives plus women's ranks of their husbands."""
    if mu.n != p.n:
        raise ValueError("matching does not fit profile")
    return sum(p.man_rank[m][w] for m, w in mu.pairs()) + sum(
        p.woman_rank[w][m] for m, w in mu.pairs()
    )


def _extremes(p: Profile) -> list[Matching]:
    return list(dict.fromkeys([male_optimal(p), female_optimal(p)]))


def score_procedure(p: Profile) -> Matching:
    """Male or female optimal, whichever has the smaller rank sum."""
    candidates = _extremes(p)
    best = min(sum_score(p, mu) for mu in candidates)
    tied = [mu for mu in candidates if sum_score(p, mu) == best]
    return signature_tiebreak(p, tied)


def score_vector(p: Profile, mu: Matching, gender: str, order: Sequence[int]) -> tuple[int, ...]:
    rank = p.rank(gender)
    return tuple(rank[x][mu.partner(gender, x)] for x in order)


def score_vectors(
    p: Profile, mu: Matching, orders: tuple[Sequence[int], Sequence[int]]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(male, female) score vectors; ``orders`` is (men order, women order)."""
    men_order, women_order = orders
    return score_vector(p, mu, MEN, men_order), score_vector(p, mu, WOMEN, women_order)


def overall_score(male: tuple[int, ...], female: tuple[int, ...]) -> tuple[int, ...]:
    return max(male, female)


class _LazyOrder:
    """Materialises a (possibly lazy) popularity order only as far as read."""

    def __init__(self, order: Iterable[int]):
        self._source = iter(order)
        self.items: list[int] = []

    def __getitem__(self, i: int) -> int:
        while len(self.items) <= i:
            self.items.append(next(self._source))
        return self.items[i]

    def full(self, n: int) -> list[int]:
        self[n - 1]
        return self.items


def _lex_cmp(f: Callable[[int], int], g: Callable[[int], int], n: int) -> int:
    for i in range(n):
        a, b = f(i), g(i)
        if a != b:
            return -1 if a < b else 1
    return 0


class ScoredCandidate:
    """A candidate matching with score vectors read lazily against the orders.

    Lexicographic comparisons usually settle within a few positions, so large
    profiles never need complete popularity orders.
    """

    def __init__(self, p: Profile, matching: Matching, men_order: _LazyOrder, women_order: _LazyOrder):
        self.p = p
        self.matching = matching
        self._orders = {MEN: men_order, WOMEN: women_order}
        self._overall_gender: str | None = None

    def entry(self, gender: str, i: int) -> int:
        x = self._orders[gender][i]
        return self.p.rank(gender)[x][self.matching.partner(gender, x)]

    def overall_entry(self, i: int) -> int:
        if self._overall_gender is None:
            c = _lex_cmp(lambda k: self.entry(MEN, k), lambda k: self.entry(WOMEN, k), self.p.n)
            self._overall_gender = MEN if c >= 0 else WOMEN
        return self.entry(self._overall_gender, i)

    @property
    def male(self) -> tuple[int, ...]:
        return tuple(self.entry(MEN, i) for i in range(self.p.n))

    @property
    def female(self) -> tuple[int, ...]:
        return tuple(self.entry(WOMEN, i) for i in range(self.p.n))

    @property
    def overall(self) -> tuple[int, ...]:
        return overall_score(self.male, self.female)


@dataclass(frozen=True)
class LexminResult:
    chosen: Matching
    scored: list[ScoredCandidate]
    men_order: _LazyOrder
    women_order: _LazyOrder

    def orders(self) -> tuple[list[int], list[int]]:
        """Complete popularity orders (forces the lazy computation)."""
        n = self.chosen.n
        return self.men_order.full(n), self.women_order.full(n)


def lexmin_regret_detail(
    p: Profile,
    rule: VotingRule = stv_rule,
    candidates: Sequence[Matching] | None = None,
) -> LexminResult:
    if candidates is None:
        candidates = _extremes(p)
    else:
        candidates = list(dict.fromkeys(candidates))
        if not candidates:
            raise ValueError("lexmin_regret needs at least one candidate")
        for mu in candidates:
            if not is_stable(p, mu):
                raise ValueError(f"candidate {mu} is not stable")
    men_order = _LazyOrder(rule(p.women, p.n))
    women_order = _LazyOrder(rule(p.men, p.n))
    scored = [ScoredCandidate(p, mu, men_order, women_order) for mu in candidates]

    def cmp(a: ScoredCandidate, b: ScoredCandidate) -> int:
        return _lex_cmp(a.overall_entry, b.overall_entry, p.n)

    best = min(scored, key=functools.cmp_to_key(cmp))
    tied = [s.matching for s in scored if cmp(s, best) == 0]
    return LexminResult(signature_tiebreak(p, tied), scored, men_order, women_order)


def lexmin_regret(
    p: Profile,
    rule: VotingRule = stv_rule,
    candidates: Sequence[Matching] | None = None,
) -> Matching:
    """The candidate whose worse-off popularity-ordered score vector is least."""
    return lexmin_regret_detail(p, rule, candidates).chosen


# ---------------------------------------------------------------------------
# registry


def _named(fn: Procedure, name: str) -> Procedure:
    fn.__name__ = name
    fn.__qualname__ = name
    return fn


def gs_male(p: Profile) -> Matching:
    return male_optimal(p)


def gs_female(p: Profile) -> Matching:
    return female_optimal(p)


def lexmin_procedure(rule_name: str) -> Procedure:
    rule = get_rule(rule_name)
    return _named(lambda p: lexmin_regret(p, rule), f"lexmin:{rule_name}")


_BASE: dict[str, Procedure] = {
    "gs-male": _named(gs_male, "gs-male"),
    "gs-female": _named(gs_female, "gs-female"),
    "score": _named(score_procedure, "score"),
    "ht": _named(ht_procedure, "ht"),
}

# The six procedures that run on any square profile; ``ht`` needs n >= 4.
STANDARD_PROCEDURES = ("gs-male", "gs-female", "gn:gs-male", "gn:gs-female", "score", "lexmin:stv")


def get_procedure(name: str, signature_mode: str = PEER_INDIFFERENT) -> Procedure:
    """Resolve ``gs-male``, ``gs-female``, ``score``, ``ht``, ``lexmin:<rule>``
    and ``gn:<name>`` (nestable)."""
    if name.startswith("gn:"):
        return _named(gn_wrap(get_procedure(name[3:], signature_mode), signature_mode), name)
    if name.startswith("lexmin:"):
        return lexmin_procedure(name[len("lexmin:"):])
    try:
        return _BASE[name]
    except KeyError:
        raise ValueError(f"unknown procedure {name!r}") from None


def registered_procedures(n: int | None = None) -> dict[str, Procedure]:
    """Standard procedures, plus ``ht`` when the profile size allows it."""
    procs = {name: get_procedure(name) for name in STANDARD_PROCEDURES}
    if n is not None and n >= 4:
        procs["ht"] = _BASE["ht"]
    return procs
