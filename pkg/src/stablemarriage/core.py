"""Profiles, matchings, stability checks and the brute-force enumeration oracle.

Indices are 0-based in memory and 1-based in every text/JSON format.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

MEN = "men"
WOMEN = "women"

DEFAULT_ENUMERATION_BOUND = 8


class ProfileError(ValueError):
    """Raised for malformed profile input; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BoundExceeded(ValueError):
    """A brute-force routine was asked to run above its configured size bound."""


def other_gender(gender: str) -> str:
    if gender == MEN:
        return WOMEN
    if gender == WOMEN:
        return MEN
    raise ValueError(f"unknown gender tag {gender!r}")


def _check_permutation(lst: Sequence[int], n: int) -> str | None:
    if len(lst) != n:
        return f"expected {n} entries, got {len(lst)}"
    seen = set()
    for x in lst:
        if not 0 <= x < n:
            return f"entry {x + 1} out of range 1..{n}"
        if x in seen:
            return f"duplicate entry {x + 1}"
        seen.add(x)
    return None


@dataclass(frozen=True)
class Profile:
    """n men's and n women's strict total orders, most-preferred first."""

    men: tuple[tuple[int, ...], ...]
    women: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        men = tuple(tuple(lst) for lst in self.men)
        women = tuple(tuple(lst) for lst in self.women)
        object.__setattr__(self, "men", men)
        object.__setattr__(self, "women", women)
        if len(men) == 0:
            raise ProfileError("profile must contain at least one man and one woman")
        if len(men) != len(women):
            raise ProfileError(f"{len(men)} men but {len(women)} women")
        n = len(men)
        for tag, lists in (("m", men), ("w", women)):
            for i, lst in enumerate(lists):
                problem = _check_permutation(lst, n)
                if problem:
                    raise ProfileError(f"{tag} {i + 1}: {problem}")

    @property
    def n(self) -> int:
        return len(self.men)

    def prefs(self, gender: str) -> tuple[tuple[int, ...], ...]:
        return self.men if gender == MEN else self.women

    @cached_property
    def man_rank(self) -> tuple[tuple[int, ...], ...]:
        """``man_rank[m][w]`` is the 1-based position of w in m's list."""
        return _rank_table(self.men)

    @cached_property
    def woman_rank(self) -> tuple[tuple[int, ...], ...]:
        return _rank_table(self.women)

    def rank(self, gender: str) -> tuple[tuple[int, ...], ...]:
        return self.man_rank if gender == MEN else self.woman_rank

    def with_list(self, gender: str, index: int, new_list: Sequence[int]) -> Profile:
        """Return a copy with one person's list replaced."""
        lists = list(self.prefs(gender))
        lists[index] = tuple(new_list)
        if gender == MEN:
            return Profile(tuple(lists), self.women)
        return Profile(self.men, tuple(lists))


def _rank_table(lists):
    n = len(lists)
    table = []
    for lst in lists:
        row = [0] * n
        for pos, x in enumerate(lst):
            row[x] = pos + 1
        table.append(tuple(row))
    return tuple(table)


@dataclass(frozen=True)
class Matching:
    """A perfect matching stored as ``wife[m]`` for each man m."""

    wife: tuple[int, ...]

    def __post_init__(self):
        wife = tuple(self.wife)
        object.__setattr__(self, "wife", wife)
        if sorted(wife) != list(range(len(wife))):
            raise ValueError(f"matching is not a bijection: {[w + 1 for w in wife]}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> Matching:
        pairs = list(pairs)
        wife = [-1] * len(pairs)
        for m, w in pairs:
            if not 0 <= m < len(pairs) or wife[m] != -1:
                raise ValueError("matching is not a bijection")
            wife[m] = w
        return cls(tuple(wife))

    @property
    def n(self) -> int:
        return len(self.wife)

    @cached_property
    def husband(self) -> tuple[int, ...]:
        h = [0] * len(self.wife)
        for m, w in enumerate(self.wife):
            h[w] = m
        return tuple(h)

    def partner(self, gender: str, index: int) -> int:
        return self.wife[index] if gender == MEN else self.husband[index]

    def pairs(self) -> list[tuple[int, int]]:
        return list(enumerate(self.wife))

    def transpose(self) -> Matching:
        """The same marriages viewed from a gender-swapped profile."""
        return Matching(self.husband)

    def __str__(self) -> str:
        return format_matching(self)


@dataclass(frozen=True)
class BlockingPair:
    man: int
    woman: int


def swap_genders(p: Profile) -> Profile:
    return Profile(p.women, p.men)


def _require_size(p: Profile, mu: Matching) -> None:
    if mu.n != p.n:
        raise ValueError(f"matching of size {mu.n} does not fit profile of size {p.n}")


def blocking_pairs(p: Profile, mu: Matching) -> list[BlockingPair]:
    _require_size(p, mu)
    mr, wr = p.man_rank, p.woman_rank
    husband = mu.husband
    out = []
    for m in range(p.n):
        current = mr[m][mu.wife[m]]
        for w in p.men[m][: current - 1]:
            if wr[w][m] < wr[w][husband[w]]:
                out.append(BlockingPair(m, w))
    return out


def is_stable(p: Profile, mu: Matching) -> bool:
    _require_size(p, mu)
    mr, wr = p.man_rank, p.woman_rank
    husband = mu.husband
    for m in range(p.n):
        for w in p.men[m]:
            if w == mu.wife[m]:
                break
            if wr[w][m] < wr[w][husband[w]]:
                return False
    return True


def all_matchings(n: int) -> Iterator[Matching]:
    for perm in itertools.permutations(range(n)):
        yield Matching(perm)


def all_stable_matchings(p: Profile, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[Matching]:
    """Every stable matching of ``p`` by exhaustive scan of the n! bijections.

    Returned in lexicographic order of the ``wife`` tuple.
    """
    if p.n > bound:
        raise BoundExceeded(f"n={p.n} exceeds enumeration bound {bound}")
    return [mu for mu in all_matchings(p.n) if is_stable(p, mu)]


# ---------------------------------------------------------------------------
# text / JSON formats


def parse_profile(text: str) -> Profile:
    """Parse the canonical text format or its JSON mirror.

    Text format: a ``n=<int>`` line, then ``m <i>: ...`` and ``w <i>: ...`` lines
    with 1-based indices, most preferred first.  ``#`` starts a comment and ``;``
    may separate several records on one physical line.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return profile_from_json(text)

    n = None
    lists: dict[str, dict[int, tuple[int, ...]]] = {"m": {}, "w": {}}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for record in line.split(";"):
            record = record.strip()
            if not record:
                continue
            if record.startswith("n"):
                key, sep, value = record.partition("=")
                if key.strip() != "n" or not sep:
                    raise ProfileError(f"cannot parse {record!r}", lineno)
                if n is not None:
                    raise ProfileError("duplicate n= declaration", lineno)
                try:
                    n = int(value)
                except ValueError:
                    raise ProfileError(f"n must be an integer, got {value.strip()!r}", lineno) from None
                if n < 1:
                    raise ProfileError("n must be positive", lineno)
                continue
            head, sep, body = record.partition(":")
            parts = head.split()
            if not sep or len(parts) != 2 or parts[0] not in ("m", "w"):
                raise ProfileError(f"expected 'm <i>: ...' or 'w <i>: ...', got {record!r}", lineno)
            tag = parts[0]
            try:
                idx = int(parts[1])
                entries = tuple(int(tok) - 1 for tok in body.split())
            except ValueError:
                raise ProfileError(f"non-integer token in {record!r}", lineno) from None
            size = n if n is not None else len(entries)
            if not 1 <= idx <= size:
                raise ProfileError(f"{tag} index {idx} out of range 1..{size}", lineno)
            if idx - 1 in lists[tag]:
                raise ProfileError(f"duplicate list for {tag} {idx}", lineno)
            problem = _check_permutation(entries, size)
            if problem:
                raise ProfileError(f"{tag} {idx}: {problem}", lineno)
            lists[tag][idx - 1] = entries

    if n is None:
        n = len(lists["m"])
        if n == 0:
            raise ProfileError("empty profile")
    for tag, name in (("m", "men"), ("w", "women")):
        missing = [i + 1 for i in range(n) if i not in lists[tag]]
        if missing or len(lists[tag]) != n:
            raise ProfileError(f"expected {n} {name}, missing {tag} {missing}")
    return Profile(
        tuple(lists["m"][i] for i in range(n)),
        tuple(lists["w"][i] for i in range(n)),
    )


def format_profile(p: Profile) -> str:
    lines = [f"n={p.n}"]
    for tag, lists in (("m", p.men), ("w", p.women)):
        for i, lst in enumerate(lists):
            lines.append(f"{tag} {i + 1}: " + " ".join(str(x + 1) for x in lst))
    return "\n".join(lines) + "\n"


def profile_to_json(p: Profile) -> dict:
    return {
        "n": p.n,
        "men": [[x + 1 for x in lst] for lst in p.men],
        "women": [[x + 1 for x in lst] for lst in p.women],
    }


def profile_from_json(data: str | dict) -> Profile:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ProfileError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    try:
        men = [tuple(int(x) - 1 for x in lst) for lst in data["men"]]
        women = [tuple(int(x) - 1 for x in lst) for lst in data["women"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ProfileError(f"malformed JSON profile: {exc}") from None
    if "n" in data and int(data["n"]) != len(men):
        raise ProfileError(f"declared n={data['n']} but {len(men)} men listed")
    return Profile(tuple(men), tuple(women))


def format_matching(mu: Matching) -> str:
    return " ".join(f"(m{m + 1},w{w + 1})" for m, w in mu.pairs())


def matching_to_json(mu: Matching) -> list[list[int]]:
    return [[m + 1, w + 1] for m, w in mu.pairs()]


def matching_from_json(pairs: Sequence[Sequence[int]]) -> Matching:
    return Matching.from_pairs((int(m) - 1, int(w) - 1) for m, w in pairs)


def matching_from_wives(wives_1based: Sequence[int]) -> Matching:
    """Build a matching from 1-based wife indices listed in man order."""
    return Matching(tuple(w - 1 for w in wives_1based))
