"""The Hamiltonian-path-gated stable marriage procedure and its reduction.

An HT profile has size g+3 for a g-vertex digraph.  Men: 0 is m1, 1 is m2 and
2..g+2 are p_1..p_{g+1}.  Women: 0 is w1, 1 is w2 and 2..g+2 are v_1..v_{g+1}.
Graph vertices are 0-based in memory; vertex i corresponds to p_{i+1}/v_{i+1}.

The graph lives in the v-women's lists: for i, j <= g with j != i there is an
edge i -> j iff p_j precedes p_{g+1} in v_i's list.  A candidate path lives in
w1's list: the man at 1-based position 2+i is the successor of vertex i, with
p_{g+1} marking the last vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import BoundExceeded, Matching, Profile, WOMEN
from .gale_shapley import female_optimal, male_optimal

DEFAULT_HAMILTONIAN_BOUND = 10

M1, M2 = 0, 1
W1, W2 = 0, 1


class HTShapeError(ValueError):
    """The profile is too small to carry a graph encoding."""


@dataclass(frozen=True)
class DiGraph:
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        edges = frozenset((int(i), int(j)) for i, j in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for i, j in edges:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i + 1},{j + 1}) out of range 1..{self.n}")
            if i == j:
                raise ValueError(f"self-loop at vertex {i + 1}")

    def successors(self, i: int) -> list[int]:
        return sorted(j for a, j in self.edges if a == i)

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1)

    def non_edges(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i in range(self.n)
            for j in range(self.n)
            if i != j and (i, j) not in self.edges
        ]

    def is_hamiltonian_path(self, path: Sequence[int]) -> bool:
        if sorted(path) != list(range(self.n)):
            return False
        return all((a, b) in self.edges for a, b in zip(path, path[1:]))


def p_man(vertex: int) -> int:
    return vertex + 2


def v_woman(vertex: int) -> int:
    return vertex + 2


def graph_size(hp: Profile) -> int:
    if hp.n < 4:
        raise HTShapeError(f"an HT profile needs at least 4 people per side, got {hp.n}")
    return hp.n - 3


def decode_graph(hp: Profile) -> DiGraph:
    g = graph_size(hp)
    end = p_man(g)
    edges = set()
    for i in range(g):
        rank = hp.woman_rank[v_woman(i)]
        for j in range(g):
            if j != i and rank[p_man(j)] < rank[end]:
                edges.add((i, j))
    return DiGraph(g, frozenset(edges))


def decode_path(hp: Profile) -> list[int] | None:
    """The Hamiltonian path spelled by w1's list, or None."""
    g = graph_size(hp)
    lst = hp.women[W1]
    succ = []
    for i in range(g):
        man = lst[2 + i]
        if man < 2:
            return None
        succ.append(man - 2)  # g stands for p_{g+1}, the end marker
    ends = [i for i in range(g) if succ[i] == g]
    if len(ends) != 1:
        return None
    targets = set(s for s in succ if s != g)
    starts = [i for i in range(g) if i not in targets]
    if len(starts) != 1:
        return None
    path = [starts[0]]
    while succ[path[-1]] != g and len(path) <= g:
        path.append(succ[path[-1]])
    graph = decode_graph(hp)
    if len(path) != g or not graph.is_hamiltonian_path(path):
        return None
    return path


def ht_procedure(hp: Profile) -> Matching:
    """Female optimal if w1's list spells a Hamiltonian path, else male optimal."""
    if decode_path(hp) is not None:
        return female_optimal(hp)
    return male_optimal(hp)


def _complete(head: Sequence[int], n: int) -> tuple[int, ...]:
    head = list(head)
    seen = set(head)
    return tuple(head + [x for x in range(n) if x not in seen])


def build_reduction_profile(graph: DiGraph) -> Profile:
    """Profile in which w1 can profitably lie to ``ht_procedure`` iff ``graph``
    has a Hamiltonian path.  Unspecified tails follow ascending index order."""
    g = graph.n
    if g < 2:
        raise ValueError("the reduction needs a graph with at least 2 vertices")
    missing = graph.non_edges()
    if not missing:
        raise ValueError("the reduction needs a non-complete graph")
    size = g + 3
    end = p_man(g)

    # w1: m1, m2, then p-men with a forced non-edge so no path is spelled
    i, j = missing[0]
    slots: list[int | None] = [None] * (g + 1)
    slots[i] = p_man(j)
    rest = iter(x for x in range(2, size) if x != p_man(j))
    w1 = [M1, M2] + [s if s is not None else next(rest) for s in slots]

    women = [tuple(w1), _complete([M2], size)]
    for v in range(g):
        targets = graph.successors(v)
        others = [x for x in range(g) if x != v and x not in targets]
        head = [p_man(v)] + [p_man(x) for x in targets] + [end] + [p_man(x) for x in others]
        women.append(_complete(head, size))
    women.append(_complete([end], size))

    men = [_complete([W2], size), _complete([W1], size)]
    men += [_complete([v_woman(v)], size) for v in range(g + 1)]
    return Profile(tuple(men), tuple(women))


def encode_path_report(hp: Profile, path: Sequence[int]) -> tuple[int, ...]:
    """A list for w1 that keeps m1, m2 on top and spells ``path``."""
    g = graph_size(hp)
    if sorted(path) != list(range(g)):
        raise ValueError("path must visit every vertex exactly once")
    succ = {a: b for a, b in zip(path, path[1:])}
    succ[path[-1]] = g
    return (M1, M2) + tuple(p_man(succ[i]) for i in range(g)) + (p_man(path[0]),)


def with_w1_report(hp: Profile, report: Sequence[int]) -> Profile:
    return hp.with_list(WOMEN, W1, report)


def hamiltonian_path_oracle(
    graph: DiGraph, bound: int = DEFAULT_HAMILTONIAN_BOUND
) -> list[int] | None:
    """Backtracking search from every start vertex; exact."""
    n = graph.n
    if n > bound:
        raise BoundExceeded(f"{n} vertices exceeds Hamiltonian search bound {bound}")
    if n == 0:
        return []
    adj = [graph.successors(i) for i in range(n)]
    path: list[int] = []
    used = [False] * n

    def extend(v: int) -> bool:
        path.append(v)
        used[v] = True
        if len(path) == n:
            return True
        for u in adj[v]:
            if not used[u] and extend(u):
                return True
        path.pop()
        used[v] = False
        return False

    for start in range(n):
        if extend(start):
            return list(path)
    return None


def parse_graph(text: str) -> DiGraph:
    """``n=<int>`` then ``e <i> <j>`` lines with 1-based vertices; ``#`` comments."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("n"):
                key, _, value = line.partition("=")
                if key.strip() != "n":
                    raise ValueError
                n = int(value)
            elif line.startswith("e"):
                _, a, b = line.split()
                edges.append((int(a) - 1, int(b) - 1))
            else:
                raise ValueError
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse {line!r}") from None
    if n is None:
        raise ValueError("graph file lacks an n=<int> line")
    return DiGraph(n, frozenset(edges))


def format_graph(graph: DiGraph) -> str:
    lines = [f"n={graph.n}"] + [f"e {i + 1} {j + 1}" for i, j in sorted(graph.edges)]
    return "\n".join(lines) + "\n"


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> DiGraph:
    """Build from 1-based edge pairs."""
    return DiGraph(n, frozenset((i - 1, j - 1) for i, j in edges))
