"""Independent exact brute-force solvers.

These stand in for the nonconstructive existence results the pipelines lean
on, and double as ground truth in the test suite.  Every search branches
deterministically (lowest vertex first, lowest color first) so repeated runs
yield identical certificates, and every search is metered: once the node
budget is spent the solver raises BudgetExceeded instead of hanging.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .coloring import RepresentativeSet
from .errors import BudgetExceeded, PreconditionViolated
from .graphs import Edge, build_adjacency, make_edge

DEFAULT_BUDGET = 10_000_000


class Budget:
    """Search-node meter; spends until exhausted, then raises."""

    __slots__ = ("remaining",)

    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.remaining = limit

    def spend(self, amount: int = 1) -> None:
        self.remaining -= amount
        if self.remaining < 0:
            raise BudgetExceeded("exact search exceeded its node budget")


@dataclass(frozen=True)
class ColoringCertificate:
    colors: dict[int, int]
    k: int


def _normalize_edges(edges: Iterable[Edge]) -> list[Edge]:
    return sorted({make_edge(u, v) for u, v in edges})


def exact_k_coloring(
    n: int, edges: Iterable[Edge], k: int, budget: int = DEFAULT_BUDGET
) -> Optional[ColoringCertificate]:
    """Proper k-coloring by exhaustive backtracking, or None once the whole
    tree is refuted.

    Vertices are colored in index order; a vertex may only open one color
    beyond those already in use, which prunes color permutations without
    losing completeness.
    """
    if k < 1:
        raise PreconditionViolated("palette size must be at least 1")
    meter = Budget(budget)
    lower: list[list[int]] = [[] for _ in range(n)]
    for u, v in _normalize_edges(edges):
        lower[max(u, v)].append(min(u, v))
    colors = [0] * n
    max_used = [0] * (n + 1)
    v = 0
    while v >= 0:
        if v == n:
            return ColoringCertificate({i: colors[i] for i in range(n)}, k)
        cap = min(k, max_used[v] + 1)
        c = colors[v] + 1
        while c <= cap:
            meter.spend()
            if all(colors[w] != c for w in lower[v]):
                break
            c += 1
        if c <= cap:
            colors[v] = c
            max_used[v + 1] = c if c > max_used[v] else max_used[v]
            v += 1
        else:
            colors[v] = 0
            v -= 1
    return None


def exact_partial_isr(
    n: int,
    edges: Iterable[Edge],
    sets: Sequence[Iterable[int]],
    target: int,
    budget: int = DEFAULT_BUDGET,
) -> Optional[RepresentativeSet]:
    """Independent set with at most one vertex per given set, hitting at
    least `target` sets; None only after the full choice tree is exhausted."""
    family = [tuple(sorted(s)) for s in sets]
    m = len(family)
    if target > m:
        raise PreconditionViolated(f"target {target} exceeds the {m} available sets")
    seen: set[int] = set()
    for s in family:
        for v in s:
            if v in seen:
                raise PreconditionViolated(f"sets are not disjoint at vertex {v}")
            seen.add(v)
    adj = build_adjacency(n, _normalize_edges(edges))
    nbr = [frozenset(a) for a in adj]
    meter = Budget(budget)
    members: set[int] = set()
    chosen: dict[int, int] = {}

    def search(i: int, hits: int) -> bool:
        if hits + (m - i) < target:
            return False
        if i == m:
            return hits >= target
        for u in family[i]:
            meter.spend()
            if members.isdisjoint(nbr[u]):
                members.add(u)
                chosen[i] = u
                if search(i + 1, hits + 1):
                    return True
                members.remove(u)
                del chosen[i]
        meter.spend()
        return search(i + 1, hits)

    if search(0, 0):
        return RepresentativeSet(frozenset(members), dict(chosen))
    return None


def total_domination_number(
    n: int, edges: Iterable[Edge], budget: int = DEFAULT_BUDGET
) -> float:
    """Size of a smallest set X with every vertex adjacent to some member of
    X; infinity as soon as the graph has an isolated vertex."""
    if n == 0:
        return 0
    adj = build_adjacency(n, _normalize_edges(edges))
    if any(not adj[v] for v in range(n)):
        return math.inf
    nbr = [set(a) for a in adj]
    meter = Budget(budget)
    # a single vertex never dominates itself, so sizes start at 2
    for size in range(2, n + 1):
        for cand in combinations(range(n), size):
            meter.spend()
            chosen = set(cand)
            if all(nbr[v] & chosen for v in range(n)):
                return size
    return math.inf


def exact_equitable_coloring(
    n: int, edges: Iterable[Edge], k: int, budget: int = DEFAULT_BUDGET
) -> ColoringCertificate:
    """Proper k-coloring whose class sizes pairwise differ by at most one.

    Backtracking with per-class caps of ceil(n/k); requires k to exceed the
    maximum degree, which guarantees a solution exists.
    """
    norm = _normalize_edges(edges)
    adj = build_adjacency(n, norm)
    max_deg = max((len(a) for a in adj), default=0)
    if k <= max_deg:
        raise PreconditionViolated(f"need k > max degree, got k={k}, degree={max_deg}")
    if n == 0:
        return ColoringCertificate({}, k)
    cap = -(-n // k)
    low = n // k
    lower: list[list[int]] = [[] for _ in range(n)]
    for u, v in norm:
        lower[max(u, v)].append(min(u, v))
    sizes = [0] * k
    colors = [0] * n
    meter = Budget(budget)

    def search(v: int, classes_open: int) -> bool:
        if v == n:
            return all(s >= low for s in sizes)
        deficit = sum(low - s for s in sizes if s < low)
        if deficit > n - v:
            return False
        meter.spend()
        limit = min(k, classes_open + 1)
        for c in range(1, limit + 1):
            if sizes[c - 1] >= cap:
                continue
            if any(colors[w] == c for w in lower[v]):
                continue
            colors[v] = c
            sizes[c - 1] += 1
            if search(v + 1, max(classes_open, c)):
                return True
            colors[v] = 0
            sizes[c - 1] -= 1
        return False

    if not search(0, 0):
        raise PreconditionViolated("no balanced proper coloring found despite k > max degree")
    return ColoringCertificate({i: colors[i] for i in range(n)}, k)


def check_admissible(
    edges: Iterable[Edge],
    x_family: Sequence[Iterable[int]],
    y_family: Sequence[Iterable[int]],
) -> tuple[bool, Optional[Edge]]:
    """Whether every edge is internal to one set of a family or avoids one
    family entirely; returns the first violating edge otherwise."""

    def owner_map(family: Sequence[Iterable[int]], label: str) -> dict[int, int]:
        owner: dict[int, int] = {}
        for i, s in enumerate(family):
            for v in s:
                if v in owner:
                    raise PreconditionViolated(f"{label} sets overlap at vertex {v}")
                owner[v] = i
        return owner

    x_owner = owner_map(x_family, "first-family")
    y_owner = owner_map(y_family, "second-family")
    for u, v in _normalize_edges(edges):
        same_x = u in x_owner and v in x_owner and x_owner[u] == x_owner[v]
        same_y = u in y_owner and v in y_owner and y_owner[u] == y_owner[v]
        out_x = u not in x_owner and v not in x_owner
        out_y = u not in y_owner and v not in y_owner
        if not (same_x or same_y or out_x or out_y):
            return False, (u, v)
    return True, None
