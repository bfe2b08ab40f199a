"""Colored graph model: a max-degree-2 red host plus disjoint 4-vertex blue blocks.

Vertices are dense integers 0..n-1.  Edges are normalized (u, v) tuples with
u < v.  Every container is canonically sorted so that all downstream
algorithms are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    BlockSizeNot4,
    DegreeViolation,
    DuplicateEdge,
    IndexOutOfRange,
    LoopEdge,
    OverlappingBlocks,
    VertexOutOfRange,
)

Edge = tuple[int, int]


def make_edge(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


def build_adjacency(n: int, edges: Iterable[Edge]) -> tuple[tuple[int, ...], ...]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return tuple(tuple(sorted(nbrs)) for nbrs in adj)


def _walk_path(adj: Sequence[Sequence[int]], start: int) -> list[int]:
    seq = [start]
    prev = -1
    cur = start
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        if not nxt:
            return seq
        prev, cur = cur, nxt[0]
        seq.append(cur)


def _walk_cycle(adj: Sequence[Sequence[int]], start: int) -> list[int]:
    # canonical order: begin at the minimum vertex, move toward its smaller neighbor
    second = min(adj[start])
    seq = [start, second]
    prev, cur = start, second
    while True:
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        if nxt == start:
            return seq
        seq.append(nxt)
        prev, cur = cur, nxt


def paths_and_cycles(
    adjacency: Sequence[Sequence[int]],
) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Split a max-degree-2 graph into canonical path and cycle sequences.

    Isolated vertices come back as one-vertex paths.  Paths start at their
    smaller endpoint; cycles start at their minimum vertex and proceed toward
    the smaller of its two neighbors.
    """
    n = len(adjacency)
    seen = [False] * n
    paths: list[tuple[int, ...]] = []
    cycles: list[tuple[int, ...]] = []
    for start in range(n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        endpoints = sorted(v for v in comp if len(adjacency[v]) <= 1)
        if endpoints:
            paths.append(tuple(_walk_path(adjacency, endpoints[0])))
        else:
            cycles.append(tuple(_walk_cycle(adjacency, min(comp))))
    return paths, cycles


@dataclass(frozen=True)
class HostGraph:
    """Simple red graph in which every vertex has degree at most 2."""

    n: int
    red_edges: tuple[Edge, ...]

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return build_adjacency(self.n, self.red_edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


def build_host(n: int, pairs: Iterable[Sequence[int]]) -> HostGraph:
    """Validate a red edge list and return the canonical HostGraph."""
    seen: set[Edge] = set()
    for pair in pairs:
        u, v = pair
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        for w in (u, v):
            if not 0 <= w < n:
                raise VertexOutOfRange(f"vertex {w} outside 0..{n - 1}")
        e = make_edge(u, v)
        if e in seen:
            raise DuplicateEdge(f"edge {e} listed more than once")
        seen.add(e)
    degree = [0] * n
    for u, v in seen:
        degree[u] += 1
        degree[v] += 1
    bad = [v for v, d in enumerate(degree) if d > 2]
    if bad:
        raise DegreeViolation(f"red degree exceeds 2 at vertices {bad}")
    return HostGraph(n, tuple(sorted(seen)))


@dataclass(frozen=True)
class BlockSet:
    """Pairwise disjoint 4-vertex sets carrying the glued cliques."""

    blocks: tuple[tuple[int, int, int, int], ...]

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    @cached_property
    def covered(self) -> frozenset[int]:
        return frozenset(v for b in self.blocks for v in b)

    @cached_property
    def block_of(self) -> dict[int, int]:
        return {v: i for i, b in enumerate(self.blocks) for v in b}


def make_blocks(blocks: Iterable[Iterable[int]]) -> BlockSet:
    canon: list[tuple[int, int, int, int]] = []
    used: set[int] = set()
    for raw in blocks:
        b = tuple(sorted(raw))
        if len(b) != 4 or len(set(b)) != 4:
            raise BlockSizeNot4(f"block {tuple(raw)!r} must hold exactly 4 distinct vertices")
        overlap = used.intersection(b)
        if overlap:
            raise OverlappingBlocks(f"vertices {sorted(overlap)} appear in two blocks")
        used.update(b)
        canon.append(b)  # type: ignore[arg-type]
    return BlockSet(tuple(sorted(canon)))


@dataclass(frozen=True)
class GluedInstance:
    """Host graph plus blocks; blue edges are derived, the simple view dedups."""

    host: HostGraph
    blocks: BlockSet

    @property
    def n(self) -> int:
        return self.host.n

    @cached_property
    def blue_edges(self) -> tuple[Edge, ...]:
        out = {make_edge(u, v) for b in self.blocks for u, v in combinations(b, 2)}
        return tuple(sorted(out))

    @cached_property
    def parallel_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(set(self.host.red_edges) & set(self.blue_edges)))

    @cached_property
    def simple_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(set(self.host.red_edges) | set(self.blue_edges)))

    @cached_property
    def simple_adjacency(self) -> tuple[tuple[int, ...], ...]:
        return build_adjacency(self.n, self.simple_edges)


def glue_blocks(host: HostGraph, blocks: Iterable[Iterable[int]]) -> GluedInstance:
    block_set = make_blocks(blocks)
    out_of_range = [v for v in block_set.covered if not 0 <= v < host.n]
    if out_of_range:
        raise VertexOutOfRange(f"block vertices {sorted(out_of_range)} outside 0..{host.n - 1}")
    return GluedInstance(host, block_set)


@dataclass(frozen=True)
class ComponentDecomposition:
    """Host components split by shape: triangles, long odd cycles, even cycles,
    paths and isolated vertices, each as a canonical vertex sequence."""

    triangles: tuple[tuple[int, ...], ...]
    long_odd: tuple[tuple[int, ...], ...]
    even_cycles: tuple[tuple[int, ...], ...]
    paths: tuple[tuple[int, ...], ...]
    isolates: tuple[tuple[int, ...], ...]

    @cached_property
    def odd_cycles(self) -> tuple[tuple[int, ...], ...]:
        """All odd cycles (triangles included) ordered by first vertex."""
        return tuple(sorted(self.triangles + self.long_odd))

    @cached_property
    def all_cycles(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(self.triangles + self.long_odd + self.even_cycles))

    @cached_property
    def cycle_of(self) -> dict[int, int]:
        """Vertex -> index into odd_cycles, for odd-cycle vertices only."""
        return {v: i for i, cyc in enumerate(self.odd_cycles) for v in cyc}

    def component_sizes(self) -> list[int]:
        comps = self.triangles + self.long_odd + self.even_cycles + self.paths + self.isolates
        return [len(c) for c in comps]


def decompose(host: HostGraph) -> ComponentDecomposition:
    paths, cycles = paths_and_cycles(host.adjacency)
    triangles = [c for c in cycles if len(c) == 3]
    long_odd = [c for c in cycles if len(c) > 3 and len(c) % 2 == 1]
    evens = [c for c in cycles if len(c) % 2 == 0]
    real_paths = [p for p in paths if len(p) > 1]
    isolates = [p for p in paths if len(p) == 1]
    return ComponentDecomposition(
        triangles=tuple(sorted(triangles)),
        long_odd=tuple(sorted(long_odd)),
        even_cycles=tuple(sorted(evens)),
        paths=tuple(sorted(real_paths)),
        isolates=tuple(sorted(isolates)),
    )


@dataclass(frozen=True)
class LayeredGraph:
    """Edge-colored multigraph view: a pair may carry several colors."""

    n: int
    red_edges: tuple[Edge, ...]
    blue_edges: tuple[Edge, ...]
    green_edges: tuple[Edge, ...]


def restricted_union_subgraph(
    instance: GluedInstance,
    sets: Sequence[Iterable[int]],
    selected: Iterable[int],
) -> tuple[LayeredGraph, tuple[int, ...]]:
    """Subgraph induced by the union of the selected sets, with every edge
    internal to a single set deleted.

    Returns the relabeled layered graph together with the dense-index ->
    original-vertex map.
    """
    family = [tuple(sorted(s)) for s in sets]
    owner: dict[int, int] = {}
    for i, s in enumerate(family):
        for v in s:
            if not 0 <= v < instance.n:
                raise VertexOutOfRange(f"set vertex {v} outside 0..{instance.n - 1}")
            if v in owner:
                raise OverlappingBlocks(f"vertex {v} appears in two sets")
            owner[v] = i
    chosen = sorted(set(selected))
    for i in chosen:
        if not 0 <= i < len(family):
            raise IndexOutOfRange(f"set index {i} outside 0..{len(family) - 1}")
    keep = {v: owner[v] for i in chosen for v in family[i]}
    vertices = tuple(sorted(keep))
    index = {v: j for j, v in enumerate(vertices)}

    def project(edges: Iterable[Edge]) -> tuple[Edge, ...]:
        out = []
        for u, v in edges:
            if u in keep and v in keep and keep[u] != keep[v]:
                out.append(make_edge(index[u], index[v]))
        return tuple(sorted(out))

    layered = LayeredGraph(
        n=len(vertices),
        red_edges=project(instance.host.red_edges),
        blue_edges=project(instance.blue_edges),
        green_edges=(),
    )
    return layered, vertices
