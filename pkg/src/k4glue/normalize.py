"""Reduction to a normal form: blocks independent in the host, host
2-regular, and blocks partitioning the vertex set.

A proper 4-coloring of the normalized instance restricts, through the origin
map, to a proper 4-coloring of the original instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .coloring import PartialColoring
from .errors import InternalInvariantViolation
from .graphs import (
    Edge,
    GluedInstance,
    build_host,
    decompose,
    glue_blocks,
    make_edge,
)
from .oracles import exact_equitable_coloring


@dataclass(frozen=True)
class NormalizedInstance:
    instance: GluedInstance
    origin_map: dict[int, int]  # original vertex -> normalized vertex


def normalize(instance: GluedInstance) -> NormalizedInstance:
    """Apply the three reduction steps.

    1. Delete host edges inside blocks (they are restored by the blue clique).
    2. Close every path component into a cycle: one new vertex for an odd
       path, two adjacent new vertices for an even path.  An isolated vertex
       is closed into a triangle with two new vertices, since the odd-path
       rule would need two distinct endpoints.
    3. Cover leftover vertices with fresh blocks: pad with the fewest
       triangles making the leftover graph at least 12 vertices and divisible
       by 4, then adopt the classes of a balanced proper coloring as blocks.

    New vertices receive ids n, n+1, ... in creation order.  The count of
    long odd host cycles never increases.
    """
    host, blocks = instance.host, instance.blocks
    original_long_odd = len(decompose(host).long_odd)

    block_pairs = {make_edge(u, v) for b in blocks for u, v in combinations(b, 2)}
    red = [e for e in host.red_edges if e not in block_pairs]

    open_decomp = decompose(build_host(host.n, red))
    nxt = host.n
    closure: list[Edge] = []
    for comp in sorted(open_decomp.paths + open_decomp.isolates, key=min):
        if len(comp) == 1:
            a, b = nxt, nxt + 1
            nxt += 2
            closure += [make_edge(comp[0], a), make_edge(comp[0], b), make_edge(a, b)]
        elif len(comp) % 2 == 1:
            a = nxt
            nxt += 1
            closure += [make_edge(comp[0], a), make_edge(comp[-1], a)]
        else:
            a, b = nxt, nxt + 1
            nxt += 2
            closure += [make_edge(comp[0], a), make_edge(a, b), make_edge(b, comp[-1])]
    red2 = red + closure
    n2 = nxt

    covered = blocks.covered
    uncovered = [v for v in range(n2) if v not in covered]
    pad_edges: list[Edge] = []
    new_blocks: list[tuple[int, ...]] = []
    n3 = n2
    if uncovered:
        t = 0
        while len(uncovered) + 3 * t < 12 or (len(uncovered) + 3 * t) % 4:
            t += 1
        for i in range(t):
            a = n2 + 3 * i
            pad_edges += [(a, a + 1), (a + 1, a + 2), (a, a + 2)]
        n3 = n2 + 3 * t
        member = uncovered + list(range(n2, n3))
        index = {v: j for j, v in enumerate(member)}
        sub_edges = [
            (index[u], index[v])
            for u, v in red2 + pad_edges
            if u in index and v in index
        ]
        k = len(member) // 4
        cert = exact_equitable_coloring(len(member), sub_edges, k)
        for c in range(1, k + 1):
            cls = tuple(sorted(member[j] for j in range(len(member)) if cert.colors[j] == c))
            if len(cls) != 4:
                raise InternalInvariantViolation("balanced classes must have size 4 exactly")
            new_blocks.append(cls)

    normalized = glue_blocks(
        build_host(n3, red2 + pad_edges), list(blocks.blocks) + new_blocks
    )
    _check_normal_form(normalized, original_long_odd)
    return NormalizedInstance(normalized, {v: v for v in range(host.n)})


def _check_normal_form(instance: GluedInstance, long_odd_cap: int) -> None:
    decomp = decompose(instance.host)
    if decomp.paths or decomp.isolates:
        raise InternalInvariantViolation("normalized host must be 2-regular")
    if len(decomp.long_odd) > long_odd_cap:
        raise InternalInvariantViolation("normalization may not create long odd cycles")
    if len(instance.blocks.covered) != instance.n:
        raise InternalInvariantViolation("normalized blocks must partition the vertex set")
    red = set(instance.host.red_edges)
    for b in instance.blocks:
        for u, v in combinations(b, 2):
            if make_edge(u, v) in red:
                raise InternalInvariantViolation("normalized blocks must be independent in the host")


def pull_back_coloring(
    coloring: PartialColoring, origin_map: Mapping[int, int]
) -> PartialColoring:
    """Restrict a coloring of the normalized instance along the origin map."""
    colors: dict[int, int] = {}
    uncolored: set[int] = set()
    for orig, mapped in origin_map.items():
        if mapped in coloring.uncolored:
            uncolored.add(orig)
        else:
            colors[orig] = coloring.colors[mapped]
    return PartialColoring(colors, frozenset(uncolored), coloring.route)
