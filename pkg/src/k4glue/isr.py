"""Representative-set machinery: deficiency augmentation, combination of two
transversals over an admissible pair, and the few-triangles coloring
pipeline built on them.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .coloring import PartialColoring, RepresentativeSet, check_proper
from .errors import (
    InternalInvariantViolation,
    NotAdmissible,
    NotAnISR,
)
from .graphs import (
    Edge,
    GluedInstance,
    build_adjacency,
    decompose,
    make_edge,
    paths_and_cycles,
)
from .oracles import (
    DEFAULT_BUDGET,
    check_admissible,
    exact_k_coloring,
    exact_partial_isr,
    total_domination_number,
)
from .two_isr import two_isrs


def deficiency_reduction(
    n: int,
    edges: Iterable[Edge],
    sets: Sequence[Iterable[int]],
    k: int,
) -> tuple[int, tuple[Edge, ...], tuple[tuple[int, ...], ...]]:
    """Append k disjoint cliques, one fresh vertex per set from each, so a
    full transversal of the widened family exists exactly when the original
    family has a partial one missing at most k sets."""
    family = [tuple(sorted(s)) for s in sets]
    m = len(family)
    out_edges = sorted({make_edge(u, v) for u, v in edges})
    widened = [list(s) for s in family]
    for copy in range(k):
        start = n + copy * m
        for i in range(m):
            widened[i].append(start + i)
        for a in range(m):
            for b in range(a + 1, m):
                out_edges.append((start + a, start + b))
    return (
        n + k * m,
        tuple(sorted(out_edges)),
        tuple(tuple(sorted(s)) for s in widened),
    )


def _owner_map(family: Sequence[Sequence[int]]) -> dict[int, int]:
    return {v: i for i, s in enumerate(family) for v in s}


def _require_isr(
    edges: set[Edge],
    family: Sequence[Sequence[int]],
    rep: RepresentativeSet,
    label: str,
) -> None:
    if sorted(rep.assignment) != list(range(len(family))):
        raise NotAnISR(f"{label} transversal must pick one vertex per set")
    for i, v in rep.assignment.items():
        if v not in family[i]:
            raise NotAnISR(f"{label} representative {v} lies outside set {i}")
    if frozenset(rep.assignment.values()) != rep.members:
        raise NotAnISR(f"{label} members disagree with the assignment")
    for u, v in edges:
        if u in rep.members and v in rep.members:
            raise NotAnISR(f"{label} transversal is not independent: edge {(u, v)}")


def combine_isrs(
    n: int,
    edges: Iterable[Edge],
    x_family: Sequence[Iterable[int]],
    y_family: Sequence[Iterable[int]],
    r_x: RepresentativeSet,
    r_y: RepresentativeSet,
) -> frozenset[int]:
    """Prune the union of two transversals down to an independent set that
    still hits every set of both families.

    Repeatedly deletes the unique neighbor of a dangerous vertex (degree one,
    incident edge classified with the opposite family), then sweeps out the
    second family's representatives that still have positive degree.
    """
    xf = [tuple(sorted(s)) for s in x_family]
    yf = [tuple(sorted(s)) for s in y_family]
    edge_set = {make_edge(u, v) for u, v in edges}
    ok, witness = check_admissible(edge_set, xf, yf)
    if not ok:
        raise NotAdmissible(f"edge {witness} is internal to neither family and avoids neither")
    _require_isr(edge_set, xf, r_x, "first-family")
    _require_isr(edge_set, yf, r_y, "second-family")

    x_owner = _owner_map(xf)
    y_owner = _owner_map(yf)
    rx, ry = r_x.members, r_y.members

    def is_x_edge(u: int, v: int) -> bool:
        return u in x_owner and v in x_owner and x_owner[u] == x_owner[v]

    def is_y_edge(u: int, v: int) -> bool:
        return u in y_owner and v in y_owner and y_owner[u] == y_owner[v]

    live = set(rx | ry)
    conflicts = [
        (u, v)
        for u, v in sorted(edge_set)
        if u in live and v in live
    ]
    for u, v in conflicts:
        if not (is_x_edge(u, v) or is_y_edge(u, v)):
            raise InternalInvariantViolation("conflict edge escaped both classifications")
    # each first-family vertex meets at most one pure second-family edge and
    # vice versa; guaranteed by disjointness plus independence of the inputs
    for members, other_edge in ((rx, is_y_edge), (ry, is_x_edge)):
        for w in members:
            incident = sum(
                1 for u, v in conflicts if w in (u, v) and other_edge(u, v)
            )
            if incident > 1:
                raise InternalInvariantViolation(
                    f"vertex {w} meets {incident} opposite-family conflict edges"
                )

    while True:
        degree: dict[int, list[int]] = {v: [] for v in live}
        for u, v in conflicts:
            if u in live and v in live:
                degree[u].append(v)
                degree[v].append(u)
        dangerous = []
        for v in sorted(live):
            if len(degree[v]) != 1:
                continue
            w = degree[v][0]
            if v in rx and v not in ry and not is_x_edge(v, w):
                dangerous.append((v, w))
            elif v in ry and v not in rx and not is_y_edge(v, w):
                dangerous.append((v, w))
        if not dangerous:
            final = {
                v
                for v in live
                if not (v in ry and degree[v])
            }
            break
        live.discard(dangerous[0][1])

    result = frozenset(final)
    for u, v in edge_set:
        if u in result and v in result:
            raise InternalInvariantViolation("combination failed to become independent")
    for label, family, members in (("first", xf, result), ("second", yf, result)):
        for i, s in enumerate(family):
            if not members.intersection(s):
                raise InternalInvariantViolation(f"{label} family lost set {i}")
    return result


def find_cycle_partial_isr(
    instance: GluedInstance, budget: int = DEFAULT_BUDGET
) -> tuple[tuple[int, ...], RepresentativeSet]:
    """Partial transversal of the host cycle family missing at most a
    quarter of the triangles, found by exact search; the guarantee comes from
    the total-domination bound on the blue leftovers."""
    decomp = decompose(instance.host)
    cycles = decomp.all_cycles
    slack = len(decomp.triangles) // 4
    target = len(cycles) - slack
    rep = exact_partial_isr(instance.n, instance.simple_edges, cycles, target, budget)
    if rep is None:
        raise InternalInvariantViolation(
            "cycle family lost its guaranteed partial transversal"
        )
    return tuple(sorted(rep.assignment)), rep


def audit_cycle_family_hypothesis(
    instance: GluedInstance,
    selected: Iterable[int],
    budget: int = DEFAULT_BUDGET,
) -> dict[str, bool]:
    """Spot check, on one index subset, of the two inequalities backing the
    partial-transversal guarantee."""
    from .graphs import restricted_union_subgraph

    decomp = decompose(instance.host)
    cycles = decomp.all_cycles
    chosen = sorted(set(selected))
    layered, vertices = restricted_union_subgraph(instance, cycles, chosen)
    edges = tuple(sorted(set(layered.red_edges) | set(layered.blue_edges)))
    gamma = total_domination_number(layered.n, edges, budget)
    return {
        "domination_at_least_half": gamma >= layered.n / 2,
        "vertices_at_least_4s_minus_t": layered.n >= 4 * len(chosen) - len(decomp.triangles),
    }


def _block_transversal(
    instance: GluedInstance, budget: int
) -> RepresentativeSet:
    blocks = instance.blocks
    if not len(blocks):
        return RepresentativeSet(frozenset(), {})
    if len(blocks.covered) == instance.n:
        first, _ = two_isrs(instance.host, blocks.blocks)
        return first
    rep = exact_partial_isr(
        instance.n, instance.simple_edges, blocks.blocks, len(blocks), budget
    )
    if rep is None:
        raise InternalInvariantViolation("4-vertex block family must admit a transversal")
    return rep


def triangle_pipeline(
    instance: GluedInstance, budget: int = DEFAULT_BUDGET
) -> PartialColoring:
    """4-color everything outside at most a quarter of the triangles.

    Route: combine a cycle transversal with a block transversal into an
    independent set R, break each unrepresented cycle with one reserved edge,
    close the leftover paths into a single cycle, 3-color that cycle plus the
    trimmed blocks, give R the fourth color, and finally uncolor one endpoint
    of every reserved edge that came out monochromatic.
    """
    decomp = decompose(instance.host)
    n = instance.n
    cycles = decomp.all_cycles

    r_y = _block_transversal(instance, budget)
    hit, r_x = find_cycle_partial_isr(instance, budget)
    selected_cycles = tuple(cycles[i] for i in hit)
    r_x_selected = RepresentativeSet(
        r_x.members, {j: r_x.assignment[i] for j, i in enumerate(hit)}
    )
    combined = combine_isrs(
        n,
        instance.simple_edges,
        selected_cycles,
        instance.blocks.blocks,
        r_x_selected,
        r_y,
    )

    hit_set = set(hit)
    reserved: list[Edge] = []
    for i, cyc in enumerate(cycles):
        if i in hit_set:
            continue
        size = len(cyc)
        reserved.append(
            min(make_edge(cyc[j], cyc[(j + 1) % size]) for j in range(size))
        )

    removed = set(combined)
    reserved_set = set(reserved)
    residual_vertices = [v for v in range(n) if v not in removed]
    index = {v: j for j, v in enumerate(residual_vertices)}
    residual_edges = [
        (index[u], index[v])
        for u, v in instance.host.red_edges
        if u not in removed and v not in removed and (u, v) not in reserved_set
    ]
    sub_adj = build_adjacency(len(residual_vertices), residual_edges)
    res_paths, res_cycles = paths_and_cycles(sub_adj)
    if res_cycles:
        raise InternalInvariantViolation("residual host graph must be acyclic")
    mapped_paths = [tuple(residual_vertices[j] for j in seq) for seq in res_paths]

    star_edges = {
        make_edge(residual_vertices[u], residual_vertices[v]) for u, v in residual_edges
    }
    m = len(residual_vertices)
    if m >= 3:
        order = sorted(mapped_paths, key=min)
        ends = [(seq[0], seq[-1]) for seq in order]
        for (_, tail), (head, _) in zip(ends, ends[1:]):
            star_edges.add(make_edge(tail, head))
        star_edges.add(make_edge(ends[-1][1], ends[0][0]))
        _, closed = paths_and_cycles(
            build_adjacency(m, [(index[u], index[v]) for u, v in star_edges])
        )
        if len(closed) != 1 or len(closed[0]) != m:
            raise InternalInvariantViolation("closure must produce one spanning cycle")

    for block in instance.blocks:
        trimmed = [v for v in block if v not in removed]
        if len(trimmed) != 3:
            raise InternalInvariantViolation("each block must lose exactly its representative")
        star_edges.add(make_edge(trimmed[0], trimmed[1]))
        star_edges.add(make_edge(trimmed[0], trimmed[2]))
        star_edges.add(make_edge(trimmed[1], trimmed[2]))

    certificate = exact_k_coloring(
        m, sorted((index[u], index[v]) for u, v in star_edges), 3, budget
    )
    if certificate is None:
        raise InternalInvariantViolation(
            "cycle-plus-triangles graph unexpectedly refused a 3-coloring"
        )

    colors = {v: certificate.colors[index[v]] for v in residual_vertices}
    for v in combined:
        colors[v] = 4

    uncolored: set[int] = set()
    for u, v in sorted(reserved):
        if colors.get(u) == colors.get(v):
            uncolored.add(min(u, v))
    for v in uncolored:
        del colors[v]

    witness = check_proper(instance.simple_edges, colors)
    if witness is not None:
        raise InternalInvariantViolation(f"edge {witness} stayed monochromatic")
    return PartialColoring(colors, frozenset(uncolored), route="triangle")
