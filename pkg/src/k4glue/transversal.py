"""Transversal machinery for the long-odd-cycle coloring pipeline.

Works on normalized instances: pick one representative per odd host cycle,
pair everything else off with a red matching and a fixed blue matching, and
walk the resulting path/even-cycle graph.  A two-phase local search makes the
transversal optimal (no swallowed cycles, no bad vertices); a derandomized
black/white coloring then leaves at most half the long odd cycles unhappy.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Optional

from .coloring import PartialColoring, check_proper
from .errors import (
    BadVertexPresent,
    InternalInvariantViolation,
    NotNormalized,
)
from .graphs import (
    BlockSet,
    ComponentDecomposition,
    Edge,
    GluedInstance,
    build_adjacency,
    decompose,
    make_edge,
    paths_and_cycles,
)
from .normalize import normalize, pull_back_coloring


@dataclass(frozen=True)
class Transversal:
    """One representative per odd cycle, aligned with decomp.odd_cycles."""

    reps: tuple[int, ...]

    def replace(self, index: int, vertex: int) -> "Transversal":
        reps = list(self.reps)
        reps[index] = vertex
        return Transversal(tuple(reps))


@dataclass(frozen=True)
class CyclicOrientation:
    """Successor map along the canonical order of each odd cycle."""

    succ: dict[int, int]

    def forward_distance(self, u: int, v: int) -> int:
        d = 0
        w = u
        while w != v:
            w = self.succ[w]
            d += 1
            if d > len(self.succ):
                raise InternalInvariantViolation(f"{u} and {v} lie on different cycles")
        return d


@dataclass(frozen=True)
class AuxGraph:
    """Red matching plus blue matching, split into its path and even-cycle
    components."""

    red_matching: tuple[Edge, ...]
    blue_matching: tuple[Edge, ...]
    paths: tuple[tuple[int, ...], ...]
    cycles: tuple[tuple[int, ...], ...]

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(self.paths + self.cycles, key=min))

    @cached_property
    def component_index(self) -> dict[int, int]:
        return {v: i for i, comp in enumerate(self.components) for v in comp}


@dataclass(frozen=True)
class CostReport:
    path_length_sum: int
    bad_vertices: tuple[int, ...]
    swallowed_cycles: tuple[int, ...]  # odd-cycle indices fully inside their path
    cost: float

    @property
    def potential(self) -> tuple[int, float]:
        return (self.path_length_sum, self.cost)


@dataclass(frozen=True)
class Move:
    kind: str  # "relocate" (escape a swallowed cycle) or "advance" (hop two forward)
    cycle_index: int
    old_rep: int
    new_rep: int
    potential_before: tuple[int, float]
    potential_after: tuple[int, float]


@dataclass(frozen=True)
class OptimizationResult:
    transversal: Transversal
    moves: tuple[Move, ...]
    report: CostReport
    red_matching: tuple[Edge, ...]
    aux: AuxGraph


@dataclass(frozen=True)
class TwoColoring:
    """Proper black(0)/white(1) coloring of the aux graph."""

    shade: dict[int, int]
    unhappy: tuple[int, ...]


def base_matching(decomp: ComponentDecomposition) -> tuple[Edge, ...]:
    """Red matching saturating exactly the even-cycle vertices, taking the
    alternate-edge pairing that contains each cycle's canonical first edge."""
    if decomp.paths or decomp.isolates:
        raise NotNormalized("base matching needs a 2-regular host")
    out = []
    for cycle in decomp.even_cycles:
        for i in range(0, len(cycle), 2):
            out.append(make_edge(cycle[i], cycle[i + 1]))
    return tuple(sorted(out))


def blue_matching(blocks: BlockSet) -> tuple[Edge, ...]:
    """Per block, the lexicographically smallest perfect matching."""
    out = []
    for b in blocks:
        out.append(make_edge(b[0], b[1]))
        out.append(make_edge(b[2], b[3]))
    return tuple(sorted(out))


def extend_matching(
    decomp: ComponentDecomposition, base: tuple[Edge, ...], transversal: Transversal
) -> tuple[Edge, ...]:
    """The unique red matching extending the base one and saturating
    everything except the transversal: each odd cycle minus its
    representative is a path with a single perfect matching."""
    out = list(base)
    for cycle, rep in zip(decomp.odd_cycles, transversal.reps):
        size = len(cycle)
        i = cycle.index(rep)
        for step in range(1, size - 1, 2):
            out.append(make_edge(cycle[(i + step) % size], cycle[(i + step + 1) % size]))
    return tuple(sorted(out))


def initial_transversal(decomp: ComponentDecomposition) -> Transversal:
    return Transversal(tuple(cycle[0] for cycle in decomp.odd_cycles))


def cyclic_orientation(decomp: ComponentDecomposition) -> CyclicOrientation:
    succ: dict[int, int] = {}
    for cycle in decomp.odd_cycles:
        for i, v in enumerate(cycle):
            succ[v] = cycle[(i + 1) % len(cycle)]
    return CyclicOrientation(succ)


def build_aux(
    n: int, red_matching: tuple[Edge, ...], blue: tuple[Edge, ...]
) -> AuxGraph:
    blue_cover = Counter()
    for u, v in blue:
        blue_cover[u] += 1
        blue_cover[v] += 1
    if any(blue_cover[v] != 1 for v in range(n)):
        raise InternalInvariantViolation("blue matching must cover every vertex exactly once")
    if set(red_matching) & set(blue):
        raise InternalInvariantViolation("red and blue matchings may not share a pair")
    adjacency = build_adjacency(n, tuple(red_matching) + tuple(blue))
    paths, cycles = paths_and_cycles(adjacency)
    for cyc in cycles:
        if len(cyc) % 2:
            raise InternalInvariantViolation("matching-union components must be even cycles")
    return AuxGraph(tuple(red_matching), tuple(blue), tuple(sorted(paths)), tuple(sorted(cycles)))


def cost_report(
    decomp: ComponentDecomposition,
    orientation: CyclicOrientation,
    transversal: Transversal,
    aux: AuxGraph,
) -> CostReport:
    path_length_sum = sum(len(p) - 1 for p in aux.paths)
    bad: list[int] = []
    swallowed: list[int] = []
    total = 0
    infinite = False
    for index, (cycle, rep) in enumerate(zip(decomp.odd_cycles, transversal.reps)):
        comp = aux.components[aux.component_index[rep]]
        comp_set = set(comp)
        if set(cycle) <= comp_set:
            swallowed.append(index)
        if orientation.succ[rep] in comp_set:
            bad.append(rep)
            outside = [v for v in cycle if v not in comp_set]
            if outside:
                total += min(orientation.forward_distance(rep, v) for v in outside)
            else:
                infinite = True
    return CostReport(
        path_length_sum,
        tuple(sorted(bad)),
        tuple(sorted(swallowed)),
        math.inf if infinite else total,
    )


def _validate_transversal(decomp: ComponentDecomposition, transversal: Transversal) -> None:
    if len(transversal.reps) != len(decomp.odd_cycles):
        raise InternalInvariantViolation("one representative per odd cycle required")
    for cycle, rep in zip(decomp.odd_cycles, transversal.reps):
        if rep not in cycle:
            raise InternalInvariantViolation(f"representative {rep} not on its cycle")


def optimize_transversal(
    instance: GluedInstance, start: Optional[Transversal] = None
) -> OptimizationResult:
    """Two-phase local search ending with no swallowed cycles and no bad
    vertices.

    Moves, tried in deterministic order, are the two improvement steps from
    the optimality argument: relocate a representative to the last vertex of
    its cycle along its own path (strictly shrinks the total path length), or
    advance a bad representative two steps along its cycle (swaps exactly one
    matching edge and strictly lowers the badness cost).  The lexicographic
    potential (path length sum, cost) decreases at every move.
    """
    decomp = decompose(instance.host)
    base = base_matching(decomp)
    blue = blue_matching(instance.blocks)
    orientation = cyclic_orientation(decomp)
    current = start if start is not None else initial_transversal(decomp)
    _validate_transversal(decomp, current)

    def snapshot(t: Transversal):
        red = extend_matching(decomp, base, t)
        aux = build_aux(instance.n, red, blue)
        return red, aux, cost_report(decomp, orientation, t, aux)

    red, aux, report = snapshot(current)
    moves: list[Move] = []
    cap = 8 * instance.n * instance.n + 64
    while True:
        if len(moves) > cap:
            raise InternalInvariantViolation("transversal optimization exceeded its move cap")
        if report.swallowed_cycles:
            index = report.swallowed_cycles[0]
            rep = current.reps[index]
            comp = aux.components[aux.component_index[rep]]
            if comp in aux.cycles:
                raise InternalInvariantViolation("representatives always sit on path components")
            seq = comp if comp[0] == rep else comp[::-1]
            on_cycle = set(decomp.odd_cycles[index])
            new_rep = next(v for v in reversed(seq) if v in on_cycle)
            kind = "relocate"
        elif report.bad_vertices:
            rep = report.bad_vertices[0]
            index = decomp.cycle_of[rep]
            new_rep = orientation.succ[orientation.succ[rep]]
            kind = "advance"
        else:
            break
        candidate = current.replace(index, new_rep)
        red2, aux2, report2 = snapshot(candidate)
        if not report2.potential < report.potential:
            raise InternalInvariantViolation(
                f"{kind} move failed to lower the potential: "
                f"{report.potential} -> {report2.potential}"
            )
        if kind == "advance" and len(set(red) ^ set(red2)) != 2:
            raise InternalInvariantViolation("advance move must swap exactly one matching edge")
        moves.append(Move(kind, index, rep, new_rep, report.potential, report2.potential))
        current, red, aux, report = candidate, red2, aux2, report2
    return OptimizationResult(current, tuple(moves), report, red, aux)


def _shade_pairs(
    decomp: ComponentDecomposition,
    orientation: CyclicOrientation,
    transversal: Transversal,
) -> list[tuple[int, int]]:
    pairs = []
    for cycle, rep in zip(decomp.odd_cycles, transversal.reps):
        if len(cycle) > 3:
            pairs.append((rep, orientation.succ[rep]))
    return pairs


def derandomized_coloring(
    aux: AuxGraph, transversal: Transversal, decomp: ComponentDecomposition
) -> TwoColoring:
    """Proper 2-coloring of the aux graph chosen component by component to
    minimize the conditional expected number of unhappy representatives.

    A long-odd-cycle representative is unhappy when it matches the shade of
    its cycle successor.  With no bad vertices the two sit in different
    components, an undecided pair contributes 1/2, so the final count never
    exceeds half the number of long odd cycles.
    """
    orientation = cyclic_orientation(decomp)
    pairs = _shade_pairs(decomp, orientation, transversal)
    comp_index = aux.component_index
    for t, succ in pairs:
        if comp_index[t] == comp_index[succ]:
            raise BadVertexPresent(f"representative {t} shares a component with its successor")

    base: dict[int, int] = {}
    for comp in aux.components:
        for pos, v in enumerate(comp):
            base[v] = pos % 2

    touching: dict[int, list[tuple[int, int]]] = {}
    for t, succ in pairs:
        touching.setdefault(comp_index[t], []).append((t, succ))
        touching.setdefault(comp_index[succ], []).append((t, succ))

    flip: dict[int, int] = {}
    for i in range(len(aux.components)):
        tallies = [0, 0]
        for t, succ in touching.get(i, []):
            other = comp_index[succ] if comp_index[t] == i else comp_index[t]
            if other not in flip:
                continue  # undecided pairs contribute 1/2 to either choice
            mine, theirs = (t, succ) if comp_index[t] == i else (succ, t)
            settled = base[theirs] ^ flip[other]
            for choice in (0, 1):
                if base[mine] ^ choice == settled:
                    tallies[choice] += 1
        flip[i] = 0 if tallies[0] <= tallies[1] else 1

    shade = {v: base[v] ^ flip[comp_index[v]] for v in base}
    unhappy = tuple(sorted(t for t, succ in pairs if shade[t] == shade[succ]))
    if len(unhappy) > len(decomp.long_odd) // 2:
        raise InternalInvariantViolation("unhappy count exceeded half the long odd cycles")
    return TwoColoring(shade, unhappy)


def exhaustive_min_unhappy(
    aux: AuxGraph, transversal: Transversal, decomp: ComponentDecomposition
) -> int:
    """Minimum unhappy count over every component orientation, by brute
    force; only sensible for small component counts."""
    orientation = cyclic_orientation(decomp)
    pairs = _shade_pairs(decomp, orientation, transversal)
    comp_index = aux.component_index
    base: dict[int, int] = {}
    for comp in aux.components:
        for pos, v in enumerate(comp):
            base[v] = pos % 2
    touched = sorted({comp_index[v] for t, s in pairs for v in (t, s)})
    slot = {c: i for i, c in enumerate(touched)}
    best = len(pairs)
    for flips in product((0, 1), repeat=len(touched)):
        count = 0
        for t, succ in pairs:
            st = base[t] ^ flips[slot[comp_index[t]]]
            ss = base[succ] ^ flips[slot[comp_index[succ]]]
            count += st == ss
        best = min(best, count)
    return best


def _color_sides(
    instance: GluedInstance, shade: dict[int, int], uncolored: frozenset[int]
) -> dict[int, int]:
    """Turn the black/white split into a 4-coloring: each side induces a
    graph with at most one red and one blue edge per vertex, hence a disjoint
    union of paths and even cycles, 2-colorable from its least vertex."""
    colors: dict[int, int] = {}
    for side, palette in ((0, (1, 2)), (1, (3, 4))):
        members = {v for v in range(instance.n) if shade[v] == side and v not in uncolored}
        red_deg: Counter = Counter()
        blue_deg: Counter = Counter()
        inside: set[Edge] = set()
        for u, v in instance.host.red_edges:
            if u in members and v in members:
                inside.add((u, v))
                red_deg[u] += 1
                red_deg[v] += 1
        for u, v in instance.blue_edges:
            if u in members and v in members:
                inside.add((u, v))
                blue_deg[u] += 1
                blue_deg[v] += 1
        if any(red_deg[v] > 1 or blue_deg[v] > 1 for v in members):
            raise InternalInvariantViolation("side exceeds one red or one blue edge per vertex")
        adj: dict[int, list[int]] = {v: [] for v in members}
        for u, v in inside:
            adj[u].append(v)
            adj[v].append(u)
        assigned: dict[int, int] = {}
        for v in sorted(members):
            if v in assigned:
                continue
            assigned[v] = 0
            queue = [v]
            while queue:
                u = queue.pop()
                for w in adj[u]:
                    if w not in assigned:
                        assigned[w] = assigned[u] ^ 1
                        queue.append(w)
                    elif assigned[w] == assigned[u]:
                        raise InternalInvariantViolation("side graph must be bipartite")
        for v, bit in assigned.items():
            colors[v] = palette[bit]
    return colors


def longodd_pipeline(instance: GluedInstance) -> PartialColoring:
    """4-color everything outside a set of unhappy vertices, one per long odd
    cycle at most and at most half of those cycles in total."""
    normalized = normalize(instance)
    inner = normalized.instance
    decomp = decompose(inner.host)
    optimized = optimize_transversal(inner)
    two = derandomized_coloring(optimized.aux, optimized.transversal, decomp)
    uncolored = frozenset(two.unhappy)
    colors = _color_sides(inner, two.shade, uncolored)
    witness = check_proper(inner.simple_edges, colors)
    if witness is not None:
        raise InternalInvariantViolation(f"side coloring left edge {witness} monochromatic")
    full = PartialColoring(colors, uncolored, route="longodd")
    return pull_back_coloring(full, normalized.origin_map)
