"""Shared coloring and representative-set value types."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .graphs import Edge


@dataclass(frozen=True)
class PartialColoring:
    """Vertex -> color in {1..4} on all vertices outside the uncolored set."""

    colors: dict[int, int]
    uncolored: frozenset[int] = field(default_factory=frozenset)
    route: Optional[str] = None


@dataclass(frozen=True)
class RepresentativeSet:
    """A (partial) independent transversal: at most one vertex per indexed set."""

    members: frozenset[int]
    assignment: dict[int, int]  # set index -> chosen vertex


def check_proper(edges: Iterable[Edge], colors: Mapping[int, int]) -> Optional[Edge]:
    """First edge whose two colored endpoints share a color, or None."""
    for u, v in sorted(edges):
        cu = colors.get(u)
        if cu is not None and cu == colors.get(v):
            return (u, v)
    return None
