"""Linkographs over a session's block history, plus their process metrics."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from ..core.session import Session
from ..errors import NotEnoughDataError, ValidationError

LINK_KINDS = ("parent_child", "reuse", "manual")


@dataclass
class Linkograph:
    nodes: list[str]  # block ids in creation order; index = temporal position
    links: set[tuple[int, int, str]] = field(default_factory=set)  # (i, j, kind), i<j

    def add_link(self, i: int, j: int, kind: str) -> None:
        if kind not in LINK_KINDS:
            raise ValidationError(f"unknown link kind {kind!r}")
        if not (0 <= i < j < len(self.nodes)):
            raise ValidationError(f"link ({i},{j}) out of range or not i<j")
        self.links.add((i, j, kind))

    def distances(self) -> list[int]:
        return [j - i for i, j, _ in self.links]

    def to_dict(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "links": sorted([list(l) for l in self.links]),
        }


def build_linkograph(
    session: Session, manual_links: list[dict] | None = None
) -> Linkograph:
    """Nodes are blocks in creation order; links come from parent-child edges
    and reuse origins. `manual_links` adds analyst-annotated {i, j} pairs."""
    blocks = session.blocks_in_creation_order()
    if not blocks:
        raise NotEnoughDataError("session has no blocks")
    graph = Linkograph(nodes=[b.id for b in blocks])
    index = {b.id: i for i, b in enumerate(blocks)}
    for parent, child in session.edges:
        graph.add_link(index[parent], index[child], "parent_child")
    for block in blocks:
        if block.reuse_origin is not None:
            graph.add_link(index[block.reuse_origin.source_block_id], index[block.id], "reuse")
    for link in manual_links or []:
        graph.add_link(int(link["i"]), int(link["j"]), "manual")
    return graph


@dataclass
class MetricsReport:
    n_nodes: int
    n_links: int
    avg_link_distance: float | None  # None when there are no links
    connected_components: int
    link_entropy: float  # bits over the link-distance histogram

    def to_dict(self) -> dict:
        return {
            "n_nodes": self.n_nodes,
            "n_links": self.n_links,
            "avg_link_distance": self.avg_link_distance,
            "connected_components": self.connected_components,
            "link_entropy": self.link_entropy,
        }


def linkograph_metrics(graph: Linkograph) -> MetricsReport:
    distances = graph.distances()
    n = len(graph.nodes)

    avg = sum(distances) / len(distances) if distances else None

    # Components of the undirected link graph; isolated nodes are singletons.
    adjacency: dict[int, set[int]] = {i: set() for i in range(n)}
    for i, j, _ in graph.links:
        adjacency[i].add(j)
        adjacency[j].add(i)
    seen: set[int] = set()
    components = 0
    for start in range(n):
        if start in seen:
            continue
        components += 1
        stack = [start]
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(adjacency[node] - seen)

    entropy = 0.0
    if distances:
        counts = Counter(distances)
        total = len(distances)
        entropy = max(
            0.0, -sum((c / total) * math.log2(c / total) for c in counts.values())
        )

    return MetricsReport(
        n_nodes=n,
        n_links=len(graph.links),
        avg_link_distance=avg,
        connected_components=components,
        link_entropy=entropy,
    )
