"""Reuse features: evolution graphs, block/path copies, direction recommendations."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ..core.model import ChainEntry
from ..core.session import Session
from ..errors import ValidationError
from ..providers.base import ProviderGateway

log = logging.getLogger(__name__)


# --------------------------------------------------------------- evolution graph


@dataclass
class EvolutionGraph:
    """Per-property view of how exploration directions evolved."""

    property: str
    nodes: list[dict] = field(default_factory=list)  # {block_id, direction, typicality}
    parent_links: dict[str, str | None] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "nodes": self.nodes,
            "parent_links": self.parent_links,
        }


def build_evolution_graph(session: Session, property_name: str) -> EvolutionGraph:
    session.property_spec(property_name)
    graph = EvolutionGraph(property=property_name)
    ids: set[str] = set()
    for block in session.property_blocks(property_name):
        graph.nodes.append(
            {
                "block_id": block.id,
                "direction": block.direction,
                "typicality": block.typicality,
            }
        )
        parent = block.evolution_parent_id
        # Links stay property-homogeneous and point to earlier blocks only.
        graph.parent_links[block.id] = parent if parent in ids else None
        ids.add(block.id)
    return graph


def organize_history(
    providers: ProviderGateway,
    property_log: list[tuple[str, str]],
    new_direction: str,
    *,
    seed: int,
) -> str | None:
    """Id of the most thematically similar prior log, or None.

    `property_log` is (id, direction) pairs in chronological order.
    """
    if not new_direction or not new_direction.strip():
        raise ValidationError("new direction must be nonempty")
    if not property_log:
        return None
    logs = [{"id": i, "direction": d} for i, d in property_log]
    reply = providers.complete_structured(
        "organize_history", {"logs": logs, "new_direction": new_direction}, seed=seed
    )
    selected = reply["selected_id"]
    if selected is None or str(selected).strip().lower() in ("none", "null", ""):
        return None
    selected = str(selected)
    if selected not in {i for i, _ in property_log}:
        log.warning("organize_history returned unknown id %r; treating as none", selected)
        return None
    return selected


# --------------------------------------------------------------------- copying


def copy_block(
    session: Session,
    source_block_id: str,
    target_parent: str | None = None,
    *,
    evolution_parent_id: str | None = None,
) -> str:
    """New block with the source's settings preserved; suggestions are not
    copied (they are re-crafted in the new context by the orchestrator)."""
    return session.add_copied_block(
        source_block_id, parent=target_parent, evolution_parent_id=evolution_parent_id
    )


def validate_chain(session: Session, path_block_ids: list[str]) -> None:
    """The selection must be a connected descending chain, root-first."""
    if not path_block_ids:
        raise ValidationError("path selection is empty")
    for bid in path_block_ids:
        session.block(bid)
    if len(set(path_block_ids)) != len(path_block_ids):
        raise ValidationError("path selection repeats a block")
    for parent, child in zip(path_block_ids, path_block_ids[1:]):
        if session.parent_of(child) != parent:
            raise ValidationError(
                f"selection is not a connected chain: {child!r} is not a child of {parent!r}"
            )


def planned_clone_ids(session: Session, count: int) -> list[str]:
    """Ids the next path copy will assign, root-first."""
    base = len(session.blocks)
    return [f"{session.id}.b{base + i + 1}" for i in range(count)]


def _clone_specs(
    session: Session,
    path_block_ids: list[str],
    target_parent: str | None,
    steps: list[dict] | None,
    evolution: list[str | None] | None = None,
) -> list[dict]:
    specs = []
    parent = target_parent
    new_ids = planned_clone_ids(session, len(path_block_ids))
    for offset, source_id in enumerate(path_block_ids):
        source = session.block(source_id)
        step = steps[offset] if steps else None
        specs.append(
            {
                "new_block_id": new_ids[offset],
                "source_block_id": source_id,
                "property": step["property"] if step else source.property,
                "direction": step["direction"] if step else source.direction,
                "typicality": _clamp_novelty(step["novelty"]) if step else source.typicality,
                "parent_id": parent,
                "evolution_parent_id": evolution[offset] if evolution else None,
            }
        )
        parent = new_ids[offset]
    return specs


def _clamp_novelty(novelty: int) -> int:
    return max(1, min(5, int(novelty)))


def copy_path_literal(
    session: Session,
    path_block_ids: list[str],
    target_parent: str | None,
    *,
    evolution: list[str | None] | None = None,
) -> list[str]:
    """Clone the chain as-is under the target; returns new block ids root-first."""
    validate_chain(session, path_block_ids)
    if target_parent is not None:
        session.block(target_parent)
    specs = _clone_specs(session, path_block_ids, target_parent, steps=None, evolution=evolution)
    return session.add_path_copy(specs, "literal", target_parent)


def chain_to_pre_explored(chain: list[ChainEntry]) -> list[dict]:
    return [
        {
            "id": entry.block_id,
            "property": entry.property,
            "direction": entry.direction,
            "novelty": entry.typicality,
            "options": [s.content.display_text() for s in entry.active_suggestions],
        }
        for entry in chain
    ]


def request_adaptive_paths(
    providers: ProviderGateway,
    *,
    topic: str,
    pre_explored: list[dict],
    replication_paths: list[dict],
    seed: int,
) -> list[list[dict]]:
    """Three adapted variants of the replication path, graded least to most
    deviating; ids and properties must match the originals positionally."""

    def matches_contract(reply: dict) -> None:
        for variant in reply["paths"]:
            if len(variant) != len(replication_paths):
                raise ValidationError(
                    f"variant has {len(variant)} steps, expected {len(replication_paths)}"
                )
            for got, want in zip(variant, replication_paths):
                if str(got["id"]) != str(want["id"]):
                    raise ValidationError(
                        f"step id {got['id']!r} does not match original {want['id']!r}"
                    )
                if got["property"] != want["property"]:
                    raise ValidationError(
                        f"step property {got['property']!r} does not match "
                        f"original {want['property']!r}"
                    )

    reply = providers.complete_structured(
        "adaptive_path",
        {
            "topic": topic,
            "pre_explored": pre_explored,
            "replication_paths": replication_paths,
        },
        seed=seed,
        validate=matches_contract,
    )
    return reply["paths"]


def copy_path_adaptive(
    session: Session,
    path_block_ids: list[str],
    target_parent: str | None,
    providers: ProviderGateway,
) -> dict[str, list[dict]]:
    """Phase one of the adaptive copy: the variant menu (literal + 3 adapted).

    Apply a chosen variant with `apply_path_variant`.
    """
    validate_chain(session, path_block_ids)
    pre_explored: list[dict] = []
    if target_parent is not None:
        pre_explored = chain_to_pre_explored(session.chain_context(target_parent))
    replication = [
        {
            "id": bid,
            "property": session.block(bid).property,
            "direction": session.block(bid).direction,
            "novelty": session.block(bid).typicality,
        }
        for bid in path_block_ids
    ]
    variants = request_adaptive_paths(
        providers,
        topic=session.topic,
        pre_explored=pre_explored,
        replication_paths=replication,
        seed=session.seed,
    )
    menu = {"literal": replication}
    for i, variant in enumerate(variants, start=1):
        menu[f"v{i}"] = variant
    return menu


def apply_path_variant(
    session: Session,
    path_block_ids: list[str],
    target_parent: str | None,
    variant_name: str,
    steps: list[dict],
    *,
    evolution: list[str | None] | None = None,
) -> list[str]:
    """Instantiate one chosen variant as a cloned chain."""
    validate_chain(session, path_block_ids)
    if target_parent is not None:
        session.block(target_parent)
    if len(steps) != len(path_block_ids):
        raise ValidationError("variant steps do not match the selected path")
    mode = "literal" if variant_name == "literal" else "adaptive"
    specs = _clone_specs(session, path_block_ids, target_parent, steps=steps, evolution=evolution)
    return session.add_path_copy(specs, mode, target_parent, variant=variant_name)


# -------------------------------------------------------------- recommendations


def recommend_directions(
    session: Session,
    property_name: str,
    context_chain: list[ChainEntry] | None,
    providers: ProviderGateway,
) -> dict[str, str]:
    """A typical and a unique next direction for the property, neither of
    which repeats the property's exploration history."""
    session.property_spec(property_name)
    history = [b.direction for b in session.property_blocks(property_name)]
    settings = [e.setting_text() for e in (context_chain or [])]
    history_lower = {h.strip().lower() for h in history}

    def fresh_and_short(reply: dict) -> None:
        for key in ("typical", "unique"):
            value = reply[key].strip()
            if len(value.split()) > 3:
                raise ValidationError(f"{key} recommendation too long: {value!r}")
            if value.lower() in history_lower:
                raise ValidationError(f"{key} recommendation repeats history: {value!r}")

    reply = providers.complete_structured(
        "recommend_directions",
        {
            "topic": session.topic,
            "property": property_name,
            "history": history,
            "settings": settings,
        },
        seed=session.seed,
        validate=fresh_and_short,
    )
    return {"typical": reply["typical"], "unique": reply["unique"]}
