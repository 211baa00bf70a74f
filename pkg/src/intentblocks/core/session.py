"""Session state: block forest, property list, and the append-only event log.

Every mutation goes through `append_event`: commands validate input, build a
payload carrying the full state delta, and the payload is applied to state by
a kind-specific handler. Replaying the stored log through the same handlers
reproduces the identical session, so snapshots and logs can be cross-checked.
"""

from __future__ import annotations

import copy

from ..errors import ConflictError, GraphError, NotFoundError, ValidationError
from ..util import canonical_json, stable_digest
from .model import (
    ChainEntry,
    Event,
    ExplorationBlock,
    PropertySpec,
    ResultBlock,
    ReuseOrigin,
    Suggestion,
)


class Session:
    def __init__(self, id: str, topic: str, properties: list[PropertySpec], seed: int):
        if not topic or not topic.strip():
            raise ValidationError("topic must be nonempty")
        if not properties:
            raise ValidationError("at least one property is required")
        names = [p.name for p in properties]
        if len(set(names)) != len(names):
            raise ValidationError("duplicate property names")
        self.id = id
        self.topic = topic
        self.seed = int(seed)
        self.initial_properties = [copy.deepcopy(p) for p in properties]
        self.properties: list[PropertySpec] = [copy.deepcopy(p) for p in properties]
        self.blocks: dict[str, ExplorationBlock] = {}
        self.results: dict[str, ResultBlock] = {}
        self.edges: set[tuple[str, str]] = set()  # (parent_id, child_id)
        self.events: list[Event] = []
        # Derived, not part of the snapshot: candidate pools keyed by block id,
        # rebuilt from craft/refine events on replay.
        self.pools: dict[str, dict] = {}

    # ---------------------------------------------------------------- factory

    @classmethod
    def create(
        cls,
        topic: str,
        properties: list[PropertySpec],
        seed: int,
        id: str | None = None,
    ) -> "Session":
        sid = id if id is not None else stable_digest(topic, seed)[:12]
        return cls(id=sid, topic=topic, properties=properties, seed=seed)

    # ----------------------------------------------------------------- lookup

    def property_spec(self, name: str) -> PropertySpec:
        for p in self.properties:
            if p.name == name:
                return p
        raise NotFoundError(f"unknown property {name!r}")

    def block(self, block_id: str) -> ExplorationBlock:
        try:
            return self.blocks[block_id]
        except KeyError:
            raise NotFoundError(f"unknown block {block_id!r}") from None

    def parent_of(self, block_id: str) -> str | None:
        for p, c in self.edges:
            if c == block_id:
                return p
        return None

    def children_of(self, block_id: str) -> list[str]:
        kids = [c for p, c in self.edges if p == block_id]
        return sorted(kids, key=lambda c: self.blocks[c].created_at)

    def results_for(self, block_id: str) -> list[ResultBlock]:
        out = [r for r in self.results.values() if r.parent_block_id == block_id]
        return sorted(out, key=lambda r: r.created_at)

    def latest_result(self, block_id: str) -> ResultBlock | None:
        rs = self.results_for(block_id)
        return rs[-1] if rs else None

    def blocks_in_creation_order(self) -> list[ExplorationBlock]:
        return sorted(self.blocks.values(), key=lambda b: b.created_at)

    def property_blocks(self, property_name: str) -> list[ExplorationBlock]:
        return [b for b in self.blocks_in_creation_order() if b.property == property_name]

    def next_block_id(self) -> str:
        return f"{self.id}.b{len(self.blocks) + 1}"

    def next_result_id(self, block_id: str) -> str:
        return f"{block_id}.r{len(self.results_for(block_id)) + 1}"

    def next_suggestion_id(self, block_id: str, offset: int = 0) -> str:
        return f"{block_id}.s{len(self.block(block_id).suggestions) + 1 + offset}"

    # ------------------------------------------------------------ event plumbing

    def append_event(self, kind: str, payload: dict) -> int:
        """Validate payload references, apply the delta, append to the log."""
        self._validate_payload(kind, payload)
        event = Event(seq=len(self.events) + 1, kind=kind, payload=payload)
        self._apply(event)
        self.events.append(event)
        self._check_forest()
        return event.seq

    def _validate_payload(self, kind: str, payload: dict) -> None:
        def need_block(bid):
            if bid is not None and bid not in self.blocks:
                raise ValidationError(f"payload references unknown block {bid!r}")

        def need_property(name):
            if name is not None and all(p.name != name for p in self.properties):
                raise ValidationError(f"payload references unknown property {name!r}")

        if kind in ("block_created", "block_copied"):
            need_property(payload["property"])
            need_block(payload.get("parent_id"))
            need_block(payload.get("evolution_parent_id"))
            if kind == "block_copied":
                need_block(payload["source_block_id"])
        elif kind == "blocks_linked":
            need_block(payload["parent_id"])
            need_block(payload["child_id"])
        elif kind in ("suggestions_refined", "images_generated"):
            need_block(payload["block_id"])
            if kind == "images_generated":
                block = self.blocks[payload["block_id"]]
                known = {s.id for s in block.suggestions}
                for item in payload["result"]["items"]:
                    if item["suggestion_id"] not in known:
                        raise ValidationError(
                            f"result item references unknown suggestion {item['suggestion_id']!r}"
                        )
        elif kind in ("path_copied_literal", "path_copied_adaptive"):
            need_block(payload.get("target_parent"))
            introduced: set[str] = set()
            for spec in payload["blocks"]:
                need_block(spec["source_block_id"])
                need_property(spec["property"])
                for ref in (spec.get("parent_id"), spec.get("evolution_parent_id")):
                    if ref is not None and ref not in introduced:
                        need_block(ref)
                introduced.add(spec["new_block_id"])
        elif kind == "direction_recommended":
            need_property(payload["property"])
            need_block(payload.get("context_block_id"))
        elif kind == "property_added":
            if any(p.name == payload["name"] for p in self.properties):
                raise ConflictError(f"duplicate property name {payload['name']!r}")
        elif kind == "property_removed":
            need_property(payload["name"])
            if any(b.property == payload["name"] for b in self.blocks.values()):
                raise ConflictError(f"property {payload['name']!r} is in use by a block")

    def _apply(self, event: Event) -> None:
        p = event.payload
        kind = event.kind
        if kind == "block_created":
            self._apply_new_block(p, event.seq, reuse=None)
        elif kind == "block_copied":
            self._apply_new_block(
                p, event.seq, reuse=ReuseOrigin(p["source_block_id"], "block_copy")
            )
        elif kind == "blocks_linked":
            self._add_edge(p["parent_id"], p["child_id"])
        elif kind == "suggestions_refined":
            block = self.block(p["block_id"])
            block.suggestions = [Suggestion.from_dict(s) for s in p["suggestions"]]
            if "pool" in p and p["pool"] is not None:
                self.pools[p["block_id"]] = copy.deepcopy(p["pool"])
            consumed = p.get("consumed_candidate_ids") or []
            if consumed and p["block_id"] in self.pools:
                pool = self.pools[p["block_id"]]
                got = set(pool.get("consumed", []))
                got.update(consumed)
                pool["consumed"] = sorted(got)
        elif kind == "images_generated":
            result = ResultBlock.from_dict(p["result"])
            self.results[result.id] = result
        elif kind in ("path_copied_literal", "path_copied_adaptive"):
            mode = "path_literal" if kind == "path_copied_literal" else "path_adaptive"
            for spec in p["blocks"]:
                self._apply_new_block(
                    spec, event.seq, reuse=ReuseOrigin(spec["source_block_id"], mode)
                )
        elif kind == "direction_recommended":
            pass  # log-only
        elif kind == "property_added":
            self.properties.append(
                PropertySpec(p["name"], p["kind"], p.get("origin", "custom"))
            )
        elif kind == "property_removed":
            self.properties = [q for q in self.properties if q.name != p["name"]]

    def _apply_new_block(self, p: dict, seq: int, reuse: ReuseOrigin | None) -> None:
        bid = p.get("new_block_id") or p["block_id"]
        if bid in self.blocks:
            raise ConflictError(f"block id collision {bid!r}")
        self.blocks[bid] = ExplorationBlock(
            id=bid,
            property=p["property"],
            direction=p["direction"],
            typicality=p["typicality"],
            created_at=seq,
            reuse_origin=reuse,
            anchor_result_item=p.get("anchor_result_item"),
            evolution_parent_id=p.get("evolution_parent_id"),
        )

    def _add_edge(self, parent_id: str, child_id: str) -> None:
        if parent_id == child_id:
            raise GraphError("self-link is not allowed")
        if self.parent_of(child_id) is not None:
            raise GraphError(f"block {child_id!r} already has a parent")
        # Walk up from the prospective parent; hitting the child means a cycle.
        cursor: str | None = parent_id
        while cursor is not None:
            if cursor == child_id:
                raise GraphError("edge would create a cycle")
            cursor = self.parent_of(cursor)
        self.edges.add((parent_id, child_id))

    def _check_forest(self) -> None:
        indeg: dict[str, int] = {}
        for parent, child in self.edges:
            if parent not in self.blocks or child not in self.blocks:
                raise GraphError("edge endpoint missing")
            indeg[child] = indeg.get(child, 0) + 1
            if indeg[child] > 1:
                raise GraphError(f"block {child!r} has multiple parents")
        for bid in self.blocks:
            seen = {bid}
            cursor = self.parent_of(bid)
            while cursor is not None:
                if cursor in seen:
                    raise GraphError("cycle detected in block graph")
                seen.add(cursor)
                cursor = self.parent_of(cursor)

    # ---------------------------------------------------------------- commands

    def add_block(
        self,
        property_name: str,
        direction: str,
        typicality: int,
        parent: str | None = None,
        anchor_result_item: str | None = None,
        evolution_parent_id: str | None = None,
    ) -> str:
        self.property_spec(property_name)  # raises NotFoundError
        if not isinstance(typicality, int) or not 1 <= typicality <= 5:
            raise ValidationError(f"typicality must be in [1,5], got {typicality!r}")
        if not direction or not direction.strip():
            raise ValidationError("direction must be nonempty")
        if parent is not None:
            self.block(parent)
            if anchor_result_item is not None:
                latest = self.latest_result(parent)
                item_ids = {i.suggestion_id for i in latest.items} if latest else set()
                if anchor_result_item not in item_ids:
                    raise ValidationError(
                        f"anchor {anchor_result_item!r} is not a result item of {parent!r}"
                    )
        elif anchor_result_item is not None:
            raise ValidationError("anchor_result_item requires a parent")
        block_id = self.next_block_id()
        self.append_event(
            "block_created",
            {
                "block_id": block_id,
                "property": property_name,
                "direction": direction,
                "typicality": typicality,
                "parent_id": parent,
                "anchor_result_item": anchor_result_item,
                "evolution_parent_id": evolution_parent_id,
            },
        )
        if parent is not None:
            self.append_event("blocks_linked", {"parent_id": parent, "child_id": block_id})
        return block_id

    def add_copied_block(
        self,
        source_block_id: str,
        parent: str | None = None,
        evolution_parent_id: str | None = None,
    ) -> str:
        source = self.block(source_block_id)
        if parent is not None:
            self.block(parent)
        block_id = self.next_block_id()
        self.append_event(
            "block_copied",
            {
                "new_block_id": block_id,
                "source_block_id": source_block_id,
                "property": source.property,
                "direction": source.direction,
                "typicality": source.typicality,
                "parent_id": parent,
                "evolution_parent_id": evolution_parent_id,
            },
        )
        if parent is not None:
            self.append_event("blocks_linked", {"parent_id": parent, "child_id": block_id})
        return block_id

    def add_path_copy(
        self,
        blocks_spec: list[dict],
        mode: str,
        target_parent: str | None,
        variant: str | None = None,
    ) -> list[str]:
        """Create a cloned chain in one event; `blocks_spec` entries are ordered
        root-first and carry new_block_id/source_block_id/settings/parent_id."""
        if mode not in ("literal", "adaptive"):
            raise ValidationError(f"unknown path copy mode {mode!r}")
        kind = "path_copied_literal" if mode == "literal" else "path_copied_adaptive"
        payload: dict = {
            "blocks": blocks_spec,
            "target_parent": target_parent,
            "source_block_ids": [s["source_block_id"] for s in blocks_spec],
        }
        if variant is not None:
            payload["variant"] = variant
        self.append_event(kind, payload)
        for spec in blocks_spec:
            if spec.get("parent_id") is not None:
                self.append_event(
                    "blocks_linked",
                    {"parent_id": spec["parent_id"], "child_id": spec["new_block_id"]},
                )
        return [s["new_block_id"] for s in blocks_spec]

    def record_craft(self, block_id: str, suggestions: list[Suggestion], pool: dict) -> None:
        self.append_event(
            "suggestions_refined",
            {
                "block_id": block_id,
                "mode": "craft",
                "suggestions": [s.to_dict() for s in suggestions],
                "pool": pool,
                "consumed_candidate_ids": sorted(
                    s.candidate_id for s in suggestions if s.candidate_id
                ),
            },
        )

    def record_refine(
        self,
        block_id: str,
        mode: str,
        suggestions: list[Suggestion],
        consumed: list[str],
        anchor_id: str | None,
    ) -> None:
        self.append_event(
            "suggestions_refined",
            {
                "block_id": block_id,
                "mode": mode,
                "anchor_id": anchor_id,
                "suggestions": [s.to_dict() for s in suggestions],
                "consumed_candidate_ids": sorted(consumed),
            },
        )

    def record_result(self, result: ResultBlock) -> None:
        self.append_event(
            "images_generated",
            {"block_id": result.parent_block_id, "result": result.to_dict()},
        )

    def record_recommendation(
        self, property_name: str, context_block_id: str | None, typical: str, unique: str
    ) -> None:
        self.append_event(
            "direction_recommended",
            {
                "property": property_name,
                "context_block_id": context_block_id,
                "typical": typical,
                "unique": unique,
            },
        )

    def mutate_properties(self, action: str, spec: PropertySpec | str) -> list[PropertySpec]:
        if action == "add":
            assert isinstance(spec, PropertySpec)
            self.append_event(
                "property_added",
                {"name": spec.name, "kind": spec.kind, "origin": spec.origin},
            )
        elif action == "remove":
            name = spec.name if isinstance(spec, PropertySpec) else spec
            self.property_spec(name)
            self.append_event("property_removed", {"name": name})
        else:
            raise ValidationError(f"unknown property action {action!r}")
        return list(self.properties)

    # ------------------------------------------------------------ chain context

    def ancestors(self, block_id: str) -> list[str]:
        """Ancestor ids root-first, excluding the block itself."""
        chain: list[str] = []
        cursor = self.parent_of(block_id)
        while cursor is not None:
            chain.append(cursor)
            cursor = self.parent_of(cursor)
        chain.reverse()
        return chain

    def depth(self, block_id: str) -> int:
        return len(self.ancestors(block_id))

    def chain_context(self, block_id: str) -> list[ChainEntry]:
        self.block(block_id)
        ids = self.ancestors(block_id) + [block_id]
        entries: list[ChainEntry] = []
        for pos, bid in enumerate(ids):
            b = self.blocks[bid]
            latest = self.latest_result(bid)
            next_block = self.blocks[ids[pos + 1]] if pos + 1 < len(ids) else None
            entries.append(
                ChainEntry(
                    block_id=bid,
                    property=b.property,
                    kind=self.property_spec(b.property).kind,
                    direction=b.direction,
                    typicality=b.typicality,
                    active_suggestions=b.active_suggestions(),
                    result_images=latest.image_hashes() if latest else [],
                    anchor_result_item=next_block.anchor_result_item if next_block else None,
                )
            )
        return entries

    # ------------------------------------------------------------- serialization

    def snapshot(self) -> dict:
        return {
            "id": self.id,
            "topic": self.topic,
            "seed": self.seed,
            "initial_properties": [p.to_dict() for p in self.initial_properties],
            "properties": [p.to_dict() for p in self.properties],
            "blocks": {bid: b.to_dict() for bid, b in self.blocks.items()},
            "results": {rid: r.to_dict() for rid, r in self.results.items()},
            "edges": sorted([list(e) for e in self.edges]),
            "events": [e.to_dict() for e in self.events],
        }

    def canonical(self) -> str:
        return canonical_json(self.snapshot())

    @classmethod
    def replay(cls, header: dict, events: list[dict]) -> "Session":
        """Rebuild a session from its creation record plus the event log."""
        session = cls(
            id=header["id"],
            topic=header["topic"],
            properties=[PropertySpec.from_dict(p) for p in header["initial_properties"]],
            seed=header["seed"],
        )
        for raw in events:
            event = Event.from_dict(raw)
            expected = len(session.events) + 1
            if event.seq != expected:
                raise ValidationError(f"event seq gap: expected {expected}, got {event.seq}")
            session._apply(event)
            session.events.append(event)
        session._check_forest()
        return session

    @classmethod
    def from_snapshot(cls, snap: dict) -> "Session":
        """Rebuild by replaying the snapshot's own event log."""
        return cls.replay(snap, snap["events"])


def new_session(
    topic: str, properties: list[PropertySpec], seed: int, id: str | None = None
) -> Session:
    return Session.create(topic=topic, properties=properties, seed=seed, id=id)
