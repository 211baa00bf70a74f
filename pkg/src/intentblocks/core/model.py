"""Domain types for an exploration session."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ValidationError

PROPERTY_KINDS = ("text", "image")
PROPERTY_ORIGINS = ("suggested", "custom")
SUGGESTION_STATES = ("active", "deleted", "bookmarked")
REUSE_MODES = ("block_copy", "path_literal", "path_adaptive")

EVENT_KINDS = (
    "block_created",
    "blocks_linked",
    "suggestions_refined",
    "images_generated",
    "block_copied",
    "path_copied_literal",
    "path_copied_adaptive",
    "direction_recommended",
    "property_added",
    "property_removed",
)


@dataclass
class PropertySpec:
    """One explorable design dimension (e.g. "Image Style")."""

    name: str
    kind: str  # text | image
    origin: str = "suggested"

    def __post_init__(self):
        if not self.name or not self.name.strip():
            raise ValidationError("property name must be nonempty")
        if self.kind not in PROPERTY_KINDS:
            raise ValidationError(f"unknown property kind {self.kind!r}")
        if self.origin not in PROPERTY_ORIGINS:
            raise ValidationError(f"unknown property origin {self.origin!r}")

    def to_dict(self) -> dict:
        return {"name": self.name, "kind": self.kind, "origin": self.origin}

    @classmethod
    def from_dict(cls, d: dict) -> "PropertySpec":
        return cls(name=d["name"], kind=d["kind"], origin=d.get("origin", "suggested"))


@dataclass
class SuggestionContent:
    """Either a text idea or an image-backed idea (hash + generating prompt)."""

    kind: str  # text | image
    text: str | None = None
    image_hash: str | None = None
    prompt: str | None = None

    def display_text(self) -> str:
        """Best textual stand-in for this content (used for context settings)."""
        if self.kind == "text":
            return self.text or ""
        return self.prompt or (self.image_hash or "")

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.text is not None:
            d["text"] = self.text
        if self.image_hash is not None:
            d["image_hash"] = self.image_hash
        if self.prompt is not None:
            d["prompt"] = self.prompt
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SuggestionContent":
        return cls(
            kind=d["kind"],
            text=d.get("text"),
            image_hash=d.get("image_hash"),
            prompt=d.get("prompt"),
        )


@dataclass
class Suggestion:
    id: str
    content: SuggestionContent
    source_direction: str
    similarity_to_input: float
    state: str = "active"
    candidate_id: str | None = None  # pool member this suggestion consumed

    def __post_init__(self):
        if self.state not in SUGGESTION_STATES:
            raise ValidationError(f"unknown suggestion state {self.state!r}")

    @property
    def is_active(self) -> bool:
        # Bookmarked suggestions still participate in generation.
        return self.state != "deleted"

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "content": self.content.to_dict(),
            "source_direction": self.source_direction,
            "similarity_to_input": self.similarity_to_input,
            "state": self.state,
            "candidate_id": self.candidate_id,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Suggestion":
        return cls(
            id=d["id"],
            content=SuggestionContent.from_dict(d["content"]),
            source_direction=d["source_direction"],
            similarity_to_input=d["similarity_to_input"],
            state=d["state"],
            candidate_id=d.get("candidate_id"),
        )


@dataclass
class ReuseOrigin:
    source_block_id: str
    mode: str  # block_copy | path_literal | path_adaptive

    def __post_init__(self):
        if self.mode not in REUSE_MODES:
            raise ValidationError(f"unknown reuse mode {self.mode!r}")

    def to_dict(self) -> dict:
        return {"source_block_id": self.source_block_id, "mode": self.mode}

    @classmethod
    def from_dict(cls, d: dict | None) -> "ReuseOrigin | None":
        if d is None:
            return None
        return cls(source_block_id=d["source_block_id"], mode=d["mode"])


@dataclass
class ExplorationBlock:
    """One modular exploratory intent plus its current suggestions."""

    id: str
    property: str
    direction: str
    typicality: int
    created_at: int  # event seq of the creating event
    suggestions: list[Suggestion] = field(default_factory=list)
    reuse_origin: ReuseOrigin | None = None
    # Which parent result item (suggestion id) this block branched from, if any.
    anchor_result_item: str | None = None
    # Most thematically similar earlier block of the same property, if any.
    evolution_parent_id: str | None = None

    def __post_init__(self):
        if not self.direction or not self.direction.strip():
            raise ValidationError("direction must be nonempty")
        if not isinstance(self.typicality, int) or not 1 <= self.typicality <= 5:
            raise ValidationError(f"typicality must be in [1,5], got {self.typicality!r}")

    def active_suggestions(self) -> list[Suggestion]:
        return [s for s in self.suggestions if s.is_active]

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "property": self.property,
            "direction": self.direction,
            "typicality": self.typicality,
            "created_at": self.created_at,
            "suggestions": [s.to_dict() for s in self.suggestions],
            "reuse_origin": self.reuse_origin.to_dict() if self.reuse_origin else None,
            "anchor_result_item": self.anchor_result_item,
            "evolution_parent_id": self.evolution_parent_id,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExplorationBlock":
        return cls(
            id=d["id"],
            property=d["property"],
            direction=d["direction"],
            typicality=d["typicality"],
            created_at=d["created_at"],
            suggestions=[Suggestion.from_dict(s) for s in d.get("suggestions", [])],
            reuse_origin=ReuseOrigin.from_dict(d.get("reuse_origin")),
            anchor_result_item=d.get("anchor_result_item"),
            evolution_parent_id=d.get("evolution_parent_id"),
        )


@dataclass
class ResultItem:
    suggestion_id: str
    final_prompt: str
    image_hash: str | None = None
    error: str | None = None  # per-item failure, never silently dropped

    def to_dict(self) -> dict:
        return {
            "suggestion_id": self.suggestion_id,
            "final_prompt": self.final_prompt,
            "image_hash": self.image_hash,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ResultItem":
        return cls(
            suggestion_id=d["suggestion_id"],
            final_prompt=d["final_prompt"],
            image_hash=d.get("image_hash"),
            error=d.get("error"),
        )


@dataclass
class ResultBlock:
    """Generated images paired 1:1 with the parent block's active suggestions."""

    id: str
    parent_block_id: str
    created_at: int
    items: list[ResultItem] = field(default_factory=list)

    def image_hashes(self) -> list[str]:
        return [i.image_hash for i in self.items if i.image_hash]

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "parent_block_id": self.parent_block_id,
            "created_at": self.created_at,
            "items": [i.to_dict() for i in self.items],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ResultBlock":
        return cls(
            id=d["id"],
            parent_block_id=d["parent_block_id"],
            created_at=d["created_at"],
            items=[ResultItem.from_dict(i) for i in d.get("items", [])],
        )


@dataclass
class Event:
    """Append-only log entry; payloads carry the full state delta for replay."""

    seq: int
    kind: str
    payload: dict

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise ValidationError(f"unknown event kind {self.kind!r}")

    def to_dict(self) -> dict:
        return {"seq": self.seq, "kind": self.kind, "payload": self.payload}

    @classmethod
    def from_dict(cls, d: dict) -> "Event":
        return cls(seq=d["seq"], kind=d["kind"], payload=d["payload"])


@dataclass
class ChainEntry:
    """One ancestor in a context chain, root first, queried block last."""

    block_id: str
    property: str
    kind: str
    direction: str
    typicality: int
    active_suggestions: list[Suggestion]
    result_images: list[str]  # image hashes of the block's most recent results
    anchor_result_item: str | None = None  # anchor recorded on the NEXT block in the chain

    def setting_text(self) -> str:
        return f"{self.property}: {self.direction}"
