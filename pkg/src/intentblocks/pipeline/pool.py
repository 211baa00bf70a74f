"""Candidate pools: the 100/50 intermediate suggestions behind each block."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ValidationError

TEXT_POOL_SIZE = 100
IMAGE_POOL_SIZE = 50
SUBGROUP_COUNT = 5
REPRESENTATIVE_COUNT = 4


@dataclass
class Candidate:
    id: str
    kind: str  # text | image
    source_direction: str
    direction_index: int
    original_index: int
    text: str | None = None  # text-kind content
    prompt: str | None = None  # image-kind generation prompt
    image_hash: str | None = None  # realized image, when available
    typicality_score: float | None = None
    cluster_embedding: list[float] | None = None

    def content_text(self) -> str:
        return self.text if self.kind == "text" else (self.prompt or "")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "source_direction": self.source_direction,
            "direction_index": self.direction_index,
            "original_index": self.original_index,
            "text": self.text,
            "prompt": self.prompt,
            "image_hash": self.image_hash,
            "typicality_score": self.typicality_score,
            "cluster_embedding": self.cluster_embedding,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Candidate":
        return cls(**d)


@dataclass
class CandidatePool:
    property: str
    kind: str
    input_direction: str
    directions: list[str]
    candidates: list[Candidate]
    mode: str | None = None  # full | economy (image pools only)
    subgroup_level: int | None = None
    subgroup_ids: list[str] = field(default_factory=list)
    consumed: list[str] = field(default_factory=list)

    def expected_size(self) -> int:
        return TEXT_POOL_SIZE if self.kind == "text" else IMAGE_POOL_SIZE

    def candidate(self, candidate_id: str) -> Candidate:
        for c in self.candidates:
            if c.id == candidate_id:
                return c
        raise ValidationError(f"unknown candidate {candidate_id!r}")

    def unused(self) -> list[Candidate]:
        taken = set(self.consumed)
        return [
            c
            for c in self.candidates
            if c.id not in taken and c.cluster_embedding is not None
        ]

    def mark_consumed(self, candidate_id: str) -> None:
        if candidate_id not in self.consumed:
            self.consumed.append(candidate_id)
            self.consumed.sort()

    def scored(self) -> list[Candidate]:
        return [c for c in self.candidates if c.typicality_score is not None]

    def ranked(self) -> list[Candidate]:
        """Descending score; ties broken by (direction order, original index)."""
        return sorted(
            self.scored(),
            key=lambda c: (-c.typicality_score, c.direction_index, c.original_index),
        )

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "kind": self.kind,
            "input_direction": self.input_direction,
            "directions": list(self.directions),
            "mode": self.mode,
            "subgroup_level": self.subgroup_level,
            "subgroup_ids": list(self.subgroup_ids),
            "consumed": sorted(self.consumed),
            "candidates": [c.to_dict() for c in self.candidates],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CandidatePool":
        return cls(
            property=d["property"],
            kind=d["kind"],
            input_direction=d["input_direction"],
            directions=list(d["directions"]),
            candidates=[Candidate.from_dict(c) for c in d["candidates"]],
            mode=d.get("mode"),
            subgroup_level=d.get("subgroup_level"),
            subgroup_ids=list(d.get("subgroup_ids", [])),
            consumed=list(d.get("consumed", [])),
        )


@dataclass
class Subgroup:
    level: int  # 1..5; 1 = most typical
    members: list[Candidate]  # contiguous rank slice, best rank first

    def mean_score(self) -> float:
        return sum(c.typicality_score for c in self.members) / len(self.members)


def partition_slices(n: int) -> list[tuple[int, int]]:
    """Five contiguous (start, end) rank slices; when n is not divisible the
    larger slices come from the top."""
    base, rem = divmod(n, SUBGROUP_COUNT)
    slices = []
    start = 0
    for i in range(SUBGROUP_COUNT):
        size = base + (1 if i < rem else 0)
        slices.append((start, start + size))
        start += size
    return slices
