"""Offline evaluation harness comparing suggestion sets against an input
direction: relevance (cosine to the direction) and within-set similarity."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..embeddings.gateway import EmbeddingGateway
from ..errors import ValidationError


@dataclass
class EvalCase:
    """One direction plus named suggestion sets (e.g. ours / aligned / random).

    Items and the direction may be raw vectors or texts; texts are embedded
    with the provided gateway in the given space.
    """

    direction: object
    sets: dict[str, list] = field(default_factory=dict)


@dataclass
class EvalFixture:
    cases: list[EvalCase]
    embeddings: EmbeddingGateway | None = None
    space: str = "sentence"


@dataclass
class SetReport:
    relevance: float
    within_set_similarity: float | None  # None when every set instance is < 2 items
    n_items: int

    def to_dict(self) -> dict:
        return {
            "relevance": self.relevance,
            "within_set_similarity": self.within_set_similarity,
            "n_items": self.n_items,
        }


@dataclass
class EvalReport:
    sets: dict[str, SetReport]

    def to_dict(self) -> dict:
        return {name: report.to_dict() for name, report in self.sets.items()}


def _as_vector(item, fixture: EvalFixture) -> np.ndarray:
    if isinstance(item, str):
        if fixture.embeddings is None:
            raise ValidationError("text items need an embedding gateway")
        if fixture.space == "sentence":
            return fixture.embeddings.embed_sentence(item).values
        if fixture.space == "image_text_joint":
            return fixture.embeddings.embed_text_joint(item).values
        if fixture.space == "word_cooccurrence":
            return fixture.embeddings.embed_word_text(item).values
        raise ValidationError(f"unknown space {fixture.space!r}")
    return np.asarray(item, dtype=np.float64)


def _cos(a: np.ndarray, b: np.ndarray) -> float:
    if a.shape != b.shape:
        raise ValidationError(
            f"mismatched embedding spaces: dims {a.shape} vs {b.shape}"
        )
    return float(np.dot(a, b)) / (float(np.linalg.norm(a)) * float(np.linalg.norm(b)))


def mean_pairwise_similarity(vectors: list[np.ndarray]) -> float | None:
    if len(vectors) < 2:
        return None
    sims = [
        _cos(vectors[i], vectors[j])
        for i in range(len(vectors))
        for j in range(i + 1, len(vectors))
    ]
    return sum(sims) / len(sims)


def eval_pipeline(fixture: EvalFixture) -> EvalReport:
    if not fixture.cases:
        raise ValidationError("fixture has no cases")
    set_names: list[str] = []
    for case in fixture.cases:
        for name in case.sets:
            if name not in set_names:
                set_names.append(name)

    reports: dict[str, SetReport] = {}
    for name in set_names:
        relevances: list[float] = []
        withins: list[float] = []
        n_items = 0
        for case in fixture.cases:
            if name not in case.sets:
                continue
            direction = _as_vector(case.direction, fixture)
            vectors = [_as_vector(item, fixture) for item in case.sets[name]]
            n_items += len(vectors)
            relevances.extend(_cos(direction, v) for v in vectors)
            within = mean_pairwise_similarity(vectors)
            if within is not None:
                withins.append(within)
        reports[name] = SetReport(
            relevance=sum(relevances) / len(relevances) if relevances else 0.0,
            within_set_similarity=sum(withins) / len(withins) if withins else None,
            n_items=n_items,
        )
    return EvalReport(sets=reports)
