"""Pipeline stages: topic properties, direction diversification, candidate
expansion, typicality partitioning, and diverse representative selection."""

from __future__ import annotations

import logging

import numpy as np

from ..core.model import ChainEntry, PropertySpec
from ..embeddings.gateway import EmbeddingGateway
from ..errors import ProviderError, ValidationError
from ..providers.base import ProviderGateway
from .kmeans import kmeans, medoid_indices
from .pool import (
    IMAGE_POOL_SIZE,
    REPRESENTATIVE_COUNT,
    TEXT_POOL_SIZE,
    Candidate,
    CandidatePool,
    Subgroup,
    partition_slices,
)

log = logging.getLogger(__name__)

DIRECTION_COUNT = 10
TEXT_PER_DIRECTION = 10
IMAGE_PER_DIRECTION = 5


def generate_properties(
    providers: ProviderGateway, topic: str, *, seed: int
) -> list[PropertySpec]:
    """Eight explorable properties for a topic, always including an image one."""
    if not topic or not topic.strip():
        raise ValidationError("topic must be nonempty")
    reply = providers.complete_structured("properties", {"topic": topic}, seed=seed)
    return [
        PropertySpec(name=o["property_name"], kind=o["property_type"], origin="suggested")
        for o in reply["outputs"]
    ]


def diversify_directions(
    providers: ProviderGateway,
    property_name: str,
    direction: str,
    kind: str,
    *,
    seed: int,
) -> list[str]:
    """The original direction plus nine distinct generated alternatives."""
    if not direction or not direction.strip():
        raise ValidationError("direction must be nonempty")
    template_id = "diversify_text" if kind == "text" else "diversify_image"
    collected: list[str] = [direction]
    seen = {direction.strip().lower()}
    for round_no in range(providers.attempts):
        avoid = collected[1:] if round_no else []
        reply = providers.complete_structured(
            template_id,
            {"property": property_name, "direction": direction, "avoid": avoid},
            seed=seed,
        )
        for variation in reply["outputs"]["variations"]:
            key = variation.strip().lower()
            if key not in seen:
                seen.add(key)
                collected.append(variation)
            if len(collected) == DIRECTION_COUNT:
                return collected
        if len(collected) == DIRECTION_COUNT:
            return collected
    raise ProviderError(
        f"fewer than {DIRECTION_COUNT} distinct directions after retries "
        f"(got {len(collected)})",
        stage="diversify",
    )


def expand_candidates(
    providers: ProviderGateway,
    context: list[ChainEntry],
    *,
    topic: str,
    property_name: str,
    kind: str,
    input_direction: str,
    directions: list[str],
    image_mode: str = "economy",
    seed: int,
) -> CandidatePool:
    """Ten text suggestions or five image prompts per direction; image prompts
    are realized immediately only in full mode."""
    if len(directions) != DIRECTION_COUNT:
        raise ValidationError(f"need {DIRECTION_COUNT} directions, got {len(directions)}")
    settings = [entry.setting_text() for entry in context[:-1]] if context else []
    per_direction = TEXT_PER_DIRECTION if kind == "text" else IMAGE_PER_DIRECTION

    def fetch(pair: tuple[int, str]):
        index, direction = pair
        try:
            if kind == "text":
                reply = providers.complete_structured(
                    "candidates_text",
                    {
                        "topic": topic,
                        "settings": settings,
                        "property": property_name,
                        "direction": direction,
                    },
                    seed=seed,
                )
                return index, reply["outputs"]["literal_variations"]
            reply = providers.complete_structured(
                "candidates_image",
                {"property": property_name, "concept": direction},
                seed=seed,
            )
            return index, reply["outputs"]["prompts"]
        except ProviderError as exc:
            return index, exc

    results = providers.map_bounded(fetch, list(enumerate(directions)))
    failed = [directions[i] for i, r in results if isinstance(r, Exception)]
    if failed:
        raise ProviderError(
            f"candidate expansion failed for directions: {failed}", stage="expand"
        )

    candidates: list[Candidate] = []
    for index, contents in results:
        for j, content in enumerate(contents):
            cid = f"c{index * per_direction + j + 1}"
            if kind == "text":
                candidates.append(
                    Candidate(
                        id=cid,
                        kind="text",
                        text=content,
                        source_direction=directions[index],
                        direction_index=index,
                        original_index=j,
                    )
                )
            else:
                image_hash = None
                if image_mode == "full":
                    image_hash = providers.generate_image(content, seed=seed).hash
                candidates.append(
                    Candidate(
                        id=cid,
                        kind="image",
                        prompt=content,
                        image_hash=image_hash,
                        source_direction=directions[index],
                        direction_index=index,
                        original_index=j,
                    )
                )
    return CandidatePool(
        property=property_name,
        kind=kind,
        input_direction=input_direction,
        directions=list(directions),
        candidates=candidates,
        mode=image_mode if kind == "image" else None,
    )


def score_pool(pool: CandidatePool, embeddings: EmbeddingGateway) -> None:
    """Fill in typicality scores and cluster-space embeddings in place.

    Unscorable candidates are excluded (score left as None) with a warning.
    """
    for candidate in pool.candidates:
        try:
            if pool.kind == "text":
                candidate.typicality_score = embeddings.text_pair_similarity(
                    pool.input_direction, candidate.text
                )
                candidate.cluster_embedding = embeddings.embed_sentence(
                    candidate.text
                ).tolist()
            else:
                if candidate.image_hash is not None and pool.mode == "full":
                    candidate.typicality_score = embeddings.joint_pair_similarity(
                        pool.input_direction, image=candidate.image_hash
                    )
                    candidate.cluster_embedding = embeddings.embed_image(
                        candidate.image_hash
                    ).tolist()
                else:
                    candidate.typicality_score = embeddings.joint_pair_similarity(
                        pool.input_direction, text=candidate.prompt
                    )
                    candidate.cluster_embedding = embeddings.embed_text_joint(
                        candidate.prompt
                    ).tolist()
        except Exception as exc:
            candidate.typicality_score = None
            candidate.cluster_embedding = None
            log.warning("candidate %s unscorable, excluded: %s", candidate.id, exc)


def partition(pool: CandidatePool, typicality_level: int) -> Subgroup:
    """Rank by score (already computed) and return the level's contiguous slice."""
    if not 1 <= typicality_level <= 5:
        raise ValidationError(f"typicality level must be in [1,5], got {typicality_level}")
    ranked = pool.ranked()
    if not ranked:
        raise ValidationError("pool has no scored candidates")
    start, end = partition_slices(len(ranked))[typicality_level - 1]
    members = ranked[start:end]
    pool.subgroup_level = typicality_level
    pool.subgroup_ids = [c.id for c in members]
    return Subgroup(level=typicality_level, members=members)


def score_and_partition(
    pool: CandidatePool, typicality_level: int, embeddings: EmbeddingGateway
) -> Subgroup:
    score_pool(pool, embeddings)
    return partition(pool, typicality_level)


def select_representatives(subgroup: Subgroup, *, seed: int) -> list[Candidate]:
    """Four diverse members: medoids of seeded k-means clusters over the
    subgroup's cluster-space embeddings, in rank order."""
    members = subgroup.members
    if not members:
        raise ValidationError("subgroup is empty")
    if len(members) <= REPRESENTATIVE_COUNT:
        return list(members)
    vectors = np.array([m.cluster_embedding for m in members], dtype=np.float64)
    rng = np.random.default_rng(seed)
    assign, centroids = kmeans(vectors, REPRESENTATIVE_COUNT, rng)
    chosen: list[int] = []
    for idx in medoid_indices(vectors, assign, centroids):
        if idx is not None and idx not in chosen:
            chosen.append(idx)
    for idx in range(len(members)):  # degenerate clustering: fill by index order
        if len(chosen) >= REPRESENTATIVE_COUNT:
            break
        if idx not in chosen:
            chosen.append(idx)
    return [members[i] for i in sorted(chosen)]


def cluster_assignments(
    subgroup_vectors: np.ndarray, *, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    """Re-derive the craft-time clustering (same seed, same data, same result)."""
    rng = np.random.default_rng(seed)
    return kmeans(subgroup_vectors, REPRESENTATIVE_COUNT, rng)


POOL_SIZES = {"text": TEXT_POOL_SIZE, "image": IMAGE_POOL_SIZE}
