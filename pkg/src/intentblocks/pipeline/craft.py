"""Crafting and refining a block's four suggestions."""

from __future__ import annotations

import numpy as np

from ..core.model import Suggestion, SuggestionContent
from ..core.session import Session
from ..embeddings.gateway import EmbeddingGateway
from ..errors import (
    EngineError,
    NotFoundError,
    PoolExhaustedError,
    StageError,
    ValidationError,
)
from ..providers.base import ProviderGateway
from ..util import stable_seed
from .pool import REPRESENTATIVE_COUNT, Candidate, CandidatePool
from .stages import (
    cluster_assignments,
    diversify_directions,
    expand_candidates,
    score_and_partition,
    select_representatives,
)

REFINE_MODES = ("similar", "distant", "delete", "more", "bookmark")


def clustering_seed(session: Session, block_id: str) -> int:
    return stable_seed(session.seed, "kmeans", block_id)


def _stage(name: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except EngineError as exc:
        raise StageError(name, exc) from exc


def _suggestion_from_candidate(
    block_id: str,
    index: int,
    candidate: Candidate,
    providers: ProviderGateway,
    *,
    seed: int,
) -> Suggestion:
    if candidate.kind == "text":
        content = SuggestionContent(kind="text", text=candidate.text)
    else:
        image_hash = candidate.image_hash
        if image_hash is None:  # economy mode: realize only what we present
            image_hash = providers.generate_image(candidate.prompt, seed=seed).hash
            candidate.image_hash = image_hash
        content = SuggestionContent(
            kind="image", image_hash=image_hash, prompt=candidate.prompt
        )
    return Suggestion(
        id=f"{block_id}.s{index}",
        content=content,
        source_direction=candidate.source_direction,
        similarity_to_input=float(candidate.typicality_score),
        candidate_id=candidate.id,
    )


def craft_suggestions(
    session: Session,
    block_id: str,
    providers: ProviderGateway,
    embeddings: EmbeddingGateway,
    *,
    image_mode: str = "economy",
) -> list[Suggestion]:
    """diversify -> expand -> partition -> select; stores the result on the block."""
    block = session.block(block_id)
    spec = session.property_spec(block.property)
    chain = session.chain_context(block_id)
    seed = session.seed

    directions = _stage(
        "diversify",
        diversify_directions,
        providers,
        block.property,
        block.direction,
        spec.kind,
        seed=seed,
    )
    pool = _stage(
        "expand",
        expand_candidates,
        providers,
        chain,
        topic=session.topic,
        property_name=block.property,
        kind=spec.kind,
        input_direction=block.direction,
        directions=directions,
        image_mode=image_mode,
        seed=seed,
    )
    subgroup = _stage("partition", score_and_partition, pool, block.typicality, embeddings)
    representatives = _stage(
        "select", select_representatives, subgroup, seed=clustering_seed(session, block_id)
    )
    suggestions = [
        _suggestion_from_candidate(block_id, i + 1, cand, providers, seed=seed)
        for i, cand in enumerate(representatives)
    ]
    session.record_craft(block_id, suggestions, pool.to_dict())
    return suggestions


def _load_pool(session: Session, block_id: str) -> CandidatePool:
    raw = session.pools.get(block_id)
    if raw is None:
        raise NotFoundError(f"block {block_id!r} has no candidate pool (never crafted)")
    return CandidatePool.from_dict(raw)


def _copy_suggestions(block) -> list[Suggestion]:
    return [Suggestion.from_dict(s.to_dict()) for s in block.suggestions]


def _cosine(a: list[float], b: list[float]) -> float:
    va, vb = np.asarray(a), np.asarray(b)
    denom = float(np.linalg.norm(va) * np.linalg.norm(vb))
    return float(np.dot(va, vb)) / denom if denom else 0.0


def refine_suggestions(
    session: Session,
    block_id: str,
    anchor_suggestion_id: str | None,
    mode: str,
    providers: ProviderGateway,
    embeddings: EmbeddingGateway,
) -> list[Suggestion]:
    """delete / bookmark / similar / distant / more; returns the active list."""
    if mode not in REFINE_MODES:
        raise ValidationError(f"unknown refine mode {mode!r}")
    block = session.block(block_id)
    suggestions = _copy_suggestions(block)
    by_id = {s.id: s for s in suggestions}

    anchor: Suggestion | None = None
    if mode != "more":
        if anchor_suggestion_id is None:
            raise ValidationError(f"mode {mode!r} requires an anchor suggestion")
        anchor = by_id.get(anchor_suggestion_id)
        if anchor is None:
            raise ValidationError(
                f"suggestion {anchor_suggestion_id!r} does not belong to block {block_id!r}"
            )

    consumed: list[str] = []
    if mode == "delete":
        anchor.state = "deleted"
    elif mode == "bookmark":
        anchor.state = "active" if anchor.state == "bookmarked" else "bookmarked"
    elif mode in ("similar", "distant"):
        pool = _load_pool(session, block_id)
        anchor_cand = pool.candidate(anchor.candidate_id)
        if anchor_cand.cluster_embedding is None:
            raise ValidationError("anchor candidate has no embedding")
        unused = pool.unused()
        if not unused:
            raise PoolExhaustedError(
                "candidate pool exhausted; re-expand to refine further"
            )
        # similar: maximal cosine to the anchor; distant: minimal.
        sign = -1.0 if mode == "similar" else 1.0
        best = min(
            unused,
            key=lambda c: (
                sign * _cosine(anchor_cand.cluster_embedding, c.cluster_embedding),
                c.direction_index,
                c.original_index,
            ),
        )
        active = [s for s in suggestions if s.is_active]
        if len(active) >= REPRESENTATIVE_COUNT:
            weakest = min(
                active, key=lambda s: (s.similarity_to_input, suggestions.index(s))
            )
            weakest.state = "deleted"
        new_sugg = _suggestion_from_candidate(
            block_id, len(suggestions) + 1, best, providers, seed=session.seed
        )
        suggestions.append(new_sugg)
        consumed.append(best.id)
    elif mode == "more":
        pool = _load_pool(session, block_id)
        active_count = sum(1 for s in suggestions if s.is_active)
        if active_count >= REPRESENTATIVE_COUNT:
            raise ValidationError("block already has four active suggestions")
        additions = _next_medoid_candidates(
            session, block_id, pool, suggestions, REPRESENTATIVE_COUNT - active_count
        )
        if not additions:
            raise PoolExhaustedError(
                "candidate pool exhausted; re-expand to refine further"
            )
        for cand in additions:
            new_sugg = _suggestion_from_candidate(
                block_id, len(suggestions) + 1, cand, providers, seed=session.seed
            )
            suggestions.append(new_sugg)
            consumed.append(cand.id)

    session.record_refine(block_id, mode, suggestions, consumed, anchor_suggestion_id)
    return [s for s in session.block(block_id).suggestions if s.is_active]


def _next_medoid_candidates(
    session: Session,
    block_id: str,
    pool: CandidatePool,
    suggestions: list[Suggestion],
    slots: int,
) -> list[Candidate]:
    """Next-best members (closest to centroid) from the clusters least
    represented among the current active suggestions."""
    members = [pool.candidate(cid) for cid in pool.subgroup_ids]
    if not members:
        return []
    vectors = np.array([m.cluster_embedding for m in members], dtype=np.float64)
    assign, centroids = cluster_assignments(
        vectors, seed=clustering_seed(session, block_id)
    )
    member_cluster = {m.id: int(assign[i]) for i, m in enumerate(members)}
    counts = {j: 0 for j in range(centroids.shape[0])}
    for s in suggestions:
        if s.is_active and s.candidate_id in member_cluster:
            counts[member_cluster[s.candidate_id]] += 1
    taken = set(pool.consumed)
    picked: list[Candidate] = []
    for _ in range(slots):
        options = []
        for i, m in enumerate(members):
            if m.id in taken:
                continue
            j = member_cluster[m.id]
            dist = float(np.linalg.norm(vectors[i] - centroids[j]))
            # Least-represented cluster first, then nearest-to-centroid member.
            options.append((counts[j], j, dist, i, m))
        if not options:
            break
        _, j, _, _, cand = min(options, key=lambda t: t[:4])
        picked.append(cand)
        taken.add(cand.id)
        counts[j] += 1
    return picked
