"""Output-diversity metric: max pairwise cosine distance over result images."""

from __future__ import annotations

import numpy as np

from ..core.session import Session
from ..embeddings.gateway import EmbeddingGateway
from ..errors import NotEnoughDataError


def session_image_hashes(session: Session) -> list[str]:
    """Every generated result image, in result-creation then item order."""
    hashes: list[str] = []
    for result in sorted(session.results.values(), key=lambda r: r.created_at):
        for item in result.items:
            if item.image_hash:
                hashes.append(item.image_hash)
    return hashes


def max_pairwise_cosine_distance(vectors: list[np.ndarray]) -> float:
    if len(vectors) < 2:
        raise NotEnoughDataError("need at least 2 embeddings")
    best = 0.0
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            a, b = vectors[i], vectors[j]
            cos = float(np.dot(a, b)) / (float(np.linalg.norm(a)) * float(np.linalg.norm(b)))
            distance = 1.0 - cos
            if distance > best:
                best = distance
    return best


def session_diversity(session: Session, embeddings: EmbeddingGateway) -> float:
    """Max over image pairs of (1 - cosine) in the joint embedding space."""
    hashes = session_image_hashes(session)
    if len(hashes) < 2:
        raise NotEnoughDataError(
            f"need at least 2 generated images, session has {len(hashes)}"
        )
    vectors = [embeddings.embed_image(h).values for h in hashes]
    return max_pairwise_cosine_distance(vectors)
