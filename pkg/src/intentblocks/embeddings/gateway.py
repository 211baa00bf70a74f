"""Facade producing vectors in the three embedding spaces used by the pipelines.

Mock mode is fully offline: sentence and joint text vectors come from seeded
feature hashing, and a joint image vector is its generating prompt's vector
plus a small perturbation seeded by the image hash, which keeps cross-modal
similarities constructively verifiable.
"""

from __future__ import annotations

import logging
from typing import Callable

import numpy as np

from ..errors import NoEmbeddingError, ProviderError, ValidationError
from ..providers.images import ImageRef, ImageStore
from ..util import stable_seed
from .hashing import feature_hash_vector
from .vectors import EmbeddingVector, cosine_similarity
from .wordvec import WordVectorTable

log = logging.getLogger(__name__)

JOINT_IMAGE_NOISE = 0.05


class EmbeddingGateway:
    def __init__(
        self,
        word_table: WordVectorTable | None = None,
        *,
        sentence_dim: int = 64,
        joint_dim: int = 64,
        image_store: ImageStore | None = None,
        remote_sentence_embed: Callable[[str], list[float]] | None = None,
    ):
        self.word_table = word_table
        self.sentence_dim = sentence_dim
        self.joint_dim = joint_dim
        self.image_store = image_store
        self.remote_sentence_embed = remote_sentence_embed

    # ------------------------------------------------------------------ spaces

    def embed_word_text(self, text: str) -> EmbeddingVector:
        if self.word_table is None:
            raise NoEmbeddingError("no word-vector table configured")
        return self.word_table.embed_text(text)

    def embed_sentence(self, text: str) -> EmbeddingVector:
        if self.remote_sentence_embed is not None:
            values = np.asarray(self.remote_sentence_embed(text), dtype=np.float64)
            return EmbeddingVector(values, "sentence")
        return EmbeddingVector(
            feature_hash_vector(text, self.sentence_dim, salt="sentence"), "sentence"
        )

    def embed_text_joint(self, text: str) -> EmbeddingVector:
        return EmbeddingVector(
            feature_hash_vector(text, self.joint_dim, salt="joint"), "image_text_joint"
        )

    def embed_image(self, image: ImageRef | str) -> EmbeddingVector:
        """Joint-space vector for an image; text and image vectors are comparable."""
        image_hash = image.hash if isinstance(image, ImageRef) else image
        prompt = image.source_prompt if isinstance(image, ImageRef) else None
        if prompt is None:
            if self.image_store is None:
                raise ProviderError(f"cannot resolve image {image_hash!r}: no store")
            prompt = self.image_store.get_meta(image_hash).get("prompt")
        if not prompt:
            raise ProviderError(f"image {image_hash!r} has no recorded prompt")
        base = feature_hash_vector(prompt, self.joint_dim, salt="joint")
        rng = np.random.default_rng(stable_seed("joint-image", image_hash))
        noisy = base + rng.normal(0.0, JOINT_IMAGE_NOISE, self.joint_dim)
        norm = np.linalg.norm(noisy)
        if norm == 0.0:
            noisy, norm = base, 1.0
        return EmbeddingVector(noisy / norm, "image_text_joint")

    # ----------------------------------------------------------------- scoring

    def cosine(self, a: EmbeddingVector, b: EmbeddingVector) -> float:
        return cosine_similarity(a, b)

    def text_pair_similarity(self, reference: str, text: str) -> float:
        """Word-space cosine; falls back to sentence space when either side
        is wholly out of vocabulary."""
        try:
            return cosine_similarity(
                self.embed_word_text(reference), self.embed_word_text(text)
            )
        except NoEmbeddingError:
            log.info(
                "word-space unavailable for (%r, %r); falling back to sentence space",
                reference,
                text,
            )
            return cosine_similarity(
                self.embed_sentence(reference), self.embed_sentence(text)
            )

    def joint_pair_similarity(
        self, reference_text: str, *, image: ImageRef | str | None = None, text: str | None = None
    ) -> float:
        ref = self.embed_text_joint(reference_text)
        if image is not None:
            return cosine_similarity(ref, self.embed_image(image))
        if text is not None:
            return cosine_similarity(ref, self.embed_text_joint(text))
        raise ValidationError("provide either image or text to compare")
