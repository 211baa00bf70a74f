"""Embedding vector type and cosine similarity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError

SPACES = ("word_cooccurrence", "sentence", "image_text_joint")


@dataclass
class EmbeddingVector:
    values: np.ndarray
    space: str

    def __post_init__(self):
        if self.space not in SPACES:
            raise ValidationError(f"unknown embedding space {self.space!r}")
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1 or self.values.size == 0:
            raise ValidationError("embedding must be a nonempty 1-d vector")
        if not np.all(np.isfinite(self.values)):
            raise ValidationError("embedding contains NaN or Inf")

    @property
    def dim(self) -> int:
        return int(self.values.size)

    def tolist(self) -> list[float]:
        return [float(x) for x in self.values]


def cosine_similarity(a: EmbeddingVector, b: EmbeddingVector) -> float:
    if a.space != b.space:
        raise ValidationError(f"space mismatch: {a.space} vs {b.space}")
    if a.dim != b.dim:
        raise ValidationError(f"dimension mismatch: {a.dim} vs {b.dim}")
    norm_a = float(np.linalg.norm(a.values))
    norm_b = float(np.linalg.norm(b.values))
    if norm_a == 0.0 or norm_b == 0.0:
        raise ValidationError("cosine undefined for zero-norm vector")
    return float(np.dot(a.values, b.values)) / (norm_a * norm_b)
