"""Seeded feature-hashing text vectors: the offline stand-in for remote embedders."""

from __future__ import annotations

import numpy as np

from ..errors import ValidationError
from ..util import stable_digest, tokenize


def feature_hash_vector(text: str, dim: int, salt: str) -> np.ndarray:
    """Unit vector from hashed token and bigram counts; stable across runs."""
    if not text or not text.strip():
        raise ValidationError("text must be nonempty")
    tokens = tokenize(text)
    if not tokens:
        raise ValidationError(f"no tokens in {text!r}")
    vec = np.zeros(dim, dtype=np.float64)
    features = list(tokens)
    features.extend(f"{a}~{b}" for a, b in zip(tokens, tokens[1:]))
    for feat in features:
        h = int(stable_digest(salt, feat)[:16], 16)
        sign = 1.0 if (h >> 16) % 2 == 0 else -1.0
        vec[h % dim] += sign
    norm = np.linalg.norm(vec)
    if norm == 0.0:  # pathological cancellation
        vec[int(stable_digest(salt, text)[:16], 16) % dim] = 1.0
        norm = 1.0
    return vec / norm
