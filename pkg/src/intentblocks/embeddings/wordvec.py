"""Word-vector table: text lines of "token v1 v2 ... vd"."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..errors import NoEmbeddingError, ValidationError
from ..util import tokenize
from .vectors import EmbeddingVector


class WordVectorTable:
    def __init__(self, vectors: dict[str, np.ndarray], dim: int):
        self.vectors = vectors
        self.dim = dim

    @classmethod
    def load(cls, path: str | Path) -> "WordVectorTable":
        vectors: dict[str, np.ndarray] = {}
        dim: int | None = None
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line.strip():
                    continue
                parts = line.split()
                token, values = parts[0].lower(), parts[1:]
                if dim is None:
                    dim = len(values)
                    if dim == 0:
                        raise ValidationError(f"{path}:{lineno}: no vector components")
                elif len(values) != dim:
                    raise ValidationError(
                        f"{path}:{lineno}: expected {dim} components, got {len(values)}"
                    )
                vectors[token] = np.array([float(v) for v in values], dtype=np.float64)
        if dim is None:
            raise ValidationError(f"{path}: empty word-vector file")
        return cls(vectors, dim)

    def embed_text(self, text: str) -> EmbeddingVector:
        """Mean of per-token vectors; out-of-vocabulary tokens are skipped."""
        if not text or not text.strip():
            raise ValidationError("text must be nonempty")
        found = [self.vectors[t] for t in tokenize(text) if t in self.vectors]
        if not found:
            raise NoEmbeddingError(f"all tokens out of vocabulary: {text!r}")
        mean = np.mean(np.stack(found), axis=0)
        return EmbeddingVector(mean, "word_cooccurrence")
