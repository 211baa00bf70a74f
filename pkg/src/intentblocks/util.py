"""Small shared helpers: canonical JSON, stable hashing, tokenization."""

from __future__ import annotations

import hashlib
import json
import re

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def canonical_json(obj) -> str:
    """Serialize with stable key order; identical objects give identical bytes."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def stable_digest(*parts: object) -> str:
    """Hex sha256 over the joined string forms of `parts`; platform-stable."""
    joined = "\x1f".join(str(p) for p in parts)
    return hashlib.sha256(joined.encode("utf-8")).hexdigest()


def stable_seed(*parts: object) -> int:
    """64-bit integer seed derived from `parts`; stable across runs."""
    return int(stable_digest(*parts)[:16], 16)


def tokenize(text: str) -> list[str]:
    """Lowercase tokens split on whitespace/punctuation."""
    return _TOKEN_RE.findall(text.lower())
