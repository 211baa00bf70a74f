"""Content-addressed image store plus the deterministic placeholder renderer."""

from __future__ import annotations

import hashlib
import io
import json
from dataclasses import dataclass
from pathlib import Path

from PIL import Image

from ..errors import NotFoundError, ValidationError
from ..util import stable_digest

PLACEHOLDER_SIZE = 48


@dataclass
class ImageRef:
    id: str  # content hash
    uri: str
    width: int
    height: int
    source_prompt: str | None = None  # prompt that generated it, when known

    @property
    def hash(self) -> str:
        return self.id

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "uri": self.uri,
            "width": self.width,
            "height": self.height,
            "source_prompt": self.source_prompt,
        }


def mock_image_key(seed: int, prompt: str) -> str:
    """The documented derivation of a mock image's identity from its inputs."""
    return stable_digest("image", seed, prompt)


def mock_image_bytes(seed: int, prompt: str) -> bytes:
    """Deterministic placeholder PNG whose pixels derive from (seed, prompt)."""
    key = mock_image_key(seed, prompt)
    raw = hashlib.sha256(key.encode("ascii")).digest()
    n = PLACEHOLDER_SIZE
    img = Image.new("RGB", (n, n))
    px = img.load()
    stream = raw
    for y in range(n):
        # Extend the byte stream deterministically, row by row.
        stream = hashlib.sha256(stream + bytes([y])).digest()
        for x in range(n):
            b = stream[(x * 3) % len(stream)]
            px[x, y] = (
                (raw[0] + x * b) % 256,
                (raw[1] + y * b) % 256,
                (raw[2] + (x ^ y) * b) % 256,
            )
    buf = io.BytesIO()
    img.save(buf, format="PNG", optimize=False)
    return buf.getvalue()


class ImageStore:
    """Stores images under data_dir addressed by sha256 of their bytes."""

    def __init__(self, root: Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, content_hash: str) -> Path:
        return self.root / f"{content_hash}.png"

    def _meta_path(self, content_hash: str) -> Path:
        return self.root / f"{content_hash}.json"

    def put(self, data: bytes, *, prompt: str | None = None) -> ImageRef:
        if not data:
            raise ValidationError("image payload is empty")
        content_hash = hashlib.sha256(data).hexdigest()
        path = self._path(content_hash)
        if not path.exists():
            tmp = path.with_suffix(".tmp")
            tmp.write_bytes(data)
            tmp.replace(path)
        with Image.open(io.BytesIO(data)) as img:
            width, height = img.size
        meta = {"prompt": prompt, "width": width, "height": height}
        meta_path = self._meta_path(content_hash)
        if not meta_path.exists():
            tmp = meta_path.with_suffix(".mtmp")
            tmp.write_text(json.dumps(meta), encoding="utf-8")
            tmp.replace(meta_path)
        return ImageRef(
            id=content_hash,
            uri=str(path),
            width=width,
            height=height,
            source_prompt=prompt,
        )

    def get_bytes(self, content_hash: str) -> bytes:
        path = self._path(content_hash)
        if not path.exists():
            raise NotFoundError(f"image {content_hash!r} not in store")
        return path.read_bytes()

    def get_meta(self, content_hash: str) -> dict:
        path = self._meta_path(content_hash)
        if not path.exists():
            raise NotFoundError(f"image metadata {content_hash!r} not in store")
        return json.loads(path.read_text(encoding="utf-8"))

    def exists(self, content_hash: str) -> bool:
        return self._path(content_hash).exists()

    def ref(self, content_hash: str) -> ImageRef:
        meta = self.get_meta(content_hash)
        return ImageRef(
            id=content_hash,
            uri=str(self._path(content_hash)),
            width=meta.get("width", 0),
            height=meta.get("height", 0),
            source_prompt=meta.get("prompt"),
        )
