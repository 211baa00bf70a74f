"""Runtime configuration for the engine and the HTTP service."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class EngineConfig:
    """Knobs shared by every pipeline stage.

    provider_mode: "mock" runs fully offline and deterministic; "live" talks
    to the configured remote endpoints.
    image_mode: "full" realizes every image candidate during expansion,
    "economy" scores candidates by their prompt text and realizes images only
    for the selected representatives.
    """

    provider_mode: str = "mock"
    image_mode: str = "economy"
    bounded_parallelism: int = 4
    retry_attempts: int = 3
    request_timeout: float = 60.0
    word_vector_path: str | None = None
    sentence_dim: int = 64
    joint_dim: int = 64
    # Live-mode deployment details; never asserted in tests.
    chat_model: str = "gpt-4o"
    organize_model: str = "gpt-4o-mini"
    image_model: str = "dall-e-3"
    temperature: float = 1.0

    def __post_init__(self):
        if self.provider_mode not in ("mock", "live"):
            raise ValueError(f"unknown provider_mode {self.provider_mode!r}")
        if self.image_mode not in ("full", "economy"):
            raise ValueError(f"unknown image_mode {self.image_mode!r}")
        if self.bounded_parallelism < 1:
            raise ValueError("bounded_parallelism must be >= 1")


@dataclass
class ServiceConfig:
    """HTTP service settings; engine defaults are nested."""

    port: int = 8000
    data_dir: Path = field(default_factory=lambda: Path("./data"))
    seed: int | None = None
    engine: EngineConfig = field(default_factory=EngineConfig)

    def __post_init__(self):
        self.data_dir = Path(self.data_dir)
        if not (0 < self.port < 65536):
            raise ValueError(f"invalid port {self.port}")


def provider_credentials() -> dict:
    """Read live-provider credentials from the environment."""
    return {
        "api_key": os.environ.get("PROVIDER_API_KEY", ""),
        "base_url": os.environ.get("PROVIDER_BASE_URL", "https://api.openai.com/v1"),
    }
