"""Live provider backend for OpenAI-compatible endpoints.

Exercised only in provider_mode=live deployments; tests run against the mock.
"""

from __future__ import annotations

import base64
import json

import httpx

from ..config import EngineConfig, provider_credentials
from ..errors import ProviderError


def _extract_json(text: str) -> dict:
    cleaned = text.strip()
    if cleaned.startswith("```"):
        cleaned = cleaned.strip("`")
        if cleaned.startswith("json"):
            cleaned = cleaned[4:]
    try:
        return json.loads(cleaned)
    except json.JSONDecodeError as exc:
        raise ProviderError(f"provider returned non-JSON output: {exc}", raw=text)


class LiveProvider:
    mode = "live"

    def __init__(self, config: EngineConfig):
        creds = provider_credentials()
        if not creds["api_key"]:
            raise ProviderError("PROVIDER_API_KEY is not set")
        self.config = config
        self.client = httpx.Client(
            base_url=creds["base_url"],
            headers={"Authorization": f"Bearer {creds['api_key']}"},
            timeout=config.request_timeout,
        )

    def _chat(self, model: str, messages: list[dict]) -> str:
        resp = self.client.post(
            "/chat/completions",
            json={
                "model": model,
                "messages": messages,
                "temperature": self.config.temperature,
                "response_format": {"type": "json_object"},
            },
        )
        if resp.status_code != 200:
            raise ProviderError(
                f"chat completion failed ({resp.status_code})", raw=resp.text
            )
        return resp.json()["choices"][0]["message"]["content"]

    def _messages(self, rendered: str, feedback: tuple[str, ...]) -> list[dict]:
        messages = [{"role": "user", "content": rendered}]
        for note in feedback:
            messages.append(
                {
                    "role": "user",
                    "content": (
                        "The previous reply failed validation: "
                        f"{note}. Reply again with corrected JSON only."
                    ),
                }
            )
        return messages

    def complete(
        self,
        template_id: str,
        vars: dict,
        *,
        seed: int,
        rendered: str,
        attempt: int = 0,
        feedback: tuple[str, ...] = (),
    ) -> dict:
        model = (
            self.config.organize_model
            if template_id == "organize_history"
            else self.config.chat_model
        )
        return _extract_json(self._chat(model, self._messages(rendered, feedback)))

    def describe(
        self,
        template_id: str,
        image_hash: str,
        vars: dict,
        *,
        seed: int,
        rendered: str,
        attempt: int = 0,
        feedback: tuple[str, ...] = (),
        image_bytes: bytes = b"",
    ) -> dict:
        data_url = "data:image/png;base64," + base64.b64encode(image_bytes).decode()
        messages = [
            {
                "role": "user",
                "content": [
                    {"type": "text", "text": rendered},
                    {"type": "image_url", "image_url": {"url": data_url}},
                ],
            }
        ]
        for note in feedback:
            messages.append(
                {
                    "role": "user",
                    "content": f"The previous reply failed validation: {note}. "
                    "Reply again with corrected JSON only.",
                }
            )
        return _extract_json(self._chat(self.config.chat_model, messages))

    def generate_image(self, prompt: str, *, seed: int) -> bytes:
        resp = self.client.post(
            "/images/generations",
            json={
                "model": self.config.image_model,
                "prompt": prompt,
                "n": 1,
                "response_format": "b64_json",
            },
        )
        if resp.status_code != 200:
            raise ProviderError(
                f"image generation rejected ({resp.status_code})", raw=resp.text
            )
        return base64.b64decode(resp.json()["data"][0]["b64_json"])
