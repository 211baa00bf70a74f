"""Uniform access to generative providers with validation and bounded retry."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

import jsonschema

from ..errors import NotFoundError, ProviderError, SchemaViolationError, ValidationError
from .images import ImageRef, ImageStore
from .templates import get_template


class ProviderGateway:
    """Wraps a provider backend with schema-validated, retried calls.

    `validate` hooks let callers add checks beyond the JSON schema; raising
    ValidationError from a hook triggers the same retry path, with the error
    text fed back to the provider.
    """

    def __init__(
        self,
        provider,
        image_store: ImageStore,
        *,
        attempts: int = 3,
        parallelism: int = 4,
    ):
        self.provider = provider
        self.image_store = image_store
        self.attempts = attempts
        self.parallelism = max(1, parallelism)

    @property
    def mode(self) -> str:
        return getattr(self.provider, "mode", "unknown")

    # ------------------------------------------------------------------ chat

    def complete_structured(
        self,
        template_id: str,
        vars: dict,
        *,
        seed: int,
        attempts: int | None = None,
        validate: Callable[[dict], None] | None = None,
    ) -> dict:
        template = get_template(template_id)
        rendered = template.render(vars)
        max_attempts = attempts if attempts is not None else self.attempts
        feedback: list[str] = []
        raw = None
        for attempt in range(max_attempts):
            raw = self.provider.complete(
                template_id,
                vars,
                seed=seed,
                rendered=rendered,
                attempt=attempt,
                feedback=tuple(feedback),
            )
            try:
                self._check(template.response_schema, raw, validate)
                return raw
            except ValidationError as exc:
                feedback.append(str(exc))
        raise SchemaViolationError(
            f"template {template_id!r} reply failed validation after "
            f"{max_attempts} attempts: {feedback[-1]}",
            stage=template_id,
            raw=self._raw_text(raw),
        )

    def _check(self, schema: dict, raw, validate) -> None:
        try:
            jsonschema.validate(raw, schema)
        except jsonschema.ValidationError as exc:
            raise ValidationError(exc.message) from None
        if validate is not None:
            validate(raw)

    @staticmethod
    def _raw_text(raw) -> str:
        if raw is None:
            return ""
        if isinstance(raw, str):
            return raw
        try:
            return json.dumps(raw, ensure_ascii=False)
        except TypeError:
            return repr(raw)

    # ------------------------------------------------------------------ vision

    def describe_image(
        self,
        template_id: str,
        image: ImageRef | str,
        vars: dict,
        *,
        seed: int,
        attempts: int | None = None,
    ) -> dict[str, str]:
        """Return one description paragraph per requested property."""
        image_hash = image.hash if isinstance(image, ImageRef) else image
        if not self.image_store.exists(image_hash):
            raise NotFoundError(f"image {image_hash!r} is not resolvable")
        properties = vars.get("property_list")
        if not properties:
            raise ValidationError("property_list must be nonempty")
        template = get_template(template_id)
        rendered = template.render(vars)
        max_attempts = attempts if attempts is not None else self.attempts
        feedback: list[str] = []
        raw = None

        def covers_exactly(reply: dict) -> None:
            got = [d["property"] for d in reply["descriptions"]]
            if sorted(got) != sorted(properties):
                raise ValidationError(
                    f"descriptions cover {got}, expected exactly {list(properties)}"
                )

        image_bytes = (
            self.image_store.get_bytes(image_hash) if self.mode == "live" else b""
        )
        for attempt in range(max_attempts):
            raw = self.provider.describe(
                template_id,
                image_hash,
                vars,
                seed=seed,
                rendered=rendered,
                attempt=attempt,
                feedback=tuple(feedback),
                image_bytes=image_bytes,
            )
            try:
                self._check(template.response_schema, raw, covers_exactly)
                return {d["property"]: d["description"] for d in raw["descriptions"]}
            except ValidationError as exc:
                feedback.append(str(exc))
        raise SchemaViolationError(
            f"vision reply failed validation after {max_attempts} attempts: {feedback[-1]}",
            stage=template_id,
            raw=self._raw_text(raw),
        )

    # ------------------------------------------------------------------ image

    def generate_image(self, prompt: str, *, seed: int) -> ImageRef:
        if not prompt or not prompt.strip():
            raise ValidationError("image prompt must be nonempty")
        try:
            data = self.provider.generate_image(prompt, seed=seed)
        except ProviderError:
            raise
        except Exception as exc:  # transport and provider-side rejections
            raise ProviderError(f"image generation failed: {exc}", stage="generate_image")
        return self.image_store.put(data, prompt=prompt)

    # --------------------------------------------------------------- fan-out

    def map_bounded(self, fn: Callable, items: Sequence) -> list:
        """Run fn over items with bounded parallelism; results keep item order."""
        if len(items) <= 1 or self.parallelism == 1:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.parallelism) as pool:
            return list(pool.map(fn, items))
