"""Prompt template registry: bodies on disk, closed response schemas here."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources

from ..errors import ValidationError

_PLACEHOLDER_RE = re.compile(r"<<([a-z_]+)>>")

_STRING = {"type": "string", "minLength": 1}

_PROPERTY_ITEM = {
    "type": "object",
    "properties": {
        "property_name": _STRING,
        "property_type": {"type": "string", "enum": ["text", "image"]},
    },
    "required": ["property_name", "property_type"],
    "additionalProperties": False,
}

_PATH_STEP = {
    "type": "object",
    "properties": {
        "id": _STRING,
        "property": _STRING,
        "direction": _STRING,
        "novelty": {"type": "integer"},
    },
    "required": ["id", "property", "direction", "novelty"],
    "additionalProperties": False,
}

RESPONSE_SCHEMAS: dict[str, dict] = {
    "properties": {
        "type": "object",
        "properties": {
            "outputs": {
                "type": "array",
                "items": _PROPERTY_ITEM,
                "minItems": 8,
                "maxItems": 8,
                "contains": {
                    "type": "object",
                    "properties": {"property_type": {"const": "image"}},
                    "required": ["property_type"],
                },
            }
        },
        "required": ["outputs"],
        "additionalProperties": False,
    },
    "diversify_text": {
        "type": "object",
        "properties": {
            "outputs": {
                "type": "object",
                "properties": {
                    "variations": {
                        "type": "array",
                        "items": _STRING,
                        "minItems": 9,
                        "maxItems": 9,
                    }
                },
                "required": ["variations"],
                "additionalProperties": False,
            }
        },
        "required": ["outputs"],
        "additionalProperties": False,
    },
    "candidates_text": {
        "type": "object",
        "properties": {
            "outputs": {
                "type": "object",
                "properties": {
                    "literal_variations": {
                        "type": "array",
                        "items": _STRING,
                        "minItems": 10,
                        "maxItems": 10,
                    }
                },
                "required": ["literal_variations"],
                "additionalProperties": False,
            }
        },
        "required": ["outputs"],
        "additionalProperties": False,
    },
    "candidates_image": {
        "type": "object",
        "properties": {
            "outputs": {
                "type": "object",
                "properties": {
                    "prompts": {
                        "type": "array",
                        "items": _STRING,
                        "minItems": 5,
                        "maxItems": 5,
                    }
                },
                "required": ["prompts"],
                "additionalProperties": False,
            }
        },
        "required": ["outputs"],
        "additionalProperties": False,
    },
    "history_extract": {
        "type": "object",
        "properties": {
            "descriptions": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {"property": _STRING, "description": _STRING},
                    "required": ["property", "description"],
                    "additionalProperties": False,
                },
                "minItems": 1,
            }
        },
        "required": ["descriptions"],
        "additionalProperties": False,
    },
    "prompt_compose": {
        "type": "object",
        "properties": {"prompt": _STRING},
        "required": ["prompt"],
        "additionalProperties": False,
    },
    "organize_history": {
        "type": "object",
        "properties": {"selected_id": {"type": ["string", "null"]}},
        "required": ["selected_id"],
        "additionalProperties": False,
    },
    "adaptive_path": {
        "type": "object",
        "properties": {
            "paths": {
                "type": "array",
                "items": {"type": "array", "items": _PATH_STEP, "minItems": 1},
                "minItems": 3,
                "maxItems": 3,
            }
        },
        "required": ["paths"],
        "additionalProperties": False,
    },
    "recommend_directions": {
        "type": "object",
        "properties": {"typical": _STRING, "unique": _STRING},
        "required": ["typical", "unique"],
        "additionalProperties": False,
    },
}

# diversify_image shares the diversify_text response shape
RESPONSE_SCHEMAS["diversify_image"] = RESPONSE_SCHEMAS["diversify_text"]

TEMPLATE_IDS = tuple(sorted(RESPONSE_SCHEMAS))


@dataclass
class PromptTemplate:
    id: str
    body: str
    response_schema: dict

    @property
    def placeholders(self) -> set[str]:
        return set(_PLACEHOLDER_RE.findall(self.body))

    def render(self, vars: dict) -> str:
        """Substitute every placeholder; non-strings are JSON-encoded."""
        missing = self.placeholders - set(vars)
        if missing:
            raise ValidationError(
                f"template {self.id!r} missing vars: {sorted(missing)}"
            )

        def sub(match: re.Match) -> str:
            value = vars[match.group(1)]
            if isinstance(value, str):
                return value
            return json.dumps(value, ensure_ascii=False)

        rendered = _PLACEHOLDER_RE.sub(sub, self.body)
        leftover = _PLACEHOLDER_RE.findall(rendered)
        if leftover:
            raise ValidationError(f"unsubstituted placeholders: {leftover}")
        return rendered


def _load_body(template_id: str) -> str:
    ref = resources.files("intentblocks.providers") / "resources" / f"{template_id}.txt"
    return ref.read_text(encoding="utf-8")


_CACHE: dict[str, PromptTemplate] = {}


def get_template(template_id: str) -> PromptTemplate:
    if template_id not in RESPONSE_SCHEMAS:
        raise ValidationError(f"unknown template id {template_id!r}")
    if template_id not in _CACHE:
        _CACHE[template_id] = PromptTemplate(
            id=template_id,
            body=_load_body(template_id),
            response_schema=RESPONSE_SCHEMAS[template_id],
        )
    return _CACHE[template_id]
