from .engine import (
    PropertyDescriptions,
    compose_generation_prompt,
    extract_history_descriptions,
    realize_results,
)

__all__ = [
    "PropertyDescriptions",
    "compose_generation_prompt",
    "extract_history_descriptions",
    "realize_results",
]
