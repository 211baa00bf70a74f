"""Offline provider: canned replies for known inputs, hash-derived otherwise.

Every reply is a pure function of (template id, vars, seed, feedback), so the
whole pipeline runs deterministically without network access. `overrides`
lets tests inject malformed or adversarial replies per template.
"""

from __future__ import annotations

import random
from typing import Callable

from ..util import canonical_json, stable_seed
from . import fixtures
from .images import mock_image_bytes


def _norm(value) -> str:
    return value.strip() if isinstance(value, str) else str(value)


class MockProvider:
    mode = "mock"

    def __init__(self, overrides: dict[str, Callable] | None = None):
        self.overrides = overrides or {}
        self.calls: list[tuple[str, str]] = []  # (call type, template/prompt)

    # ------------------------------------------------------------------ chat

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
        self.calls.append(("chat", template_id))
        if template_id in self.overrides:
            return self.overrides[template_id](vars, attempt, feedback)
        handler = getattr(self, f"_reply_{template_id}")
        return handler(vars, seed=seed, attempt=attempt, feedback=feedback)

    def _rng(self, *parts) -> random.Random:
        return random.Random(stable_seed(*parts))

    def _sample_words(self, rng: random.Random, n: int, avoid: set[str]) -> list[str]:
        picked: list[str] = []
        pool = list(fixtures.VOCAB)
        rng.shuffle(pool)
        for word in pool:
            if word.lower() in avoid:
                continue
            picked.append(word)
            avoid.add(word.lower())
            if len(picked) == n:
                break
        return picked

    def _reply_properties(self, vars, *, seed, attempt, feedback) -> dict:
        topic = _norm(vars["topic"])
        if topic in fixtures.PROPERTY_FIXTURES:
            return {"outputs": list(fixtures.PROPERTY_FIXTURES[topic])}
        return {
            "outputs": [
                {"property_name": "Main Subject", "property_type": "text"},
                {"property_name": "Setting", "property_type": "text"},
                {"property_name": "Mood", "property_type": "text"},
                {"property_name": "Color Palette", "property_type": "image"},
                {"property_name": "Image Style", "property_type": "image"},
                {"property_name": "Key Object", "property_type": "text"},
                {"property_name": "Composition", "property_type": "text"},
                {"property_name": "Lighting", "property_type": "image"},
            ]
        }

    def _diversify(self, vars, table, template_id, attempt, feedback) -> dict:
        prop = _norm(vars["property"])
        direction = _norm(vars["direction"])
        avoid_var = vars.get("avoid") or []
        key = (prop, direction)
        if key in table and not avoid_var and attempt == 0 and not feedback:
            return {"outputs": {"variations": list(table[key])}}
        avoid = {a.lower() for a in avoid_var}
        avoid.add(direction.lower())
        rng = self._rng(template_id, prop, direction, attempt, tuple(avoid_var), feedback)
        subs = [f"{direction} {w.title()}" for w in self._sample_words(rng, 4, avoid)]
        unrelated = [w.title() for w in self._sample_words(rng, 5, avoid)]
        return {"outputs": {"variations": subs + unrelated}}

    def _reply_diversify_text(self, vars, *, seed, attempt, feedback) -> dict:
        return self._diversify(
            vars, fixtures.DIVERSIFY_TEXT_FIXTURES, "diversify_text", attempt, feedback
        )

    def _reply_diversify_image(self, vars, *, seed, attempt, feedback) -> dict:
        return self._diversify(
            vars, fixtures.DIVERSIFY_IMAGE_FIXTURES, "diversify_image", attempt, feedback
        )

    def _reply_candidates_text(self, vars, *, seed, attempt, feedback) -> dict:
        prop = _norm(vars["property"])
        direction = _norm(vars["direction"])
        key = (prop, direction)
        if key in fixtures.CANDIDATES_TEXT_FIXTURES and attempt == 0:
            return {
                "outputs": {
                    "literal_variations": list(fixtures.CANDIDATES_TEXT_FIXTURES[key])
                }
            }
        rng = self._rng("candidates_text", prop, direction, vars.get("topic", ""), attempt)
        words = self._sample_words(rng, 10, set())
        return {
            "outputs": {
                "literal_variations": [f"{w.title()} {direction}" for w in words]
            }
        }

    def _reply_candidates_image(self, vars, *, seed, attempt, feedback) -> dict:
        prop = _norm(vars["property"])
        concept = _norm(vars["concept"])
        rng = self._rng("candidates_image", prop, concept, attempt)
        words = self._sample_words(rng, 10, set())
        prompts = [
            f"A {words[2 * i]} composition in {concept} {prop.lower()}, "
            f"{words[2 * i + 1]} accents"
            for i in range(5)
        ]
        return {"outputs": {"prompts": prompts}}

    def _reply_prompt_compose(self, vars, *, seed, attempt, feedback) -> dict:
        current = _norm(vars["current_text"])
        prop = _norm(vars["current_property"])
        previous = _norm(vars.get("previous_text", ""))
        prompt = f"Primary focus ({prop}): {current}."
        if previous:
            prompt += f" Supporting context: {previous}"
        return {"prompt": prompt}

    def _reply_organize_history(self, vars, *, seed, attempt, feedback) -> dict:
        logs = [( _norm(e["id"]), _norm(e["direction"])) for e in vars["logs"]]
        new_direction = _norm(vars["new_direction"])
        key = (tuple(logs), new_direction)
        if key in fixtures.ORGANIZE_HISTORY_FIXTURES:
            return {"selected_id": fixtures.ORGANIZE_HISTORY_FIXTURES[key]}
        # Token-overlap heuristic; later (more recent) entries win ties.
        new_tokens = set(new_direction.lower().split())
        best_id, best_score = None, 0.0
        for log_id, direction in logs:
            tokens = set(direction.lower().split())
            union = tokens | new_tokens
            score = len(tokens & new_tokens) / len(union) if union else 0.0
            if score > 0 and score >= best_score:
                best_id, best_score = log_id, score
        return {"selected_id": best_id}

    def _reply_adaptive_path(self, vars, *, seed, attempt, feedback) -> dict:
        topic = _norm(vars["topic"])
        path = vars["replication_paths"]
        key = (topic, tuple((_norm(s["id"]), _norm(s["direction"])) for s in path))
        if key in fixtures.ADAPTIVE_PATH_FIXTURES and attempt == 0 and not feedback:
            return {
                "paths": [
                    [dict(step) for step in variant]
                    for variant in fixtures.ADAPTIVE_PATH_FIXTURES[key]
                ]
            }
        aspects = vars.get("pre_explored") or []
        context_word = "Reimagined"
        if aspects:
            first = _norm(aspects[0].get("direction", ""))
            if first:
                context_word = first.split()[0].title()

        def variant(mapper) -> list[dict]:
            return [
                {
                    "id": s["id"],
                    "property": s["property"],
                    "direction": mapper(_norm(s["direction"])),
                    "novelty": s["novelty"],
                }
                for s in path
            ]

        return {
            "paths": [
                variant(lambda d: d),
                variant(lambda d: f"Refined {d}"),
                variant(lambda d: f"{context_word} {d}"),
            ]
        }

    def _reply_recommend_directions(self, vars, *, seed, attempt, feedback) -> dict:
        topic = _norm(vars["topic"])
        prop = _norm(vars["property"])
        history = tuple(_norm(h) for h in vars.get("history", []))
        settings = tuple(_norm(s) for s in vars.get("settings", []))
        key = (topic, prop, history, settings)
        if key in fixtures.RECOMMEND_FIXTURES and attempt == 0:
            return dict(fixtures.RECOMMEND_FIXTURES[key])
        rng = self._rng("recommend", topic, prop, history, settings, attempt)
        avoid = {h.lower() for h in history}
        words = self._sample_words(rng, 2, set(avoid))
        return {"typical": words[0].title(), "unique": words[1].title()}

    def _reply_history_extract(self, vars, *, seed, attempt, feedback) -> dict:
        # Only reachable through describe(); kept for interface completeness.
        return self.describe("history_extract", vars.get("image_hash", ""), vars,
                             seed=seed, rendered="", attempt=attempt, feedback=feedback)

    # ------------------------------------------------------------------ vision

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
        self.calls.append(("vision", image_hash))
        if template_id in self.overrides:
            return self.overrides[template_id](
                {**vars, "image_hash": image_hash}, attempt, feedback
            )
        properties = vars["property_list"]
        descriptions = []
        for prop in properties:
            rng = self._rng("describe", image_hash, prop, canonical_json(properties))
            words = self._sample_words(rng, 3, set())
            descriptions.append(
                {
                    "property": prop,
                    "description": (
                        f"{prop}: {words[0]} tones with {words[1]} texture and "
                        f"{words[2]} detail, read from image {image_hash[:8]}."
                    ),
                }
            )
        return {"descriptions": descriptions}

    # ------------------------------------------------------------------ image

    def generate_image(self, prompt: str, *, seed: int) -> bytes:
        self.calls.append(("image", prompt))
        return mock_image_bytes(seed, prompt)
