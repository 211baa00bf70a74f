"""History-aware image generation: extract prior property descriptions from
the chain's most recent image, compose one prompt per suggestion, realize."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core.model import ResultBlock, ResultItem, Suggestion
from ..core.session import Session
from ..errors import ConflictError, EngineError, ValidationError
from ..providers.base import ProviderGateway


@dataclass
class PropertyDescriptions:
    entries: dict[str, str] = field(default_factory=dict)  # property -> paragraph
    source_image: str | None = None

    @property
    def empty(self) -> bool:
        return not self.entries


def _most_recent_ancestor_image(session: Session, block_id: str) -> tuple[str | None, list[str]]:
    """(image hash, prior property list) for the deepest ancestor with results.

    When the next block along the chain was branched from a specific result
    item, that item's image anchors the extraction; otherwise the first item.
    """
    chain = session.chain_context(block_id)
    ancestors = chain[:-1]
    prior_properties: list[str] = []
    for entry in ancestors:
        if entry.property not in prior_properties:
            prior_properties.append(entry.property)
    for entry in reversed(ancestors):
        latest = session.latest_result(entry.block_id)
        if latest is None:
            continue
        with_images = [i for i in latest.items if i.image_hash]
        if not with_images:
            continue
        anchor = entry.anchor_result_item
        if anchor is not None:
            for item in with_images:
                if item.suggestion_id == anchor:
                    return item.image_hash, prior_properties
        return with_images[0].image_hash, prior_properties
    return None, prior_properties


def extract_history_descriptions(
    session: Session, block_id: str, providers: ProviderGateway
) -> PropertyDescriptions:
    """One paragraph per previously explored property, read from the most
    recent image in the connected block sequence; empty when no image exists."""
    image_hash, prior_properties = _most_recent_ancestor_image(session, block_id)
    if image_hash is None or not prior_properties:
        return PropertyDescriptions()
    entries = providers.describe_image(
        "history_extract",
        image_hash,
        {"property_list": prior_properties},
        seed=session.seed,
    )
    return PropertyDescriptions(entries=entries, source_image=image_hash)


def compose_generation_prompt(
    providers: ProviderGateway,
    history: PropertyDescriptions,
    property_name: str,
    suggestion: Suggestion,
    *,
    seed: int,
    image_mode: str = "economy",
) -> str:
    """Single text-to-image prompt emphasizing the new intent over the history."""
    if suggestion is None:
        raise ValidationError("suggestion is required")
    if suggestion.content.kind == "text":
        current_text = suggestion.content.text
    elif image_mode == "full" and suggestion.content.image_hash:
        described = providers.describe_image(
            "history_extract",
            suggestion.content.image_hash,
            {"property_list": [property_name]},
            seed=seed,
        )
        current_text = described[property_name]
    else:  # economy: the candidate prompt text stands in for the visual concept
        current_text = suggestion.content.prompt or ""
    if not current_text:
        raise ValidationError("suggestion has no usable content")
    previous_text = "\n".join(
        f"- {prop}: {text}" for prop, text in history.entries.items()
    )
    reply = providers.complete_structured(
        "prompt_compose",
        {
            "current_property": property_name,
            "current_text": current_text,
            "previous_text": previous_text,
        },
        seed=seed,
    )
    return reply["prompt"]


def realize_results(
    session: Session,
    block_id: str,
    providers: ProviderGateway,
    *,
    image_mode: str = "economy",
) -> ResultBlock:
    """One composed prompt + generated image per active suggestion, in order.

    Per-item failures are recorded on the item, never dropped.
    """
    block = session.block(block_id)
    active = block.active_suggestions()
    if not active:
        raise ConflictError(f"block {block_id!r} has no active suggestions")
    history = extract_history_descriptions(session, block_id, providers)

    def realize_one(suggestion: Suggestion) -> ResultItem:
        prompt = ""
        try:
            prompt = compose_generation_prompt(
                providers,
                history,
                block.property,
                suggestion,
                seed=session.seed,
                image_mode=image_mode,
            )
            ref = providers.generate_image(prompt, seed=session.seed)
            return ResultItem(
                suggestion_id=suggestion.id, final_prompt=prompt, image_hash=ref.hash
            )
        except EngineError as exc:
            return ResultItem(
                suggestion_id=suggestion.id, final_prompt=prompt, error=str(exc)
            )

    items = providers.map_bounded(realize_one, active)
    result = ResultBlock(
        id=session.next_result_id(block_id),
        parent_block_id=block_id,
        created_at=len(session.events) + 1,  # seq the recording event will take
        items=items,
    )
    session.record_result(result)
    return session.results[result.id]
