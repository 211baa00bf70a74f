from .model import (
    ChainEntry,
    Event,
    ExplorationBlock,
    PropertySpec,
    ResultBlock,
    ResultItem,
    ReuseOrigin,
    Suggestion,
    SuggestionContent,
)
from .session import Session, new_session

__all__ = [
    "ChainEntry",
    "Event",
    "ExplorationBlock",
    "PropertySpec",
    "ResultBlock",
    "ResultItem",
    "ReuseOrigin",
    "Session",
    "Suggestion",
    "SuggestionContent",
    "new_session",
]
