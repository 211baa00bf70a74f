from .app import create_app
from .engine import CorruptedSessionError, ExplorationEngine
from .storage import SessionStore

__all__ = ["CorruptedSessionError", "ExplorationEngine", "SessionStore", "create_app"]
