"""On-disk session store: one directory per session holding a canonical
snapshot, an append-only JSONL event log, and the content-addressed images.

On load, the snapshot must equal an event-log replay byte for byte; sessions
failing that check are quarantined rather than served.
"""

from __future__ import annotations

import json
import logging
import os
import time
from pathlib import Path

from ..core.session import Session
from ..errors import NotFoundError
from ..providers.images import ImageStore
from ..util import canonical_json

log = logging.getLogger(__name__)


class SessionStore:
    def __init__(self, data_dir: Path):
        self.data_dir = Path(data_dir)
        self.sessions_dir = self.data_dir / "sessions"
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        self._written_events: dict[str, int] = {}

    # ----------------------------------------------------------------- layout

    def session_dir(self, session_id: str) -> Path:
        return self.sessions_dir / session_id

    def snapshot_path(self, session_id: str) -> Path:
        return self.session_dir(session_id) / "session.json"

    def events_path(self, session_id: str) -> Path:
        return self.session_dir(session_id) / "events.jsonl"

    def layout_path(self, session_id: str) -> Path:
        return self.session_dir(session_id) / "layout.json"

    def image_store(self, session_id: str) -> ImageStore:
        return ImageStore(self.session_dir(session_id) / "images")

    def exists(self, session_id: str) -> bool:
        return self.snapshot_path(session_id).exists()

    def unique_session_id(self, base_id: str) -> str:
        """Disambiguate when the same (topic, seed) session is created twice."""
        candidate, n = base_id, 1
        while self.session_dir(candidate).exists():
            n += 1
            candidate = f"{base_id}-{n}"
        return candidate

    # ------------------------------------------------------------------ write

    def save(self, session: Session) -> None:
        """Append new events, then atomically replace the snapshot."""
        sdir = self.session_dir(session.id)
        sdir.mkdir(parents=True, exist_ok=True)
        written = self._written_events.get(session.id, 0)
        new_events = session.events[written:]
        if new_events:
            with open(self.events_path(session.id), "a", encoding="utf-8") as fh:
                for event in new_events:
                    line = dict(event.to_dict())
                    line["ts"] = time.time()
                    fh.write(json.dumps(line, sort_keys=True) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            self._written_events[session.id] = len(session.events)
        snap_path = self.snapshot_path(session.id)
        tmp = snap_path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(session.canonical())
            fh.flush()
            os.fsync(fh.fileno())
        tmp.replace(snap_path)

    def save_layout(self, session_id: str, layout: dict) -> None:
        path = self.layout_path(session_id)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(layout, sort_keys=True), encoding="utf-8")
        tmp.replace(path)

    def load_layout(self, session_id: str) -> dict:
        path = self.layout_path(session_id)
        if not path.exists():
            return {}
        return json.loads(path.read_text(encoding="utf-8"))

    # ------------------------------------------------------------------- read

    def load(self, session_id: str) -> Session:
        """Rebuild from the event log and verify it matches the snapshot."""
        snap_path = self.snapshot_path(session_id)
        if not snap_path.exists():
            raise NotFoundError(f"no stored session {session_id!r}")
        snapshot_text = snap_path.read_text(encoding="utf-8")
        snapshot = json.loads(snapshot_text)

        events: list[dict] = []
        events_path = self.events_path(session_id)
        if events_path.exists():
            with open(events_path, encoding="utf-8") as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    raw = json.loads(line)
                    raw.pop("ts", None)
                    events.append(raw)

        session = Session.replay(snapshot, events)
        if session.canonical() != canonical_json(snapshot):
            raise ValueError(
                f"session {session_id!r}: event replay does not match snapshot"
            )
        self._written_events[session_id] = len(session.events)
        return session

    def load_all(self) -> tuple[dict[str, Session], dict[str, str]]:
        """(healthy sessions, unhealthy id -> reason)."""
        healthy: dict[str, Session] = {}
        unhealthy: dict[str, str] = {}
        if not self.sessions_dir.exists():
            return healthy, unhealthy
        for entry in sorted(self.sessions_dir.iterdir()):
            if not entry.is_dir():
                continue
            sid = entry.name
            try:
                healthy[sid] = self.load(sid)
            except Exception as exc:
                log.warning("session %s failed consistency check: %s", sid, exc)
                unhealthy[sid] = str(exc)
        return healthy, unhealthy
