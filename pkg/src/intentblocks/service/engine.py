"""Orchestrator: the sole mutation entry point over stored sessions.

Wires provider and embedding gateways to pipeline operations, serializes
writers per session, and persists snapshot + event log after every mutation.
A failed mutation restores the in-memory session from disk, so memory never
diverges from the durable state.
"""

from __future__ import annotations

import contextlib
import threading

from ..analytics.diversity import session_diversity
from ..analytics.linkograph import build_linkograph, linkograph_metrics
from ..config import ServiceConfig
from ..core.model import PropertySpec
from ..core.session import Session
from ..embeddings.gateway import EmbeddingGateway
from ..embeddings.wordvec import WordVectorTable
from ..errors import NotEnoughDataError, NotFoundError, ValidationError
from ..generation.engine import realize_results
from ..pipeline.craft import craft_suggestions, refine_suggestions
from ..pipeline.stages import generate_properties
from ..providers.base import ProviderGateway
from ..providers.mock import MockProvider
from ..reuse import engine as reuse
from ..util import stable_digest
from .storage import SessionStore


class CorruptedSessionError(Exception):
    """The stored session failed its snapshot/replay consistency check."""


class ExplorationEngine:
    def __init__(self, config: ServiceConfig):
        self.config = config
        self.store = SessionStore(config.data_dir)
        self.sessions, unhealthy = self.store.load_all()
        self.unhealthy: dict[str, str] = unhealthy
        self._locks: dict[str, threading.RLock] = {}
        self._registry_lock = threading.Lock()
        self._gateways: dict[str, tuple[ProviderGateway, EmbeddingGateway]] = {}
        self._pending_variants: dict[tuple, dict] = {}
        self._word_table = (
            WordVectorTable.load(config.engine.word_vector_path)
            if config.engine.word_vector_path
            else None
        )
        if config.engine.provider_mode == "live":
            from ..providers.live import LiveProvider

            self._provider_backend = LiveProvider(config.engine)
        else:
            self._provider_backend = MockProvider()

    # ----------------------------------------------------------------- plumbing

    def _lock(self, session_id: str) -> threading.RLock:
        with self._registry_lock:
            if session_id not in self._locks:
                self._locks[session_id] = threading.RLock()
            return self._locks[session_id]

    def gateways(self, session_id: str) -> tuple[ProviderGateway, EmbeddingGateway]:
        if session_id not in self._gateways:
            image_store = self.store.image_store(session_id)
            providers = ProviderGateway(
                self._provider_backend,
                image_store,
                attempts=self.config.engine.retry_attempts,
                parallelism=self.config.engine.bounded_parallelism,
            )
            embeddings = EmbeddingGateway(
                self._word_table,
                sentence_dim=self.config.engine.sentence_dim,
                joint_dim=self.config.engine.joint_dim,
                image_store=image_store,
            )
            self._gateways[session_id] = (providers, embeddings)
        return self._gateways[session_id]

    def get_session(self, session_id: str) -> Session:
        if session_id in self.unhealthy:
            raise CorruptedSessionError(self.unhealthy[session_id])
        session = self.sessions.get(session_id)
        if session is None:
            raise NotFoundError(f"unknown session {session_id!r}")
        return session

    def session_for_block(self, block_id: str) -> Session:
        session_id = block_id.rsplit(".b", 1)[0]
        session = self.get_session(session_id)
        session.block(block_id)
        return session

    @contextlib.contextmanager
    def _mutation(self, session_id: str):
        """Serialized writer; on failure the session reverts to disk state."""
        lock = self._lock(session_id)
        with lock:
            session = self.get_session(session_id)
            try:
                yield session
                self.store.save(session)
            except Exception:
                if self.store.exists(session_id):
                    self.sessions[session_id] = self.store.load(session_id)
                else:
                    self.sessions.pop(session_id, None)
                raise

    # ----------------------------------------------------------------- sessions

    def create_session(self, topic: str, seed: int | None = None) -> Session:
        if not topic or not topic.strip():
            raise ValidationError("topic must be nonempty")
        if seed is None:
            seed = self.config.seed
        if seed is None:
            seed = int(stable_digest("session-entropy", topic, len(self.sessions))[:8], 16)
        base_id = stable_digest(topic, seed)[:12]
        with self._registry_lock:
            session_id = self.store.unique_session_id(base_id)
        providers, _ = self.gateways(session_id)
        properties = generate_properties(providers, topic, seed=seed)
        session = Session.create(topic, properties, seed, id=session_id)
        self.store.save(session)
        with self._registry_lock:
            self.sessions[session_id] = session
        return session

    # ------------------------------------------------------------------- blocks

    def _organize(self, session: Session, property_name: str, direction: str) -> str | None:
        providers, _ = self.gateways(session.id)
        log = [(b.id, b.direction) for b in session.property_blocks(property_name)]
        return reuse.organize_history(providers, log, direction, seed=session.seed)

    def create_block(
        self,
        session_id: str,
        property_name: str,
        direction: str,
        typicality: int,
        parent: str | None = None,
        anchor_result_item: str | None = None,
    ) -> dict:
        with self._mutation(session_id) as session:
            providers, embeddings = self.gateways(session_id)
            evolution_parent = self._organize(session, property_name, direction)
            block_id = session.add_block(
                property_name,
                direction,
                typicality,
                parent=parent,
                anchor_result_item=anchor_result_item,
                evolution_parent_id=evolution_parent,
            )
            craft_suggestions(
                session,
                block_id,
                providers,
                embeddings,
                image_mode=self.config.engine.image_mode,
            )
            return self.block_payload(session, block_id)

    def refine(self, block_id: str, mode: str, anchor: str | None) -> dict:
        session = self.session_for_block(block_id)
        with self._mutation(session.id) as session:
            providers, embeddings = self.gateways(session.id)
            refine_suggestions(session, block_id, anchor, mode, providers, embeddings)
            return self.block_payload(session, block_id)

    def realize(self, block_id: str) -> dict:
        session = self.session_for_block(block_id)
        with self._mutation(session.id) as session:
            providers, _ = self.gateways(session.id)
            result = realize_results(
                session, block_id, providers, image_mode=self.config.engine.image_mode
            )
            return result.to_dict()

    def recommend(self, block_id: str, property_name: str) -> dict:
        session = self.session_for_block(block_id)
        with self._mutation(session.id) as session:
            providers, _ = self.gateways(session.id)
            chain = session.chain_context(block_id)
            reply = reuse.recommend_directions(session, property_name, chain, providers)
            session.record_recommendation(
                property_name, block_id, reply["typical"], reply["unique"]
            )
            return reply

    def mutate_properties(self, session_id: str, action: str, name: str, kind: str | None) -> list[dict]:
        with self._mutation(session_id) as session:
            if action == "add":
                spec = PropertySpec(name=name, kind=kind or "text", origin="custom")
                session.mutate_properties("add", spec)
            else:
                session.mutate_properties("remove", name)
            return [p.to_dict() for p in session.properties]

    # -------------------------------------------------------------------- reuse

    def copy_block(self, session_id: str, source_block_id: str, parent: str | None) -> dict:
        with self._mutation(session_id) as session:
            providers, embeddings = self.gateways(session_id)
            source = session.block(source_block_id)
            evolution_parent = self._organize(session, source.property, source.direction)
            new_id = reuse.copy_block(
                session, source_block_id, parent, evolution_parent_id=evolution_parent
            )
            craft_suggestions(
                session,
                new_id,
                providers,
                embeddings,
                image_mode=self.config.engine.image_mode,
            )
            return self.block_payload(session, new_id)

    def copy_path(
        self,
        session_id: str,
        path_block_ids: list[str],
        mode: str,
        target_parent: str | None,
        choice: str | None,
    ) -> dict:
        if mode == "literal":
            return {
                "applied": self._apply_path(
                    session_id, path_block_ids, target_parent, "literal", steps=None
                )
            }
        if mode != "adaptive":
            raise ValidationError(f"unknown copy-path mode {mode!r}")
        menu_key = (session_id, tuple(path_block_ids), target_parent)
        if choice is None:
            session = self.get_session(session_id)
            providers, _ = self.gateways(session_id)
            menu = reuse.copy_path_adaptive(
                session, path_block_ids, target_parent, providers
            )
            self._pending_variants[menu_key] = menu
            return {"variants": menu}
        menu = self._pending_variants.get(menu_key)
        if menu is None:  # e.g. after restart: re-derive, deterministic in mock mode
            session = self.get_session(session_id)
            providers, _ = self.gateways(session_id)
            menu = reuse.copy_path_adaptive(session, path_block_ids, target_parent, providers)
        if choice not in menu:
            raise ValidationError(f"unknown variant choice {choice!r}")
        variant_name = choice
        steps = menu[choice]
        self._pending_variants.pop(menu_key, None)
        return {
            "applied": self._apply_path(
                session_id, path_block_ids, target_parent, variant_name, steps=steps
            )
        }

    def _apply_path(
        self,
        session_id: str,
        path_block_ids: list[str],
        target_parent: str | None,
        variant_name: str,
        steps: list[dict] | None,
    ) -> dict:
        with self._mutation(session_id) as session:
            providers, embeddings = self.gateways(session_id)
            sources = [session.block(bid) for bid in path_block_ids]
            if steps is None:
                steps = [
                    {
                        "id": b.id,
                        "property": b.property,
                        "direction": b.direction,
                        "novelty": b.typicality,
                    }
                    for b in sources
                ]
            # Evolution links resolve against blocks existing before the paste
            # plus clones created earlier within it.
            planned = reuse.planned_clone_ids(session, len(steps))
            evolution: list[str | None] = []
            pending: dict[str, list[tuple[str, str]]] = {}
            for offset, step in enumerate(steps):
                prop = step["property"]
                log = [(b.id, b.direction) for b in session.property_blocks(prop)]
                log.extend(pending.get(prop, []))
                evolution.append(
                    reuse.organize_history(
                        providers, log, step["direction"], seed=session.seed
                    )
                )
                pending.setdefault(prop, []).append((planned[offset], step["direction"]))
            new_ids = reuse.apply_path_variant(
                session,
                path_block_ids,
                target_parent,
                variant_name,
                steps,
                evolution=evolution,
            )
            # Continue the exploration automatically: craft and realize in order.
            for new_id in new_ids:
                craft_suggestions(
                    session,
                    new_id,
                    providers,
                    embeddings,
                    image_mode=self.config.engine.image_mode,
                )
                realize_results(
                    session, new_id, providers, image_mode=self.config.engine.image_mode
                )
            return {
                "block_ids": new_ids,
                "variant": variant_name,
                "blocks": [self.block_payload(session, bid) for bid in new_ids],
            }

    # ---------------------------------------------------------------- read side

    def analytics(self, session_id: str) -> dict:
        session = self.get_session(session_id)
        _, embeddings = self.gateways(session_id)
        payload: dict = {"session_id": session_id}
        try:
            graph = build_linkograph(session)
            payload["linkograph"] = graph.to_dict()
            payload["metrics"] = linkograph_metrics(graph).to_dict()
        except NotEnoughDataError:
            payload["linkograph"] = None
            payload["metrics"] = None
        try:
            payload["diversity"] = session_diversity(session, embeddings)
        except NotEnoughDataError as exc:
            payload["diversity"] = None
            payload["diversity_note"] = str(exc)
        payload["evolution_graphs"] = [
            reuse.build_evolution_graph(session, p.name).to_dict()
            for p in session.properties
        ]
        return payload

    def block_payload(self, session: Session, block_id: str) -> dict:
        block = session.block(block_id)
        payload = block.to_dict()
        payload["parent_id"] = session.parent_of(block_id)
        payload["results"] = [r.to_dict() for r in session.results_for(block_id)]
        return payload

    def health(self) -> dict:
        return {
            "status": "degraded" if self.unhealthy else "ok",
            "sessions": len(self.sessions),
            "unhealthy_sessions": sorted(self.unhealthy),
            "provider_mode": self.config.engine.provider_mode,
        }
