import json

import pytest
from fastapi.testclient import TestClient

from intentblocks.analytics import build_linkograph, linkograph_metrics
from intentblocks.config import EngineConfig, ServiceConfig
from intentblocks.core.session import Session
from intentblocks.errors import ProviderError
from intentblocks.service.app import create_app
from intentblocks.util import canonical_json

from conftest import TOY_VECTORS

FESTIVAL_TOPIC = "A mascot for a summer night urban film festival"


def make_config(tmp_path, sub="data"):
    return ServiceConfig(
        data_dir=tmp_path / sub,
        engine=EngineConfig(word_vector_path=str(TOY_VECTORS)),
    )


@pytest.fixture
def client(tmp_path):
    app = create_app(make_config(tmp_path))
    return TestClient(app)


def create_session(client, topic=FESTIVAL_TOPIC, seed=11):
    r = client.post("/v1/sessions", json={"topic": topic, "seed": seed})
    assert r.status_code == 201
    return r.json()


def first_text_property(payload):
    return next(p["name"] for p in payload["properties"] if p["kind"] == "text")


def first_image_property(payload):
    return next(p["name"] for p in payload["properties"] if p["kind"] == "image")


class TestSessions:
    def test_create_returns_eight_properties(self, client):
        payload = create_session(client)
        assert len(payload["properties"]) == 8
        assert payload["session_id"]

    def test_empty_topic_422(self, client):
        r = client.post("/v1/sessions", json={"topic": ""})
        assert r.status_code == 422

    def test_unknown_body_field_422(self, client):
        r = client.post("/v1/sessions", json={"topic": "x", "bogus": 1})
        assert r.status_code == 422

    def test_provider_failure_502_with_stage(self, client):
        def down(vars, attempt, feedback):
            raise ProviderError("endpoint unreachable", stage="properties")

        backend = client.app.state.engine._provider_backend
        backend.overrides["properties"] = down
        try:
            r = client.post("/v1/sessions", json={"topic": "x"})
        finally:
            backend.overrides.pop("properties")
        assert r.status_code == 502
        assert r.json()["stage"] == "properties"

    def test_get_unknown_session_404(self, client):
        assert client.get("/v1/sessions/nope").status_code == 404


class TestBlockLifecycle:
    def test_create_block_auto_crafts_four(self, client):
        payload = create_session(client)
        sid = payload["session_id"]
        r = client.post(
            f"/v1/sessions/{sid}/blocks",
            json={"property": first_image_property(payload), "direction": "Watercolor", "typicality": 1},
        )
        assert r.status_code == 201
        body = r.json()
        assert len(body["suggestions"]) == 4
        assert all(s["state"] == "active" for s in body["suggestions"])

    def test_refine_route(self, client):
        payload = create_session(client)
        sid = payload["session_id"]
        r = client.post(
            f"/v1/sessions/{sid}/blocks",
            json={"property": first_text_property(payload), "direction": "Fox", "typicality": 3},
        )
        block = r.json()
        anchor = block["suggestions"][0]["id"]
        r = client.post(
            f"/v1/blocks/{block['id']}/suggestions:refine",
            json={"mode": "distant", "anchor": anchor},
        )
        assert r.status_code == 200
        actives = [s for s in r.json()["suggestions"] if s["state"] != "deleted"]
        assert len(actives) == 4
        assert any(s["id"] != anchor for s in actives)

    def test_results_route_and_zero_active_conflict(self, client):
        payload = create_session(client)
        sid = payload["session_id"]
        block = client.post(
            f"/v1/sessions/{sid}/blocks",
            json={"property": first_text_property(payload), "direction": "Fox", "typicality": 3},
        ).json()
        r = client.post(f"/v1/blocks/{block['id']}/results")
        assert r.status_code == 201
        assert len(r.json()["items"]) == 4
        for s in block["suggestions"]:
            client.post(
                f"/v1/blocks/{block['id']}/suggestions:refine",
                json={"mode": "delete", "anchor": s["id"]},
            )
        r = client.post(f"/v1/blocks/{block['id']}/results")
        assert r.status_code == 409

    def test_out_of_range_typicality_422(self, client):
        payload = create_session(client)
        sid = payload["session_id"]
        r = client.post(
            f"/v1/sessions/{sid}/blocks",
            json={"property": first_text_property(payload), "direction": "x", "typicality": 6},
        )
        assert r.status_code == 422

    def test_unknown_block_404(self, client):
        create_session(client)
        r = client.post("/v1/blocks/ghost.b1/results")
        assert r.status_code == 404

    def test_recommend_route_appends_event(self, client):
        payload = create_session(client)
        sid = payload["session_id"]
        block = client.post(
            f"/v1/sessions/{sid}/blocks",
            json={"property": first_text_property(payload), "direction": "Fox", "typicality": 3},
        ).json()
        r = client.post(
            f"/v1/blocks/{block['id']}/recommend",
            json={"property": first_image_property(payload)},
        )
        assert r.status_code == 200
        body = r.json()
        assert set(body) == {"typical", "unique"}
        snap = client.get(f"/v1/sessions/{sid}").json()
        assert snap["events"][-1]["kind"] == "direction_recommended"


class TestReuseRoutes:
    def build_chain(self, client):
        payload = create_session(client)
        sid = payload["session_id"]
        text_prop = first_text_property(payload)
        image_prop = first_image_property(payload)
        b1 = client.post(
            f"/v1/sessions/{sid}/blocks",
            json={"property": text_prop, "direction": "Fox", "typicality": 3},
        ).json()
        b2 = client.post(
            f"/v1/sessions/{sid}/blocks",
            json={"property": image_prop, "direction": "Watercolor", "typicality": 1, "parent": b1["id"]},
        ).json()
        return sid, b1, b2

    def test_copy_block_route(self, client):
        sid, b1, _ = self.build_chain(client)
        r = client.post(
            f"/v1/sessions/{sid}/copy-block", json={"source_block_id": b1["id"]}
        )
        assert r.status_code == 201
        body = r.json()
        assert body["direction"] == "Fox"
        assert body["reuse_origin"]["mode"] == "block_copy"
        assert len(body["suggestions"]) == 4  # re-crafted, not cloned

    def test_copy_path_two_phase_adaptive(self, client):
        sid, b1, b2 = self.build_chain(client)
        r = client.post(
            f"/v1/sessions/{sid}/copy-path",
            json={"mode": "adaptive", "path": [b1["id"], b2["id"]]},
        )
        assert r.status_code == 200
        variants = r.json()["variants"]
        assert sorted(variants) == ["literal", "v1", "v2", "v3"]
        r = client.post(
            f"/v1/sessions/{sid}/copy-path",
            json={"mode": "adaptive", "path": [b1["id"], b2["id"]], "choice": "v3"},
        )
        assert r.status_code == 201
        applied = r.json()["applied"]
        assert len(applied["block_ids"]) == 2
        # Auto-continuation crafted suggestions and realized results.
        for block in applied["blocks"]:
            assert len(block["suggestions"]) == 4
            assert len(block["results"]) == 1

    def test_copy_path_literal_201(self, client):
        sid, b1, b2 = self.build_chain(client)
        r = client.post(
            f"/v1/sessions/{sid}/copy-path",
            json={"mode": "literal", "path": [b1["id"], b2["id"]]},
        )
        assert r.status_code == 201

    def test_non_chain_path_409(self, client):
        sid, b1, b2 = self.build_chain(client)
        payload = client.get(f"/v1/sessions/{sid}").json()
        # Two roots are not a chain.
        other = client.post(
            f"/v1/sessions/{sid}/blocks",
            json={
                "property": [p["name"] for p in payload["properties"] if p["kind"] == "text"][1],
                "direction": "Solo",
                "typicality": 2,
            },
        ).json()
        r = client.post(
            f"/v1/sessions/{sid}/copy-path",
            json={"mode": "literal", "path": [b1["id"], other["id"]]},
        )
        assert r.status_code in (409, 422)


class TestAnalyticsAndDurability:
    def test_analytics_matches_module_oracle(self, client, tmp_path):
        payload = create_session(client)
        sid = payload["session_id"]
        text_prop = first_text_property(payload)
        b1 = client.post(
            f"/v1/sessions/{sid}/blocks",
            json={"property": text_prop, "direction": "Fox", "typicality": 3},
        ).json()
        b2 = client.post(
            f"/v1/sessions/{sid}/blocks",
            json={"property": first_image_property(payload), "direction": "Ink", "typicality": 2, "parent": b1["id"]},
        ).json()
        client.post(
            f"/v1/sessions/{sid}/blocks",
            json={"property": text_prop, "direction": "Owl", "typicality": 1, "parent": b2["id"]},
        )
        got = client.get(f"/v1/sessions/{sid}/analytics").json()
        session = client.app.state.engine.get_session(sid)
        expected = linkograph_metrics(build_linkograph(session)).to_dict()
        assert got["metrics"] == expected

    def test_restart_preserves_session_byte_identical(self, tmp_path):
        config = make_config(tmp_path)
        app1 = create_app(config)
        c1 = TestClient(app1)
        payload = create_session(c1)
        sid = payload["session_id"]
        block = c1.post(
            f"/v1/sessions/{sid}/blocks",
            json={"property": first_text_property(payload), "direction": "Fox", "typicality": 3},
        ).json()
        c1.post(f"/v1/blocks/{block['id']}/results")
        before = c1.get(f"/v1/sessions/{sid}").content

        app2 = create_app(config)  # fresh process equivalent
        c2 = TestClient(app2)
        after = c2.get(f"/v1/sessions/{sid}").content
        assert before == after
        assert c2.get("/health").json()["unhealthy_sessions"] == []

    def test_snapshot_equals_event_replay(self, tmp_path):
        config = make_config(tmp_path)
        app = create_app(config)
        c = TestClient(app)
        payload = create_session(c)
        sid = payload["session_id"]
        c.post(
            f"/v1/sessions/{sid}/blocks",
            json={"property": first_text_property(payload), "direction": "Fox", "typicality": 3},
        )
        store = app.state.engine.store
        snapshot = json.loads(store.snapshot_path(sid).read_text())
        events = [
            json.loads(line)
            for line in store.events_path(sid).read_text().splitlines()
            if line.strip()
        ]
        for e in events:
            e.pop("ts")
        rebuilt = Session.replay(snapshot, events)
        assert rebuilt.canonical() == canonical_json(snapshot)

    def test_truncated_event_log_quarantines_only_that_session(self, tmp_path):
        config = make_config(tmp_path)
        app1 = create_app(config)
        c1 = TestClient(app1)
        a = create_session(c1, seed=1)
        b = create_session(c1, topic="Another topic entirely", seed=2)
        sid_a, sid_b = a["session_id"], b["session_id"]
        c1.post(
            f"/v1/sessions/{sid_a}/blocks",
            json={"property": first_text_property(a), "direction": "Fox", "typicality": 3},
        )
        # Truncate the tail of A's event log mid-line.
        events_path = app1.state.engine.store.events_path(sid_a)
        raw = events_path.read_bytes()
        events_path.write_bytes(raw[: len(raw) - 25])

        app2 = create_app(config)
        c2 = TestClient(app2)
        health = c2.get("/health").json()
        assert health["status"] == "degraded"
        assert sid_a in health["unhealthy_sessions"]
        assert c2.get(f"/v1/sessions/{sid_a}").status_code == 409
        assert c2.get(f"/v1/sessions/{sid_b}").status_code == 200

    def test_failed_mutation_leaves_state_unchanged(self, client):
        payload = create_session(client)
        sid = payload["session_id"]
        before = client.get(f"/v1/sessions/{sid}").content

        def broken(vars, attempt, feedback):
            raise ProviderError("mid-flight failure", stage="expand")

        backend = client.app.state.engine._provider_backend
        backend.overrides["candidates_text"] = broken
        try:
            r = client.post(
                f"/v1/sessions/{sid}/blocks",
                json={"property": first_text_property(payload), "direction": "Fox", "typicality": 3},
            )
        finally:
            backend.overrides.pop("candidates_text")
        assert r.status_code == 502
        after = client.get(f"/v1/sessions/{sid}").content
        assert before == after  # the half-made block was rolled back


class TestMisc:
    def test_properties_endpoint(self, client):
        payload = create_session(client)
        sid = payload["session_id"]
        r = client.post(
            f"/v1/sessions/{sid}/properties",
            json={"action": "add", "name": "Typography", "kind": "text"},
        )
        assert r.status_code == 200
        assert any(p["name"] == "Typography" for p in r.json()["properties"])
        used = first_text_property(payload)
        client.post(
            f"/v1/sessions/{sid}/blocks",
            json={"property": used, "direction": "Fox", "typicality": 3},
        )
        r = client.post(
            f"/v1/sessions/{sid}/properties", json={"action": "remove", "name": used}
        )
        assert r.status_code == 409

    def test_layout_roundtrip(self, client):
        payload = create_session(client)
        sid = payload["session_id"]
        layout = {"nodes": {"b1": {"x": 10, "y": 20}}, "zoom": 1.5}
        r = client.put(f"/v1/sessions/{sid}/layout", json=layout)
        assert r.status_code == 200
        assert client.get(f"/v1/sessions/{sid}/layout").json() == layout

    def test_openapi_served_at_versioned_path(self, client):
        r = client.get("/v1/spec")
        assert r.status_code == 200
        assert "/v1/sessions" in r.json()["paths"]

    def test_image_endpoint_serves_png(self, client):
        payload = create_session(client)
        sid = payload["session_id"]
        block = client.post(
            f"/v1/sessions/{sid}/blocks",
            json={"property": first_image_property(payload), "direction": "Ink", "typicality": 2},
        ).json()
        image_hash = block["suggestions"][0]["content"]["image_hash"]
        r = client.get(f"/v1/sessions/{sid}/images/{image_hash}")
        assert r.status_code == 200
        assert r.content[:8] == b"\x89PNG\r\n\x1a\n"
