import pytest

from intentblocks.core import PropertySpec, new_session
from intentblocks.errors import (
    NotFoundError,
    SchemaViolationError,
    ValidationError,
)
from intentblocks.providers import ImageStore, MockProvider, ProviderGateway
from intentblocks.reuse import (
    apply_path_variant,
    build_evolution_graph,
    copy_block,
    copy_path_adaptive,
    copy_path_literal,
    organize_history,
    recommend_directions,
    request_adaptive_paths,
    validate_chain,
)

ANIMAL_LOG = [
    ("1", "animal"),
    ("2", "magical animal"),
    ("3", "flying magical animal"),
    ("4", "sea creatures"),
]


def make_session(seed=5):
    props = [
        PropertySpec("Mascot's Entity", "text"),
        PropertySpec("Background", "text"),
        PropertySpec("Image Style", "image"),
    ]
    return new_session("A mascot", props, seed=seed)


class TestOrganizeHistory:
    @pytest.mark.parametrize(
        "log,new,expected",
        [
            ([("1", "hippie attires"), ("2", "classic attires")], "student's attires", "2"),
            ([("1", "avant-garde art"), ("2", "futuristic design")], "medieval architecture", None),
            (ANIMAL_LOG, "deep sea creatures", "4"),
            (ANIMAL_LOG, "unicorn", "2"),
            (ANIMAL_LOG, "dragon", "3"),
            (ANIMAL_LOG, "mammal", "1"),
            (ANIMAL_LOG, "robot", None),
        ],
    )
    def test_known_example_lookups(self, providers, log, new, expected):
        assert organize_history(providers, log, new, seed=1) == expected

    def test_empty_log_returns_none_without_calling_provider(self, image_store):
        mock = MockProvider()
        gateway = ProviderGateway(mock, image_store)
        assert organize_history(gateway, [], "anything", seed=1) is None
        assert mock.calls == []

    def test_unknown_id_treated_as_none(self, image_store, caplog):
        def rogue(vars, attempt, feedback):
            return {"selected_id": "999"}

        gateway = ProviderGateway(
            MockProvider(overrides={"organize_history": rogue}), image_store
        )
        with caplog.at_level("WARNING"):
            got = organize_history(gateway, [("1", "a")], "b", seed=1)
        assert got is None
        assert "unknown id" in caplog.text


class TestCopyBlock:
    def test_settings_preserved_with_fresh_id(self, session):
        src = session.add_block("Image Style", "Starry Night", 1)
        new_id = copy_block(session, src)
        copied = session.block(new_id)
        original = session.block(src)
        assert new_id != src
        assert (copied.property, copied.direction, copied.typicality) == (
            original.property, original.direction, original.typicality
        )
        assert copied.reuse_origin.mode == "block_copy"
        assert copied.reuse_origin.source_block_id == src
        assert copied.suggestions == []  # re-crafted later, never cloned

    def test_copy_under_parent_creates_edge(self, session):
        src = session.add_block("Image Style", "Starry Night", 1)
        parent = session.add_block("Mascot's Entity", "Busker", 2)
        new_id = copy_block(session, src, parent)
        assert session.parent_of(new_id) == parent

    def test_missing_source_rejected(self, session):
        with pytest.raises(NotFoundError):
            copy_block(session, "ghost")


class TestLiteralPathCopy:
    def chain3(self, s):
        a = s.add_block("Mascot's Entity", "Busker", 2)
        b = s.add_block("Background", "Starry Night", 1, parent=a)
        c = s.add_block("Image Style", "Watercolor", 3, parent=b)
        return a, b, c

    def test_two_block_path_under_new_root(self):
        s = make_session()
        a, b, _ = self.chain3(s)
        target = s.add_block("Mascot's Entity", "Robot", 4)
        new_ids = copy_path_literal(s, [a, b], target)
        assert len(new_ids) == 2
        assert s.parent_of(new_ids[0]) == target
        assert s.parent_of(new_ids[1]) == new_ids[0]

    def test_structure_isomorphic_clone(self):
        s = make_session()
        a, b, c = self.chain3(s)
        new_ids = copy_path_literal(s, [a, b, c], None)
        source = [s.block(x) for x in (a, b, c)]
        clones = [s.block(x) for x in new_ids]
        assert [x.property for x in clones] == [x.property for x in source]
        assert [x.direction for x in clones] == [x.direction for x in source]
        assert [x.typicality for x in clones] == [x.typicality for x in source]
        assert all(x.reuse_origin.mode == "path_literal" for x in clones)
        # Edge-shape oracle: the cloned subchain wires exactly like the source.
        assert [s.parent_of(x) for x in new_ids] == [None, new_ids[0], new_ids[1]]
        created = [e.created_at for e in clones]
        assert created == sorted(created)

    def test_disconnected_selection_rejected(self):
        s = make_session()
        a, b, c = self.chain3(s)
        d = s.add_block("Mascot's Entity", "Separate", 1)
        with pytest.raises(ValidationError):
            copy_path_literal(s, [a, d], None)
        with pytest.raises(ValidationError):
            copy_path_literal(s, [a, c], None)  # skips b
        with pytest.raises(ValidationError):
            validate_chain(s, [c, b])  # wrong order


LAB_PATH = [
    {"id": "2", "property": "Laboratory Setting", "direction": "Computer", "novelty": 3},
    {"id": "3", "property": "Color Scheme", "direction": "professional blue", "novelty": 1},
]
LAB_ASPECTS = [
    {
        "id": "9",
        "property": "Character Entity",
        "direction": "Fluffy animal",
        "novelty": 1,
        "options": ["Bear", "Rabbit", "Puppy", "Raccoon"],
    }
]


class TestAdaptivePaths:
    def test_lab_example_matches_canned_output(self, providers):
        variants = request_adaptive_paths(
            providers,
            topic="A professional character for a laboratory",
            pre_explored=LAB_ASPECTS,
            replication_paths=LAB_PATH,
            seed=1,
        )
        assert len(variants) == 3
        assert [s["direction"] for s in variants[2]] == ["Zoo Laboratory", "Green and Wood"]
        for variant in variants:
            assert [s["id"] for s in variant] == ["2", "3"]
            assert [s["property"] for s in variant] == [
                "Laboratory Setting", "Color Scheme",
            ]

    def test_id_mismatch_is_schema_error_after_retries(self, image_store):
        def wrong_ids(vars, attempt, feedback):
            steps = [
                {"id": "99", "property": p["property"], "direction": "x", "novelty": 1}
                for p in vars["replication_paths"]
            ]
            return {"paths": [steps, steps, steps]}

        gateway = ProviderGateway(
            MockProvider(overrides={"adaptive_path": wrong_ids}), image_store, attempts=2
        )
        with pytest.raises(SchemaViolationError, match="does not match"):
            request_adaptive_paths(
                gateway, topic="t", pre_explored=[], replication_paths=LAB_PATH, seed=1
            )

    def test_empty_pre_explored_variant1_is_literal(self, providers):
        path = [
            {"id": "a", "property": "Background", "direction": "Starry Night", "novelty": 2},
            {"id": "b", "property": "Image Style", "direction": "Watercolor", "novelty": 1},
        ]
        variants = request_adaptive_paths(
            providers, topic="unseen topic", pre_explored=[], replication_paths=path, seed=1
        )
        assert [s["direction"] for s in variants[0]] == ["Starry Night", "Watercolor"]

    def test_full_adaptive_flow_and_apply(self, providers):
        session = make_session()
        a = session.add_block("Mascot's Entity", "Busker", 2)
        b = session.add_block("Background", "Starry Night", 1, parent=a)
        target = session.add_block("Mascot's Entity", "Robot", 4)
        menu = copy_path_adaptive(session, [a, b], target, providers)
        assert sorted(menu) == ["literal", "v1", "v2", "v3"]
        assert [s["direction"] for s in menu["literal"]] == ["Busker", "Starry Night"]
        new_ids = apply_path_variant(session, [a, b], target, "v2", menu["v2"])
        clones = [session.block(x) for x in new_ids]
        assert [c.property for c in clones] == ["Mascot's Entity", "Background"]
        assert [c.direction for c in clones] == [s["direction"] for s in menu["v2"]]
        assert all(c.reuse_origin.mode == "path_adaptive" for c in clones)
        assert session.parent_of(new_ids[0]) == target

    def test_novelty_clamped_to_slider_range(self, providers):
        session = make_session()
        a = session.add_block("Mascot's Entity", "Busker", 2)
        steps = [
            {"id": a, "property": "Mascot's Entity", "direction": "Night Busker", "novelty": 9}
        ]
        new_ids = apply_path_variant(session, [a], None, "v1", steps)
        assert session.block(new_ids[0]).typicality == 5


class TestRecommendDirections:
    def test_lab_robot_example(self, image_store, providers):
        props = [PropertySpec("Character Entity", "text"), PropertySpec("Image Style", "image")]
        s = new_session("A professional character for a laboratory", props, seed=1)
        root = s.add_block("Character Entity", "Robot", 1)
        got = recommend_directions(s, "Image Style", s.chain_context(root), providers)
        assert got == {"typical": "Realistic", "unique": "Steampunk"}

    def test_monster_book_example(self, providers):
        props = [
            PropertySpec("Illustration Style", "image"),
            PropertySpec("Monster's Appearance", "text"),
        ]
        s = new_session(
            "An illustration for a child book cover with a friendly monster", props, seed=1
        )
        a = s.add_block("Illustration Style", "Minimalistic", 1)
        b = s.add_block("Illustration Style", "Line drawing", 2)
        anchor = s.add_block("Monster's Appearance", "Fluffy and Circular shape", 1)
        got = recommend_directions(
            s, "Illustration Style", s.chain_context(anchor), providers
        )
        assert got == {"typical": "Watercolor", "unique": "Retro cartoon"}

    def test_history_duplicate_retried_then_surfaced(self, image_store):
        def stale(vars, attempt, feedback):
            return {"typical": "Watercolor", "unique": "Watercolor"}

        gateway = ProviderGateway(
            MockProvider(overrides={"recommend_directions": stale}), image_store, attempts=2
        )
        props = [PropertySpec("Image Style", "image")]
        s = new_session("t", props, seed=1)
        s.add_block("Image Style", "Watercolor", 1)
        with pytest.raises(SchemaViolationError, match="repeats history"):
            recommend_directions(s, "Image Style", None, gateway)

    def test_overlong_recommendation_rejected(self, image_store):
        def rambling(vars, attempt, feedback):
            return {"typical": "a very long winded idea", "unique": "ok"}

        gateway = ProviderGateway(
            MockProvider(overrides={"recommend_directions": rambling}), image_store, attempts=2
        )
        props = [PropertySpec("Image Style", "image")]
        s = new_session("t", props, seed=1)
        with pytest.raises(SchemaViolationError, match="too long"):
            recommend_directions(s, "Image Style", None, gateway)


class TestEvolutionGraph:
    def test_property_homogeneous_and_acyclic(self, providers):
        session = make_session()
        a = session.add_block("Mascot's Entity", "animal", 1)
        b = session.add_block("Mascot's Entity", "magical animal", 2)
        session.blocks[b].evolution_parent_id = a
        other = session.add_block("Background", "forest", 1)
        c = session.add_block(
            "Mascot's Entity", "flying magical animal", 3,
        )
        session.blocks[c].evolution_parent_id = b
        graph = build_evolution_graph(session, "Mascot's Entity")
        assert [n["block_id"] for n in graph.nodes] == [a, b, c]
        assert graph.parent_links == {a: None, b: a, c: b}
        assert other not in graph.parent_links
        # Acyclic: following parents always terminates.
        for node in graph.parent_links:
            seen = set()
            cursor = node
            while cursor is not None:
                assert cursor not in seen
                seen.add(cursor)
                cursor = graph.parent_links.get(cursor)

    def test_cross_property_parent_dropped(self):
        session = make_session()
        a = session.add_block("Background", "forest", 1)
        b = session.add_block("Mascot's Entity", "fox", 1)
        session.blocks[b].evolution_parent_id = a  # wrong property
        graph = build_evolution_graph(session, "Mascot's Entity")
        assert graph.parent_links == {b: None}
