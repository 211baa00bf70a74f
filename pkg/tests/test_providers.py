import pytest

from intentblocks.errors import (
    NotFoundError,
    SchemaViolationError,
    ValidationError,
)
from intentblocks.providers import (
    ImageStore,
    MockProvider,
    ProviderGateway,
    get_template,
    mock_image_bytes,
)
from intentblocks.providers.templates import RESPONSE_SCHEMAS
from intentblocks.util import canonical_json


class TestTemplates:
    def test_all_templates_load_and_declare_schemas(self):
        for template_id in RESPONSE_SCHEMAS:
            template = get_template(template_id)
            assert template.body.strip()
            assert template.response_schema is RESPONSE_SCHEMAS[template_id]

    def test_render_substitutes_all_placeholders(self):
        template = get_template("diversify_text")
        rendered = template.render(
            {"property": "Mascot Species", "direction": "Cat", "avoid": []}
        )
        assert "Mascot Species" in rendered
        assert "<<" not in rendered

    def test_render_missing_var_rejected(self):
        template = get_template("diversify_text")
        with pytest.raises(ValidationError, match="missing vars"):
            template.render({"property": "Mascot Species"})

    def test_non_string_vars_json_encoded(self):
        template = get_template("recommend_directions")
        rendered = template.render(
            {
                "topic": "t",
                "property": "p",
                "history": ["a", "b"],
                "settings": [],
            }
        )
        assert '["a", "b"]' in rendered


class TestCompleteStructured:
    def test_canned_diversify_example(self, providers):
        reply = providers.complete_structured(
            "diversify_text",
            {"property": "Mascot Species", "direction": "Cat", "avoid": []},
            seed=7,
        )
        assert reply["outputs"]["variations"] == [
            "Sphynx", "Persian", "Siamese", "Bengal",
            "Dog", "Parrot", "Dragon", "Kangaroo", "Turtle",
        ]

    def test_canned_recommendation_example(self, providers):
        reply = providers.complete_structured(
            "recommend_directions",
            {
                "topic": "A professional character for a laboratory",
                "property": "Image Style",
                "history": [],
                "settings": ["Character Entity: Robot"],
            },
            seed=7,
        )
        assert reply == {"typical": "Realistic", "unique": "Steampunk"}

    def test_schema_violation_retried_then_surfaced(self, image_store):
        attempts = []

        def broken(vars, attempt, feedback):
            attempts.append(attempt)
            return {"outputs": {"wrong_key": []}}

        gateway = ProviderGateway(
            MockProvider(overrides={"diversify_text": broken}), image_store, attempts=3
        )
        with pytest.raises(SchemaViolationError) as err:
            gateway.complete_structured(
                "diversify_text",
                {"property": "p", "direction": "d", "avoid": []},
                seed=1,
            )
        assert attempts == [0, 1, 2]
        assert "wrong_key" in err.value.raw

    def test_recovers_when_retry_succeeds(self, image_store):
        def flaky(vars, attempt, feedback):
            if attempt == 0:
                return {"bad": True}
            assert feedback  # validation error was fed back
            return {
                "outputs": {
                    "variations": ["a", "b", "c", "d", "e", "f", "g", "h", "i"]
                }
            }

        gateway = ProviderGateway(
            MockProvider(overrides={"diversify_text": flaky}), image_store, attempts=3
        )
        reply = gateway.complete_structured(
            "diversify_text", {"property": "p", "direction": "d", "avoid": []}, seed=1
        )
        assert len(reply["outputs"]["variations"]) == 9

    def test_extra_validate_hook_participates_in_retry(self, image_store):
        def fine(vars, attempt, feedback):
            return {
                "outputs": {
                    "variations": ["a", "b", "c", "d", "e", "f", "g", "h", "i"]
                }
            }

        def reject_all(reply):
            raise ValidationError("nope")

        gateway = ProviderGateway(
            MockProvider(overrides={"diversify_text": fine}), image_store, attempts=2
        )
        with pytest.raises(SchemaViolationError, match="nope"):
            gateway.complete_structured(
                "diversify_text",
                {"property": "p", "direction": "d", "avoid": []},
                seed=1,
                validate=reject_all,
            )

    def test_mock_is_pure_function_of_inputs(self, image_store, tmp_path):
        g1 = ProviderGateway(MockProvider(), ImageStore(tmp_path / "a"))
        g2 = ProviderGateway(MockProvider(), ImageStore(tmp_path / "b"))
        vars = {"property": "Texture", "direction": "Rough", "avoid": []}
        r1 = g1.complete_structured("diversify_text", vars, seed=42)
        r2 = g2.complete_structured("diversify_text", vars, seed=42)
        assert canonical_json(r1) == canonical_json(r2)


class TestDescribeImage:
    def make_image(self, providers):
        return providers.generate_image("a fox playing a ukulele", seed=3)

    def test_one_paragraph_per_property(self, providers):
        ref = self.make_image(providers)
        out = providers.describe_image(
            "history_extract", ref, {"property_list": ["Image Style"]}, seed=3
        )
        assert list(out.keys()) == ["Image Style"]
        assert "Image Style" in out["Image Style"]

    def test_two_properties_two_paragraphs_keyed_by_image_and_vars(self, providers):
        ref = self.make_image(providers)
        out1 = providers.describe_image(
            "history_extract",
            ref,
            {"property_list": ["Image Style", "Background"]},
            seed=3,
        )
        assert sorted(out1) == ["Background", "Image Style"]
        # Same (image, vars) key gives identical text; different image differs.
        out2 = providers.describe_image(
            "history_extract",
            ref,
            {"property_list": ["Image Style", "Background"]},
            seed=3,
        )
        assert out1 == out2
        other = providers.generate_image("a completely different scene", seed=3)
        out3 = providers.describe_image(
            "history_extract",
            other,
            {"property_list": ["Image Style", "Background"]},
            seed=3,
        )
        assert out3 != out1

    def test_empty_property_list_rejected(self, providers):
        ref = self.make_image(providers)
        with pytest.raises(ValidationError):
            providers.describe_image(
                "history_extract", ref, {"property_list": []}, seed=3
            )

    def test_unresolvable_image_rejected(self, providers):
        with pytest.raises(NotFoundError):
            providers.describe_image(
                "history_extract", "0" * 64, {"property_list": ["x"]}, seed=3
            )


class TestGenerateImage:
    def test_hash_recomputable_from_seed_and_prompt(self, providers):
        import hashlib

        ref = providers.generate_image("a watercolor fox", seed=9)
        expected = hashlib.sha256(mock_image_bytes(9, "a watercolor fox")).hexdigest()
        assert ref.hash == expected
        assert providers.image_store.exists(ref.hash)

    def test_empty_prompt_rejected(self, providers):
        with pytest.raises(ValidationError):
            providers.generate_image("   ", seed=9)

    def test_same_prompt_and_seed_identical_ref(self, providers):
        a = providers.generate_image("twin prompt", seed=5)
        b = providers.generate_image("twin prompt", seed=5)
        assert a.hash == b.hash

    def test_different_seed_different_image(self, providers):
        a = providers.generate_image("twin prompt", seed=5)
        b = providers.generate_image("twin prompt", seed=6)
        assert a.hash != b.hash

    def test_store_roundtrip_and_meta(self, providers):
        ref = providers.generate_image("meta check", seed=1)
        data = providers.image_store.get_bytes(ref.hash)
        assert data[:8] == b"\x89PNG\r\n\x1a\n"
        meta = providers.image_store.get_meta(ref.hash)
        assert meta["prompt"] == "meta check"
        assert providers.image_store.ref(ref.hash).source_prompt == "meta check"
