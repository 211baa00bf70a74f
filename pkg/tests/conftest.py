import warnings
from pathlib import Path

import pytest

from intentblocks.config import EngineConfig, ServiceConfig
from intentblocks.core import PropertySpec, new_session
from intentblocks.embeddings import EmbeddingGateway, WordVectorTable
from intentblocks.providers import ImageStore, MockProvider, ProviderGateway

warnings.filterwarnings("ignore", category=DeprecationWarning)

DATA_DIR = Path(__file__).parent / "data"
TOY_VECTORS = DATA_DIR / "toy_vectors.txt"

LAB_TOPIC = "A professional mascot character for a laboratory"

LAB_PROPERTIES = [
    PropertySpec("Mascot's Entity", "text"),
    PropertySpec("Mascot's Pose", "text"),
    PropertySpec("Character Aesthetics", "text"),
    PropertySpec("Laboratory Setting", "text"),
    PropertySpec("Image Style", "image"),
    PropertySpec("Mascot's Clothing", "text"),
    PropertySpec("Field of Expertise of the Lab", "text"),
    PropertySpec("Safety Gear", "text"),
]


@pytest.fixture
def image_store(tmp_path):
    return ImageStore(tmp_path / "images")


@pytest.fixture
def mock_provider():
    return MockProvider()


@pytest.fixture
def providers(mock_provider, image_store):
    return ProviderGateway(mock_provider, image_store)


@pytest.fixture
def word_table():
    return WordVectorTable.load(TOY_VECTORS)


@pytest.fixture
def embeddings(word_table, image_store):
    return EmbeddingGateway(word_table, image_store=image_store)


@pytest.fixture
def session():
    return new_session(LAB_TOPIC, [PropertySpec(p.name, p.kind) for p in LAB_PROPERTIES], seed=7)


@pytest.fixture
def service_config(tmp_path):
    return ServiceConfig(
        data_dir=tmp_path / "data",
        engine=EngineConfig(word_vector_path=str(TOY_VECTORS)),
    )
