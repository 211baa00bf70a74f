from .gateway import EmbeddingGateway
from .hashing import feature_hash_vector
from .vectors import SPACES, EmbeddingVector, cosine_similarity
from .wordvec import WordVectorTable

__all__ = [
    "SPACES",
    "EmbeddingGateway",
    "EmbeddingVector",
    "WordVectorTable",
    "cosine_similarity",
    "feature_hash_vector",
]
