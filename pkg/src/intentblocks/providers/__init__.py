from .base import ProviderGateway
from .images import ImageRef, ImageStore, mock_image_bytes, mock_image_key
from .mock import MockProvider
from .templates import PromptTemplate, get_template

__all__ = [
    "ImageRef",
    "ImageStore",
    "MockProvider",
    "PromptTemplate",
    "ProviderGateway",
    "get_template",
    "mock_image_bytes",
    "mock_image_key",
]
