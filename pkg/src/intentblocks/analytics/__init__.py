from .diversity import (
    max_pairwise_cosine_distance,
    session_diversity,
    session_image_hashes,
)
from .evalharness import (
    EvalCase,
    EvalFixture,
    EvalReport,
    SetReport,
    eval_pipeline,
    mean_pairwise_similarity,
)
from .linkograph import Linkograph, MetricsReport, build_linkograph, linkograph_metrics

__all__ = [
    "EvalCase",
    "EvalFixture",
    "EvalReport",
    "Linkograph",
    "MetricsReport",
    "SetReport",
    "build_linkograph",
    "eval_pipeline",
    "linkograph_metrics",
    "max_pairwise_cosine_distance",
    "mean_pairwise_similarity",
    "session_diversity",
    "session_image_hashes",
]
