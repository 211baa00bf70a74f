from .craft import craft_suggestions, refine_suggestions
from .kmeans import kmeans, medoid_indices
from .pool import (
    IMAGE_POOL_SIZE,
    REPRESENTATIVE_COUNT,
    SUBGROUP_COUNT,
    TEXT_POOL_SIZE,
    Candidate,
    CandidatePool,
    Subgroup,
    partition_slices,
)
from .stages import (
    diversify_directions,
    expand_candidates,
    generate_properties,
    partition,
    score_and_partition,
    score_pool,
    select_representatives,
)

__all__ = [
    "Candidate",
    "CandidatePool",
    "IMAGE_POOL_SIZE",
    "REPRESENTATIVE_COUNT",
    "SUBGROUP_COUNT",
    "Subgroup",
    "TEXT_POOL_SIZE",
    "craft_suggestions",
    "diversify_directions",
    "expand_candidates",
    "generate_properties",
    "kmeans",
    "medoid_indices",
    "partition",
    "partition_slices",
    "refine_suggestions",
    "score_and_partition",
    "score_pool",
    "select_representatives",
]
