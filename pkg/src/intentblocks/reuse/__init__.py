from .engine import (
    EvolutionGraph,
    apply_path_variant,
    build_evolution_graph,
    chain_to_pre_explored,
    copy_block,
    copy_path_adaptive,
    copy_path_literal,
    organize_history,
    planned_clone_ids,
    recommend_directions,
    request_adaptive_paths,
    validate_chain,
)

__all__ = [
    "EvolutionGraph",
    "apply_path_variant",
    "build_evolution_graph",
    "chain_to_pre_explored",
    "copy_block",
    "copy_path_adaptive",
    "copy_path_literal",
    "organize_history",
    "planned_clone_ids",
    "recommend_directions",
    "request_adaptive_paths",
    "validate_chain",
]
