#!/usr/bin/env python3
"""Scripted mock exploration: craft a chained session, reuse a path, and print
the resulting suggestions plus the process metrics.

Usage:
    python scripts/demo_session.py [--seed 7] [--data-dir ./demo-data]
"""

import argparse
import tempfile
from pathlib import Path

from intentblocks.analytics import build_linkograph, linkograph_metrics, session_diversity
from intentblocks.core import new_session
from intentblocks.embeddings import EmbeddingGateway
from intentblocks.generation import realize_results
from intentblocks.pipeline import craft_suggestions, generate_properties
from intentblocks.providers import ImageStore, MockProvider, ProviderGateway
from intentblocks.reuse import copy_path_literal


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--data-dir", default=None)
    parser.add_argument(
        "--topic", default="A mascot for a summer night urban film festival"
    )
    args = parser.parse_args()

    data_dir = Path(args.data_dir) if args.data_dir else Path(tempfile.mkdtemp())
    store = ImageStore(data_dir / "images")
    providers = ProviderGateway(MockProvider(), store)
    embeddings = EmbeddingGateway(image_store=store)

    properties = generate_properties(providers, args.topic, seed=args.seed)
    print(f"topic: {args.topic}")
    print("properties:")
    for p in properties:
        print(f"  - {p.name} ({p.kind})")

    session = new_session(args.topic, properties, seed=args.seed)
    text_prop = next(p.name for p in properties if p.kind == "text")
    image_prop = next(p.name for p in properties if p.kind == "image")

    root = session.add_block(text_prop, "Night owl", 4)
    craft_suggestions(session, root, providers, embeddings)
    print(f"\nblock 1: {text_prop} / 'Night owl' / typicality 4")
    for s in session.block(root).active_suggestions():
        print(f"  * {s.content.display_text()}  (sim {s.similarity_to_input:+.3f})")
    realize_results(session, root, providers)

    child = session.add_block(image_prop, "Neon", 2, parent=root)
    craft_suggestions(session, child, providers, embeddings)
    print(f"\nblock 2 (chained): {image_prop} / 'Neon' / typicality 2")
    for s in session.block(child).active_suggestions():
        print(f"  * {s.content.display_text()}")
    result = realize_results(session, child, providers)
    print(f"  -> {len(result.items)} images realized with chain history")

    new_ids = copy_path_literal(session, [root, child], None)
    for bid in new_ids:
        craft_suggestions(session, bid, providers, embeddings)
        realize_results(session, bid, providers)
    print(f"\npath copied literally -> new blocks {new_ids}")

    graph = build_linkograph(session)
    metrics = linkograph_metrics(graph)
    print("\nlinkograph metrics:")
    print(f"  nodes={metrics.n_nodes} links={metrics.n_links}")
    print(f"  avg link distance = {metrics.avg_link_distance}")
    print(f"  connected components = {metrics.connected_components}")
    print(f"  link entropy = {metrics.link_entropy:.4f} bits")
    print(f"  max image cosine distance = {session_diversity(session, embeddings):.4f}")
    print(f"\nevents logged: {len(session.events)}; images under {store.root}")


if __name__ == "__main__":
    main()
