"""Command-line entry point for the HTTP service."""

from __future__ import annotations

import argparse
import logging

from ..config import EngineConfig, ServiceConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intentblocks-serve", description="Run the exploration API service"
    )
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--data-dir", default="./data")
    parser.add_argument("--provider-mode", choices=["mock", "live"], default="mock")
    parser.add_argument("--image-mode", choices=["full", "economy"], default="economy")
    parser.add_argument("--seed", type=int, default=None,
                        help="default seed for sessions created without one")
    parser.add_argument("--word-vectors", default=None,
                        help="path to a word-vector table file")
    parser.add_argument("--parallelism", type=int, default=4)
    parser.add_argument("--host", default="127.0.0.1")
    return parser


def config_from_args(args: argparse.Namespace) -> ServiceConfig:
    engine = EngineConfig(
        provider_mode=args.provider_mode,
        image_mode=args.image_mode,
        bounded_parallelism=args.parallelism,
        word_vector_path=args.word_vectors,
    )
    return ServiceConfig(
        port=args.port, data_dir=args.data_dir, seed=args.seed, engine=engine
    )


def main(argv: list[str] | None = None) -> None:
    import uvicorn

    from .app import create_app

    logging.basicConfig(level=logging.INFO)
    args = build_parser().parse_args(argv)
    config = config_from_args(args)
    app = create_app(config)
    uvicorn.run(app, host=args.host, port=config.port, log_level="info")


if __name__ == "__main__":
    main()
