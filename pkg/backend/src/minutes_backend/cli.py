"""Entry point: serve the summarization protocol over HTTP or stdio."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from .protocol import TRANSPORTS, BackendConfig, SummaryService
from .stdio_server import serve_stdio


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minutes-backend",
        description="Serve the batch summarization wire protocol around a pretrained "
                    "model (or the deterministic lead:<words> summarizer).",
    )
    parser.add_argument("--model", default="lead:40",
                        help="model identifier, e.g. facebook/bart-large-cnn, or lead:<words> (default lead:40)")
    parser.add_argument("--max-input-tokens", type=int, default=1024,
                        help="inputs are truncated to this many whitespace tokens (default 1024)")
    parser.add_argument("--max-summary-words", type=int, default=66,
                        help="hard cap on summary length in words (default 66)")
    parser.add_argument("--transport", choices=TRANSPORTS, default="http")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8080)
    parser.add_argument("--verbose", action="store_true", help="log at INFO level")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = BackendConfig(
            model=args.model,
            max_input_tokens=args.max_input_tokens,
            max_summary_words=args.max_summary_words,
            transport=args.transport,
            host=args.host,
            port=args.port,
        )
        service = SummaryService(config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if config.transport == "stdio":
        return serve_stdio(service)

    import uvicorn

    from .http_server import create_app

    uvicorn.run(create_app(service), host=config.host, port=config.port, log_level="info")
    return 0


if __name__ == "__main__":
    sys.exit(main())
