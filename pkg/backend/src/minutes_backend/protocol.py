"""Request validation and batch handling shared by both transports.

One bad request never aborts a batch: it yields an error entry carrying the
offending id when one could be recovered.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass

from .summarizers import build_summarizer

logger = logging.getLogger(__name__)

TRANSPORTS = ("http", "stdio")


class RequestError(Exception):
    """A single request violates the protocol; carries the id when known."""

    def __init__(self, message: str, request_id: str | None = None):
        super().__init__(message)
        self.request_id = request_id


@dataclass(frozen=True)
class BackendConfig:
    """Server settings: model, input/output caps, transport."""

    model: str = "lead:40"
    max_input_tokens: int = 1024
    max_summary_words: int = 66
    transport: str = "http"
    host: str = "127.0.0.1"
    port: int = 8080

    def __post_init__(self):
        if self.max_input_tokens < 1:
            raise ValueError(f"max_input_tokens must be >= 1, got {self.max_input_tokens}")
        if self.max_summary_words < 1:
            raise ValueError(f"max_summary_words must be >= 1, got {self.max_summary_words}")
        if self.transport not in TRANSPORTS:
            raise ValueError(f"transport must be one of {TRANSPORTS}, got {self.transport!r}")


def validate_request(record: object) -> tuple[str, str, int | None]:
    """Check one request object; returns (id, text, max_words)."""
    if not isinstance(record, dict):
        raise RequestError(f"request must be an object, got {type(record).__name__}")
    request_id = record.get("id")
    if not isinstance(request_id, str) or not request_id:
        raise RequestError("request needs a non-empty string 'id'")
    text = record.get("text")
    if not isinstance(text, str) or not text.strip():
        raise RequestError("request needs a non-empty string 'text'", request_id)
    max_words = record.get("max_words")
    if max_words is not None and (not isinstance(max_words, int) or isinstance(max_words, bool) or max_words < 1):
        raise RequestError("'max_words' must be a positive integer", request_id)
    return request_id, text, max_words


class SummaryService:
    """Applies input truncation and word caps around one summarizer.

    Model inference is serialized with a lock; the surrounding transports
    may accept requests concurrently.
    """

    def __init__(self, config: BackendConfig):
        self.config = config
        self.summarizer = build_summarizer(config.model)
        self._lock = threading.Lock()

    def summarize(self, text: str, max_words: int | None = None) -> str:
        words = text.split()
        if len(words) > self.config.max_input_tokens:
            logger.info("truncating input from %d to %d tokens", len(words), self.config.max_input_tokens)
            text = " ".join(words[: self.config.max_input_tokens])
        cap = self.config.max_summary_words if max_words is None else min(max_words, self.config.max_summary_words)
        with self._lock:
            return self.summarizer.summarize(text, cap)


def handle_request(record: object, service: SummaryService) -> dict:
    """Answer one request object with a summary or an error entry."""
    try:
        request_id, text, max_words = validate_request(record)
    except RequestError as exc:
        return {"id": exc.request_id, "error": str(exc)}
    try:
        summary = service.summarize(text, max_words)
    except Exception as exc:  # model failure must not kill the batch
        logger.exception("summarization failed for request %r", request_id)
        return {"id": request_id, "error": f"summarization failed: {exc}"}
    return {"id": request_id, "summary": summary}


def handle_batch(records: list, service: SummaryService) -> list[dict]:
    """Answer every request in a batch; bad entries become error entries."""
    return [handle_request(record, service) for record in records]
