"""Pluggable window-level summarizer backends and the batch client contract.

All backends answer a batch of id-tagged requests with id-tagged summaries;
``summarize_windows`` restores window order and enforces the id bijection.
"""

from __future__ import annotations

import json
import logging
import shlex
import subprocess
import time
from dataclasses import dataclass
from typing import Sequence

import requests as _requests

from .corpus import tokenize
from .windowing import Window

logger = logging.getLogger(__name__)

DEFAULT_LEAD_WORDS = 60
DEFAULT_RETRIES = 3
DEFAULT_BACKOFF = 1.0
DEFAULT_TIMEOUT = 60.0


class BackendError(RuntimeError):
    """Base class for summarizer backend problems."""


class BackendTransportError(BackendError):
    """The backend could not be reached or did not answer in time."""


class BackendProtocolError(BackendError):
    """The backend answered, but the response violates the protocol."""


class BackendFailure(BackendError):
    """The backend reported an error for one or more requests."""


@dataclass(frozen=True)
class SummaryRequest:
    """One window's worth of text to summarize, tagged with a batch-unique id."""

    id: str
    text: str
    max_words: int | None = None

    def __post_init__(self):
        if not self.text:
            raise ValueError(f"summary request {self.id!r} has empty text")

    def to_wire(self) -> dict:
        record = {"id": self.id, "text": self.text}
        if self.max_words is not None:
            record["max_words"] = self.max_words
        return record


@dataclass(frozen=True)
class Abstract:
    """A backend-produced summary for one window."""

    window_index: int
    text: str
    char_length: int
    word_length: int

    @classmethod
    def from_text(cls, window_index: int, text: str) -> "Abstract":
        return cls(window_index=window_index, text=text, char_length=len(text), word_length=len(tokenize(text)))


def stub_summarize(text: str, lead_words: int) -> str:
    """Deterministic stand-in summary: the first ``lead_words`` words of ``text``."""
    if lead_words < 1:
        raise ValueError(f"lead_words must be >= 1, got {lead_words}")
    return " ".join(text.split()[:lead_words])


@dataclass(frozen=True)
class StubBackend:
    """Deterministic lead-words backend for tests and offline runs."""

    lead_words: int = DEFAULT_LEAD_WORDS

    def __post_init__(self):
        if self.lead_words < 1:
            raise ValueError(f"lead_words must be >= 1, got {self.lead_words}")

    def describe(self) -> str:
        return f"stub(lead_words={self.lead_words})"

    def summarize(self, batch: Sequence[SummaryRequest]) -> list[tuple[str, str]]:
        out = []
        for request in batch:
            cap = self.lead_words if request.max_words is None else min(self.lead_words, request.max_words)
            out.append((request.id, stub_summarize(request.text, cap)))
        return out


def _parse_response_record(record: object) -> tuple[str, str]:
    if not isinstance(record, dict):
        raise BackendProtocolError(f"expected a response object, got {type(record).__name__}")
    if "error" in record:
        raise BackendFailure(f"backend reported an error for request {record.get('id')!r}: {record['error']}")
    rid = record.get("id")
    summary = record.get("summary")
    if not isinstance(rid, str) or not isinstance(summary, str):
        raise BackendProtocolError(f"response must carry string 'id' and 'summary' fields: {record!r}")
    return rid, summary


class HttpBackend:
    """Client for the batch HTTP summarization protocol.

    POSTs {"requests": [...]} to <base>/v1/summarize and expects
    {"responses": [{"id", "summary"}, ...]}. Transport errors and 5xx
    answers are retried with exponential backoff.
    """

    def __init__(
        self,
        url: str,
        timeout: float = DEFAULT_TIMEOUT,
        retries: int = DEFAULT_RETRIES,
        backoff: float = DEFAULT_BACKOFF,
        session: _requests.Session | None = None,
    ):
        if not url.startswith(("http://", "https://")):
            url = "http://" + url
        base = url.rstrip("/")
        self.url = base if base.endswith("/v1/summarize") else base + "/v1/summarize"
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff
        self._session = session or _requests.Session()

    def describe(self) -> str:
        return self.url

    def summarize(self, batch: Sequence[SummaryRequest]) -> list[tuple[str, str]]:
        payload = {"requests": [request.to_wire() for request in batch]}
        ids = [request.id for request in batch]
        response = self._post_with_retries(payload, ids)
        try:
            data = response.json()
        except ValueError as exc:
            raise BackendProtocolError(f"backend returned non-JSON body: {exc}") from exc
        if not isinstance(data, dict) or not isinstance(data.get("responses"), list):
            raise BackendProtocolError("backend response must be an object with a 'responses' list")
        return [_parse_response_record(record) for record in data["responses"]]

    def _post_with_retries(self, payload: dict, ids: Sequence[str]) -> _requests.Response:
        last_error = None
        for attempt in range(self.retries + 1):
            if attempt:
                time.sleep(self.backoff * 2 ** (attempt - 1))
            try:
                response = self._session.post(self.url, json=payload, timeout=self.timeout)
            except (_requests.ConnectionError, _requests.Timeout) as exc:
                last_error = f"{type(exc).__name__}: {exc}"
                logger.warning("backend POST failed (attempt %d/%d): %s", attempt + 1, self.retries + 1, last_error)
                continue
            if response.status_code >= 500:
                last_error = f"HTTP {response.status_code}"
                logger.warning("backend POST failed (attempt %d/%d): %s", attempt + 1, self.retries + 1, last_error)
                continue
            if response.status_code >= 400:
                raise BackendProtocolError(f"backend rejected the batch: HTTP {response.status_code} {response.text[:200]}")
            return response
        raise BackendTransportError(
            f"backend unreachable after {self.retries + 1} attempts ({last_error}) for requests {list(ids)}"
        )


class ExecBackend:
    """Runs a child process speaking line-delimited JSON over stdio.

    One request object per input line; one response object per output line,
    in any order; closing stdin signals the end of the batch.
    """

    def __init__(
        self,
        command: str,
        timeout: float = DEFAULT_TIMEOUT,
        retries: int = DEFAULT_RETRIES,
        backoff: float = DEFAULT_BACKOFF,
    ):
        self.command = command
        self.argv = shlex.split(command)
        if not self.argv:
            raise ValueError("exec backend needs a non-empty command")
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff

    def describe(self) -> str:
        return f"exec:{self.command}"

    def summarize(self, batch: Sequence[SummaryRequest]) -> list[tuple[str, str]]:
        stdin = "".join(json.dumps(request.to_wire()) + "\n" for request in batch)
        ids = [request.id for request in batch]
        last_error = None
        for attempt in range(self.retries + 1):
            if attempt:
                time.sleep(self.backoff * 2 ** (attempt - 1))
            try:
                return self._run_once(stdin)
            except BackendTransportError as exc:
                last_error = exc
                logger.warning("exec backend failed (attempt %d/%d): %s", attempt + 1, self.retries + 1, exc)
        raise BackendTransportError(
            f"exec backend failed after {self.retries + 1} attempts ({last_error}) for requests {ids}"
        )

    def _run_once(self, stdin: str) -> list[tuple[str, str]]:
        try:
            proc = subprocess.run(
                self.argv,
                input=stdin,
                capture_output=True,
                text=True,
                timeout=self.timeout,
            )
        except FileNotFoundError as exc:
            raise BackendTransportError(f"cannot launch backend command {self.argv[0]!r}: {exc}") from exc
        except subprocess.TimeoutExpired as exc:
            raise BackendTransportError(f"backend command timed out after {self.timeout}s") from exc
        if proc.returncode != 0:
            raise BackendTransportError(
                f"backend command exited with status {proc.returncode}: {proc.stderr.strip()[-300:]}"
            )
        pairs = []
        for line in proc.stdout.splitlines():
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise BackendProtocolError(f"backend emitted an invalid JSON line: {line[:120]!r}") from exc
            pairs.append(_parse_response_record(record))
        return pairs


def create_backend(
    spec: str,
    lead_words: int = DEFAULT_LEAD_WORDS,
    timeout: float = DEFAULT_TIMEOUT,
    retries: int = DEFAULT_RETRIES,
    backoff: float = DEFAULT_BACKOFF,
):
    """Build a backend from a CLI-style spec: stub | http:<url> | exec:<command>."""
    if spec == "stub":
        return StubBackend(lead_words=lead_words)
    if spec.startswith("exec:"):
        return ExecBackend(spec[len("exec:"):], timeout=timeout, retries=retries, backoff=backoff)
    if spec.startswith(("http://", "https://")):
        return HttpBackend(spec, timeout=timeout, retries=retries, backoff=backoff)
    if spec.startswith(("http:", "https:")):
        return HttpBackend(spec.split(":", 1)[1], timeout=timeout, retries=retries, backoff=backoff)
    raise ValueError(f"unknown backend spec {spec!r} (expected stub, http:<url>, or exec:<command>)")


def summarize_windows(windows: Sequence[Window], backend, max_words: int | None = None) -> list[Abstract]:
    """Produce one abstract per non-empty window, in window order.

    The backend may answer in any order; responses are matched back by id.
    Unknown, duplicate, or missing ids raise BackendProtocolError.
    """
    targets = [w for w in windows if w.text]
    if not targets:
        return []
    batch = [SummaryRequest(id=f"w{w.window_index}", text=w.text, max_words=max_words) for w in targets]
    responses = backend.summarize(batch)
    expected = {request.id for request in batch}
    by_id: dict[str, str] = {}
    for rid, summary in responses:
        if rid not in expected:
            raise BackendProtocolError(f"backend answered with unknown request id {rid!r}")
        if rid in by_id:
            raise BackendProtocolError(f"backend answered request id {rid!r} twice")
        by_id[rid] = summary
    missing = sorted(expected - by_id.keys())
    if missing:
        raise BackendProtocolError(f"backend left requests unanswered: {missing}")
    abstracts = []
    for w in targets:
        summary = by_id[f"w{w.window_index}"]
        if max_words is not None:
            words = len(tokenize(summary))
            if words > max_words:
                logger.warning("abstract for window %d has %d words (max_words=%d)", w.window_index, words, max_words)
        abstracts.append(Abstract.from_text(w.window_index, summary))
    return abstracts
