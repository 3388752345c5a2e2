"""Tests for backends, the batch client contract, and the stdio/http transports."""

from __future__ import annotations

import json
import sys

import pytest
import requests

from conftest import transcript_from_counts

from swminutes.summarizer import (
    Abstract,
    BackendFailure,
    BackendProtocolError,
    BackendTransportError,
    ExecBackend,
    HttpBackend,
    StubBackend,
    SummaryRequest,
    create_backend,
    stub_summarize,
    summarize_windows,
)
from swminutes.windowing import WindowConfig, build_windows


class TestStubSummarize:
    def test_takes_lead_words(self):
        assert stub_summarize("a b c d", 2) == "a b"

    def test_short_input_returned_whole(self):
        assert stub_summarize("a b", 60) == "a b"

    def test_lead_words_must_be_positive(self):
        with pytest.raises(ValueError):
            stub_summarize("a b", 0)

    def test_default_matches_reported_abstract_range(self):
        # 60 words at ~5 chars each lands inside the observed 56-66 word band.
        assert 56 <= StubBackend().lead_words <= 66


class TestSummarizeWindows:
    def test_one_abstract_per_window_with_stub(self):
        t = transcript_from_counts([70, 70, 70])
        windows = build_windows(t, WindowConfig(window=70, stride=70))
        abstracts = summarize_windows(windows, StubBackend(lead_words=60))
        assert len(abstracts) == 3
        for window, abstract in zip(windows, abstracts):
            expected = " ".join(window.text.split()[:60])
            assert abstract.window_index == window.window_index
            assert abstract.text == expected
            assert abstract.word_length == min(60, window.token_count)
            assert abstract.char_length == len(expected)

    def test_max_words_caps_stub_output(self):
        t = transcript_from_counts([30])
        windows = build_windows(t, WindowConfig(window=30, stride=30))
        (abstract,) = summarize_windows(windows, StubBackend(lead_words=60), max_words=5)
        assert abstract.word_length == 5

    def test_out_of_order_responses_restored_to_window_order(self):
        class ReversingBackend:
            def describe(self):
                return "reversing"

            def summarize(self, batch):
                return [(r.id, r.text.split()[0]) for r in reversed(batch)]

        t = transcript_from_counts([10, 10, 10])
        windows = build_windows(t, WindowConfig(window=10, stride=10))
        abstracts = summarize_windows(windows, ReversingBackend())
        assert [a.window_index for a in abstracts] == [0, 1, 2]
        assert [a.text for a in abstracts] == [w.text.split()[0] for w in windows]

    def test_unknown_response_id_rejected(self):
        class RogueBackend:
            def summarize(self, batch):
                return [("nope", "x")] + [(r.id, "y") for r in batch]

        t = transcript_from_counts([5])
        windows = build_windows(t, WindowConfig(window=5, stride=5))
        with pytest.raises(BackendProtocolError, match="unknown"):
            summarize_windows(windows, RogueBackend())

    def test_duplicate_response_id_rejected(self):
        class StutteringBackend:
            def summarize(self, batch):
                return [(r.id, "x") for r in batch] * 2

        t = transcript_from_counts([5])
        windows = build_windows(t, WindowConfig(window=5, stride=5))
        with pytest.raises(BackendProtocolError, match="twice"):
            summarize_windows(windows, StutteringBackend())

    def test_missing_response_id_rejected(self):
        class ForgetfulBackend:
            def summarize(self, batch):
                return [(r.id, "x") for r in batch[1:]]

        t = transcript_from_counts([5, 5])
        windows = build_windows(t, WindowConfig(window=5, stride=5))
        with pytest.raises(BackendProtocolError, match="unanswered"):
            summarize_windows(windows, ForgetfulBackend())

    def test_windows_without_tokens_are_skipped(self):
        # counts [5, 0] with W=8, S=4: window k=1 holds only the zero-token
        # utterance, so it gets no abstract.
        t = transcript_from_counts([5, 0])
        windows = build_windows(t, WindowConfig(window=8, stride=4))
        assert [w.window_index for w in windows] == [0, 1]
        abstracts = summarize_windows(windows, StubBackend())
        assert [a.window_index for a in abstracts] == [0]

    def test_empty_request_text_rejected(self):
        with pytest.raises(ValueError):
            SummaryRequest(id="w0", text="")


class FakeResponse:
    def __init__(self, status_code, payload=None, text=""):
        self.status_code = status_code
        self._payload = payload
        self.text = text

    def json(self):
        if self._payload is None:
            raise ValueError("no JSON")
        return self._payload


class FakeSession:
    """Scripted stand-in for requests.Session."""

    def __init__(self, outcomes):
        self.outcomes = list(outcomes)
        self.calls = []

    def post(self, url, json=None, timeout=None):
        self.calls.append(json)
        outcome = self.outcomes.pop(0)
        if isinstance(outcome, Exception):
            raise outcome
        return outcome


def _requests_batch(n):
    return [SummaryRequest(id=f"w{i}", text=f"text {i}") for i in range(n)]


class TestHttpBackend:
    def test_appends_protocol_path(self):
        backend = HttpBackend("http://host:9000")
        assert backend.url == "http://host:9000/v1/summarize"
        assert HttpBackend("host:9000").url == "http://host:9000/v1/summarize"

    def test_round_trip(self):
        payload = {"responses": [{"id": "w1", "summary": "s1"}, {"id": "w0", "summary": "s0"}]}
        session = FakeSession([FakeResponse(200, payload)])
        backend = HttpBackend("http://h", session=session)
        assert backend.summarize(_requests_batch(2)) == [("w1", "s1"), ("w0", "s0")]
        assert session.calls[0] == {"requests": [{"id": "w0", "text": "text 0"}, {"id": "w1", "text": "text 1"}]}

    def test_retries_on_500_then_succeeds(self):
        payload = {"responses": [{"id": "w0", "summary": "s"}]}
        session = FakeSession([FakeResponse(500), FakeResponse(200, payload)])
        backend = HttpBackend("http://h", session=session, retries=2, backoff=0.001)
        assert backend.summarize(_requests_batch(1)) == [("w0", "s")]

    def test_transport_error_after_exhausted_retries(self):
        session = FakeSession([requests.ConnectionError("refused")] * 3)
        backend = HttpBackend("http://h", session=session, retries=2, backoff=0.001)
        with pytest.raises(BackendTransportError, match="w0"):
            backend.summarize(_requests_batch(1))

    def test_4xx_is_protocol_error_without_retry(self):
        session = FakeSession([FakeResponse(400, text="bad request")])
        backend = HttpBackend("http://h", session=session, retries=3, backoff=0.001)
        with pytest.raises(BackendProtocolError):
            backend.summarize(_requests_batch(1))
        assert len(session.calls) == 1

    def test_per_request_error_entry_raises_backend_failure(self):
        payload = {"responses": [{"id": "w0", "error": "model exploded"}]}
        session = FakeSession([FakeResponse(200, payload)])
        backend = HttpBackend("http://h", session=session)
        with pytest.raises(BackendFailure, match="w0"):
            backend.summarize(_requests_batch(1))

    def test_malformed_body_is_protocol_error(self):
        session = FakeSession([FakeResponse(200, {"not_responses": []})])
        backend = HttpBackend("http://h", session=session)
        with pytest.raises(BackendProtocolError):
            backend.summarize(_requests_batch(1))


ECHO_WORKER = (
    "import sys, json\n"
    "lines = [json.loads(l) for l in sys.stdin if l.strip()]\n"
    "for r in reversed(lines):\n"
    "    print(json.dumps({'id': r['id'], 'summary': r['text'].split()[0]}))\n"
)


class TestExecBackend:
    def test_round_trip_order_free(self):
        backend = ExecBackend(f'{sys.executable} -c "{ECHO_WORKER}"', retries=0)
        pairs = backend.summarize(_requests_batch(3))
        assert sorted(pairs) == [("w0", "text"), ("w1", "text"), ("w2", "text")]

    def test_nonzero_exit_is_transport_error(self):
        backend = ExecBackend(f'{sys.executable} -c "import sys; sys.exit(9)"', retries=1, backoff=0.001)
        with pytest.raises(BackendTransportError, match="status 9"):
            backend.summarize(_requests_batch(1))

    def test_missing_command_is_transport_error(self):
        backend = ExecBackend("definitely-not-a-real-binary-xyz", retries=0)
        with pytest.raises(BackendTransportError):
            backend.summarize(_requests_batch(1))

    def test_invalid_json_line_is_protocol_error(self):
        backend = ExecBackend(f"{sys.executable} -c \"print('not json')\"", retries=0)
        with pytest.raises(BackendProtocolError):
            backend.summarize(_requests_batch(1))

    def test_error_line_raises_backend_failure(self):
        script = "import sys, json; print(json.dumps({'id': 'w0', 'error': 'boom'}))"
        backend = ExecBackend(f'{sys.executable} -c "{script}"', retries=0)
        with pytest.raises(BackendFailure, match="boom"):
            backend.summarize(_requests_batch(1))


class TestCreateBackend:
    def test_stub(self):
        backend = create_backend("stub", lead_words=13)
        assert isinstance(backend, StubBackend)
        assert backend.lead_words == 13

    def test_http_url(self):
        backend = create_backend("http://localhost:8123")
        assert isinstance(backend, HttpBackend)
        assert backend.url == "http://localhost:8123/v1/summarize"

    def test_http_prefix_form(self):
        backend = create_backend("http:localhost:8123")
        assert isinstance(backend, HttpBackend)
        assert backend.url == "http://localhost:8123/v1/summarize"

    def test_exec(self):
        backend = create_backend("exec:worker --flag")
        assert isinstance(backend, ExecBackend)
        assert backend.argv == ["worker", "--flag"]

    def test_unknown_spec_rejected(self):
        with pytest.raises(ValueError):
            create_backend("carrier-pigeon")


class TestAbstract:
    def test_lengths_derived_from_text(self):
        abstract = Abstract.from_text(3, "One, two; three!")
        assert abstract.char_length == len("One, two; three!")
        assert abstract.word_length == 3
        assert abstract.window_index == 3
