"""HTTP transport tests via the in-process ASGI test client."""

from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from minutes_backend.http_server import create_app
from minutes_backend.protocol import BackendConfig, SummaryService


@pytest.fixture
def client() -> TestClient:
    service = SummaryService(BackendConfig(model="lead:4"))
    return TestClient(create_app(service))


class TestSummarizeEndpoint:
    def test_batch_round_trip(self, client):
        payload = {"requests": [
            {"id": "w0", "text": "a b c d e f"},
            {"id": "w1", "text": "g h"},
        ]}
        response = client.post("/v1/summarize", json=payload)
        assert response.status_code == 200
        assert response.json() == {"responses": [
            {"id": "w0", "summary": "a b c d"},
            {"id": "w1", "summary": "g h"},
        ]}

    def test_max_words_respected(self, client):
        payload = {"requests": [{"id": "w0", "text": "a b c d e f", "max_words": 2}]}
        response = client.post("/v1/summarize", json=payload)
        assert response.json()["responses"][0]["summary"] == "a b"

    def test_missing_requests_key_is_400(self, client):
        response = client.post("/v1/summarize", json={"wrong": []})
        assert response.status_code == 400

    def test_non_json_body_is_4xx(self, client):
        response = client.post("/v1/summarize", content=b"not json",
                               headers={"content-type": "application/json"})
        assert 400 <= response.status_code < 500

    def test_bad_entry_gets_error_without_aborting(self, client):
        payload = {"requests": [
            {"id": "w0", "text": "a b c"},
            {"id": "w1", "text": ""},
            {"id": "w2", "text": "d e"},
        ]}
        data = client.post("/v1/summarize", json=payload).json()
        assert data["responses"][0]["summary"] == "a b c"
        assert data["responses"][1]["id"] == "w1"
        assert "error" in data["responses"][1]
        assert data["responses"][2]["summary"] == "d e"

    def test_health_endpoint(self, client):
        response = client.get("/healthz")
        assert response.status_code == 200
        assert response.json()["model"] == "lead:4"
