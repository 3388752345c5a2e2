"""HTTP transport: POST /v1/summarize with an id-tagged request batch."""

from __future__ import annotations

from fastapi import Body, FastAPI
from fastapi.responses import JSONResponse

from .protocol import SummaryService, handle_batch


def create_app(service: SummaryService) -> FastAPI:
    app = FastAPI(title="minutes-backend", version="0.1.0")

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "model": service.summarizer.name}

    @app.post("/v1/summarize")
    def summarize(payload: dict = Body(...)):
        requests = payload.get("requests")
        if not isinstance(requests, list):
            return JSONResponse({"error": "body must be an object with a 'requests' list"}, status_code=400)
        return {"responses": handle_batch(requests, service)}

    return app
