"""The scoring service: remote scorer wire protocol over HTTP.

POST /score   {"texts": [str, ...], "language": str}
              -> {"scores": [...], "probabilities": [[...], ...],
                  "class_values": [...]}
GET  /health  -> {"status": "ok", "model": <identity>, ...}

Malformed requests get a protocol error response with a message (HTTP
422 from request validation, 400 for semantic problems). Responses per
connection arrive in request order; batching happens inside the model.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict

from .inference import SentimentModel


class ScoreRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    texts: list[str]
    language: str


def create_app(model: SentimentModel) -> FastAPI:
    app = FastAPI(title="sentiment scorer service")

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "model": model.identity,
            "class_labels": model.class_labels,
            "class_values": model.class_values,
            "dev_accuracy": model.meta.get("dev_accuracy"),
        }

    @app.post("/score")
    def score(request: ScoreRequest):
        if any(not isinstance(t, str) for t in request.texts):
            raise HTTPException(status_code=400, detail="texts must be strings")
        probabilities = model.probabilities(request.texts)
        return {
            "scores": model.scores(probabilities),
            "probabilities": probabilities,
            "class_values": model.class_values,
        }

    return app
