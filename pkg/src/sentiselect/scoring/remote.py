"""Client for the remote scorer wire protocol.

Request:  POST JSON ``{"texts": [...], "language": "en"}``
Response: JSON ``{"scores": [...], "probabilities": [[...], ...],
"class_values": [...]}``

Scores are recomputed locally from the returned probabilities and class
values, so the client's output always satisfies the expected-class-value
identity regardless of what the service put in ``scores``. The wire
tolerates probability rows that sum to 1 within 1e-6 (services compute
in 32-bit floats); rows inside that tolerance are renormalized to sum
exactly, anything worse is a protocol violation.
"""

from __future__ import annotations

import json
import math
import threading
import urllib.error
import urllib.request

from ..errors import BackendUnavailableError, ParseError
from .core import ClassDistribution, SentimentScore, expected_class_value

_WIRE_PROBABILITY_TOL = 1e-6


def _class_labels_for(values: list[float]) -> tuple[str, ...]:
    if values == [0.0, 1.0]:
        return ("negative", "positive")
    return tuple(f"class_{i}" for i in range(len(values)))


class RemoteScorer:
    """Thread-safe facade over a remote scoring service.

    Requests are serialized through an internal lock; one client object
    can be shared freely across threads.
    """

    def __init__(self, address: str, language: str, timeout: float = 10.0):
        if "://" not in address:
            address = "http://" + address
        self.address = address
        self.language = language
        self.timeout = float(timeout)
        self.scorer_id = f"remote:{address}"
        self._lock = threading.Lock()

    def _post(self, payload: dict) -> dict:
        body = json.dumps(payload).encode("utf-8")
        request = urllib.request.Request(
            self.address, data=body, headers={"Content-Type": "application/json"}, method="POST"
        )
        try:
            with self._lock:
                with urllib.request.urlopen(request, timeout=self.timeout) as response:
                    if not (200 <= response.status < 300):
                        raise BackendUnavailableError(
                            f"scorer at {self.address} answered status {response.status}"
                        )
                    raw = response.read()
        except urllib.error.HTTPError as exc:
            raise BackendUnavailableError(
                f"scorer at {self.address} answered status {exc.code}: {exc.reason}"
            ) from None
        except (urllib.error.URLError, ConnectionError, TimeoutError) as exc:
            raise BackendUnavailableError(f"scorer at {self.address} unreachable: {exc}") from None
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ParseError(f"undecodable scorer response: {exc}", source=self.address) from None

    def distributions(self, texts: list[str]) -> list[ClassDistribution]:
        if not texts:
            return []
        reply = self._post({"texts": list(texts), "language": self.language})
        try:
            probabilities = reply["probabilities"]
            class_values = [float(v) for v in reply["class_values"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed scorer response: {exc}", source=self.address) from None
        if len(probabilities) != len(texts):
            raise ParseError(
                f"scorer returned {len(probabilities)} distributions for {len(texts)} texts",
                source=self.address,
            )
        labels = _class_labels_for(class_values)
        distributions = []
        for index, row in enumerate(probabilities):
            values = [float(p) for p in row]
            total = math.fsum(values)
            if abs(total - 1.0) > _WIRE_PROBABILITY_TOL:
                raise ParseError(
                    f"probabilities for text {index} sum to {total!r}", source=self.address
                )
            distributions.append(ClassDistribution(
                probabilities=tuple(p / total for p in values),
                class_values=tuple(class_values),
                class_labels=labels,
            ))
        return distributions

    def distribution(self, text: str) -> ClassDistribution:
        return self.distributions([text])[0]

    def score(self, text: str) -> SentimentScore:
        return expected_class_value(self.distribution(text), scorer_id=self.scorer_id)

    def score_batch(self, texts: list[str]) -> list[SentimentScore]:
        return [
            expected_class_value(dist, scorer_id=self.scorer_id)
            for dist in self.distributions(texts)
        ]
