"""N-best candidate lists: domain types, parsing, and the MT backend client.

The on-disk formats are the community ``id ||| hypothesis ||| features
||| score`` layout and a JSONL schema with one object per source
segment. Candidates keep their decoder order; rank 0 is the model-best
hypothesis. Near-duplicate candidate strings are kept as-is, since
downstream tie-breaking relies on original positions.
"""

from __future__ import annotations

import json
import logging
import threading
import urllib.error
import urllib.request
from dataclasses import dataclass, field

from .errors import (
    BackendUnavailableError,
    EmptyResultError,
    InvalidArgumentError,
    ParseError,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_CANDIDATES = 10


@dataclass(frozen=True)
class SourceSegment:
    id: int
    text: str
    language: str = "und"

    def __post_init__(self):
        if self.id < 0:
            raise InvalidArgumentError(f"segment id {self.id} must be non-negative")
        if not self.text or not self.text.strip():
            raise InvalidArgumentError(f"segment {self.id} has empty text")


@dataclass(frozen=True)
class Candidate:
    rank: int
    text: str
    model_score: float | None = None

    def __post_init__(self):
        if self.rank < 0:
            raise InvalidArgumentError(f"candidate rank {self.rank} must be non-negative")
        if not self.text or not self.text.strip():
            raise InvalidArgumentError(f"candidate at rank {self.rank} has empty text")


@dataclass(frozen=True)
class NBestList:
    source_id: int
    candidates: tuple[Candidate, ...]
    source_text: str = ""

    def __post_init__(self):
        object.__setattr__(self, "candidates", tuple(self.candidates))
        self.validate()

    def validate(self, max_candidates: int = DEFAULT_MAX_CANDIDATES) -> None:
        k = len(self.candidates)
        if k < 1:
            raise InvalidArgumentError(f"n-best list for segment {self.source_id} is empty")
        if k > max_candidates:
            raise InvalidArgumentError(
                f"n-best list for segment {self.source_id} has {k} candidates, "
                f"maximum is {max_candidates}"
            )
        for expected, cand in enumerate(self.candidates):
            if cand.rank != expected:
                raise InvalidArgumentError(
                    f"segment {self.source_id}: candidate ranks must be 0..{k - 1} in order, "
                    f"found rank {cand.rank} at position {expected}"
                )
        scores = [c.model_score for c in self.candidates]
        if all(s is not None for s in scores):
            if any(a < b for a, b in zip(scores, scores[1:])):
                logger.warning(
                    "segment %d: model scores are not non-increasing with rank", self.source_id
                )

    def __len__(self) -> int:
        return len(self.candidates)

    def texts(self) -> list[str]:
        return [c.text for c in self.candidates]


def _build_nbest(source_id, entries, max_candidates, source_text=""):
    candidates = tuple(
        Candidate(rank=i, text=text, model_score=score) for i, (text, score) in enumerate(entries)
    )
    nbest = NBestList(source_id=source_id, candidates=candidates, source_text=source_text)
    nbest.validate(max_candidates=max_candidates)
    return nbest


_MOSES_SEP = "|||"


def _parse_float(raw: str) -> float:
    # U+2212 minus signs show up in copy-pasted fixtures; accept them.
    return float(raw.strip().replace("−", "-"))


def parse_moses_nbest(stream, max_candidates: int = DEFAULT_MAX_CANDIDATES) -> dict[int, NBestList]:
    """Parse ``id ||| hypothesis ||| features ||| score`` lines.

    Lines are grouped by id; ranks follow order of appearance. The
    feature column is treated as an opaque string. Returns a map
    source_id -> NBestList.
    """
    grouped: dict[int, list[tuple[str, float | None]]] = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        fields = [f.strip() for f in line.split(_MOSES_SEP)]
        if len(fields) != 4:
            raise ParseError(
                f"expected 4 '|||'-separated fields, found {len(fields)}", line=lineno
            )
        id_field, hypothesis, _features, score_field = fields
        try:
            source_id = int(id_field)
        except ValueError:
            raise ParseError(f"bad segment id {id_field!r}", line=lineno) from None
        if source_id < 0:
            raise ParseError(f"negative segment id {source_id}", line=lineno)
        if not hypothesis:
            raise ParseError("empty hypothesis", line=lineno)
        if score_field:
            try:
                score = _parse_float(score_field)
            except ValueError:
                raise ParseError(f"bad score {score_field!r}", line=lineno) from None
        else:
            score = None
        entries = grouped.setdefault(source_id, [])
        if len(entries) >= max_candidates:
            raise ParseError(
                f"segment {source_id} exceeds maximum of {max_candidates} candidates",
                line=lineno,
            )
        entries.append((hypothesis, score))
    return {sid: _build_nbest(sid, entries, max_candidates) for sid, entries in grouped.items()}


def parse_jsonl_nbest(stream, max_candidates: int = DEFAULT_MAX_CANDIDATES) -> dict[int, NBestList]:
    """Parse JSONL n-best lists.

    One object per line: ``{"id": int, "source": str, "candidates":
    [{"text": str, "score": real?}, ...]}``. Duplicate ids and missing
    fields are parse errors.
    """
    result: dict[int, NBestList] = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}", line=lineno) from None
        if not isinstance(obj, dict):
            raise ParseError("expected a JSON object", line=lineno)
        for key in ("id", "source", "candidates"):
            if key not in obj:
                raise ParseError(f"missing field {key!r}", line=lineno)
        try:
            source_id = int(obj["id"])
        except (TypeError, ValueError):
            raise ParseError(f"bad id {obj['id']!r}", line=lineno) from None
        if source_id in result:
            raise ParseError(f"duplicate id {source_id}", line=lineno)
        entries = []
        for pos, cand in enumerate(obj["candidates"]):
            if not isinstance(cand, dict) or "text" not in cand:
                raise ParseError(f"candidate {pos} missing field 'text'", line=lineno)
            score = cand.get("score")
            entries.append((cand["text"], None if score is None else float(score)))
        if not entries:
            raise ParseError(f"id {source_id} has no candidates", line=lineno)
        try:
            result[source_id] = _build_nbest(
                source_id, entries, max_candidates, source_text=str(obj["source"])
            )
        except InvalidArgumentError as exc:
            raise ParseError(str(exc), line=lineno) from None
    return result


def write_jsonl_nbest(nbest_map: dict[int, NBestList]) -> str:
    """Serialize n-best lists to JSONL; inverse of parse_jsonl_nbest."""
    lines = []
    for source_id in sorted(nbest_map):
        nbest = nbest_map[source_id]
        obj = {
            "id": nbest.source_id,
            "source": nbest.source_text,
            "candidates": [
                {"text": c.text} if c.model_score is None else {"text": c.text, "score": c.model_score}
                for c in nbest.candidates
            ],
        }
        lines.append(json.dumps(obj, ensure_ascii=False))
    return "\n".join(lines) + ("\n" if lines else "")


class MTBackendClient:
    """Client for a remote MT backend that produces n-best lists.

    Wire protocol: POST ``{"text", "source_lang", "target_lang",
    "num_candidates", "beam_size"}``, response ``{"candidates":
    [{"text": str, "score": real?}, ...]}``. Thread-safe; each request
    is independent.
    """

    def __init__(self, address: str, timeout: float = 30.0):
        if "://" not in address:
            address = "http://" + address
        self.address = address
        self.timeout = float(timeout)
        self._lock = threading.Lock()

    def request_candidates(
        self,
        source: SourceSegment,
        target_lang: str,
        num_candidates: int = 10,
        beam_size: int = 10,
    ) -> NBestList:
        if not (1 <= num_candidates <= beam_size):
            raise InvalidArgumentError(
                f"need 1 <= num_candidates <= beam_size, got {num_candidates} and {beam_size}"
            )
        payload = {
            "text": source.text,
            "source_lang": source.language,
            "target_lang": target_lang,
            "num_candidates": num_candidates,
            "beam_size": beam_size,
        }
        body = json.dumps(payload).encode("utf-8")
        request = urllib.request.Request(
            self.address, data=body, headers={"Content-Type": "application/json"}, method="POST"
        )
        try:
            with self._lock:
                with urllib.request.urlopen(request, timeout=self.timeout) as response:
                    raw = response.read()
        except urllib.error.HTTPError as exc:
            raise BackendUnavailableError(
                f"MT backend at {self.address} answered status {exc.code}: {exc.reason}"
            ) from None
        except (urllib.error.URLError, ConnectionError, TimeoutError) as exc:
            raise BackendUnavailableError(f"MT backend at {self.address} unreachable: {exc}") from None
        try:
            reply = json.loads(raw.decode("utf-8"))
            candidates = reply["candidates"]
        except (UnicodeDecodeError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"malformed MT backend response: {exc}", source=self.address) from None
        if not candidates:
            raise EmptyResultError(f"MT backend returned no candidates for segment {source.id}")
        entries = [
            (c["text"], None if c.get("score") is None else float(c["score"]))
            for c in candidates[:num_candidates]
        ]
        return _build_nbest(source.id, entries, max_candidates=num_candidates, source_text=source.text)
