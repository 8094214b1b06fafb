"""Pipeline configuration: JSON file, environment, and flag layering.

Precedence, highest first: command-line flags, environment variables
(addresses only), config file, built-in defaults. Unknown keys anywhere
in the file are rejected outright so typos cannot silently fall back to
defaults.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .rerank import RerankConfig
from .scoring import ScorerSpec

ENV_MT_BACKEND = "SENTISELECT_MT_BACKEND_ADDRESS"
ENV_SOURCE_SCORER = "SENTISELECT_SOURCE_SCORER_ADDRESS"
ENV_TARGET_SCORER = "SENTISELECT_TARGET_SCORER_ADDRESS"

_TOP_LEVEL_KEYS = {
    "source_scorer",
    "target_scorer",
    "num_candidates",
    "beam_size",
    "tie_epsilon",
    "mt_backend_address",
    "request_timeout",
}
_SCORER_KEYS = {"backend", "language", "parameters"}


@dataclass
class PipelineConfig:
    source_scorer: ScorerSpec | None = None
    target_scorer: ScorerSpec | None = None
    num_candidates: int = 10
    beam_size: int = 10
    tie_epsilon: float = 1e-12
    mt_backend_address: str | None = None
    request_timeout: float = 30.0

    def rerank_config(self) -> RerankConfig:
        return RerankConfig(
            source_scorer=self.source_scorer,
            target_scorer=self.target_scorer,
            num_candidates=self.num_candidates,
            beam_size=self.beam_size,
            tie_epsilon=self.tie_epsilon,
        )


def _parse_scorer(obj, where: str) -> ScorerSpec:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where} must be an object")
    unknown = set(obj) - _SCORER_KEYS
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)} in {where}")
    for key in ("backend", "language"):
        if key not in obj:
            raise ConfigError(f"{where} is missing required key {key!r}")
    return ScorerSpec(
        backend=obj["backend"],
        language=obj["language"],
        parameters=dict(obj.get("parameters", {})),
    )


def load_pipeline_config(path: str | Path | None = None, env: dict | None = None) -> PipelineConfig:
    """Load a config file (optional) and apply environment overrides."""
    env = os.environ if env is None else env
    config = PipelineConfig()
    if path is not None:
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path}: invalid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError(f"config file {path}: expected a JSON object")
        unknown = set(raw) - _TOP_LEVEL_KEYS
        if unknown:
            raise ConfigError(f"config file {path}: unknown keys {sorted(unknown)}")
        if "source_scorer" in raw:
            config.source_scorer = _parse_scorer(raw["source_scorer"], "source_scorer")
        if "target_scorer" in raw:
            config.target_scorer = _parse_scorer(raw["target_scorer"], "target_scorer")
        for key in ("num_candidates", "beam_size"):
            if key in raw:
                setattr(config, key, int(raw[key]))
        for key in ("tie_epsilon", "request_timeout"):
            if key in raw:
                setattr(config, key, float(raw[key]))
        if "mt_backend_address" in raw and raw["mt_backend_address"] is not None:
            config.mt_backend_address = str(raw["mt_backend_address"])

    # Environment overrides exist for addresses only.
    if env.get(ENV_MT_BACKEND):
        config.mt_backend_address = env[ENV_MT_BACKEND]
    if env.get(ENV_SOURCE_SCORER) and config.source_scorer is not None:
        config.source_scorer = _override_address(config.source_scorer, env[ENV_SOURCE_SCORER])
    if env.get(ENV_TARGET_SCORER) and config.target_scorer is not None:
        config.target_scorer = _override_address(config.target_scorer, env[ENV_TARGET_SCORER])
    return config


def _override_address(spec: ScorerSpec, address: str) -> ScorerSpec:
    if spec.backend != "remote":
        return spec
    parameters = dict(spec.parameters)
    parameters["address"] = address
    return ScorerSpec(backend=spec.backend, language=spec.language, parameters=parameters)
