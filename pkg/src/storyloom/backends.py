"""Pluggable reply backends.

A backend turns one (system, user) prompt pair into raw reply text. The
engine never cares where the text comes from, so scripted backends for tests
and demos live behind the same interface as real HTTP services.

Credentials are read from environment variables named in the backend config,
never from the config itself, so config files stay safe to commit and log.
"""

from __future__ import annotations

import os
import re
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Union

import requests
import yaml

from .errors import (
    AuthFailure,
    BackendConfigError,
    ScriptExhaustedError,
    TransportFailure,
)

_BACKEND_PACKAGE = "storyloom.data.backends"

#: Pattern locating the player input inside a rendered user message.
_INPUT_RE = re.compile(r'player input "(.*)" on this world state:', re.DOTALL)


class Backend(ABC):
    """Anything that can answer a world-update prompt."""

    @abstractmethod
    def complete(self, system: str, user: str) -> str:
        """Return the raw reply text for one prompt pair."""


@dataclass(frozen=True)
class ScriptedReply:
    """Reply served whenever the player input contains ``contains``."""

    contains: str
    reply: str


@dataclass
class ScriptedBackend(Backend):
    """Deterministic backend fed from canned replies.

    Replies come from two places: an override list matched against the
    player input (first match wins, checked in order), and an ordered queue
    consumed one reply per call when no override matches. With both
    exhausted the backend falls back to ``fallback`` if set, otherwise it
    raises ScriptExhaustedError.
    """

    replies: list[str] = field(default_factory=list)
    overrides: list[ScriptedReply] = field(default_factory=list)
    fallback: Optional[str] = None
    seen_inputs: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._queue = list(self.replies)

    @staticmethod
    def extract_input(user: str) -> str:
        """Pull the player input back out of a rendered user message."""
        m = _INPUT_RE.search(user)
        return m.group(1) if m else user

    def complete(self, system: str, user: str) -> str:
        player_input = self.extract_input(user)
        self.seen_inputs.append(player_input)
        needle = player_input.casefold()
        for override in self.overrides:
            if override.contains.casefold() in needle:
                return override.reply
        if self._queue:
            return self._queue.pop(0)
        if self.fallback is not None:
            return self.fallback
        raise ScriptExhaustedError(
            f"no scripted reply left for input {player_input!r}"
        )


class FailingBackend(Backend):
    """Backend that always fails; exists to exercise error paths."""

    def __init__(self, message: str = "injected backend failure") -> None:
        self.message = message

    def complete(self, system: str, user: str) -> str:
        raise TransportFailure(self.message)


# -- HTTP backends -----------------------------------------------------------


@dataclass(frozen=True)
class BackendConfig:
    """Declarative description of one backend.

    ``kind`` selects the implementation: ``scripted``, ``failing``,
    ``chat-completions``, or ``gemini``. HTTP kinds need ``endpoint``,
    ``model``, and ``api_key_env`` naming the environment variable that
    holds the credential.
    """

    kind: str
    name: str = ""
    endpoint: str = ""
    model: str = ""
    api_key_env: str = ""
    temperature: float = 0.0
    timeout: float = 30.0
    max_retries: int = 2
    replies: tuple[str, ...] = ()
    overrides: tuple[ScriptedReply, ...] = ()
    fallback: Optional[str] = None


def _request_with_retries(
    send: Callable[[], "requests.Response"],
    max_retries: int,
    sleep: Optional[Callable[[float], None]] = None,
) -> "requests.Response":
    """Run ``send`` with retries on transient failures.

    Retries connection errors, timeouts, 429 and 5xx responses with a short
    linear backoff. Auth rejections never retry.
    """
    if sleep is None:
        sleep = time.sleep
    last_error: Optional[str] = None
    for attempt in range(max_retries + 1):
        if attempt:
            sleep(0.5 * attempt)
        try:
            response = send()
        except requests.RequestException as exc:
            last_error = str(exc)
            continue
        if response.status_code in (401, 403):
            raise AuthFailure(f"endpoint rejected credentials ({response.status_code})")
        if response.status_code == 429 or response.status_code >= 500:
            last_error = f"HTTP {response.status_code}"
            continue
        if response.status_code >= 400:
            raise TransportFailure(
                f"endpoint returned HTTP {response.status_code}: {response.text[:200]}"
            )
        return response
    raise TransportFailure(f"request failed after {max_retries + 1} attempts: {last_error}")


class ChatCompletionsBackend(Backend):
    """Client for chat-completions style HTTP endpoints."""

    def __init__(self, config: BackendConfig, api_key: str) -> None:
        self.config = config
        self._api_key = api_key

    def complete(self, system: str, user: str) -> str:
        cfg = self.config
        payload = {
            "model": cfg.model,
            "temperature": cfg.temperature,
            "messages": [
                {"role": "system", "content": system},
                {"role": "user", "content": user},
            ],
        }
        response = _request_with_retries(
            lambda: requests.post(
                cfg.endpoint,
                json=payload,
                headers={"Authorization": f"Bearer {self._api_key}"},
                timeout=cfg.timeout,
            ),
            cfg.max_retries,
        )
        try:
            return response.json()["choices"][0]["message"]["content"]
        except (ValueError, LookupError, TypeError) as exc:
            raise TransportFailure(f"unusable reply payload: {exc}") from exc


class GeminiBackend(Backend):
    """Client for generateContent style HTTP endpoints."""

    def __init__(self, config: BackendConfig, api_key: str) -> None:
        self.config = config
        self._api_key = api_key

    def complete(self, system: str, user: str) -> str:
        cfg = self.config
        payload = {
            "system_instruction": {"parts": [{"text": system}]},
            "contents": [{"role": "user", "parts": [{"text": user}]}],
            "generationConfig": {"temperature": cfg.temperature},
        }
        response = _request_with_retries(
            lambda: requests.post(
                cfg.endpoint,
                json=payload,
                params={"key": self._api_key},
                timeout=cfg.timeout,
            ),
            cfg.max_retries,
        )
        try:
            parts = response.json()["candidates"][0]["content"]["parts"]
            return "".join(p["text"] for p in parts)
        except (ValueError, LookupError, TypeError) as exc:
            raise TransportFailure(f"unusable reply payload: {exc}") from exc


# -- construction ------------------------------------------------------------


def _require_api_key(config: BackendConfig) -> str:
    if not config.api_key_env:
        raise BackendConfigError(
            f"backend {config.name or config.kind!r} needs 'api_key_env' naming the "
            "environment variable that holds the credential"
        )
    key = os.environ.get(config.api_key_env, "")
    if not key:
        raise BackendConfigError(
            f"environment variable {config.api_key_env!r} is not set"
        )
    return key


def build_backend(config: BackendConfig) -> Backend:
    """Construct the backend described by ``config``."""
    if config.kind == "scripted":
        return ScriptedBackend(
            replies=list(config.replies),
            overrides=list(config.overrides),
            fallback=config.fallback,
        )
    if config.kind == "failing":
        return FailingBackend()
    if config.kind in ("chat-completions", "gemini"):
        if not config.endpoint:
            raise BackendConfigError(
                f"backend {config.name or config.kind!r} needs an 'endpoint'"
            )
        key = _require_api_key(config)
        if config.kind == "chat-completions":
            return ChatCompletionsBackend(config, key)
        return GeminiBackend(config, key)
    raise BackendConfigError(f"unknown backend kind {config.kind!r}")


def backend_config_from_document(name: str, doc: dict) -> BackendConfig:
    """Build a BackendConfig from one entry of a backends YAML file."""
    if not isinstance(doc, dict):
        raise BackendConfigError(f"backend {name!r}: entry must be a mapping")
    kind = doc.get("kind")
    if not isinstance(kind, str) or not kind:
        raise BackendConfigError(f"backend {name!r}: missing 'kind'")
    overrides = []
    for i, raw in enumerate(doc.get("overrides") or []):
        if (
            not isinstance(raw, dict)
            or not isinstance(raw.get("contains"), str)
            or not isinstance(raw.get("reply"), str)
        ):
            raise BackendConfigError(
                f"backend {name!r}: overrides[{i}] needs string 'contains' and 'reply'"
            )
        overrides.append(ScriptedReply(contains=raw["contains"], reply=raw["reply"]))
    replies = doc.get("replies") or []
    if not isinstance(replies, list) or not all(isinstance(r, str) for r in replies):
        raise BackendConfigError(f"backend {name!r}: 'replies' must be a list of strings")
    fallback = doc.get("fallback")
    if fallback is not None and not isinstance(fallback, str):
        raise BackendConfigError(f"backend {name!r}: 'fallback' must be a string")
    return BackendConfig(
        kind=kind,
        name=name,
        endpoint=doc.get("endpoint", ""),
        model=doc.get("model", ""),
        api_key_env=doc.get("api_key_env", ""),
        temperature=float(doc.get("temperature", 0.0)),
        timeout=float(doc.get("timeout", 30.0)),
        max_retries=int(doc.get("max_retries", 2)),
        replies=tuple(replies),
        overrides=tuple(overrides),
        fallback=fallback,
    )


def load_backend_configs(path: Union[str, Path]) -> dict[str, BackendConfig]:
    """Load a YAML file mapping backend names to their configs."""
    doc = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    if not isinstance(doc, dict):
        raise BackendConfigError("backends file must be a YAML mapping of name -> config")
    return {
        name: backend_config_from_document(name, entry) for name, entry in doc.items()
    }


def bundled_backend_configs() -> dict[str, BackendConfig]:
    """Configs for the demo backends that ship inside the package."""
    from importlib import resources

    text = (
        resources.files(_BACKEND_PACKAGE) / "demo_backends.yaml"
    ).read_text(encoding="utf-8")
    doc = yaml.safe_load(text)
    return {
        name: backend_config_from_document(name, entry) for name, entry in doc.items()
    }
