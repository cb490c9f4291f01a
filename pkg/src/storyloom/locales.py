"""Locale registry for prompt text.

Each locale bundles the world-update system prompt and the user-message
template for one language. Prompt text lives in packaged data files so
translations can be added without touching code.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .errors import UnsupportedLocaleError

_PROMPT_PACKAGE = "storyloom.data.prompts"

# Locale code -> (system prompt file, user template file).
_LOCALE_FILES = {
    "en": ("world_update.en.txt", "user_template.en.txt"),
    "es": ("world_update.es.txt", "user_template.es.txt"),
}


@dataclass(frozen=True)
class Locale:
    """Prompt text for one language."""

    code: str
    system_prompt: str
    user_template: str


def supported_locales() -> tuple[str, ...]:
    """Return the locale codes that ship with the package."""
    return tuple(sorted(_LOCALE_FILES))


def load_locale(code: str) -> Locale:
    """Load the prompt text for ``code``.

    Raises UnsupportedLocaleError for codes with no packaged prompts.
    """
    try:
        system_file, template_file = _LOCALE_FILES[code]
    except KeyError:
        raise UnsupportedLocaleError(
            f"unsupported locale {code!r}; available: {', '.join(supported_locales())}"
        ) from None
    root = resources.files(_PROMPT_PACKAGE)
    system_prompt = (root / system_file).read_text(encoding="utf-8")
    user_template = (root / template_file).read_text(encoding="utf-8")
    return Locale(code=code, system_prompt=system_prompt, user_template=user_template)
