"""Exception hierarchy shared across the engine."""


class StoryloomError(Exception):
    """Base class for every error raised by this package."""


class WorldInconsistencyError(StoryloomError):
    """An internal world invariant was found broken (e.g. an item with zero
    or multiple containers). Signals a bug or a corrupted world, never a
    normal gameplay outcome."""


class StructuralViolationError(StoryloomError):
    """A primitive mutation was asked to do something structurally impossible.
    The world is left untouched when this is raised."""


class UnsupportedLocaleError(StoryloomError):
    pass


class EmptyInputError(StoryloomError):
    pass


class ResponseParseError(StoryloomError):
    """The model reply contained no recognizable category line and no
    narration block."""


class BackendError(StoryloomError):
    pass


class BackendConfigError(BackendError):
    """The backend configuration cannot produce a usable backend (unknown
    kind, missing credential environment variable, ...)."""


class TransportFailure(BackendError):
    """The remote endpoint could not be reached, kept failing after the
    configured retries, or returned an unusable payload."""


class AuthFailure(BackendError):
    """The remote endpoint rejected our credentials."""


class ScriptExhaustedError(BackendError):
    """A scripted backend ran out of canned replies."""


class ScenarioError(StoryloomError):
    """A scenario document failed validation. ``violations`` lists every
    problem found, not just the first."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class UnknownScenarioError(StoryloomError):
    pass


class SessionError(StoryloomError):
    pass


class SessionCompletedError(SessionError):
    """A turn was submitted to a session whose objective is already met."""


class TurnLimitError(SessionError):
    """A turn was submitted past the session's configured turn cap."""


class MalformedLogError(StoryloomError):
    pass


class UnknownTurnError(StoryloomError):
    pass
