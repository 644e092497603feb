"""Exception types shared across the package."""


class RegtrackError(Exception):
    """Base class for errors raised by this package."""


class CorpusFormatError(RegtrackError):
    """A corpus file line could not be parsed; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class FetchError(RegtrackError):
    """A source could not be fetched (network/IO)."""


class NormalizeError(RegtrackError):
    """Raw content could not be turned into plain text."""


class NotFittedError(RegtrackError):
    """Estimator used before fit()."""


class VocabularyMismatchError(RegtrackError):
    """A persisted model was loaded against a vocabulary it was not trained on."""


class AuthError(RegtrackError):
    """Unknown or invalid credentials."""


class ScopeError(RegtrackError):
    """Requester asked for data outside their region scope."""


class StoreError(RegtrackError):
    """Invalid store operation (missing record, bad annotation, ...)."""
