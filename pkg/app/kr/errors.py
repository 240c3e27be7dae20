"""Exception hierarchy for the KR toolkit."""
from typing import Optional


class KRError(Exception):
    """Base class for every error raised by the toolkit."""


class ParseError(KRError, ValueError):
    """Malformed type string, tensor spec or weight."""


class InvalidTypeError(KRError, ValueError):
    """Unknown family or rank below the family minimum."""


class UnsupportedTypeError(KRError):
    """The requested operation is not available for this type."""


class NotAnEmbeddingError(KRError):
    """Requested virtualization of a simply-laced untwisted type."""


class NotVirtualError(KRError):
    """An element failed the virtual membership test."""


class CrystalModelError(KRError):
    """Crystal operators produced an inconsistent structure."""


class ConjectureViolation(KRError):
    """A computed invariant disagreed with its expected value."""

    def __init__(self, message: str, detail: Optional[dict] = None):
        super().__init__(message)
        self.detail = detail or {}


class GraphCapExceeded(KRError):
    """Graph generation stopped after reaching the node cap."""

    def __init__(self, cap: int, count: int):
        super().__init__(f"crystal graph exceeded cap of {cap} nodes (reached {count})")
        self.cap = cap
        self.count = count
