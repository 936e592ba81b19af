"""Exception types and the verdict record shared by every checker."""

from dataclasses import dataclass, field


class SSEError(Exception):
    """Base class for all ssekit errors."""


class MalformedInput(SSEError, ValueError):
    pass


class IntegerOverflow(SSEError, OverflowError):
    """An exact result left the signed 64-bit range outside bigint mode."""


class DimensionMismatch(SSEError, ValueError):
    pass


class ZeroRowOrColumn(SSEError, ValueError):
    """The matrix has a vertex without an outgoing or incoming edge."""


class InvalidPartition(SSEError, ValueError):
    pass


class NotAmalgamable(SSEError, ValueError):
    pass


class EmptyChain(SSEError, ValueError):
    pass


class SearchSpaceTooLarge(SSEError):
    """Raised instead of silently truncating an exhaustive search."""


class ExplosionGuard(SSEError):
    """Word enumeration would exceed the configured cap."""


class NotWellDefined(SSEError, ValueError):
    """An integer matrix does not descend to the requested cokernels."""


class BranchOutOfRange(SSEError, ValueError):
    pass


class SideMismatch(SSEError, ValueError):
    pass


class UnpairedPath(SSEError, AssertionError):
    pass


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification.

    ``locus`` names where a refutation happened (for example ``"step 2 (a)"``
    or ``"entry (1,2) of CD"``); it is ``None`` for verified results.
    """

    ok: bool
    detail: str = ""
    locus: str | None = None
    warnings: tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self):
        return self.ok

    @classmethod
    def verified(cls, detail="", warnings=()):
        return cls(True, detail, None, tuple(warnings))

    @classmethod
    def refuted(cls, locus, detail="", warnings=()):
        return cls(False, detail, locus, tuple(warnings))

    def __str__(self):
        if self.ok:
            return "VERIFIED" + (f" {self.detail}" if self.detail else "")
        return f"REFUTED {self.locus}" + (f": {self.detail}" if self.detail else "")
