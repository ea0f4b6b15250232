"""Semantic exception hierarchy.

Every error raised deliberately by this package derives from
:class:`OtpLabError`, so callers can distinguish contract violations from
genuine bugs (which surface as ordinary Python exceptions).
"""


class OtpLabError(Exception):
    """Base class for all errors raised by otplab."""


class ConstructionError(OtpLabError):
    """A box spec, table, or function description is malformed (partial map,
    non-bit entry, broken normalization)."""


class DomainError(OtpLabError, ValueError):
    """A parameter lies outside its admissible range (probability outside
    [0,1], input index out of range, mismatched bit-string lengths)."""


class PreconditionError(OtpLabError):
    """The operation was applied outside its stated regime (e.g. a locality
    test on a signaling table, or a PR-pool simulation of a signaling box)."""


class ResourceLimitError(OtpLabError):
    """An exhaustive enumeration would exceed the desk-scale guard."""


class ProtocolError(OtpLabError):
    """A protocol run violated its sequencing contract (one-time box use,
    Alice-before-Bob temporal order)."""


class VertexRejection(OtpLabError):
    """A correlation table is not a full-output vertex.

    ``condition`` names the first violated recognition condition:
    ``"entries"`` (some entry outside {0, 1/2}), ``"parity"`` (a context
    without exactly two 1/2-entries of fixed output parity), or
    ``"marginals"`` (a single-party marginal differing from 1/2).
    """

    def __init__(self, condition: str, message: str):
        super().__init__(message)
        self.condition = condition
        self.message = message
