"""Exception hierarchy.

Every error carries a stable ``code`` string so the command-line front end
can report failures as machine-readable objects.
"""

from __future__ import annotations


class SpeckerError(Exception):
    code = "SPECKER_ERROR"

    def to_dict(self) -> dict:
        return {"code": self.code, "message": str(self)}


class MixedAlgebras(SpeckerError, ValueError):
    code = "MIXED_ALGEBRAS"


class UnsupportedCapability(SpeckerError):
    code = "UNSUPPORTED_CAPABILITY"


class InconsistentBackend(SpeckerError):
    code = "INCONSISTENT_BACKEND"


class NotWeakBaerAt(SpeckerError):
    """No idempotent generates the annihilator of ``value``."""

    code = "NOT_WEAK_BAER"

    def __init__(self, value, ring=None):
        self.value = value
        self.ring = ring
        where = f" in {ring}" if ring is not None else ""
        super().__init__(f"annihilator of {value!r}{where} is not generated by an idempotent")

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["value"] = self.value
        return d


class NotIdempotent(SpeckerError, ValueError):
    code = "NOT_IDEMPOTENT"


class NotPrime(SpeckerError, ValueError):
    code = "NOT_PRIME"


class TargetMismatch(SpeckerError, ValueError):
    code = "TARGET_MISMATCH"


class RingMismatch(SpeckerError, ValueError):
    code = "RING_MISMATCH"


class NotADomain(SpeckerError):
    code = "NOT_A_DOMAIN"


class UnorderedRing(SpeckerError):
    code = "UNORDERED_RING"


class ParseError(SpeckerError, ValueError):
    """Malformed request; ``position`` is a JSON path or a line:column pair."""

    code = "PARSE_ERROR"

    def __init__(self, message: str, position: str = "$"):
        self.position = position
        super().__init__(f"{position}: {message}")
        self.detail = message

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.detail, "position": self.position}
