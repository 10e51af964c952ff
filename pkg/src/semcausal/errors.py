"""Domain errors with stable machine-readable codes.

The CLI and the HTTP service surface the same ``code`` strings, so tests
and clients can match on them regardless of transport.
"""

from __future__ import annotations


class DomainError(Exception):
    """Base class for all recoverable domain errors."""

    code = "DOMAIN_ERROR"
    http_status = 400

    def payload(self) -> dict:
        return {"code": self.code, "message": str(self)}


class ParseError(DomainError):
    code = "PARSE_ERROR"

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class StoreLoadError(DomainError):
    code = "STORE_LOAD_ERROR"


class EmptyContent(DomainError):
    code = "EMPTY_CONTENT"


class UnknownUnitClass(DomainError):
    code = "UNKNOWN_UNIT_CLASS"


class UnknownUnit(DomainError):
    code = "UNKNOWN_UNIT"
    http_status = 404


class DanglingMember(DomainError):
    code = "DANGLING_MEMBER"


class EmptyMembers(DomainError):
    code = "EMPTY_MEMBERS"


class CyclicComposition(DomainError):
    code = "CYCLIC_COMPOSITION"


class UnboundHole(DomainError):
    code = "UNBOUND_HOLE"


class MixedQuantifiers(DomainError):
    code = "MIXED_QUANTIFIERS"


class UnclassedInstance(DomainError):
    code = "UNCLASSED_INSTANCE"


class ShapeMismatch(DomainError):
    code = "SHAPE_MISMATCH"


class SatisfactionFails(DomainError):
    code = "SATISFACTION_FAILS"


class NotComposable(DomainError):
    code = "NOT_COMPOSABLE"


class UnknownVariable(DomainError):
    code = "UNKNOWN_VARIABLE"
    http_status = 404


class OverlappingSets(DomainError):
    code = "OVERLAPPING_SETS"


class CyclicGraph(DomainError):
    code = "CYCLIC_GRAPH"


class DomainTooLarge(DomainError):
    code = "DOMAIN_TOO_LARGE"


class ZeroProbabilityEvidence(DomainError):
    code = "ZERO_PROBABILITY_EVIDENCE"


class NotDeterministicForm(DomainError):
    code = "NOT_DETERMINISTIC_FORM"


class InvalidAdjustmentSet(DomainError):
    code = "INVALID_ADJUSTMENT_SET"


class InvalidMediatorSet(DomainError):
    code = "INVALID_MEDIATOR_SET"


class NotAChain(DomainError):
    code = "NOT_A_CHAIN"


class NonNumericOutcome(DomainError):
    code = "NON_NUMERIC_OUTCOME"


class MalformedHead(DomainError):
    code = "MALFORMED_HEAD"


class AddressInUse(DomainError):
    code = "ADDRESS_IN_USE"
