"""Exception hierarchy. Every error carries a stable machine-readable ``code``."""

from __future__ import annotations


class FreeLinkError(ValueError):
    code = "FreeLinkError"

    def __init__(self, message: str = "", **detail):
        super().__init__(message or self.code)
        self.detail = detail

    def to_json(self) -> dict:
        return {"code": self.code, "message": str(self), **{k: str(v) for k, v in self.detail.items()}}


class MalformedToken(FreeLinkError):
    code = "MalformedToken"


class OccurrenceCountNotTwo(FreeLinkError):
    code = "OccurrenceCountNotTwo"


class EmptyInputIsZeroComponents(FreeLinkError):
    code = "EmptyInputIsZeroComponents"


class NotPure(FreeLinkError):
    code = "NotPure"


class NotMixed(FreeLinkError):
    code = "NotMixed"


class UnknownCrossing(FreeLinkError):
    code = "UnknownCrossing"


class FewerThanTwoComponents(FreeLinkError):
    code = "FewerThanTwoComponents"


class WrongComponentCount(FreeLinkError):
    code = "WrongComponentCount"


class NotAKnot(FreeLinkError):
    code = "NotAKnot"


class OddComponentLength(FreeLinkError):
    code = "OddComponentLength"


class OddMixedCount(FreeLinkError):
    code = "OddMixedCount"


class InvalidSite(FreeLinkError):
    code = "InvalidSite"


class InvalidCycle(FreeLinkError):
    code = "InvalidCycle"


class FilterUndecided(FreeLinkError):
    code = "FilterUndecided"


class PatternUndecided(FreeLinkError):
    code = "PatternUndecided"


class PatternIllFormed(FreeLinkError):
    code = "PatternIllFormed"


class SelfDualComponent(FreeLinkError):
    code = "SelfDualComponent"
