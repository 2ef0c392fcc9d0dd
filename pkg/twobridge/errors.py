"""
Exceptions raised by the twobridge package.

DomainError covers bad input to a single operation; InvariantViolation means
one of the structural checks failed and must never be swallowed by library
code.
"""

from typing import Dict, Optional


class TwoBridgeError(Exception):
    pass


class DomainError(TwoBridgeError, ValueError):
    pass


class NonPreferredDiagramError(DomainError):
    pass


class InvariantViolation(TwoBridgeError, RuntimeError):
    pass


class FormulaDisagreement(InvariantViolation):
    def __init__(self, what: str, values: Optional[Dict[str, object]] = None):
        self.values = dict(values or {})
        detail = ", ".join(f"{k}={v}" for k, v in self.values.items())
        super().__init__(f"{what} disagree: {detail}" if detail else f"{what} disagree")


class ReportIOError(TwoBridgeError, RuntimeError):
    pass


class UsageError(TwoBridgeError):
    pass
