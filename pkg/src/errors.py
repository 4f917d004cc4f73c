"""
Error types shared by every module.

Each error carries the CLI exit code it maps to, so the front-end can turn
any failure into the documented exit status without a lookup table.
"""
from typing import Any, Optional

from src.config import (
    EXIT_GENERIC, EXIT_REJECTED, EXIT_UNSUPPORTED, EXIT_HYPOTHESES, EXIT_IDENTITY,
)


class EulerCalcError(Exception):
    exit_code = EXIT_GENERIC


class RejectedInput(EulerCalcError, ValueError):
    """Malformed input or a violated invariant."""
    exit_code = EXIT_REJECTED


class UnsupportedCombination(EulerCalcError, ValueError):
    """A carrier/map combination outside the supported enumeration."""
    exit_code = EXIT_UNSUPPORTED


class HypothesesViolated(EulerCalcError):
    """The fiber classes do not satisfy the inversion-formula hypotheses."""
    exit_code = EXIT_HYPOTHESES

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class IdentityFailure(EulerCalcError, AssertionError):
    """A verified identity does not hold; carries both sides."""
    exit_code = EXIT_IDENTITY

    def __init__(self, message: str, witness: Optional[Any] = None,
                 lhs: Optional[Any] = None, rhs: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness
        self.lhs = lhs
        self.rhs = rhs
