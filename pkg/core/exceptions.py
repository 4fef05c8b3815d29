"""
Exception hierarchy shared by every app.

Library code raises these; only the command layer (api/cli.py) turns them
into exit codes. The three families map onto the documented exit codes:
input problems (1), internal bugs (2) and exhausted budgets (3).
"""
from typing import Any, Dict, Optional
import logging

from core.sentry_utils import capture_error, set_context

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUG = 2
EXIT_INCONCLUSIVE = 3


class QfsError(Exception):
    """Base class for all errors raised by the engine"""

    exit_code: int = EXIT_BUG
    error_code: str = "QFS_ERROR"

    def __init__(self, detail: str = "", context: Optional[Dict[str, Any]] = None):
        self.detail = detail or self.__class__.__name__
        self.context = context or {}
        super().__init__(self.detail)

    def to_dict(self) -> Dict[str, Any]:
        return {"error_code": self.error_code, "detail": self.detail, **self.context}


# Input errors (exit 1)

class InputError(QfsError):
    exit_code = EXIT_INPUT
    error_code = "INPUT_ERROR"


class ExpressionSyntaxError(InputError):
    """Malformed polynomial expression; `position` is the 0-based column"""

    error_code = "SYNTAX_ERROR"

    def __init__(self, detail: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{detail} at position {position}", {"position": position})


class UnknownIdentifierError(InputError):
    error_code = "UNKNOWN_IDENTIFIER"

    def __init__(self, name: str, position: int):
        self.name = name
        self.position = position
        super().__init__(f"unknown identifier '{name}' at position {position}", {"position": position})


class InvalidExponentError(InputError):
    error_code = "INVALID_EXPONENT"


class ConfigError(InputError):
    error_code = "CONFIG_ERROR"


class ContextMismatchError(InputError):
    error_code = "CONTEXT_MISMATCH"


class PrecisionError(InputError):
    error_code = "PRECISION_ERROR"


class ExponentOverflowError(InputError):
    error_code = "EXPONENT_OVERFLOW"


class InhomogeneousError(InputError):
    error_code = "INHOMOGENEOUS"


class LimitExceededError(InputError):
    error_code = "LIMIT_EXCEEDED"


# Internal bugs (exit 2)

class InternalBugError(QfsError):
    exit_code = EXIT_BUG
    error_code = "INTERNAL_BUG"


class NondivisibleError(InternalBugError):
    error_code = "NONDIVISIBLE"


class InvariantViolation(InternalBugError):
    error_code = "INVARIANT_VIOLATION"


class ConsistencyFailure(InternalBugError):
    error_code = "CONSISTENCY_FAILURE"


# Budgets (exit 3)

class BudgetExceeded(QfsError):
    exit_code = EXIT_INCONCLUSIVE
    error_code = "INCONCLUSIVE"


class GroebnerBudgetExceeded(BudgetExceeded):
    error_code = "GROEBNER_BUDGET"


class SigmaBudgetExceeded(BudgetExceeded):
    error_code = "SIGMA_BUDGET"


def handle_exception(exc: BaseException, command: str) -> int:
    """Log an exception raised by a command and return its exit code"""
    if isinstance(exc, InternalBugError) or not isinstance(exc, QfsError):
        logger.error(f"Internal error while running '{command}': {exc}", exc_info=exc)
        set_context("command", {"name": command})
        capture_error(exc, {"command": command, "handler": "handle_exception"})
        return EXIT_BUG
    if isinstance(exc, BudgetExceeded):
        logger.warning(f"'{command}' inconclusive: {exc.detail}")
    else:
        logger.info(f"'{command}' rejected input: {exc.detail}")
    return exc.exit_code
