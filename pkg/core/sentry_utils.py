import sentry_sdk
from typing import Any, Dict, Optional
import logging

logger = logging.getLogger(__name__)


def capture_error(error: BaseException, context: Optional[Dict[str, Any]] = None) -> None:
    """Capture and report errors to Sentry (a no-op when the SDK is not initialised)"""
    if context:
        sentry_sdk.set_context("error_context", context)
    sentry_sdk.capture_exception(error)
    logger.debug(f"Error handed to Sentry: {error}")


def set_context(name: str, context: Dict[str, Any]) -> None:
    """Set additional context for Sentry"""
    sentry_sdk.set_context(name, context)


def add_breadcrumb(message: str, category: Optional[str] = None, data: Optional[Dict[str, Any]] = None) -> None:
    """Add breadcrumb for debugging"""
    sentry_sdk.add_breadcrumb(message=message, category=category, data=data or {}, level="info")
