import sentry_sdk
from sentry_sdk.integrations.argv import ArgvIntegration
from sentry_sdk.integrations.logging import LoggingIntegration
from core.config import settings
import logging

logger = logging.getLogger(__name__)


def before_send_filter(event, hint):
    """Filter events before sending to Sentry"""
    # In development, block all events from being sent to Sentry
    if settings.sentry_environment == "development":
        logger.debug("Sentry event blocked in development environment")
        return None

    if event.get("type") == "transaction":
        return None

    # Budget exhaustion is a normal outcome, only bugs are reported
    exc_info = hint.get("exc_info") if hint else None
    if exc_info:
        from core.exceptions import InternalBugError, QfsError
        exc = exc_info[1]
        if isinstance(exc, QfsError) and not isinstance(exc, InternalBugError):
            return None

    return event


def init_sentry() -> bool:
    """Initialize Sentry SDK; returns False when no DSN is configured"""
    dsn = settings.sentry_dsn
    environment = settings.sentry_environment

    if not dsn:
        logger.debug("QFS_SENTRY_DSN not set, skipping Sentry initialization")
        return False

    sentry_sdk.init(
        dsn=dsn,
        environment=environment,
        release=f"qfs@{settings.app_version}",
        traces_sample_rate=settings.sentry_traces_sample_rate,
        before_send=before_send_filter,
        integrations=[
            ArgvIntegration(),
            LoggingIntegration(level=logging.INFO, event_level=logging.ERROR),
        ],
        attach_stacktrace=True,
    )

    logger.info(f"Sentry initialized successfully for environment: {environment}")
    return True
