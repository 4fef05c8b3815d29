import sys
import logging

from core.config import settings
from core.sentry import init_sentry

# Configure logging based on debug mode; stdout is reserved for reports
if settings.debug:
    logging.basicConfig(
        level=logging.DEBUG,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr),
            logging.FileHandler('qfs.log') if settings.is_production else logging.NullHandler()
        ]
    )
else:
    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr),
            logging.FileHandler('qfs.log') if settings.is_production else logging.NullHandler()
        ]
    )

logger = logging.getLogger(__name__)

logger.debug(f"Environment: {settings.environment}")
logger.debug(f"Debug mode: {settings.debug}")

# Initialize Sentry before running any command
init_sentry()

from api.cli import run  # noqa: E402


if __name__ == "__main__":
    sys.exit(run())
