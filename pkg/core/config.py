from pydantic_settings import BaseSettings
from pydantic import ConfigDict
import os
import sys
from typing import Optional


class Settings(BaseSettings):
    model_config = ConfigDict(env_file='.env', env_file_encoding='utf-8', env_prefix='QFS_', extra='ignore')
    # Environment
    environment: str = os.getenv("QFS_ENVIRONMENT", "development")
    debug: bool = os.getenv("QFS_DEBUG", "false").lower() in ("1", "true", "yes", "on")
    app_version: str = "1.0.0"

    # Chain limits
    max_height: int = int(os.getenv("QFS_MAX_HEIGHT", "12"))
    sigma_budget: int = int(os.getenv("QFS_SIGMA_BUDGET", "64"))
    dump_levels: int = int(os.getenv("QFS_DUMP_LEVELS", "3"))

    # Groebner limits (per basis computation)
    gb_step_budget: int = int(os.getenv("QFS_GB_STEP_BUDGET", "1000000"))
    gb_pair_budget: int = int(os.getenv("QFS_GB_PAIR_BUDGET", "200000"))

    # Arithmetic
    max_modular_precision: int = 8
    decimal_digits: int = 12

    # Witt selftest
    witt_trials: int = int(os.getenv("QFS_WITT_TRIALS", "100"))

    # Sentry settings
    sentry_dsn: Optional[str] = os.getenv("QFS_SENTRY_DSN")
    sentry_environment: str = os.getenv("QFS_SENTRY_ENVIRONMENT", "development")
    sentry_traces_sample_rate: float = float(os.getenv("QFS_SENTRY_TRACES_SAMPLE_RATE", "0.0"))

    @property
    def is_production(self) -> bool:
        """Check if running in production environment"""
        return self.environment == "production"

    @property
    def is_development(self) -> bool:
        """Check if running in development environment"""
        return self.environment.lower() in ["development", "dev", "local"]

    @property
    def is_testing(self) -> bool:
        return self.environment == "test" or "pytest" in sys.modules


# Create settings instance
settings = Settings()
