import os
from pathlib import Path
from typing import Optional


def _optional_int(name: str) -> Optional[int]:
    value = os.getenv(name)
    return int(value) if value not in (None, "") else None


class Settings:
    """Analysis settings with environment variable support."""

    # Search bounds
    DEFAULT_MAX_LEN: Optional[int] = _optional_int("DTOPO_MAX_LEN")
    DEFAULT_DEPTH: int = int(os.getenv("DTOPO_DEPTH", "4"))
    DEFAULT_BUDGET: int = int(os.getenv("DTOPO_BUDGET", "200000"))
    DEFAULT_MAX_K: int = int(os.getenv("DTOPO_MAX_K", "4"))

    # Parallelism
    WORKERS: int = int(os.getenv("DTOPO_WORKERS", "1"))

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING")
    LOG_FILE: Optional[str] = os.getenv("LOG_FILE") or None

    @classmethod
    def validate(cls) -> None:
        """Validate configuration settings."""
        if cls.DEFAULT_DEPTH <= 0:
            raise ValueError("DTOPO_DEPTH must be positive")

        if cls.DEFAULT_BUDGET <= 0:
            raise ValueError("DTOPO_BUDGET must be positive")

        if cls.DEFAULT_MAX_K <= 0:
            raise ValueError("DTOPO_MAX_K must be positive")

        if cls.DEFAULT_MAX_LEN is not None and cls.DEFAULT_MAX_LEN <= 0:
            raise ValueError("DTOPO_MAX_LEN must be positive")

        if cls.WORKERS <= 0:
            raise ValueError("DTOPO_WORKERS must be positive")

        # Ensure the log directory exists
        if cls.LOG_FILE:
            Path(cls.LOG_FILE).parent.mkdir(parents=True, exist_ok=True)

settings = Settings()
settings.validate()
