"""
Logging configuration and utilities for polymax

Provides centralized logging setup with a console handler and an
optional rotating file handler, plus per-component loggers.
"""

import logging
import logging.handlers
import sys
from datetime import datetime
from typing import Optional

from ..config.settings import SYSTEM_CONFIG, get_config


def setup_logging(level: Optional[str] = None, log_to_file: Optional[bool] = None):
    """Configure logging for the whole toolkit"""

    config = get_config()
    level = (level or config.LOG_LEVEL).upper()
    if log_to_file is None:
        log_to_file = config.LOG_TO_FILE

    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, level, logging.WARNING))

    # Clear any existing handlers
    root_logger.handlers.clear()

    detailed_formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s"
    )
    simple_formatter = logging.Formatter(config.LOG_FORMAT)

    # Diagnostics go to stderr so command output on stdout stays parseable
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, level, logging.WARNING))
    console_handler.setFormatter(simple_formatter)
    root_logger.addHandler(console_handler)

    if log_to_file:
        config.LOGS_DIR.mkdir(exist_ok=True)
        log_file = config.LOGS_DIR / f"polymax_{datetime.now().strftime('%Y%m%d')}.log"
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=SYSTEM_CONFIG.get("log_file_max_size", 10 * 1024 * 1024),
            backupCount=SYSTEM_CONFIG.get("log_backup_count", 5),
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(detailed_formatter)
        root_logger.addHandler(file_handler)

    setup_component_loggers()

    logging.getLogger("polymax").debug("🔧 Logging system initialized")


def setup_component_loggers():
    """Setup specialized loggers for the library components"""

    # Search runs can be long; keep their progress at INFO
    logging.getLogger("polymax.search").setLevel(logging.INFO)

    # Falsification findings must never be filtered out
    logging.getLogger("polymax.analysis").setLevel(logging.DEBUG)


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger with the specified name

    Args:
        name: Logger name (typically __name__)

    Returns:
        Configured logger instance
    """
    if name.startswith("src."):
        name = name[len("src."):]
    return logging.getLogger(f"polymax.{name}")


class PerformanceLogger:
    """Utility class for logging how long an operation took"""

    def __init__(self, operation_name: str):
        self.operation_name = operation_name
        self.logger = get_logger("performance")
        self.start_time = None
        self.duration: Optional[float] = None

    def __enter__(self):
        self.start_time = datetime.now()
        self.logger.debug(f"Starting {self.operation_name}")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.start_time:
            self.duration = (datetime.now() - self.start_time).total_seconds()
            self.logger.info(f"{self.operation_name} completed in {self.duration:.3f}s")

        if exc_type:
            self.logger.error(f"{self.operation_name} failed: {exc_val}")
