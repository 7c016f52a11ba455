"""
Logger utility for the toolkit.
"""
import os
import sys
import logging
from logging.handlers import RotatingFileHandler

# Add the parent directory to sys.path to allow imports
sys.path.insert(0, os.path.abspath(os.path.dirname(__file__) + '/../..'))

import config

LOGGER_NAME = "tropreg"


def setup_logger(level: str = None, log_file: str = None) -> logging.Logger:
    """
    Set up the project logger.

    Handlers sit on the root logger so module loggers created with
    logging.getLogger(__name__) share them. Console output goes to stderr so
    result documents on stdout stay clean. Calling this again only changes
    the level.

    Args:
        level: Level name, defaults to config.LOG_LEVEL.
        log_file: Rotating log file path, defaults to config.LOG_FILE; "" disables it.

    Returns:
        logging.Logger: The configured logger.
    """
    level = getattr(logging, (level or config.LOG_LEVEL).upper())
    log_file = config.LOG_FILE if log_file is None else log_file

    root = logging.getLogger()
    root.setLevel(level)
    logger = logging.getLogger(LOGGER_NAME)

    if getattr(root, "_tropreg_configured", False):
        for handler in root.handlers:
            handler.setLevel(level)
        return logger
    root._tropreg_configured = True

    # Create formatter
    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )

    # Create console handler
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    root.addHandler(console_handler)

    # Create file handler
    if log_file:
        try:
            os.makedirs(os.path.dirname(log_file) or ".", exist_ok=True)
            file_handler = RotatingFileHandler(
                log_file,
                maxBytes=10 * 1024 * 1024,  # 10 MB
                backupCount=5
            )
        except OSError as e:
            logger.warning(f"Log file {log_file} unavailable: {e}")
        else:
            file_handler.setLevel(level)
            file_handler.setFormatter(formatter)
            root.addHandler(file_handler)

    return logger


# Create and export logger
logger = setup_logger()
