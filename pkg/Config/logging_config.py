import logging
import os
import sys
from logging.handlers import RotatingFileHandler

LOGGER_NAME = 'graph_isolation'

DETAILED_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(processName)s - %(funcName)s:%(lineno)d - %(message)s'
CONSOLE_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def _rotating_handler(path: str, max_mb: int, backups: int, level: int) -> RotatingFileHandler:
    handler = RotatingFileHandler(path, maxBytes=max_mb * 1024 * 1024, backupCount=backups, encoding='utf-8')
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(DETAILED_FORMAT, datefmt=DATE_FORMAT))
    return handler


# Shared toolkit logger
def setup_logging():
    """
    Return the toolkit logger, attaching its handlers on first use

    Handlers:
    - <log dir>/graph_isolation.log: everything from DEBUG (10MB x 5)
    - <log dir>/errors.log: ERROR and above (5MB x 3)
    - stderr: GRAPHCRIT_LOG_LEVEL and above (default WARNING)
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(logging.DEBUG)

    # Survey workers and repeated imports reuse the configured logger
    if logger.handlers:
        return logger

    log_dir = os.getenv("GRAPHCRIT_LOG_DIR", "logs")
    os.makedirs(log_dir, exist_ok=True)

    console_level = os.getenv("GRAPHCRIT_LOG_LEVEL", "WARNING").upper()
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, console_level, logging.WARNING))
    console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT, datefmt=DATE_FORMAT))

    logger.addHandler(_rotating_handler(os.path.join(log_dir, 'graph_isolation.log'), 10, 5, logging.DEBUG))
    logger.addHandler(_rotating_handler(os.path.join(log_dir, 'errors.log'), 5, 3, logging.ERROR))
    logger.addHandler(console_handler)
    logger.propagate = False

    return logger
