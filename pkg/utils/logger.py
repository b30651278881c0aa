import sys
from typing import Optional
from pathlib import Path
from loguru import logger
from config import settings

PLAIN_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}"

def setup_logger(level: Optional[str] = None):
    """Configure logger with appropriate settings"""
    logger.remove()  # Remove default handler

    # Console handler (stderr keeps stdout free for arrays and tables)
    development = settings.environment == "development"
    logger.add(
        sys.stderr,
        level=level or settings.log_level,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>" if development else PLAIN_FORMAT,
        colorize=development
    )

    if not settings.log_to_file:
        return logger

    log_dir = Path(settings.log_dir)

    # File handler
    logger.add(
        str(log_dir / "heffter.log"),
        level="INFO",
        format=PLAIN_FORMAT,
        rotation="10 MB",
        retention="30 days",
        compression="zip"
    )

    # Error file handler
    logger.add(
        str(log_dir / "errors.log"),
        level="ERROR",
        format=PLAIN_FORMAT,
        rotation="10 MB",
        retention="30 days",
        compression="zip"
    )

    return logger
