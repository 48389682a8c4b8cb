"""Main entrypoint for the cartan-cr command."""

import logging
import sys

import structlog

from cli import run
from config import settings


def configure_logging(level: str) -> None:
    """Send log output to stderr so reports on stdout stay clean."""
    level = level.upper()
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(getattr(logging, level)),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=True,
    )


def main() -> None:
    """Main entry point."""
    configure_logging(settings.LOG_LEVEL)
    sys.exit(run())


if __name__ == "__main__":
    main()
