"""Structured JSON logging for noma-relay runs."""

import json
import logging
import sys
from datetime import datetime, timezone
from typing import Any, Dict, Optional

from .config import RUN_LOG_ENABLED, RUN_LOG_FILE

_RESERVED = {
    "name", "msg", "args", "levelname", "levelno", "pathname", "filename", "module",
    "exc_info", "exc_text", "stack_info", "lineno", "funcName", "created", "msecs",
    "relativeCreated", "thread", "threadName", "processName", "process", "message",
    "taskName",
}


class JsonLogFormatter(logging.Formatter):
    """Render each record as one JSON object."""

    def format(self, record: logging.LogRecord) -> str:
        log_entry: Dict[str, Any] = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
        }

        # Add message data if it's a dict
        if isinstance(record.msg, dict):
            log_entry.update(record.msg)
        else:
            log_entry["message"] = record.getMessage()

        # Add any extra fields
        for key, value in record.__dict__.items():
            if key not in _RESERVED:
                log_entry[key] = value

        if record.exc_info:
            log_entry["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_entry, default=str)


def setup_run_logging(path: Optional[str] = None) -> Optional[logging.Logger]:
    """Set up the run logger that records every sweep, figure and validation run."""
    if not RUN_LOG_ENABLED:
        return None

    run_logger = logging.getLogger("noma-relay.runs")
    run_logger.setLevel(logging.INFO)

    # Remove existing handlers
    for handler in run_logger.handlers[:]:
        run_logger.removeHandler(handler)
        handler.close()

    destination = path or RUN_LOG_FILE
    handler: logging.Handler
    if destination:
        handler = logging.FileHandler(destination)
    else:
        handler = logging.StreamHandler(sys.stderr)

    handler.setFormatter(JsonLogFormatter())
    run_logger.addHandler(handler)

    # Don't propagate to root logger
    run_logger.propagate = False

    return run_logger


def log_run(
    run_logger: Optional[logging.Logger],
    kind: str,
    details: Optional[Dict[str, Any]] = None,
) -> None:
    """Log one run record (sweep, figure or validate)."""
    if not run_logger:
        return

    log_data: Dict[str, Any] = {"event_type": "run", "kind": kind}
    if details:
        log_data.update(details)

    run_logger.info(log_data)
