import logging
from typing import Any

from termcolor import colored

STATUS_COLORS = {"pass": "green", "fail": "red", "skipped": "yellow"}


class ColorFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        color = getattr(record, "color", None)
        message = super().format(record)
        if color:
            message = colored(message, color)
        return message


def modify_logger_behaviour(name: str) -> logging.Logger:
    """Route ``name`` through plain colour-formatted handlers mirroring the root stream/file handlers."""
    current_logger = logging.getLogger(name)
    for handler in current_logger.handlers[:]:
        current_logger.removeHandler(handler)
    root_handlers = logging.getLogger().handlers or [logging.StreamHandler()]
    for handler_r in root_handlers:
        if isinstance(handler_r, logging.FileHandler):
            new_handler = logging.FileHandler(handler_r.baseFilename, handler_r.mode, handler_r.encoding)
            new_handler.setFormatter(logging.Formatter("%(message)s"))
        elif isinstance(handler_r, logging.StreamHandler):
            new_handler = logging.StreamHandler(handler_r.stream)
            new_handler.setFormatter(ColorFormatter("%(message)s"))
        else:
            continue
        current_logger.addHandler(new_handler)
    current_logger.propagate = False
    current_logger.setLevel(logging.INFO)
    return current_logger


def format_number(value: Any) -> str:
    """12 significant digits for floats; everything else as its string form."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.12g}"
    if value is None:
        return ""
    return str(value)


def flatten(payload: Any, prefix: str = "") -> list[tuple[str, str]]:
    """Dotted key/value pairs of a JSON-like payload; lists of scalars are joined with ';'."""
    if isinstance(payload, dict):
        rows = []
        for key, value in payload.items():
            rows.extend(flatten(value, f"{prefix}.{key}" if prefix else str(key)))
        return rows
    if isinstance(payload, list):
        if all(not isinstance(item, (dict, list)) for item in payload):
            return [(prefix, ";".join(format_number(item) for item in payload))]
        rows = []
        for index, item in enumerate(payload):
            rows.extend(flatten(item, f"{prefix}.{index}"))
        return rows
    return [(prefix, format_number(payload))]
