import logging
import sys
from typing import Optional

from app.core.config import settings

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: Optional[str] = None) -> None:
    """
    Send application logs to stderr.

    Args:
        level: Log level name; defaults to ``settings.LOG_LEVEL``
    """
    root = logging.getLogger("app")
    root.setLevel((level or settings.LOG_LEVEL).upper())

    # Replace a handler left by an earlier call (tests call this repeatedly)
    for handler in list(root.handlers):
        if getattr(handler, "_nnht_handler", False):
            root.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._nnht_handler = True
    root.addHandler(handler)
