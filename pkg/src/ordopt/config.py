
import os
from functools import cache
from typing import Optional

from .user_error import UserError


WORKERS_ENV = "ORDOPT_WORKERS"


class BadWorkersSetting(UserError):
    def __init__(self, raw: str) -> None:
        self._init("Expected $%s to be a positive integer or 'auto', got %r.",
                   WORKERS_ENV, raw, code=2)


@cache
def default_workers() -> Optional[int]:
    """Worker count from the environment; ``None`` means pick automatically."""

    raw = os.environ.get(WORKERS_ENV)
    if raw is None or raw.strip().lower() in ("", "auto"):
        return None

    try:
        value = int(raw)
    except ValueError:
        raise BadWorkersSetting(raw)

    if value < 1:
        raise BadWorkersSetting(raw)

    return value


def resolve_workers(requested: Optional[int]) -> int:
    if requested is None:
        requested = default_workers()
    if requested is None:
        return max(1, os.cpu_count() or 1)
    return requested
