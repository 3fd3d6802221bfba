"""Series cache keyed by (constructor descriptor, truncation).

An in-process dictionary is always consulted; when a cache directory is set
(``configure`` or the ``PADICLAB_CACHE`` environment variable) entries are
also written to disk in the QSeries text format.  A cached entry with a
larger truncation serves any smaller request.
"""

from __future__ import annotations

import hashlib
import os
import threading
from pathlib import Path
from typing import Callable

from .qseries import QSeries

_lock = threading.Lock()
_memory: dict[str, QSeries] = {}
_directory: Path | None = None
_enabled = True


def configure(directory=None, enabled: bool = True) -> None:
    global _directory, _enabled
    _enabled = enabled
    if directory is None:
        env = os.environ.get("PADICLAB_CACHE")
        directory = env or None
    _directory = Path(directory) if directory else None
    if _directory is not None:
        _directory.mkdir(parents=True, exist_ok=True)


def clear() -> None:
    with _lock:
        _memory.clear()


def _path(key: str) -> Path:
    digest = hashlib.sha256(key.encode()).hexdigest()[:24]
    return _directory / f"{digest}.qs"


def cached_series(key: str, truncation: int, build: Callable[[int], QSeries]) -> QSeries:
    """Return ``build(truncation)``, reusing any cached expansion that reaches far enough."""
    if not _enabled:
        return build(truncation)
    hit = _memory.get(key)
    if hit is None and _directory is not None and _path(key).exists():
        hit = QSeries.from_text(_path(key).read_text(), source=_path(key))
        with _lock:
            _memory.setdefault(key, hit)
    if hit is not None and hit.truncation >= truncation:
        return hit.truncate(truncation)
    value = build(truncation)
    with _lock:
        current = _memory.get(key)
        if current is None or current.truncation < value.truncation:
            _memory[key] = value
            if _directory is not None:
                _path(key).write_text(value.to_text())
    return value


configure()
