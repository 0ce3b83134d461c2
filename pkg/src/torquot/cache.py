"""Optional on-disk cache for computed fans.

Set ``TORQUOT_CACHE_DIR`` to a directory to persist expensive fans across
process runs (the command-line tool consults it before building quotient
or family fans).  Entries are keyed by construction kind plus a digest of
the exact defining data.  Files are written atomically, so processes may
share a cache directory; two writers racing on one key write identical
bytes and last-writer-wins is harmless.
"""

from __future__ import annotations

import hashlib
import os

from .serialize import SerializeError, load, save


def cache_dir():
    """The configured cache directory, or None when caching is off."""
    return os.environ.get("TORQUOT_CACHE_DIR") or None


def _entry_path(root: str, kind: str, key) -> str:
    digest = hashlib.sha256(repr((kind, key)).encode("ascii")).hexdigest()[:20]
    return os.path.join(root, f"{kind}-{digest}.json")


def fetch(kind: str, key, build):
    """Return ``build()``, reusing a cached copy when one exists.

    ``key`` must be hashable data with a stable repr (vertex tuples and
    integers).  Corrupt or unreadable entries are silently rebuilt and
    overwritten.
    """
    root = cache_dir()
    if root is None:
        return build()
    os.makedirs(root, exist_ok=True)
    path = _entry_path(root, kind, key)
    if os.path.exists(path):
        try:
            return load(path)
        except (SerializeError, OSError, ValueError):
            pass  # stale or torn entry: fall through and rebuild
    value = build()
    save(path, value)
    return value
