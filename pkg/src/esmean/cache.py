"""Content-addressed result cache with atomic writes.

Slow computations (the bilinear band, the per-prime split table) key
their results by a hash of all determining parameters.  Each entry is a
payload file named by the hex digest plus a human-readable ``.params.json``
sidecar, so a cache directory can be audited by eye.  Writes go through
a temp file and ``os.replace`` — interrupted runs never leave torn files.

The directory defaults to ``~/.cache/esmean`` and is overridden by the
``ES_CACHE_DIR`` environment variable.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Optional

_ENV_VAR = "ES_CACHE_DIR"


def cache_dir() -> Path:
    root = os.environ.get(_ENV_VAR)
    if root:
        p = Path(root)
    else:
        p = Path.home() / ".cache" / "esmean"
    p.mkdir(parents=True, exist_ok=True)
    return p


def entry_key(kind: str, params: Dict[str, Any]) -> str:
    """Hex digest identifying (kind, params); stable across processes."""
    blob = json.dumps({"kind": kind, "params": params},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:32]


def _paths(kind: str, params: Dict[str, Any], suffix: str) -> tuple[Path, Path]:
    key = entry_key(kind, params)
    base = cache_dir() / f"{kind}-{key}"
    return base.with_suffix(suffix), base.with_suffix(".params.json")


def _atomic_write(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def store_json(kind: str, params: Dict[str, Any], payload: Any) -> Path:
    """Cache a JSON-serializable payload; returns the payload path."""
    path, sidecar = _paths(kind, params, ".json")
    _atomic_write(sidecar, (json.dumps({"kind": kind, "params": params},
                                       sort_keys=True, indent=2) + "\n").encode())
    _atomic_write(path, (json.dumps(payload, sort_keys=True) + "\n").encode())
    return path


def load_json(kind: str, params: Dict[str, Any]) -> Optional[Any]:
    """Fetch a cached payload, or None on miss/corruption (miss wins)."""
    path, _ = _paths(kind, params, ".json")
    if not path.exists():
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
