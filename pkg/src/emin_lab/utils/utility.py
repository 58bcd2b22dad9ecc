import hashlib
from datetime import datetime, timezone
from pathlib import Path


def file_checksum(path: str | Path) -> str:
    """sha256 hex digest of a file on disk."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def utc_timestamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%d %H:%M:%S UTC")


def format_float(value: float, spec: str) -> str:
    """Render a float with a format spec, keeping ints for integral columns."""
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return format(float(value), spec)
