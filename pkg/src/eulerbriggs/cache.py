"""Persistent on-disk digit cache.

One file per (quantity, params) key. The file body is two lines::

    EBCv1 <digits>
    <decimal string>

A value stored at D digits serves every request for at most D digits.
Writes go to a temporary file in the same directory followed by
``os.replace``, so readers never see a partial entry.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
import warnings
from dataclasses import dataclass
from pathlib import Path

__all__ = ["CacheEntry", "DigitCache", "canonical_key", "default_cache_dir", "FORMAT_VERSION"]

FORMAT_VERSION = 1
ENV_VAR = "EBC_CACHE_DIR"


def canonical_key(name: str, params: dict) -> str:
    body = "&".join(f"{k}={params[k]}" for k in sorted(params))
    return f"{name}?{body}"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "eulerbriggs"


@dataclass(frozen=True)
class CacheEntry:
    key: str
    digits_stored: int
    decimal_string: str
    version: int = FORMAT_VERSION


class DigitCache:
    def __init__(self, directory=None, enabled: bool = True):
        self.enabled = enabled
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        if self.enabled:
            try:
                self.directory.mkdir(parents=True, exist_ok=True)
            except OSError as exc:
                self._disable(f"cannot create cache directory {self.directory}: {exc}")

    def _disable(self, why: str):
        warnings.warn(f"{why}; running uncached", RuntimeWarning, stacklevel=3)
        self.enabled = False

    def path_for(self, key: str) -> Path:
        digest = hashlib.sha256(key.encode()).hexdigest()[:40]
        return self.directory / f"{digest}.ebc"

    def get(self, key: str, digits: int) -> CacheEntry | None:
        """Entry for ``key`` if it holds at least ``digits`` digits, else None (a miss)."""
        if not self.enabled:
            return None
        try:
            text = self.path_for(key).read_text()
        except OSError:
            return None
        lines = text.splitlines()
        if len(lines) < 2:
            return None
        header = lines[0].split()
        if len(header) != 2 or header[0] != f"EBCv{FORMAT_VERSION}":
            return None
        try:
            stored = int(header[1])
        except ValueError:
            return None
        if stored < digits:
            return None
        return CacheEntry(key, stored, lines[1].strip())

    def put(self, entry: CacheEntry) -> bool:
        if not self.enabled:
            return False
        target = self.path_for(entry.key)
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".ebc")
            try:
                with os.fdopen(fd, "w") as fh:
                    fh.write(f"EBCv{entry.version} {entry.digits_stored}\n{entry.decimal_string}\n")
                os.replace(tmp, target)
            except BaseException:
                try:
                    os.unlink(tmp)
                except OSError:
                    pass
                raise
        except OSError as exc:
            self._disable(f"cannot write cache entry in {self.directory}: {exc}")
            return False
        return True
