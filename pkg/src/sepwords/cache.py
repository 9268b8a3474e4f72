"""Append-only JSON-lines result cache.

Each line is {"key": str, "engine_version": str, "value": object}.  Hits
are served only at a matching engine version; corrupted or mismatched
lines are skipped and counted, never fatal.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Optional

from .solver import ENGINE_VERSION


class CertificateCache:
    def __init__(self, path: str | Path, engine_version: str = ENGINE_VERSION):
        self.path = Path(path)
        self.engine_version = engine_version
        self.skipped_corrupt = 0
        self.skipped_version = 0
        self._entries: dict[str, object] = {}
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        with open(self.path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    obj = json.loads(line)
                    key = obj["key"]
                    version = obj["engine_version"]
                    value = obj["value"]
                except (json.JSONDecodeError, KeyError, TypeError):
                    self.skipped_corrupt += 1
                    continue
                if version != self.engine_version:
                    self.skipped_version += 1
                    continue
                self._entries[key] = value

    def get(self, key: str):
        return self._entries.get(key)

    def __contains__(self, key: str) -> bool:
        return key in self._entries

    def put(self, key: str, value) -> None:
        """Store and append; idempotent replays produce identical state."""
        if self._entries.get(key) == value:
            return
        self._entries[key] = value
        self.path.parent.mkdir(parents=True, exist_ok=True)
        line = json.dumps(
            {"key": key, "engine_version": self.engine_version, "value": value},
            sort_keys=True,
        )
        # one line per write keeps appends atomic enough for our use
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def __len__(self) -> int:
        return len(self._entries)


def sep_key(w: str, x: str) -> str:
    return f"sep|{w}|{x}"
