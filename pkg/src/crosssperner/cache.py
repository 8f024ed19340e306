"""Content-addressed store of serialized search reports, one file per (objective, parameters)."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

ENV_VAR = "CROSSSPERNER_CACHE"
FORMAT_VERSION = 1


class ResultCache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    @classmethod
    def resolve(cls, override: str | None = None) -> "ResultCache | None":
        """The flag wins over the environment; no cache when neither is set."""
        root = override or os.environ.get(ENV_VAR)
        return cls(root) if root else None

    @staticmethod
    def key(objective: str, params: dict) -> str:
        payload = json.dumps(
            {"objective": objective, "params": params, "version": FORMAT_VERSION},
            sort_keys=True,
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()

    def path(self, objective: str, params: dict) -> Path:
        return self.root / f"{objective}-{self.key(objective, params)[:32]}.json"

    def load(self, objective: str, params: dict) -> str | None:
        try:
            return self.path(objective, params).read_text()
        except OSError:
            # missing or unreadable cache entries are plain misses
            return None

    def store(self, objective: str, params: dict, text: str) -> Path:
        """Write atomically; raises ``OSError`` on failure."""
        target = self.path(objective, params)
        target.parent.mkdir(parents=True, exist_ok=True)
        tmp = target.with_suffix(".tmp")
        tmp.write_text(text)
        tmp.replace(target)
        return target
