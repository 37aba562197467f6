"""Append-only JSON-lines result cache.

One result line per run, schema_version first.  A warm-cache rerun of the
same subcommand and semantic parameters returns the stored line with a
fresh timestamp; everything else is byte-identical.
"""

from __future__ import annotations

import json
import time
from pathlib import Path

SCHEMA_VERSION = 1


def utc_timestamp() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())


def result_line(
    subcommand: str,
    parameters: dict,
    outputs: dict,
    candidates_examined: int,
    elapsed_ms: float,
    timestamp: str | None = None,
) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "timestamp": timestamp or utc_timestamp(),
        "subcommand": subcommand,
        "parameters": parameters,
        "outputs": outputs,
        "candidates_examined": candidates_examined,
        "elapsed_ms": elapsed_ms,
    }


def cache_key(subcommand: str, parameters: dict) -> str:
    return json.dumps([subcommand, parameters], sort_keys=True, separators=(",", ":"))


class ResultCache:
    """Line-per-result JSON cache keyed by subcommand and parameters."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lines: dict[str, dict] = {}
        if self.path.exists():
            for raw in self.path.read_text().splitlines():
                raw = raw.strip()
                if not raw:
                    continue
                line = json.loads(raw)
                self._lines[cache_key(line["subcommand"], line["parameters"])] = line

    def lookup(self, subcommand: str, parameters: dict) -> dict | None:
        hit = self._lines.get(cache_key(subcommand, parameters))
        if hit is None:
            return None
        fresh = dict(hit)
        fresh["timestamp"] = utc_timestamp()
        return fresh

    def store(self, line: dict) -> None:
        key = cache_key(line["subcommand"], line["parameters"])
        if key in self._lines:
            return
        self._lines[key] = line
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(line) + "\n")
