"""Reports: a header, one record per row, and a human-readable rendering."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List

from . import __version__


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _plain(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


@dataclass
class Report:
    command: str
    header: Dict[str, Any] = field(default_factory=dict)
    records: List[Dict[str, Any]] = field(default_factory=list)
    summary: List[str] = field(default_factory=list)

    def add(self, **record) -> None:
        self.records.append(record)

    def to_records(self) -> str:
        """JSON lines with sorted keys; byte-identical for identical inputs."""
        head = {"record": "header", "tool": "ihcyc", "version": __version__, "command": self.command}
        head.update(self.header)
        lines = [json.dumps(_plain(head), sort_keys=True, separators=(",", ":"))]
        for r in self.records:
            lines.append(json.dumps(_plain(dict(r)), sort_keys=True, separators=(",", ":")))
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        out = [f"ihcyc {__version__} :: {self.command}"]
        for k in sorted(self.header):
            out.append(f"  {k}: {_plain(self.header[k])}")
        if self.records:
            keys: List[str] = []
            for r in self.records:
                for k in r:
                    if k not in keys:
                        keys.append(k)
            rows = [[str(_plain(r.get(k, ""))) for k in keys] for r in self.records]
            widths = [max(len(k), *(len(row[i]) for row in rows)) for i, k in enumerate(keys)]
            out.append("  ".join(k.ljust(w) for k, w in zip(keys, widths)))
            out.append("  ".join("-" * w for w in widths))
            for row in rows:
                out.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))
        out += self.summary
        return "\n".join(out) + "\n"

    def render(self, fmt: str = "table") -> str:
        if fmt == "records":
            return self.to_records()
        if fmt == "table":
            return self.to_table()
        raise ValueError(f"unknown format {fmt!r}")
