"""Run reports: what was run, on which inputs, with what verdicts."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def inputs_digest(verb: str, args: dict, files: dict, config: dict) -> str:
    """sha256 over the verb, its arguments, the bytes of its input files and
    the configuration; the same digest means the same run."""
    blob = json.dumps({"verb": verb, "args": args, "files": files, "config": config},
                      sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class RunReport:
    verb: str
    args: dict
    config: dict
    files: dict = field(default_factory=dict)  # path -> sha256
    verdicts: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)  # work counters, wall time only on request
    artifacts: list = field(default_factory=list)
    exit_code: int = 0

    @property
    def digest(self) -> str:
        return inputs_digest(self.verb, self.args, self.files, self.config)

    def add_input(self, path):
        self.files[str(path)] = file_digest(path)

    def to_json(self) -> str:
        body = {
            "verb": self.verb,
            "inputs_digest": self.digest,
            "args": self.args,
            "config": self.config,
            "files": self.files,
            "verdicts": self.verdicts,
            "timing": self.timing,
            "artifacts": self.artifacts,
            "exit_code": self.exit_code,
        }
        return json.dumps(body, sort_keys=True, indent=1, default=str) + "\n"

    def write(self, out_dir) -> Path:
        """Write to a new file <verb>-<digest>-<n>.json; earlier reports are
        never overwritten."""
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        stem = f"{self.verb}-{self.digest[:12]}"
        n = 0
        while (out / f"{stem}-{n}.json").exists():
            n += 1
        path = out / f"{stem}-{n}.json"
        path.write_text(self.to_json(), encoding="utf-8")
        return path
