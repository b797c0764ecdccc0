"""Run manifests: the audit record connecting a config to its outputs.

A manifest is written with status ``running`` before any output and
finalized to ``complete`` (or ``failed``) afterwards, so interrupted runs
are recognizable and re-runnable.  Manifests carry timestamps and are the
only output file exempt from byte-identical reproducibility.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .io_utils import config_hash, read_json, write_json
from .noise import PRNG_METADATA

MANIFEST_NAME = "manifest.json"


def _now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


@dataclass
class RunManifest:
    protocol: str
    config: dict
    out_dir: str
    status: str = "running"
    started_at: str = field(default_factory=_now)
    finished_at: str | None = None
    outputs: list = field(default_factory=list)
    error: str | None = None

    @property
    def hash(self) -> str:
        return config_hash(self.config)

    def path(self) -> Path:
        return Path(self.out_dir) / MANIFEST_NAME

    def to_dict(self) -> dict:
        return {
            "protocol": self.protocol,
            "config": self.config,
            "config_hash": self.hash,
            "code_version": __version__,
            "prng": PRNG_METADATA,
            "status": self.status,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "outputs": sorted(self.outputs),
            "error": self.error,
        }

    def write(self) -> None:
        Path(self.out_dir).mkdir(parents=True, exist_ok=True)
        write_json(self.path(), self.to_dict())

    def add_output(self, name: str) -> None:
        if name not in self.outputs:
            self.outputs.append(name)

    def finalize(self, status: str = "complete", error: str | None = None) -> None:
        self.status = status
        self.error = error
        self.finished_at = _now()
        self.write()


def load_manifest(path) -> dict:
    """Read a manifest dict from a file or a run directory."""
    p = Path(path)
    if p.is_dir():
        p = p / MANIFEST_NAME
    if not p.exists():
        raise FileNotFoundError(f"no manifest at {p}")
    data = read_json(p)
    for key in ("protocol", "config", "status", "outputs"):
        if key not in data:
            raise ValueError(f"manifest {p} missing field {key!r}")
    return data


def verify_outputs(manifest: dict, out_dir) -> list:
    """Return the list of output files named in the manifest but missing."""
    missing = []
    for name in manifest["outputs"]:
        if not (Path(out_dir) / name).exists():
            missing.append(name)
    return missing
