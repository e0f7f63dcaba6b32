"""Append-only JSON-lines cache of computed invariants.

One record per line: ``{"key", "invariant", "input", "value", "version", "timestamp"}``.
Writers take an exclusive ``fcntl`` lock on the file; readers a shared one.
Storing a value that disagrees with an existing record raises
:class:`CacheMismatch`, since it means some computation is nondeterministic.
"""
from __future__ import annotations

import fcntl
import json
import os
import time
from contextlib import contextmanager
from typing import Callable

from . import __version__

ENV_VAR = "CONCORDIA_CACHE"


class CacheMismatch(RuntimeError):
    pass


def cache_path(explicit: str | None = None) -> str | None:
    """``CONCORDIA_CACHE`` wins over the command-line path."""
    return os.environ.get(ENV_VAR) or explicit


def _canon(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


class Cache:
    def __init__(self, path: str):
        self.path = path

    @contextmanager
    def _locked(self, exclusive: bool):
        mode = "a+" if exclusive else "r"
        if not exclusive and not os.path.exists(self.path):
            yield None
            return
        with open(self.path, mode, encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX if exclusive else fcntl.LOCK_SH)
            try:
                yield fh
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    @staticmethod
    def _read(fh) -> list[dict]:
        fh.seek(0)
        out = []
        for n, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise CacheMismatch(f"corrupt cache line {n}: {exc}") from None
        return out

    def records(self) -> list[dict]:
        with self._locked(False) as fh:
            return [] if fh is None else self._read(fh)

    def lookup(self, key: str, invariant: str):
        for r in self.records():
            if r["key"] == key and r["invariant"] == invariant:
                return r["value"]
        return None

    def store(self, key: str, invariant: str, value, input_text: str = "") -> None:
        with self._locked(True) as fh:
            for r in self._read(fh):
                if r["key"] == key and r["invariant"] == invariant:
                    if _canon(r["value"]) != _canon(value):
                        raise CacheMismatch(f"{invariant} for {key}: cached {r['value']!r}, "
                                            f"computed {value!r}")
                    return
            rec = {"key": key, "invariant": invariant, "input": input_text, "value": value,
                   "version": __version__, "timestamp": time.time()}
            fh.seek(0, os.SEEK_END)
            fh.write(_canon(rec) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def get_or_compute(self, key: str, invariant: str, compute: Callable[[], object],
                       input_text: str = ""):
        hit = self.lookup(key, invariant)
        if hit is not None:
            return hit
        value = compute()
        self.store(key, invariant, value, input_text)
        return value

    def verify(self, recompute: Callable[[dict], object]) -> list[str]:
        """Recompute every record; returns descriptions of mismatches (empty if clean)."""
        bad = []
        for r in self.records():
            value = recompute(r)
            if _canon(value) != _canon(r["value"]):
                bad.append(f"{r['invariant']} for {r['input'] or r['key']}")
        return bad
