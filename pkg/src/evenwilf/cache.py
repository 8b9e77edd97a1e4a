"""Persistent count cache: one JSON object per line, append-only.

Entries are keyed by pattern text plus either a length or a shape text, and
carry the tool version that produced them; entries from other versions are
ignored on load and dropped at the next compaction.  Appends happen under an
exclusive file lock so concurrent processes can share a cache directory;
reads run from an in-memory snapshot.  Compaction rewrites the file through a
temporary and an atomic rename.

The counts being cached are deterministic, so a put that disagrees with an
existing entry for the same key is an integrity failure and raises -- that is
also the contract `verify_sample` enforces by recomputing.
"""
from __future__ import annotations

import json
import os
import time
from pathlib import Path

from filelock import FileLock

from . import __version__
from .counting import CountTriple
from .perms import Perm
from .shapes import Shape, format_shape


class CacheIntegrityError(RuntimeError):
    """A cached value disagrees with a fresh computation."""


def default_cache_dir() -> Path:
    env = os.environ.get("EVENWILF_CACHE_DIR")
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "evenwilf"


class CountCache:
    """JSONL-backed cache with the get_perm/put_perm/get_shape/put_shape
    surface the counting layer expects."""

    def __init__(self, path: str | os.PathLike | None = None, *, auto_compact: bool = True):
        self.path = Path(path) if path is not None else default_cache_dir() / "counts.jsonl"
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = FileLock(str(self.path) + ".lock")
        self._mem: dict[str, CountTriple] = {}
        lines = self._load()
        if auto_compact and self._mem and lines > 2 * len(self._mem):
            self.compact()

    def _load(self) -> int:
        lines = 0
        if not self.path.exists():
            return 0
        with open(self.path) as f:
            for raw in f:
                raw = raw.strip()
                if not raw:
                    continue
                lines += 1
                try:
                    rec = json.loads(raw)
                    if rec.get("tool_version") != __version__:
                        continue
                    self._mem[rec["key"]] = CountTriple(
                        rec["total"], rec["even"], rec["odd"]
                    )
                except (ValueError, KeyError, TypeError):
                    continue  # tolerate torn writes; compaction heals the file
        return lines

    # -- raw key interface --------------------------------------------------

    @staticmethod
    def perm_key(sigma: Perm, n: int) -> str:
        return f"perm n={n} sigma={','.join(map(str, sigma))}"

    @staticmethod
    def shape_key(sigma: Perm, parts: Shape) -> str:
        return f"shape parts={format_shape(parts)} sigma={','.join(map(str, sigma))}"

    def get(self, key: str) -> CountTriple | None:
        return self._mem.get(key)

    def put(self, key: str, triple: CountTriple) -> None:
        old = self._mem.get(key)
        if old == triple:
            return
        if old is not None:
            raise CacheIntegrityError(
                f"cache already holds {old!r} for {key!r}, refusing to store {triple!r}"
            )
        record = {
            "key": key,
            "total": triple.total,
            "even": triple.even,
            "odd": triple.odd,
            "tool_version": __version__,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime()),
        }
        line = json.dumps(record, sort_keys=True) + "\n"
        with self._lock:
            with open(self.path, "a") as f:
                f.write(line)
        self._mem[key] = triple

    # -- the surface counting.py talks to -----------------------------------

    def get_perm(self, sigma: Perm, n: int) -> CountTriple | None:
        return self.get(self.perm_key(sigma, n))

    def put_perm(self, sigma: Perm, n: int, triple: CountTriple) -> None:
        self.put(self.perm_key(sigma, n), triple)

    def get_shape(self, sigma: Perm, parts: Shape) -> CountTriple | None:
        return self.get(self.shape_key(sigma, parts))

    def put_shape(self, sigma: Perm, parts: Shape, triple: CountTriple) -> None:
        self.put(self.shape_key(sigma, parts), triple)

    # -- maintenance ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self._mem)

    def keys(self):
        return sorted(self._mem)

    def compact(self) -> None:
        """Rewrite the file with one line per live entry, atomically."""
        with self._lock:
            tmp = self.path.with_suffix(".jsonl.tmp")
            with open(tmp, "w") as f:
                for key in sorted(self._mem):
                    t = self._mem[key]
                    f.write(
                        json.dumps(
                            {
                                "key": key,
                                "total": t.total,
                                "even": t.even,
                                "odd": t.odd,
                                "tool_version": __version__,
                                "timestamp": time.strftime(
                                    "%Y-%m-%dT%H:%M:%S", time.gmtime()
                                ),
                            },
                            sort_keys=True,
                        )
                        + "\n"
                    )
            os.replace(tmp, self.path)

    def verify_sample(self, limit: int = 64, jobs: int = 1) -> list[dict]:
        """Recompute a deterministic sample of entries; return mismatches.

        Sampling takes every ceil(size/limit)-th key in sorted order, so
        repeated sweeps check the same entries until the cache changes.
        """
        from .counting import count_avoiders, count_avoiders_shape
        from .shapes import parse_shape

        keys = self.keys()
        if not keys:
            return []
        step = max(1, -(-len(keys) // limit))
        mismatches = []
        for key in keys[::step]:
            cached = self._mem[key]
            fields = dict(part.split("=", 1) for part in key.split(" ")[1:])
            sigma = tuple(int(x) for x in fields["sigma"].split(","))
            if key.startswith("perm "):
                fresh = count_avoiders(
                    int(fields["n"]), sigma, jobs=jobs, max_n=10**9, cache=None
                )
            else:
                fresh = count_avoiders_shape(
                    parse_shape(fields["parts"]), sigma, jobs=jobs, max_box=10**9, cache=None
                )
            if fresh != cached:
                mismatches.append({"key": key, "cached": cached, "fresh": fresh})
        return mismatches
