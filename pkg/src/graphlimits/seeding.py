"""Deterministic random-stream derivation.

All randomness in the package flows from one 64-bit seed.  Substreams are
derived with counter-based spawn keys, so results never depend on how work
is scheduled across workers: replication ``i`` always consumes the stream
keyed by ``i``, no matter which process runs it.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MAX_ROOT = 2**63


def _key_part(part) -> int:
    if isinstance(part, (int, np.integer)):
        if part < 0:
            raise ValueError("stream key parts must be non-negative")
        return int(part)
    digest = hashlib.sha256(str(part).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def stream(seed: int, *key) -> np.random.Generator:
    """Generator for ``seed`` refined by a key path of ints or strings."""
    parts = tuple(_key_part(p) for p in key)
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=parts))


def fork_root(rng: np.random.Generator) -> int:
    """Draw a 63-bit root from which index-keyed substreams can be derived."""
    return int(rng.integers(0, _MAX_ROOT))


def rep_stream(root: int, index: int) -> np.random.Generator:
    """Substream for one replication, independent of evaluation order."""
    return np.random.default_rng(np.random.SeedSequence(root, spawn_key=(index,)))
