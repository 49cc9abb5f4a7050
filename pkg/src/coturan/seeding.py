"""Deterministic seed splitting.

Every random choice in the package draws from a seed derived here from a
master seed, so a fixed master seed reproduces every output.
"""
import numpy as np


def split(seed: int, count: int) -> list[int]:
    """``count`` child seeds of ``seed``; child i never depends on ``count``."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


def derive(seed: int, *keys: int) -> int:
    """Child seed of ``seed`` addressed by integer ``keys`` (e.g. a t value)."""
    ss = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in keys))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
