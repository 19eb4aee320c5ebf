"""Seeded random streams.

Every random draw in the package goes through :func:`make_rng`, a NumPy
``Generator`` over the PCG64 bit generator.  Independent streams are derived
from a master seed with :func:`derive_seed`, which feeds the master seed and
an integer key path (e.g. ``(cell, trial, purpose)``) into NumPy's
``SeedSequence`` and takes the first 64-bit word of its state.
"""
from __future__ import annotations

import numpy as np

RNG_ID = "numpy.random.PCG64/SeedSequence"

MAX_SEED = 2**64 - 1


def check_seed(seed) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise TypeError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(check_seed(seed)))


def derive_seed(master: int, *keys: int) -> int:
    """Deterministic 64-bit child seed for the stream named by ``keys``."""
    ss = np.random.SeedSequence(check_seed(master), spawn_key=tuple(int(k) for k in keys))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
