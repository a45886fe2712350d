"""Counter-based seed derivation.

A single master seed is split into independent component streams through
``numpy.random.SeedSequence`` spawn keys.  Every component owns a fixed
stream number (below); within a component, additional counters (task
index, chain index, window index, ...) extend the key.  Adding a new
stream number never perturbs the draws of existing streams, so new
subcommands can be added without changing old outputs.
"""

from __future__ import annotations

import numpy as np

# Fixed stream numbers. Never renumber; append only.
STREAM_DEMO = 1
STREAM_SAMPLER = 2
STREAM_RECOVERY = 3
STREAM_ANALYSIS = 4
STREAM_EXPERIMENT = 5
STREAM_CLI = 6


def seed_sequence(master_seed: int, *counters: int) -> np.random.SeedSequence:
    """Derive a child SeedSequence from the master seed and a counter path."""
    return np.random.SeedSequence(master_seed, spawn_key=tuple(int(c) for c in counters))


def generator(master_seed: int, *counters: int) -> np.random.Generator:
    """PCG64 generator for the given counter path."""
    return np.random.Generator(np.random.PCG64(seed_sequence(master_seed, *counters)))
