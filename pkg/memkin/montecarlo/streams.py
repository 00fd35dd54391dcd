"""
Per-trial random streams.

Every trial draws from its own counter-based Philox generator keyed by the
ensemble seed and the trial index, so results do not depend on which worker
runs a trial or in which order.
"""

import numpy as np

from memkin.errors import DomainError

PARAMETER_SPAWN_KEY = (0, 0)


def _seed_sequence(seed: int, spawn_key) -> np.random.SeedSequence:
    if seed < 0:
        raise DomainError(f"seeds must be non-negative, got {seed}")
    return np.random.SeedSequence(seed, spawn_key=spawn_key)


def trial_stream(seed: int, trial: int) -> np.random.Generator:
    """
    Generator for trial `trial` of an ensemble seeded with `seed`.

    Example:
    >> trial_stream(0, 3).random() == trial_stream(0, 3).random()
    True
    """
    return np.random.Generator(np.random.Philox(_seed_sequence(seed, (trial,))))


def parameter_stream(seed: int) -> np.random.Generator:
    """Generator for the one parameter draw of fixed-once ensembles, disjoint from trial streams."""
    return np.random.Generator(np.random.Philox(_seed_sequence(seed, PARAMETER_SPAWN_KEY)))
