"""Random streams derived from a master seed.

Every independent task (sample, realization, annealing run) owns a generator
keyed by ``(seed, stream_id)``, so results never depend on how tasks are
scheduled across workers.
"""
import numpy as np


def stream(seed, *stream_id):
    """Counter-based generator for the task identified by ``stream_id``."""
    ss = np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, *map(int, stream_id)])
    return np.random.Generator(np.random.Philox(ss))


def as_generator(rng):
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)
