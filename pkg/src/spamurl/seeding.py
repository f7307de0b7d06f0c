"""Deterministic RNG derivation.

One PRNG family is used everywhere: numpy's PCG64 seeded through
SeedSequence. Sub-streams are derived as a pure function of
(master seed, path of integers), so any component can be refit in
isolation and reproduce its randomness bit-exactly.
"""

import numpy as np


def seed_sequence(seed, *path):
    return np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(p) for p in path))


def rng_from(seed, *path):
    """Generator for (seed, *path); same arguments always give the same stream."""
    return np.random.Generator(np.random.PCG64(seed_sequence(seed, *path)))


def derive_seed(seed, *path):
    """Child integer seed, a pure function of (seed, *path)."""
    return int(seed_sequence(seed, *path).generate_state(1, np.uint64)[0])
