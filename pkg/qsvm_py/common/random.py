import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    """A seeded generator with a fixed algorithm (PCG64)

    Plans, samples and synthetic data are pure functions of this seed.
    """

    if isinstance(seed, bool) or int(seed) != seed or seed < 0:
        raise ValueError(f"seed must be a non-negative integer, got {seed!r}")
    return np.random.Generator(np.random.PCG64(int(seed)))
