# -*- coding: utf-8 -*-
"""
Random streams for the simulation study.

Every (k, rep) replication owns an independent Philox substream keyed by
SeedSequence(seed, spawn_key=(k, rep)). The substream does not depend on
execution order, worker count or the rest of the grid.
"""

import numpy as np

# spawn_key slot for the Hoeffding experiment, kept apart from the (k, rep) keys
HOEFFDING_STREAM = 1


def substream(seed: int, *key: int) -> np.random.Generator:
    """Generator for one replication; `key` is e.g. (k, rep)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=tuple(int(v) for v in key))))
