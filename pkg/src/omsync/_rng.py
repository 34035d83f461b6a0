"""Counter-based random streams for reproducible parallel trajectories."""

from __future__ import annotations

import numpy as np


def substream(seed: int, stream_id: int = 0) -> np.random.Generator:
    """Philox generator for one trajectory, decorrelated by ``stream_id``.

    The (seed, stream_id) pair fully determines the stream, independent of
    how many other streams exist or in which order they are consumed.
    """
    if stream_id < 0:
        raise ValueError(f"stream_id must be >= 0, got {stream_id}")
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(stream_id),))
    return np.random.Generator(np.random.Philox(ss))
