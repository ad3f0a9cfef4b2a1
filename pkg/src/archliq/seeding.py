"""Deterministic seed-stream plumbing used by every generator.

All randomness in the package flows through :class:`SeedSpec`.  A spec is a
pure value: the same (master_seed, stream_index, path) triple always yields
the same generator state, regardless of call order or thread count, and
distinct triples yield statistically independent streams (numpy's
SeedSequence spawn-key hashing, a splittable-seed construction).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_UINT64 = 2**64


@dataclass(frozen=True)
class SeedSpec:
    """Identity of one reproducible random stream.

    ``master_seed`` names the experiment, ``stream_index`` the replication.
    ``path`` holds extra derivation steps so one replication can own several
    mutually independent substreams (innovations vs. liquidity, etc.).
    """

    master_seed: int
    stream_index: int = 0
    path: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= int(self.master_seed) < _UINT64:
            raise ValueError("master_seed must be an unsigned 64-bit integer")
        if not 0 <= int(self.stream_index) < _UINT64:
            raise ValueError("stream_index must be an unsigned 64-bit integer")

    def child(self, *steps: int) -> "SeedSpec":
        """Derive an independent substream by appending ``steps`` to the path."""
        return SeedSpec(self.master_seed, self.stream_index, self.path + steps)

    def seed_sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(
            self.master_seed, spawn_key=(self.stream_index, *self.path)
        )

    def generator(self) -> np.random.Generator:
        """Fresh PCG64 generator for this stream; bit-reproducible."""
        return np.random.Generator(np.random.PCG64(self.seed_sequence()))
