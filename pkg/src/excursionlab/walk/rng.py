"""Seed derivation and counter-based increment blocks.

Every step of every walk is addressed by (seed, trial, block): the key of a
Philox4x64 generator is (seed, trial) and the block index sits in counter word
one. A block holds ``BLOCK_STEPS`` increments regardless of how consumers chunk
their reads, so streamed and materialized walks share bits exactly.
"""

from __future__ import annotations

import hashlib

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_1 = 0xBF58476D1CE4E5B9
MIX_2 = 0x94D049BB133111EB

BLOCK_STEPS = 1 << 16
WORDS_PER_BLOCK = BLOCK_STEPS // 64


def splitmix64(value: int) -> int:
    z = (value + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * MIX_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_2) & MASK64
    return z ^ (z >> 31)


def name_hash(task: str) -> int:
    digest = hashlib.blake2b(task.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def derive_seed(master: int, task: str, trial: int) -> int:
    """Task seed = splitmix64(master ^ splitmix64(name_hash(task) ^ splitmix64(trial)))."""
    inner = splitmix64(trial & MASK64)
    middle = splitmix64(name_hash(task) ^ inner)
    return splitmix64((master & MASK64) ^ middle)


class PhiloxIncrements:
    """Increment source backed by ``numpy.random.Philox``."""

    block_steps = BLOCK_STEPS

    def __init__(self, seed: int, trial: int = 0) -> None:
        self.seed = seed & MASK64
        self.trial = trial & MASK64
        self._key = np.array([self.seed, self.trial], dtype=np.uint64)

    def block(self, index: int) -> np.ndarray:
        """Return the ``index``-th block of ±1 steps as int8."""
        counter = np.array([0, index & MASK64, 0, 0], dtype=np.uint64)
        bit_generator = np.random.Philox(key=self._key, counter=counter)
        words = bit_generator.random_raw(WORDS_PER_BLOCK).astype("<u8", copy=False)
        bits = np.unpackbits(words.view(np.uint8), bitorder="little")
        return bits.astype(np.int8) * 2 - 1
