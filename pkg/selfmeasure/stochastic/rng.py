"""Counter-based random streams: draw n depends only on (seed, n).

Draws are laid out in fixed-size blocks. Block b is a Philox stream keyed by the
seed with its counter started at b in the second counter word, so any block can
be generated on its own and in any order.
"""

from typing import Iterator, Tuple

import numpy as np

from selfmeasure.errors import StochasticError

BLOCK_SIZE = 1 << 14
SEED_LIMIT = 1 << 64


class CounterRNG:
    """Deterministic uniform draws addressed by event index."""

    def __init__(self, seed: int, block_size: int = BLOCK_SIZE):
        seed = int(seed)
        if not 0 <= seed < SEED_LIMIT:
            raise StochasticError(f"Seed must be an unsigned 64-bit integer, got {seed}")
        if block_size < 1:
            raise StochasticError(f"Block size must be positive, got {block_size}")
        self.seed = seed
        self.block_size = block_size

    def block(self, block_index: int) -> np.ndarray:
        """All uniforms in [0, 1) of one block."""
        counter = np.array([0, block_index, 0, 0], dtype=np.uint64)
        generator = np.random.Generator(np.random.Philox(key=self.seed, counter=counter))
        return generator.random(self.block_size)

    def blocks_for(self, start: int, count: int) -> Iterator[Tuple[int, slice, slice]]:
        """(block index, slice into the block, slice into the output) covering [start, start+count)."""
        position = start
        end = start + count
        while position < end:
            b, offset = divmod(position, self.block_size)
            take = min(self.block_size - offset, end - position)
            yield b, slice(offset, offset + take), slice(position - start, position - start + take)
            position += take

    def uniforms(self, start: int, count: int) -> np.ndarray:
        out = np.empty(count)
        for b, inner, outer in self.blocks_for(start, count):
            out[outer] = self.block(b)[inner]
        return out

    def uniform(self, event_index: int) -> float:
        return float(self.uniforms(event_index, 1)[0])
