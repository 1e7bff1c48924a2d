"""Counter-based random streams keyed by (seed, grid index, symbol index).

Each symbol owns a fixed-size block of Philox output.  Symbol ``t`` of grid
point ``g`` starts at counter ``t * block_words / 4`` under the key
``(seed, g)``, so any symbol can be replayed on its own and contiguous runs
of symbols can be generated in one call.
"""

import numpy as np

_MASK64 = (1 << 64) - 1
_WORDS_PER_COUNTER = 4


def block_size(words_needed: int) -> int:
    """Round a per-symbol word budget up to whole Philox counter steps."""
    return -(-words_needed // _WORDS_PER_COUNTER) * _WORDS_PER_COUNTER


def _key(seed: int, grid_index: int) -> np.ndarray:
    return np.array([seed & _MASK64, grid_index & _MASK64], dtype=np.uint64)


def symbol_stream(seed: int, grid_index: int, symbol_index: int, block_words: int) -> np.random.Generator:
    """Generator positioned at the first word of one symbol's block."""
    if block_words % _WORDS_PER_COUNTER:
        raise ValueError("block_words must be a multiple of 4")
    counter = symbol_index * (block_words // _WORDS_PER_COUNTER)
    return np.random.Generator(np.random.Philox(key=_key(seed, grid_index), counter=counter))


def symbol_blocks(seed: int, grid_index: int, start: int, count: int, block_words: int) -> np.ndarray:
    """Raw words for symbols ``start .. start+count-1``, shape (count, block_words)."""
    gen = symbol_stream(seed, grid_index, start, block_words)
    return gen.bit_generator.random_raw(count * block_words).reshape(count, block_words)
