"""
Block Scheme
Consecutive pre-period evaluation blocks for K-fold cross-fitting
"""

from typing import Any, Dict, List

import numpy as np

from panel.config import BlockPosition, ConfigurationError


class BlockScheme:
    """
    K evaluation blocks H_k of length r and their training complements

    Indices are 0-based positions in the pre-period. Pre-period positions not
    covered by any block belong to every training set.
    """

    def __init__(
        self,
        k: int,
        r: int,
        t0: int,
        t1: int,
        blocks: List[np.ndarray],
        position: BlockPosition = BlockPosition.FIRST
    ):
        self.k = k
        self.r = r
        self.t0 = t0
        self.t1 = t1
        self.blocks = blocks
        self.position = position
        everything = np.arange(t0)
        self.training_sets = [np.setdiff1d(everything, block) for block in blocks]

    def periods(self) -> List[List[int]]:
        """Blocks as 1-based period numbers"""
        return [(block + 1).tolist() for block in self.blocks]

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {
            'K': self.k,
            'r': self.r,
            't0': self.t0,
            't1': self.t1,
            'position': self.position.value,
            'blocks': self.periods(),
        }

    def __repr__(self) -> str:
        return f"BlockScheme(K={self.k}, r={self.r}, T0={self.t0}, T1={self.t1})"


def build_blocks(
    t0: int,
    t1: int,
    k: int,
    position: BlockPosition = BlockPosition.FIRST
) -> BlockScheme:
    """
    Partition the pre-period into K consecutive blocks of length r = min(T0 // K, T1)

    Args:
        t0: Pre-treatment periods
        t1: Post-treatment periods
        k: Number of folds
        position: Take the first K*r pre-periods (default) or the last K*r

    Returns:
        BlockScheme

    Raises:
        ConfigurationError: k < 2, t0 < k or t1 < 1
    """
    if k < 2:
        raise ConfigurationError(f"Cross-fitting needs K >= 2 folds, got K={k}")
    if t0 < k:
        raise ConfigurationError(f"K={k} folds need at least K pre-treatment periods, T0={t0}")
    if t1 < 1:
        raise ConfigurationError(f"Need at least one post-treatment period, T1={t1}")

    r = min(t0 // k, t1)
    offset = 0 if BlockPosition(position) == BlockPosition.FIRST else t0 - k * r
    blocks = [offset + np.arange(j * r, (j + 1) * r) for j in range(k)]
    return BlockScheme(k=k, r=r, t0=t0, t1=t1, blocks=blocks, position=BlockPosition(position))
