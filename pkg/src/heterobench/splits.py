"""Split generation (50%/25%/25% train/validation/test) and split filtering.

Each split shuffles the node set with its own sub-stream of the master seed,
so regenerating with more splits never perturbs the earlier ones. External
split files (published standard splits this toolkit cannot reconstruct) are
ingested through splits.json instead of being regenerated.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .graph import Split, SplitSet
from .rng import Xoshiro256StarStar, substream_seed


def split_sizes(num_nodes: int) -> tuple[int, int, int]:
    train = (num_nodes + 1) // 2
    validation = (num_nodes - train + 1) // 2
    return train, validation, num_nodes - train - validation


def generate_splits(num_nodes: int, num_splits: int = 10, seed: int = 0) -> SplitSet:
    if num_nodes < 4:
        raise ValidationError(f"need at least 4 nodes to split, got {num_nodes}")
    if num_splits < 1:
        raise ValidationError(f"num_splits must be >= 1, got {num_splits}")
    n_train, n_val, _ = split_sizes(num_nodes)

    splits = []
    for i in range(num_splits):
        rng = Xoshiro256StarStar(substream_seed(seed, i))
        order = list(range(num_nodes))
        rng.shuffle(order)
        order = np.asarray(order, dtype=np.int64)
        splits.append(Split(
            train=np.sort(order[:n_train]),
            validation=np.sort(order[n_train:n_train + n_val]),
            test=np.sort(order[n_train + n_val:]),
        ))
    return SplitSet(splits=tuple(splits), seed=seed, num_nodes=num_nodes)


def filter_split_set(splits: SplitSet, old_to_new: np.ndarray) -> SplitSet:
    """Drop removed nodes (map value -1) from every set and remap survivors.

    The partition property is re-validated on the filtered node set; a split
    left without test nodes is an error.
    """
    old_to_new = np.asarray(old_to_new, dtype=np.int64)
    if len(old_to_new) != splits.num_nodes:
        raise ValidationError(
            f"index map covers {len(old_to_new)} nodes but splits cover {splits.num_nodes}")
    new_num_nodes = int((old_to_new >= 0).sum())

    def remap(part: np.ndarray) -> np.ndarray:
        mapped = old_to_new[part]
        return np.sort(mapped[mapped >= 0])

    filtered = tuple(
        Split(train=remap(s.train), validation=remap(s.validation), test=remap(s.test))
        for s in splits
    )
    return SplitSet(splits=filtered, seed=splits.seed, num_nodes=new_num_nodes)
