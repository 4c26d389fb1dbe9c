import numpy as np

from ..errors import ConfigError


def partition(n_signals, worker_count, epoch, seed):
    """Split `n_signals` indices into disjoint near-equal worker shards

    The indices are shuffled with a generator seeded from
    (`seed`, `epoch`); shard sizes differ by at most one, larger
    shards come first.

    Returns
    -------
    shards: list of np.ndarray
        one index array per worker
    """
    if worker_count < 1:
        raise ConfigError(f"Need at least one worker: {worker_count}")
    if worker_count > n_signals:
        raise ConfigError(
            f"Cannot split {n_signals} signals among {worker_count} workers")
    rng = np.random.default_rng([int(seed), int(epoch)])
    perm = rng.permutation(n_signals)
    return np.array_split(perm, worker_count)


def iter_batches(indices, batch_size):
    """Yield consecutive slices of `indices` (last batch may be shorter)"""
    if batch_size < 1:
        raise ConfigError(f"Batch size must be positive: {batch_size}")
    for start in range(0, len(indices), batch_size):
        yield indices[start:start + batch_size]


def batch_count(shard_size, batch_size):
    return -(-shard_size // batch_size)
