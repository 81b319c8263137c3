"""Reproducible parallel random-number streams.

Every Monte Carlo path draws from its own counter-based Philox4x64 stream
keyed by ``(master_seed, substream, path_index)``.  Streams never depend on
execution order or worker count, so a run is bit-reproducible for a fixed
configuration no matter how it is parallelised.  Substream ids separate
independent uses of the same master seed (different estimators, routes, or
per-path purposes) and are allocated by the caller.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError

__all__ = ["GENERATOR_NAME", "stream", "normals", "path_block"]

GENERATOR_NAME = "philox4x64"

_PATH_BITS = 40  # per-substream capacity: 2**40 paths


def _key(master_seed, path_index, substream):
    master_seed = int(master_seed)
    path_index = int(path_index)
    substream = int(substream)
    if not 0 <= master_seed < 2**64:
        raise ConfigError("master seed must fit in an unsigned 64-bit integer")
    if path_index < 0 or path_index >= 2**_PATH_BITS:
        raise ConfigError("path index out of range")
    if substream < 0 or substream >= 2 ** (63 - _PATH_BITS):
        raise ConfigError("substream id out of range")
    word = (substream << _PATH_BITS) | path_index
    return np.array([master_seed, word], dtype=np.uint64)


def stream(master_seed, path_index=0, substream=0):
    """Generator for one path: an independent Philox4x64 stream."""
    return np.random.Generator(
        np.random.Philox(key=_key(master_seed, path_index, substream))
    )


def normals(master_seed, path_index, substream, n):
    """Draw ``n`` standard normals from the path's stream."""
    return stream(master_seed, path_index, substream).standard_normal(n)


def path_block(master_seed, substream, first_path, n_paths, n_per_path):
    """Standard-normal block of shape (n_paths, n_per_path), one row per path.

    Row ``i`` reproduces exactly what ``normals(master_seed,
    first_path + i, substream, n_per_path)`` returns, so batching is
    transparent to the per-path stream contract.
    """
    out = np.empty((n_paths, n_per_path))
    for i in range(n_paths):
        gen = stream(master_seed, first_path + i, substream)
        out[i] = gen.standard_normal(n_per_path)
    return out
