"""Vertex partitions (community assignments, connected components)."""

from __future__ import annotations

import numpy as np


class Partition:
    """A dense assignment of every vertex to exactly one block.

    Block ids are dense integers in [0, k).  Use :meth:`from_labels` to
    build one from arbitrary (non-dense) labels.
    """

    __slots__ = ("labels", "k")

    def __init__(self, labels, k: int | None = None):
        labels = np.asarray(labels, dtype=np.int64)
        if labels.ndim != 1:
            raise ValueError("labels must be one-dimensional")
        if k is None:
            k = int(labels.max()) + 1 if labels.size else 0
        if labels.size:
            if labels.min() < 0 or labels.max() >= k:
                raise ValueError("labels must lie in [0, k)")
        self.labels = labels
        self.k = int(k)

    @classmethod
    def from_labels(cls, raw) -> "Partition":
        """Compact arbitrary labels into dense block ids."""
        raw = np.asarray(raw)
        uniq, inv = np.unique(raw, return_inverse=True)
        return cls(inv.astype(np.int64), len(uniq))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(np.arange(n, dtype=np.int64), n)

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def members(self, block: int) -> np.ndarray:
        return np.flatnonzero(self.labels == block)

    def subsets(self):
        order = np.argsort(self.labels, kind="stable")
        bounds = np.searchsorted(self.labels[order], np.arange(self.k + 1))
        return [order[bounds[i] : bounds[i + 1]] for i in range(self.k)]

    def __eq__(self, other):
        return (
            isinstance(other, Partition)
            and self.k == other.k
            and np.array_equal(self.labels, other.labels)
        )

    def __repr__(self):
        return f"Partition(n={self.n}, k={self.k})"
