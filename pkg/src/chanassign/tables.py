"""Packed indexing of (X, f) pairs and dense per-subset tables.

A bound function f: X -> [ell+1] is stored as its subset bitmask plus a
mixed-radix offset: the digit of the k-th lowest member of X is ``f(v) - 1``
and carries weight ``(ell+1)**k``.  Every subset X owns one dense block of
``(ell+1)**|X|`` entries, so a table restricted to ``|X| <= h`` holds
``sum_{i<=h} C(n, i) (ell+1)**i`` entries and the unrestricted one
``(ell+2)**n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Iterator

import numpy as np


def members(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@lru_cache(maxsize=None)
def masks_of_size(n: int, k: int) -> tuple[int, ...]:
    """All k-subsets of range(n) as bitmasks, ascending."""
    return tuple(sorted(sum(1 << v for v in c) for c in combinations(range(n), k)))


@lru_cache(maxsize=None)
def digit_matrix(k: int, radix: int) -> np.ndarray:
    """Row i holds the k base-``radix`` digits of i, least significant first."""
    size = radix**k
    idx = np.arange(size, dtype=np.int64)
    out = np.empty((size, k), dtype=np.int64)
    for j in range(k):
        out[:, j] = (idx // radix**j) % radix
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def place_values(k: int, radix: int) -> np.ndarray:
    out = np.array([radix**j for j in range(k)], dtype=np.int64)
    out.setflags(write=False)
    return out


def half_table_size(n: int, ell: int, h: int | None = None) -> int:
    if h is None:
        h = n // 2
    return sum(comb(n, i) * (ell + 1) ** i for i in range(h + 1))


def full_table_size(n: int, ell: int) -> int:
    return (ell + 2) ** n


@dataclass(frozen=True)
class BoundFunction:
    """f: X -> [ell+1]; ``values`` lists f(v) for the members of X in ascending order."""

    subset: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != popcount(self.subset):
            raise ValueError("one value per member of the subset is required")

    def as_dict(self) -> dict[int, int]:
        return dict(zip(members(self.subset), self.values))

    @classmethod
    def from_dict(cls, f: dict[int, int]) -> "BoundFunction":
        mask = sum(1 << v for v in f)
        return cls(mask, tuple(f[v] for v in sorted(f)))

    @classmethod
    def constant(cls, mask: int, value: int = 1) -> "BoundFunction":
        return cls(mask, (value,) * popcount(mask))


def encode(bf: BoundFunction, ell: int) -> tuple[int, int]:
    radix = ell + 1
    offset = 0
    for k, val in enumerate(bf.values):
        if not 1 <= val <= radix:
            raise ValueError(f"value {val} outside [1, {radix}]")
        offset += (val - 1) * radix**k
    return bf.subset, offset


def decode(mask: int, offset: int, ell: int) -> BoundFunction:
    radix = ell + 1
    k = popcount(mask)
    if not 0 <= offset < radix**k:
        raise ValueError(f"offset {offset} outside block of size {radix**k}")
    vals = []
    for _ in range(k):
        offset, d = divmod(offset, radix)
        vals.append(d + 1)
    return BoundFunction(mask, tuple(vals))


def enumerate_functions(mask: int, ell: int) -> Iterator[BoundFunction]:
    """All f: X -> [ell+1] in ascending offset order."""
    k = popcount(mask)
    # product() varies its last slot fastest; the lowest member is least significant
    for vals in product(range(1, ell + 2), repeat=k):
        yield BoundFunction(mask, tuple(reversed(vals)))


def offsets_of(digits: np.ndarray, radix: int) -> np.ndarray:
    """Vectorized encode: ``digits`` has shape (rows, k) with values ``f - 1``."""
    return digits @ place_values(digits.shape[1], radix)


class SubsetTable:
    """Blocks of T[X, .] for every X with ``|X| <= max_size``, frozen once built."""

    def __init__(self, n: int, ell: int, max_size: int, blocks: dict[int, np.ndarray]):
        self.n = n
        self.ell = ell
        self.max_size = max_size
        self.blocks = blocks
        for arr in blocks.values():
            arr.setflags(write=False)

    @property
    def radix(self) -> int:
        return self.ell + 1

    @property
    def entries(self) -> int:
        return sum(arr.size for arr in self.blocks.values())

    def block(self, mask: int) -> np.ndarray:
        if popcount(mask) > self.max_size:
            raise KeyError(f"subset {mask:#x} is larger than the stored range {self.max_size}")
        return self.blocks[mask]

    def __getitem__(self, bf: BoundFunction) -> int:
        mask, off = encode(bf, self.ell)
        return int(self.block(mask)[off])

    def value(self, mask: int, values) -> int:
        """T[X, f] with f given as values in ascending member order."""
        return self[BoundFunction(mask, tuple(values))]


class HalfTable(SubsetTable):
    pass


class FullTable(SubsetTable):
    pass
