"""Minimum span through the left-shift recurrence over (X, f) pairs.

T[X, f] is the minimum span of a proper assignment of G[X] with every
c(x) >= f(x).  Some optimum colors its lowest vertex exactly at its bound,
which gives

    T[X, f] = min_{v in X} ( f(v) + T[X - v, f_v] - 1 ),
    f_v(x)  = 1 + max(w(v, x), f(x) - f(v)),

with T[empty] = 1 so that singletons come out as T[{v}, f] = f(v).
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .model import Assignment, BudgetExceeded, ChannelInstance, evaluate_assignment
from .tables import (
    BoundFunction,
    FullTable,
    HalfTable,
    SubsetTable,
    digit_matrix,
    full_table_size,
    half_table_size,
    masks_of_size,
    members,
    place_values,
)

DEFAULT_FULL_BUDGET = 5_000_000
DEFAULT_HALF_BUDGET = 60_000_000


def derive_fv(inst: ChannelInstance, f: BoundFunction, v: int) -> BoundFunction:
    """Bounds left on X - v once v is colored exactly f(v)."""
    fd = f.as_dict()
    if v not in fd:
        raise ValueError(f"vertex {v} is not in the subset")
    W = inst.matrix
    rest = {x: 1 + max(int(W[v, x]), fx - fd[v]) for x, fx in fd.items() if x != v}
    return BoundFunction(f.subset & ~(1 << v), tuple(rest[x] for x in sorted(rest)))


CHUNK_ELEMENTS = 1 << 22


def _fill(inst: ChannelInstance, max_size: int, cls: type[SubsetTable]) -> SubsetTable:
    """Fill T layer by layer; all subsets of one size are processed together."""
    n, radix = inst.n, inst.ell + 1
    W = inst.matrix
    row_of = np.full(1 << n, -1, dtype=np.int64)
    row_of[0] = 0
    layers = [np.ones((1, 1), dtype=np.int32)]
    blocks: dict[int, np.ndarray] = {0: layers[0][0]}
    for k in range(1, max_size + 1):
        masks = np.array(masks_of_size(n, k), dtype=np.int64)
        row_of[masks] = np.arange(len(masks))
        xs = np.array([members(int(X)) for X in masks], dtype=np.int64).reshape(len(masks), k)
        D = digit_matrix(k, radix)
        pv = place_values(k - 1, radix)
        prev = layers[k - 1]
        layer = np.empty((len(masks), radix**k), dtype=np.int32)
        step = max(1, CHUNK_ELEMENTS // (D.size or 1))
        for lo in range(0, len(masks), step):
            hi = min(lo + step, len(masks))
            best = None
            for j in range(k):
                keep = [i for i in range(k) if i != j]
                v = xs[lo:hi, j]
                wv = W[v[:, None], xs[lo:hi][:, keep]]  # (c, k-1)
                sub_rows = row_of[masks[lo:hi] & ~(np.int64(1) << v)]
                nd = np.maximum(wv[:, None, :], D[None, :, keep] - D[None, :, j : j + 1])
                val = D[None, :, j] + prev[sub_rows[:, None], nd @ pv]
                best = val if best is None else np.minimum(best, val)
            layer[lo:hi] = best
        layers.append(layer)
        for r, X in enumerate(masks.tolist()):
            blocks[X] = layer[r]
    return cls(n, inst.ell, max_size, blocks)


def build_full_table(inst: ChannelInstance, max_entries: int = DEFAULT_FULL_BUDGET) -> FullTable:
    size = full_table_size(inst.n, inst.ell)
    if size > max_entries:
        raise BudgetExceeded(f"full table needs {size} entries, budget is {max_entries}")
    return _fill(inst, inst.n, FullTable)


def build_half_table(inst: ChannelInstance, max_entries: int = DEFAULT_HALF_BUDGET) -> HalfTable:
    size = half_table_size(inst.n, inst.ell)
    if size > max_entries:
        raise BudgetExceeded(f"half table needs {size} entries, budget is {max_entries}")
    return _fill(inst, inst.n // 2, HalfTable)


# A lookup maps (mask, values in ascending member order) to T[X, f].
Lookup = Callable[[int, Sequence[int]], int]


class LazyTable:
    """The same recurrence evaluated on demand, memoizing only reachable pairs.

    Used when the dense table would not fit: from (V, all-ones) only a tiny
    fraction of the (ell+2)**n pairs is ever reached.
    """

    def __init__(self, inst: ChannelInstance):
        self.inst = inst
        self.memo: dict[tuple[int, tuple[int, ...]], int] = {}
        self._W = inst.matrix.tolist()

    @property
    def entries(self) -> int:
        return len(self.memo)

    def value(self, mask: int, values: Sequence[int]) -> int:
        values = tuple(values)
        if mask == 0:
            return 1
        key = (mask, values)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        xs = members(mask)
        W = self._W
        best = None
        for j, v in enumerate(xs):
            fv = values[j]
            sub = tuple(1 + max(W[v][x], fx - fv) for x, fx in zip(xs, values) if x != v)
            val = fv + self.value(mask & ~(1 << v), sub) - 1
            if best is None or val < best:
                best = val
        self.memo[key] = best
        return best


def dp_span(inst: ChannelInstance, method: str = "auto", max_entries: int = DEFAULT_FULL_BUDGET) -> int:
    """T[V, all-ones].

    ``method`` is ``"table"`` (dense table, raises BudgetExceeded when too
    large), ``"lazy"`` (memoized recurrence) or ``"auto"`` (dense when it fits).
    """
    return dp_solve(inst, method, max_entries)[0]


def dp_solve(inst: ChannelInstance, method: str = "auto", max_entries: int = DEFAULT_FULL_BUDGET):
    """Returns ``(span, assignment, table)``."""
    if method not in ("auto", "table", "lazy"):
        raise ValueError(f"unknown method {method!r}")
    if method == "table" or (method == "auto" and full_table_size(inst.n, inst.ell) <= max_entries):
        table = build_full_table(inst, max_entries)
    else:
        table = LazyTable(inst)
    full = (1 << inst.n) - 1
    span = table.value(full, (1,) * inst.n)
    return span, reconstruct_assignment(inst, table), table


def witness_colors(inst: ChannelInstance, table, mask: int, values: Sequence[int]) -> dict[int, int]:
    """An assignment of G[X] above f with span T[X, f], as ``{vertex: color}``.

    Re-walks the recurrence, removing at each step the smallest vertex that
    attains the minimum and coloring it exactly at its (shifted) bound.
    """
    W = inst.matrix
    colors: dict[int, int] = {}
    base = 0  # absolute color = base + relative color
    values = tuple(values)
    target = table.value(mask, values)
    top = target
    while mask:
        xs = members(mask)
        for j, v in enumerate(xs):
            fv = values[j]
            sub_vals = tuple(
                1 + max(int(W[v, x]), fx - fv) for x, fx in zip(xs, values) if x != v
            )
            sub_mask = mask & ~(1 << v)
            if fv + table.value(sub_mask, sub_vals) - 1 == target:
                break
        else:
            raise AssertionError("no vertex attains the recurrence minimum")
        # v is left-shifted: colored exactly at its current bound
        colors[v] = base + fv
        base += fv - 1
        mask, values = sub_mask, sub_vals
        target = table.value(mask, values)
    assert max(colors.values(), default=1) <= top
    return colors


def reconstruct_assignment(inst: ChannelInstance, table) -> Assignment:
    colors = witness_colors(inst, table, (1 << inst.n) - 1, (1,) * inst.n)
    a = Assignment(tuple(colors[v] for v in range(inst.n)))
    rep = evaluate_assignment(inst, a)
    assert rep.proper, f"reconstructed assignment violates {rep.violations}"
    return a
