"""Exact counting of proper assignments by largest color, via meet-in-the-middle.

Q[X, f, r] counts proper assignments of G[X] with c >= f and largest color
exactly r.  Splitting on the smallest vertex colored 1 (or shifting every
color down when none is) gives

    Q[X, f, r] = sum_{v : f(v) = 1} Q[X - v, f_v, r] + [r > 1] Q[X, f_down, r - 1]
    f_v(x)     = max(f(x), 1 + w(v, x), 1 + [x < v])
    f_down(x)  = max(f(x) - 1, 1)
    Q[empty, ., r] = [r = 1]

The merge sorts an assignment by (color, vertex), takes its lower half X
and reads f on X downward from the top color s* of X:

    exact(s) = sum_{s*} sum_{|X| = n/2} sum_{f : f^-1(1) nonempty}
               Qpin[X, f, s*] * Q[V - X, f_tilde, s - s* + 1]

where Qpin counts assignments of X whose colors equal f on f^-1([ell]) and
are >= ell + 1 elsewhere, with every color <= s* (see ``q_star_at_most``).

Bound values live in [1, ell + 1] with ``ell = max(instance ell, 1)``: the
``1 + [x < v]`` term needs the value 2 even on edgeless graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .model import BudgetExceeded, ChannelInstance
from .span_mim import complement_digits, pad_even
from .tables import (
    BoundFunction,
    digit_matrix,
    half_table_size,
    masks_of_size,
    members,
    place_values,
)

DEFAULT_COUNT_BUDGET = 20_000_000


def counting_ell(inst: ChannelInstance) -> int:
    return max(inst.ell, 1)


@dataclass
class CountTable:
    """Q[X, f, r] for |X| <= max_size, r in [0, s]; ``blocks[X][offset, r]`` (column 0 is zero)."""

    n: int
    ell: int
    s: int
    max_size: int
    blocks: dict

    @property
    def entries(self) -> int:
        return sum(b.shape[0] * self.s for b in self.blocks.values())

    def __getitem__(self, key) -> int:
        bf, r = key
        if r < 1:
            return 0
        if r > self.s:
            raise KeyError(f"r = {r} beyond the table's s = {self.s}")
        radix = self.ell + 1
        off = sum((val - 1) * radix**k for k, val in enumerate(bf.values))
        return int(self.blocks[bf.subset][off, r])


@dataclass(frozen=True)
class CountResult:
    exact: int
    at_most: int


def derive_fv_count(inst: ChannelInstance, f: BoundFunction, v: int) -> BoundFunction:
    fd = f.as_dict()
    if v not in fd:
        raise ValueError(f"vertex {v} is not in the subset")
    W = inst.matrix
    rest = {x: max(fx, 1 + int(W[v, x]), 1 + (x < v)) for x, fx in fd.items() if x != v}
    return BoundFunction(f.subset & ~(1 << v), tuple(rest[x] for x in sorted(rest)))


def f_down(f: BoundFunction) -> BoundFunction:
    return BoundFunction(f.subset, tuple(max(x - 1, 1) for x in f.values))


def build_count_table(inst: ChannelInstance, s: int, max_entries: int = DEFAULT_COUNT_BUDGET) -> CountTable:
    """Fill Q for every |X| <= n // 2 and r <= s; r ascending outermost, |X| ascending inside."""
    if s < 1:
        raise ValueError("s must be >= 1")
    n, ell = inst.n, counting_ell(inst)
    radix = ell + 1
    h = n // 2
    size = half_table_size(n, ell, h) * s
    if size > max_entries:
        raise BudgetExceeded(f"count table needs {size} entries, budget is {max_entries}")
    W = inst.matrix

    # per subset: (rows with f(v) = 1, codes of f_v) for each v, plus codes of f_down
    plan: dict[int, tuple[list, np.ndarray]] = {}
    blocks: dict[int, np.ndarray] = {}
    order = [X for k in range(h + 1) for X in masks_of_size(n, k)]
    for X in order:
        xs = members(X)
        k = len(xs)
        D = digit_matrix(k, radix)
        terms = []
        for j, v in enumerate(xs):
            rows = np.nonzero(D[:, j] == 0)[0]
            keep = [i for i in range(k) if i != j]
            others = [xs[i] for i in keep]
            floor = np.array([max(int(W[v, x]), int(x < v)) for x in others], dtype=np.int64)
            nd = np.maximum(D[np.ix_(rows, keep)], floor[None, :])
            terms.append((X & ~(1 << v), rows, nd @ place_values(k - 1, radix)))
        down = np.maximum(D - 1, 0) @ place_values(k, radix)
        plan[X] = (terms, down)
        blocks[X] = np.zeros((radix**k, s + 1), dtype=object)

    blocks[0][0, 1] = 1
    for r in range(1, s + 1):
        for X in order:
            if X == 0:
                continue
            terms, down = plan[X]
            col = np.zeros(blocks[X].shape[0], dtype=object)
            for sub, rows, codes in terms:
                col[rows] += blocks[sub][codes, r]
            if r > 1:
                col += blocks[X][down, r - 1]
            blocks[X][:, r] = col
    return CountTable(n, ell, s, h, blocks)


def _pinned_split(inst, ell, f: BoundFunction):
    fd = f.as_dict()
    pinned = {x: a for x, a in fd.items() if a <= ell}
    free = [x for x, a in fd.items() if a > ell]
    W = inst.matrix
    proper = all(abs(pinned[x] - pinned[y]) >= W[x, y] for x, y in combinations(pinned, 2))
    shifted = tuple(
        max([pinned[y] + int(W[y, x]) - ell for y in pinned] + [1]) for x in free
    )
    return pinned, free, proper, BoundFunction(sum(1 << x for x in free), shifted)


def q_star(inst: ChannelInstance, f: BoundFunction, r: int, table: CountTable) -> int:
    """Pinned-prefix count, case by case.

    Vertices with f(x) <= ell are pinned to f(x), the rest need c(x) >= ell + 1
    and the largest color must be exactly r.  When every vertex is pinned and
    r >= ell + 1 the last case returns Q[empty, ., r - ell] = [r = ell + 1],
    which counts one assignment too many; the merge therefore uses
    ``q_star_at_most``.
    """
    ell = table.ell
    pinned, free, proper, shifted = _pinned_split(inst, ell, f)
    if not proper:
        return 0
    if r <= ell:
        vals = f.values
        return int(r in vals and all(a <= r for a in vals))
    return table[shifted, r - ell]


def q_star_at_most(inst: ChannelInstance, f: BoundFunction, r: int, table: CountTable) -> int:
    """Like ``q_star`` but with largest color at most r."""
    return _q_star_profile(inst, f, table)[r]


def _q_star_profile(inst, f, table) -> list[int]:
    """Index r -> pinned count with largest color <= r, for r in [0, table.s]."""
    ell, s = table.ell, table.s
    pinned, free, proper, shifted = _pinned_split(inst, ell, f)
    out = [0] * (s + 1)
    if not proper:
        return out
    if not free:
        top = max(pinned.values(), default=1)
        return [int(r >= top) for r in range(s + 1)]
    radix = ell + 1
    off = sum((val - 1) * radix**k for k, val in enumerate(shifted.values))
    row = table.blocks[shifted.subset][off]
    acc = 0
    for r in range(ell + 1, s + 1):
        acc += row[r - ell]
        out[r] = acc
    return out


def f_tilde(inst: ChannelInstance, f: BoundFunction) -> BoundFunction:
    """Bounds on V - X: the f_bar bounds plus a floor of 2 below the top vertex colored 1."""
    fd = f.as_dict()
    ones = [x for x, a in fd.items() if a == 1]
    if not ones:
        raise ValueError("f must take the value 1 somewhere")
    top = max(ones)
    W = inst.matrix
    comp = [v for v in range(inst.n) if v not in fd]
    vals = []
    for v in comp:
        terms = [1 + int(W[u, v]) - fu for u, fu in fd.items() if W[u, v] > 0]
        vals.append(1 + max(terms + [int(v < top)]))
    return BoundFunction(((1 << inst.n) - 1) & ~f.subset, tuple(vals))


def _merge_profile(inst: ChannelInstance, table: CountTable, pin_profile) -> list[int]:
    """``out[s']`` = merged count for every s' <= table.s, for an even-sized instance."""
    n, ell, S = inst.n, table.ell, table.s
    radix = ell + 1
    h = n // 2
    W = inst.matrix
    D = digit_matrix(h, radix)
    pv = place_values(n - h, radix)
    full = (1 << n) - 1
    out = [0] * (S + 1)
    for X in masks_of_size(n, h):
        xs = members(X)
        comp = members(full & ~X)
        base = complement_digits(W, xs, comp, D)
        high_block = table.blocks[full & ~X]
        for i in range(D.shape[0]):
            row = D[i]
            ones = [x for x, d in zip(xs, row) if d == 0]
            if not ones:
                continue
            top = max(ones)
            digits = [max(int(b), int(v < top)) for b, v in zip(base[i], comp)]
            high = high_block[int(np.dot(digits, pv))]
            f = BoundFunction(X, tuple(int(d) + 1 for d in row))
            pin = pin_profile(inst, f, table)
            for s in range(1, S + 1):
                out[s] += sum(pin[t] * high[s - t + 1] for t in range(1, s + 1) if pin[t])
    return out


def count_profile(inst: ChannelInstance, s: int, max_entries: int = DEFAULT_COUNT_BUDGET) -> list[int]:
    """``out[r-1]`` = number of proper c: V -> [s] with largest color exactly r, r = 1..s."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if inst.n == 0:
        return [1] + [0] * (s - 1)
    padded = pad_even(inst)
    table = build_count_table(padded, s, max_entries)
    exact = _merge_profile(padded, table, _q_star_profile)[1:]
    if padded is inst:
        return exact
    # the isolated dummy multiplies every at-most count by s'
    at_most, acc = [], 0
    for r, e in enumerate(exact, start=1):
        acc += e
        if acc % r:
            raise AssertionError(f"padded at-most count {acc} not divisible by {r}")
        at_most.append(acc // r)
    return [a - b for a, b in zip(at_most, [0] + at_most[:-1])]


def count_exact_span(inst: ChannelInstance, s: int, max_entries: int = DEFAULT_COUNT_BUDGET) -> int:
    return count_profile(inst, s, max_entries)[-1]


def count_at_most(inst: ChannelInstance, s: int, max_entries: int = DEFAULT_COUNT_BUDGET) -> int:
    return sum(count_profile(inst, s, max_entries))


def count(inst: ChannelInstance, s: int, max_entries: int = DEFAULT_COUNT_BUDGET) -> CountResult:
    prof = count_profile(inst, s, max_entries)
    return CountResult(exact=prof[-1], at_most=sum(prof))
