"""Meet-in-the-middle minimum span.

Only the T values for subsets of size <= n/2 are computed.  An optimal
assignment, sorted by color, splits into a lower half X (read in reverse
from its top color, which yields a bound function f on X) and an upper half
whose bounds f_bar are induced by X:

    span = min over |X| = n/2 and f of  T[X, f] + T[V - X, f_bar] - 1
    f_bar(v) = 1 + max({1 + w(u, v) - f(u) : u in X, uv an edge} | {0})

Odd n is handled by appending one isolated vertex.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .model import Assignment, ChannelInstance, evaluate_assignment
from .span_dp import DEFAULT_HALF_BUDGET, build_half_table, witness_colors
from .tables import BoundFunction, HalfTable, digit_matrix, masks_of_size, members, place_values


@dataclass(frozen=True)
class MergeCandidate:
    X: int
    f: BoundFunction
    t_low: int
    t_high: int

    @property
    def value(self) -> int:
        return self.t_low + self.t_high - 1


@dataclass
class MimResult:
    span: int
    best: MergeCandidate
    candidates: int
    table: HalfTable
    padded: ChannelInstance


def complement_f(inst: ChannelInstance, f: BoundFunction) -> BoundFunction:
    """f_bar on V - X for a bound function f on X."""
    fd = f.as_dict()
    W = inst.matrix
    comp = [v for v in range(inst.n) if v not in fd]
    vals = []
    for v in comp:
        terms = [1 + int(W[u, v]) - fu for u, fu in fd.items() if W[u, v] > 0]
        vals.append(1 + max(terms + [0]))
    mask = ((1 << inst.n) - 1) & ~f.subset
    return BoundFunction(mask, tuple(vals))


def complement_digits(W: np.ndarray, xs, comp, D: np.ndarray) -> np.ndarray:
    """Vectorized f_bar: digits (f_bar - 1) for every row of D (digits of f on xs)."""
    out = np.zeros((D.shape[0], len(comp)), dtype=np.int64)
    for c, v in enumerate(comp):
        for j, u in enumerate(xs):
            w = W[u, v]
            if w > 0:
                # 1 + w - f(u) with f(u) = digit + 1
                np.maximum(out[:, c], w - D[:, j], out=out[:, c])
    return out


def pad_even(inst: ChannelInstance) -> ChannelInstance:
    return inst.with_isolated_vertex() if inst.n % 2 else inst


def _merge_one(inst, table, X, D, pv, full):
    W = inst.matrix
    xs = members(X)
    comp_mask = full & ~X
    comp = members(comp_mask)
    low = table.block(X).astype(np.int64)
    high = table.block(comp_mask)[complement_digits(W, xs, comp, D) @ pv]
    vals = low + high - 1
    i = int(np.argmin(vals))  # first minimizer
    return int(vals[i]), i, int(low[i]), int(high[i])


def mim_merge(inst: ChannelInstance, table: HalfTable, threads: int = 1):
    """Scan every (X, f) with |X| = n/2; returns (best candidate, candidates inspected).

    ``inst`` must have even n.  Subsets are scanned in ascending mask order
    and offsets ascending; the first minimizer wins.
    """
    n = inst.n
    if n % 2:
        raise ValueError("merge needs an even vertex count; pad first")
    h = n // 2
    radix = inst.ell + 1
    D = digit_matrix(h, radix)
    pv = place_values(h, radix)
    full = (1 << n) - 1
    masks = masks_of_size(n, h)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(lambda X: _merge_one(inst, table, X, D, pv, full), masks))
    else:
        results = [_merge_one(inst, table, X, D, pv, full) for X in masks]
    best = None
    for X, (val, i, lo, hi) in zip(masks, results):
        if best is None or val < best[0]:
            best = (val, X, i, lo, hi)
    val, X, i, lo, hi = best
    f = BoundFunction(X, tuple(int(d) + 1 for d in D[i]))
    candidates = len(masks) * D.shape[0]
    return MergeCandidate(X, f, lo, hi), candidates


def mim_run(inst: ChannelInstance, max_entries: int = DEFAULT_HALF_BUDGET, threads: int = 1) -> MimResult:
    padded = pad_even(inst)
    table = build_half_table(padded, max_entries)
    best, count = mim_merge(padded, table, threads)
    return MimResult(best.value, best, count, table, padded)


def mim_span(inst: ChannelInstance, max_entries: int = DEFAULT_HALF_BUDGET, threads: int = 1) -> int:
    return mim_run(inst, max_entries, threads).span


def glue_witness(res: MimResult) -> Assignment:
    """Combine optimal witnesses of both halves into one assignment of the original vertices.

    The lower half is reflected: c(x) = 1 + T[X, f] - c1(x) on X and
    c(v) = T[X, f] + c2(v) - 1 on the complement.
    """
    inst, table, best = res.padded, res.table, res.best
    c1 = witness_colors(inst, table, best.X, best.f.values)
    fbar = complement_f(inst, best.f)
    c2 = witness_colors(inst, table, fbar.subset, fbar.values)
    colors = {x: 1 + best.t_low - c for x, c in c1.items()}
    colors.update({v: best.t_low + c - 1 for v, c in c2.items()})
    return Assignment(tuple(colors[v] for v in range(inst.n)))


def mim_solve(inst: ChannelInstance, max_entries: int = DEFAULT_HALF_BUDGET, threads: int = 1):
    """Returns ``(span, assignment, MimResult)``; the assignment covers the original vertices only."""
    res = mim_run(inst, max_entries, threads)
    glued = glue_witness(res)
    a = Assignment(glued.colors[: inst.n])
    rep = evaluate_assignment(inst, a)
    if not rep.proper or (inst.n and rep.span != res.span):
        raise AssertionError(f"glued witness failed verification: {rep}")
    return res.span, a, res
