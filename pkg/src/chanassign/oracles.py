"""Naive reference solvers.

Nothing here shares code with the table-based solvers; every function works
straight from the definition of a proper assignment so that equivalence
tests compare two genuinely different computations.
"""

from __future__ import annotations

from itertools import combinations, product

from .model import Assignment, BudgetExceeded, ChannelInstance
from .tcoloring import TColoringInstance

BF_SPAN_MAX_N = 8
BF_COUNT_BUDGET = 2_000_000
TCOLOR_NODE_BUDGET = 2_000_000


def _weights(inst: ChannelInstance):
    w = [[0] * inst.n for _ in range(inst.n)]
    for u, v, x in inst.edges:
        w[u][v] = w[v][u] = x
    return w


def _extend(w, colors, s, v, n):
    """Backtracking: color vertices v.. with colors in [s], checking earlier vertices."""
    if v == n:
        return True
    for c in range(1, s + 1):
        if all(abs(c - colors[u]) >= w[u][v] for u in range(v)):
            colors[v] = c
            if _extend(w, colors, s, v + 1, n):
                return True
    return False


def bf_solve(inst: ChannelInstance, max_n: int = BF_SPAN_MAX_N) -> tuple[int, Assignment]:
    """Minimum span and the first witness found, by iterative deepening on s."""
    if inst.n > max_n:
        raise BudgetExceeded(f"brute force limited to n <= {max_n}, got {inst.n}")
    w = _weights(inst)
    s = inst.ell + 1 if inst.edges else 1
    while True:
        colors = [0] * inst.n
        if _extend(w, colors, s, 0, inst.n):
            return s, Assignment(tuple(colors))
        s += 1


def bf_span(inst: ChannelInstance, max_n: int = BF_SPAN_MAX_N) -> int:
    return bf_solve(inst, max_n)[0]


def bf_count_profile(inst: ChannelInstance, s: int, budget: int = BF_COUNT_BUDGET) -> list[int]:
    """``out[r-1]`` = number of proper c: V -> [s] whose largest color is exactly r."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if s**inst.n > budget:
        raise BudgetExceeded(f"{s}**{inst.n} assignments exceed the budget {budget}")
    out = [0] * s
    if inst.n == 0:
        out[0] = 1
        return out
    edges = inst.edges
    for c in product(range(1, s + 1), repeat=inst.n):
        if all(abs(c[u] - c[v]) >= x for u, v, x in edges):
            out[max(c) - 1] += 1
    return out


def bf_count(inst: ChannelInstance, s: int, mode: str = "exact", budget: int = BF_COUNT_BUDGET) -> int:
    prof = bf_count_profile(inst, s, budget)
    if mode == "exact":
        return prof[-1]
    if mode in ("at_most", "at-most"):
        return sum(prof)
    raise ValueError(f"unknown mode {mode!r}")


def bf_tcolor_decide(tc: TColoringInstance, node_budget: int = TCOLOR_NODE_BUDGET):
    """Backtracking with forward checking and smallest-domain-first ordering.

    Returns ``(True, Assignment)`` or ``(False, None)``.  Ties in domain size
    go to the lowest vertex index and values are tried ascending, so the
    witness is reproducible.
    """
    n, s = tc.n, tc.s
    nbrs: list[list[tuple[int, frozenset]]] = [[] for _ in range(n)]
    for (u, v), forb in tc.forbidden_sets().items():
        nbrs[u].append((v, forb))
        nbrs[v].append((u, forb))
    domains = [set(range(1, s + 1)) for _ in range(n)]
    colors = [0] * n
    nodes = 0

    def search(unassigned: set[int]) -> bool:
        nonlocal nodes
        if not unassigned:
            return True
        v = min(unassigned, key=lambda x: (len(domains[x]), x))
        rest = unassigned - {v}
        for c in sorted(domains[v]):
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded(f"search exceeded {node_budget} nodes")
            pruned = []
            ok = True
            for u, forb in nbrs[v]:
                if u not in rest:
                    continue
                gone = {d for d in domains[u] if abs(d - c) in forb}
                if gone:
                    domains[u] -= gone
                    pruned.append((u, gone))
                    if not domains[u]:
                        ok = False
                        break
            if ok:
                colors[v] = c
                if search(rest):
                    return True
            for u, gone in pruned:
                domains[u] |= gone
        colors[v] = 0
        return False

    if n == 0:
        return True, Assignment(())
    if search(set(range(n))):
        witness = Assignment(tuple(colors))
        assert tc.is_proper(witness.colors)
        return True, witness
    return False, None


def bf_setcover_positive(sc) -> bool:
    """Is there a subfamily of at most k sets covering [n]?  Exhaustive over subfamilies."""
    universe = frozenset(range(1, sc.n + 1))
    for size in range(0, min(sc.k, sc.m) + 1):
        for pick in combinations(sc.sets, size):
            if frozenset().union(*pick) >= universe:
                return True
    return False
