"""Generalized T-Coloring, Set Cover, and the Set Cover -> T-Coloring reduction.

T-coloring format (1-based vertices)::

    p tc <n> <s>
    e <u> <v> <tok> <tok> ...     # tok is 'd' or an inclusive range 'd1-d2'

Set Cover format::

    p sc <n> <m> <k>
    s <e1> <e2> ...               # m lines, elements in 1..n

The reduced instance lays colors out on a line in four bands: the set-choice
colors [2**A], the witness colors 1 + j * 2**A, one slot of 4A colors per
set-choice vertex for the binary counters, and after a 2**A gap a free space
of 2k colors that bounds the total size of the chosen cover.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from math import ceil
from typing import Iterable

from .model import FormatError, _content_lines, _int

WITNESS_TABLE_LIMIT = 10**7


def canonical_ranges(values: Iterable[int]) -> tuple[tuple[int, int], ...]:
    """Sorted, disjoint, non-adjacent inclusive ranges covering ``values``."""
    out: list[list[int]] = []
    for d in sorted(set(values)):
        if out and d == out[-1][1] + 1:
            out[-1][1] = d
        else:
            out.append([d, d])
    return tuple((lo, hi) for lo, hi in out)


@dataclass(frozen=True, eq=True)
class TColoringInstance:
    """``t`` maps 0-based pairs (u, v), u < v, to canonical forbidden-distance ranges."""

    n: int
    s: int
    t: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0 or self.s < 1:
            raise ValueError("need n >= 0 and s >= 1")
        canon = {}
        for (u, v), ranges in self.t.items():
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"bad pair ({u}, {v})")
            vals = [d for lo, hi in ranges for d in range(lo, hi + 1)]
            if any(not 0 <= d <= self.s - 1 for d in vals):
                raise ValueError(f"forbidden distance outside [0, {self.s - 1}] on ({u}, {v})")
            if vals:
                canon[(min(u, v), max(u, v))] = canonical_ranges(vals)
        object.__setattr__(self, "t", dict(sorted(canon.items())))

    @classmethod
    def from_sets(cls, n: int, s: int, t: dict) -> "TColoringInstance":
        return cls(n, s, {pair: canonical_ranges(ds) for pair, ds in t.items()})

    def forbidden_sets(self) -> dict[tuple[int, int], frozenset]:
        return self._forbidden

    @cached_property
    def _forbidden(self):
        return {
            pair: frozenset(d for lo, hi in rs for d in range(lo, hi + 1)) for pair, rs in self.t.items()
        }

    @property
    def constraint_count(self) -> int:
        return sum(hi - lo + 1 for rs in self.t.values() for lo, hi in rs)

    def violations(self, colors) -> list[tuple[int, int, int]]:
        return [
            (u, v, abs(colors[u] - colors[v]))
            for (u, v), forb in self._forbidden.items()
            if abs(colors[u] - colors[v]) in forb
        ]

    def is_proper(self, colors) -> bool:
        if len(colors) != self.n or any(not 1 <= c <= self.s for c in colors):
            return False
        return not self.violations(colors)


def parse_tcoloring(text: str) -> TColoringInstance:
    n = s = None
    t: dict[tuple[int, int], set[int]] = {}
    for lineno, toks in _content_lines(text):
        if toks[0] == "p":
            if len(toks) != 4 or toks[1] != "tc":
                raise FormatError("expected 'p tc <n> <s>'", lineno)
            n, s = _int(toks[2], lineno), _int(toks[3], lineno)
            if n < 0 or s < 1:
                raise FormatError("need n >= 0 and s >= 1", lineno)
        elif toks[0] == "e":
            if n is None:
                raise FormatError("constraint before problem line", lineno)
            if len(toks) < 3:
                raise FormatError("expected 'e <u> <v> <tok>...'", lineno)
            u, v = _int(toks[1], lineno), _int(toks[2], lineno)
            if not (1 <= u <= n and 1 <= v <= n) or u == v:
                raise FormatError(f"bad vertex pair {u} {v}", lineno)
            key = (min(u, v) - 1, max(u, v) - 1)
            if key in t:
                raise FormatError(f"duplicate pair {u} {v}", lineno)
            ds: set[int] = set()
            for tok in toks[3:]:
                lo, sep, hi = tok.partition("-")
                a = _int(lo, lineno)
                b = _int(hi, lineno) if sep else a
                if a > b:
                    raise FormatError(f"empty range {tok!r}", lineno)
                if a < 0 or b > s - 1:
                    raise FormatError(f"distance outside [0, {s - 1}] in {tok!r}", lineno)
                ds.update(range(a, b + 1))
            t[key] = ds
        else:
            raise FormatError(f"unknown line type {toks[0]!r}", lineno)
    if n is None:
        raise FormatError("missing 'p tc' problem line")
    return TColoringInstance.from_sets(n, s, t)


def serialize_tcoloring(tc: TColoringInstance) -> str:
    lines = [f"p tc {tc.n} {tc.s}"]
    for (u, v), rs in tc.t.items():
        toks = [str(lo) if lo == hi else f"{lo}-{hi}" for lo, hi in rs]
        lines.append(f"e {u + 1} {v + 1} " + " ".join(toks))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SetCoverInstance:
    """Universe [n], sets as frozensets of 1-based elements, budget k."""

    n: int
    sets: tuple[frozenset, ...]
    k: int
    require_cover: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(S) for S in self.sets))
        if self.n < 0 or self.k < 0:
            raise ValueError("need n >= 0 and k >= 0")
        for S in self.sets:
            if any(not 1 <= e <= self.n for e in S):
                raise ValueError(f"set {sorted(S)} has elements outside [1, {self.n}]")
        if self.require_cover and frozenset().union(*self.sets) != frozenset(range(1, self.n + 1)):
            raise ValueError("the sets do not cover the universe")

    @property
    def m(self) -> int:
        return len(self.sets)


def parse_setcover(text: str, require_cover: bool = True) -> SetCoverInstance:
    header = None
    sets: list[frozenset] = []
    for lineno, toks in _content_lines(text):
        if toks[0] == "p":
            if len(toks) != 5 or toks[1] != "sc":
                raise FormatError("expected 'p sc <n> <m> <k>'", lineno)
            header = tuple(_int(x, lineno) for x in toks[2:])
        elif toks[0] == "s":
            if header is None:
                raise FormatError("set before problem line", lineno)
            elems = [_int(x, lineno) for x in toks[1:]]
            if any(not 1 <= e <= header[0] for e in elems):
                raise FormatError(f"element outside 1..{header[0]}", lineno)
            sets.append(frozenset(elems))
        else:
            raise FormatError(f"unknown line type {toks[0]!r}", lineno)
    if header is None:
        raise FormatError("missing 'p sc' problem line")
    n, m, k = header
    if len(sets) != m:
        raise FormatError(f"header announces {m} sets, found {len(sets)}")
    try:
        return SetCoverInstance(n, tuple(sets), k, require_cover)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_setcover(sc: SetCoverInstance) -> str:
    lines = [f"p sc {sc.n} {sc.m} {sc.k}"]
    lines += [" ".join(["s"] + [str(e) for e in sorted(S)]) for S in sc.sets]
    return "\n".join(lines) + "\n"


def domset_to_setcover(n: int, edges: Iterable[tuple[int, int]], k: int) -> SetCoverInstance:
    """Closed neighborhoods N[v] of a graph on 1-based vertices 1..n as a Set Cover instance."""
    nbhd = {v: {v} for v in range(1, n + 1)}
    for u, v in edges:
        nbhd[u].add(v)
        nbhd[v].add(u)
    return SetCoverInstance(n, tuple(frozenset(nbhd[v]) for v in range(1, n + 1)), k)


def small_setcover_family(max_n: int = 3, max_m: int = 3) -> list[tuple[int, tuple[frozenset, ...]]]:
    """Every covering multiset of at most ``max_m`` nonempty subsets of [n], n <= ``max_n``.

    Sets are listed in a canonical order, so each family appears once.
    """
    out = []
    for n in range(1, max_n + 1):
        universe = frozenset(range(1, n + 1))
        subsets = [frozenset(c) for r in range(1, n + 1) for c in combinations(sorted(universe), r)]
        for m in range(1, max_m + 1):
            for sets in combinations_with_replacement(subsets, m):
                if frozenset().union(*sets) == universe:
                    out.append((n, sets))
    return out


# --- reduction building blocks -------------------------------------------------


def witness_of_index(i: int, m: int, B: int) -> tuple[int, ...]:
    """The i-th (1-based) B-tuple over [m] in lexicographic order."""
    if not 1 <= i <= m**B:
        raise ValueError(f"witness index {i} outside [1, {m}**{B}]")
    i -= 1
    out = []
    for _ in range(B):
        i, d = divmod(i, m)
        out.append(d + 1)
    return tuple(reversed(out))


def index_of_witness(tup: tuple[int, ...], m: int, B: int) -> int:
    if len(tup) != B or any(not 1 <= x <= m for x in tup):
        raise ValueError(f"{tup} is not a {B}-tuple over [{m}]")
    i = 0
    for x in tup:
        i = i * m + (x - 1)
    return i + 1


def subset_of_color(c: int, group_size: int) -> frozenset:
    """Positions (1-based) chosen by color c: bit j of c - 1 selects position j + 1."""
    if not 1 <= c <= 2**group_size:
        raise ValueError(f"color {c} outside [1, {2**group_size}]")
    return frozenset(j + 1 for j in range(group_size) if (c - 1) >> j & 1)


def set_group(m: int, A: int, i: int) -> range:
    """1-based indices of the sets represented by set-choice vertex i."""
    return range((i - 1) * A + 1, min(i * A, m) + 1)


def element_group(n: int, B: int, i: int) -> range:
    return range((i - 1) * B + 1, min(i * B, n) + 1)


def chosen_sets(m: int, A: int, i: int, c: int) -> frozenset:
    base = (i - 1) * A
    return frozenset(base + p for p in subset_of_color(c, A) if base + p <= m)


def forbidden_set(sc: SetCoverInstance, A: int, B: int, i: int, j: int) -> frozenset:
    """Colors of set-choice vertex i that drop a set the j-th witness relies on."""
    need = set(witness_of_index(j, sc.m, B)) & set(set_group(sc.m, A, i))
    return frozenset(c for c in range(1, 2**A + 1) if not need <= chosen_sets(sc.m, A, i, c))


def is_witness(sc: SetCoverInstance, B: int, i: int, j: int) -> bool:
    covered = frozenset().union(*(sc.sets[t - 1] for t in witness_of_index(j, sc.m, B)))
    return set(element_group(sc.n, B, i)) <= covered


@dataclass(frozen=True)
class ReductionReport:
    vertex_count: int
    constraint_count: int
    s: int
    q: int
    A: int
    B: int
    set_groups: int
    element_groups: int
    counter_bits: int
    slots: tuple[tuple[int, int], ...]
    free_space: tuple[int, int]  # inclusive; empty when lo > hi
    witness_table_size: int
    labels: tuple[str, ...]
    allowed: tuple[frozenset, ...]
    # vertex index layout
    v_left: int = 0
    v_right: int = 1

    def set_vertex(self, i: int) -> int:
        return 2 + (i - 1)

    def witness_vertex(self, i: int) -> int:
        return 2 + self.set_groups + (i - 1)

    def counter_vertex(self, i: int, j: int) -> int:
        return 2 + self.set_groups + self.element_groups + (i - 1) * self.counter_bits + j

    def slot_color(self, i: int, j: int) -> int:
        """The only in-slot color of the counter vertex for bit j of group i."""
        return self.q + (i - 1) * 4 * self.A + 3 * 2**j - 2

    def as_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "constraint_count": self.constraint_count,
            "s": self.s,
            "q": self.q,
            "A": self.A,
            "B": self.B,
            "slots": [list(x) for x in self.slots],
            "free_space": list(self.free_space),
            "witness_table_size": self.witness_table_size,
        }


def predicted_vertex_count(n: int, m: int, A: int, B: int) -> int:
    gS = ceil(m / A)
    return ceil(n / B) + gS + gS * (1 + (A.bit_length() - 1)) + 2


def predicted_span(m: int, k: int, A: int, B: int) -> int:
    return 2**A + 2**A * m**B + 4 * A * ceil(m / A) + 2**A + 2 * k


def reduce_setcover_to_tcoloring(sc: SetCoverInstance, A: int, B: int, literal: bool = False):
    """Equivalent Generalized T-Coloring instance; returns ``(instance, report)``.

    A counter vertex of radius r may only sit in the free space with its
    whole disk inside it, i.e. at colors [lo + r - 1, hi - r + 1].  With
    ``literal=True`` every counter vertex may use the whole free space; the
    disk constraints are then only pairwise and a lone disk of radius r > k
    fits, so that variant is not equivalent (it accepts e.g. {1}, {2} with
    k = 1 and A = 2).
    """
    m, n, k = sc.m, sc.n, sc.k
    if not (isinstance(A, int) and 1 <= A <= m):
        raise ValueError(f"A must be an integer in [1, {m}]")
    if not (isinstance(B, int) and 1 <= B <= n):
        raise ValueError(f"B must be an integer in [1, {n}]")
    two_a = 2**A
    mB = m**B
    if two_a * mB > WITNESS_TABLE_LIMIT:
        raise ValueError(f"2**A * m**B = {two_a * mB} exceeds {WITNESS_TABLE_LIMIT}")

    gS, gU = ceil(m / A), ceil(n / B)
    bits = 1 + (A.bit_length() - 1)
    q = (1 + mB) * two_a
    s = predicted_span(m, k, A, B)
    free = (q + gS * 4 * A + two_a + 1, q + gS * 4 * A + two_a + 2 * k)
    slots = tuple((q + 1 + (i - 1) * 4 * A, q + i * 4 * A) for i in range(1, gS + 1))

    labels = ["vL", "vR"]
    labels += [f"s{i}" for i in range(1, gS + 1)]
    labels += [f"u{i}" for i in range(1, gU + 1)]
    labels += [f"p{i}.{j}" for i in range(1, gS + 1) for j in range(bits)]
    nv = len(labels)
    allowed: list[frozenset] = [frozenset(range(1, s + 1))] * 2

    report_stub = ReductionReport(
        nv, 0, s, q, A, B, gS, gU, bits, slots, free, mB, tuple(labels), ()
    )
    t: dict[tuple[int, int], set[int]] = {}

    def forbid(x, y, ds):
        t.setdefault((min(x, y), max(x, y)), set()).update(ds)

    forbid(0, 1, range(0, s - 1))

    for i in range(1, gS + 1):
        size = len(set_group(m, A, i))
        allowed.append(frozenset(range(1, 2**size + 1)))
    witnesses = [witness_of_index(j, m, B) for j in range(1, mB + 1)]
    for i in range(1, gU + 1):
        allowed.append(frozenset(1 + j * two_a for j in range(1, mB + 1) if is_witness(sc, B, i, j)))
    free_colors = frozenset(range(free[0], free[1] + 1))
    radius = {}
    for i in range(1, gS + 1):
        for j in range(bits):
            x = report_stub.counter_vertex(i, j)
            radius[x] = r = 2**j
            inset = free_colors if literal else frozenset(range(free[0] + r - 1, free[1] - r + 2))
            allowed.append(frozenset({report_stub.slot_color(i, j)}) | inset)
    assert len(allowed) == nv and len(witnesses) == mB

    for v in range(2, nv):
        forbid(0, v, [d for d in range(s) if d + 1 not in allowed[v]])

    F = {(i, j): forbidden_set(sc, A, B, i, j) for i in range(1, gS + 1) for j in range(1, mB + 1)}
    for iu in range(1, gU + 1):
        u = report_stub.witness_vertex(iu)
        for i in range(1, gS + 1):
            forbid(u, report_stub.set_vertex(i), {1 + j * two_a - f for j in range(1, mB + 1) for f in F[i, j]})

    for x, y in combinations(sorted(radius), 2):
        forbid(x, y, range(0, radius[x] + radius[y]))

    for i in range(1, gS + 1):
        si = report_stub.set_vertex(i)
        for j in range(bits):
            x = report_stub.counter_vertex(i, j)
            a_x = report_stub.slot_color(i, j)
            ds = {a_x - b for b in allowed[si] if len(chosen_sets(m, A, i, b)) >> j & 1}
            forbid(si, x, ds)

    tc = TColoringInstance.from_sets(nv, s, t)
    report = ReductionReport(
        nv, tc.constraint_count, s, q, A, B, gS, gU, bits, slots, free, mB, tuple(labels), tuple(allowed)
    )
    return tc, report


def encode_cover(sc: SetCoverInstance, report: ReductionReport, cover: Iterable[int]) -> tuple[int, ...]:
    """Coloring of the reduced instance that represents a cover (1-based set indices).

    Set-choice vertices take the color of their chosen sets, witness vertices
    the color of a covering tuple, counter bits that are set move into the free
    space as tightly packed disks.  The result is proper whenever ``cover``
    covers the universe with at most k sets.
    """
    cover = sorted(set(cover))
    A, B, m = report.A, report.B, sc.m
    colors = [0] * report.vertex_count
    colors[report.v_left], colors[report.v_right] = 1, report.s
    for i in range(1, report.set_groups + 1):
        base = (i - 1) * A
        c = 1 + sum(1 << (t - base - 1) for t in cover if base < t <= base + A)
        colors[report.set_vertex(i)] = c
    for i in range(1, report.element_groups + 1):
        tup = []
        for e in element_group(sc.n, B, i):
            tup.append(next(t for t in cover if e in sc.sets[t - 1]))
        tup += [tup[0]] * (B - len(tup))
        colors[report.witness_vertex(i)] = 1 + index_of_witness(tuple(tup), m, B) * 2**A
    cursor = report.free_space[0]
    for i in range(1, report.set_groups + 1):
        count = len([t for t in cover if t in set_group(m, A, i)])
        for j in range(report.counter_bits):
            x = report.counter_vertex(i, j)
            if count >> j & 1:
                r = 2**j
                colors[x] = cursor + r - 1
                cursor += 2 * r
            else:
                colors[x] = report.slot_color(i, j)
    return tuple(colors)


def structural_violations(sc: SetCoverInstance, tc: TColoringInstance, report: ReductionReport) -> list[str]:
    """Closed-form and layout checks on a generated instance; empty when all hold.

    * vertex count and s equal their closed forms;
    * every counter vertex's disk fits inside its slot;
    * a witness vertex at 1 + j 2**A excludes exactly the colors F_{i,j} of s_i
      (and the distances of any j' >= 2 never land in [2**A]);
    * every forbidden distance lies in [0, s - 1].
    """
    A, B = report.A, report.B
    two_a = 2**A
    out = []
    if report.vertex_count != predicted_vertex_count(sc.n, sc.m, A, B) or tc.n != report.vertex_count:
        out.append(f"vertex count {tc.n} != closed form")
    if report.s != predicted_span(sc.m, sc.k, A, B) or tc.s != report.s:
        out.append(f"s {tc.s} != closed form")
    for i in range(1, report.set_groups + 1):
        lo, hi = report.slots[i - 1]
        for j in range(report.counter_bits):
            a_x, r = report.slot_color(i, j), 2**j
            if a_x - report.q - (i - 1) * 4 * A + r > 4 * A or not (lo <= a_x - r + 1 and a_x + r - 1 <= hi):
                out.append(f"counter ({i}, {j}) disk leaves its slot")
    forb = tc.forbidden_sets()
    for iu in range(1, report.element_groups + 1):
        u = report.witness_vertex(iu)
        for i in range(1, report.set_groups + 1):
            key = tuple(sorted((u, report.set_vertex(i))))
            ds = forb.get(key, frozenset())
            for j in range(1, report.witness_table_size + 1):
                cu = 1 + j * two_a
                excluded = {c for c in range(1, two_a + 1) if cu - c in ds}
                if excluded != forbidden_set(sc, A, B, i, j):
                    out.append(f"u{iu} at color {cu} excludes {sorted(excluded)} of s{i}")
                if j >= 2 and any(1 + j * two_a - f <= two_a for f in forbidden_set(sc, A, B, i, j)):
                    out.append(f"gap violated for s{i}, j={j}")
    for (u, v), ds in forb.items():
        if any(not 0 <= d <= tc.s - 1 for d in ds):
            out.append(f"distance outside [0, s-1] on ({u}, {v})")
    return out
