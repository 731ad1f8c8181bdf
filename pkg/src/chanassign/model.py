"""Channel Assignment instances, assignments and their text formats.

Vertices are 0-based inside the library and 1-based in every file format;
the parsers and serializers are the only place the shift happens.

Instance format::

    c optional comment (lines starting with 'c' or '#')
    p ca <n> <m>
    e <u> <v> <w>        # m lines, 1 <= u, v <= n, u != v, w >= 1

Assignment format::

    p assign <n>
    <c_1> <c_2> ... <c_n>
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .rng import SplitMix64


class FormatError(ValueError):
    """Malformed or invalid input text (carries the offending line number)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(RuntimeError):
    """A table or search would exceed its configured resource budget."""


@dataclass(frozen=True)
class ChannelInstance:
    """Symmetric edge-weighted graph. ``edges`` holds ``(u, v, w)`` with u < v, w >= 1."""

    n: int
    edges: tuple[tuple[int, int, int], ...] = field(default=())

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        for u, v, w in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")
            if w < 1:
                raise ValueError(f"edge ({u}, {v}) has weight {w} < 1")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @classmethod
    def from_weights(cls, n: int, weights: Mapping[tuple[int, int], int]) -> "ChannelInstance":
        """Build from a 0-based ``{(u, v): w}`` map; zero weights are dropped."""
        edges = []
        seen = {}
        for (u, v), w in weights.items():
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            a, b = min(u, v), max(u, v)
            if (a, b) in seen and seen[(a, b)] != w:
                raise ValueError(f"asymmetric weight on ({a}, {b})")
            seen[(a, b)] = w
        for (a, b), w in seen.items():
            if w < 0:
                raise ValueError(f"negative weight on ({a}, {b})")
            if w > 0:
                edges.append((a, b, w))
        return cls(n, tuple(edges))

    @property
    def ell(self) -> int:
        return max((w for _, _, w in self.edges), default=0)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Dense symmetric weight matrix, 0 on non-edges and the diagonal."""
        m = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v, w in self.edges:
            m[u, v] = m[v, u] = w
        m.setflags(write=False)
        return m

    def w(self, u: int, v: int) -> int:
        return int(self.matrix[u, v])

    def with_isolated_vertex(self) -> "ChannelInstance":
        return ChannelInstance(self.n + 1, self.edges)

    def digest(self) -> str:
        return hashlib.sha256(serialize_instance(self).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Assignment:
    colors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if any(c < 1 for c in self.colors):
            raise ValueError("colors must be positive")

    def __len__(self):
        return len(self.colors)

    @property
    def span(self) -> int:
        return max(self.colors, default=1)


@dataclass(frozen=True)
class AssignmentReport:
    proper: bool
    span: int
    # (u, v, w, |c(u) - c(v)|), 0-based vertices
    violations: tuple[tuple[int, int, int, int], ...]


def evaluate_assignment(inst: ChannelInstance, a: Assignment | Iterable[int]) -> AssignmentReport:
    if not isinstance(a, Assignment):
        a = Assignment(tuple(a))
    if len(a) != inst.n:
        raise ValueError(f"assignment has {len(a)} colors, instance has {inst.n} vertices")
    c = a.colors
    bad = tuple(
        (u, v, w, abs(c[u] - c[v])) for u, v, w in inst.edges if abs(c[u] - c[v]) < w
    )
    return AssignmentReport(proper=not bad, span=a.span, violations=bad)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#c":
            continue
        yield lineno, line.split()


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected an integer, got {tok!r}", lineno) from None


def parse_instance(text: str) -> ChannelInstance:
    n = m = None
    weights: dict[tuple[int, int], int] = {}
    for lineno, toks in _content_lines(text):
        if toks[0] == "p":
            if n is not None:
                raise FormatError("second problem line", lineno)
            if len(toks) != 4 or toks[1] != "ca":
                raise FormatError("expected 'p ca <n> <m>'", lineno)
            n, m = _int(toks[2], lineno), _int(toks[3], lineno)
            if n < 0 or m < 0:
                raise FormatError("negative count in header", lineno)
        elif toks[0] == "e":
            if n is None:
                raise FormatError("edge before problem line", lineno)
            if len(toks) != 4:
                raise FormatError("expected 'e <u> <v> <w>'", lineno)
            u, v, w = (_int(t, lineno) for t in toks[1:])
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(f"vertex id out of range 1..{n}", lineno)
            if u == v:
                raise FormatError(f"loop edge at vertex {u}", lineno)
            if w <= 0:
                raise FormatError(f"edge weight must be >= 1, got {w}", lineno)
            key = (min(u, v) - 1, max(u, v) - 1)
            if key in weights:
                raise FormatError(f"duplicate edge {u} {v}", lineno)
            weights[key] = w
        else:
            raise FormatError(f"unknown line type {toks[0]!r}", lineno)
    if n is None:
        raise FormatError("missing 'p ca' problem line")
    if len(weights) != m:
        raise FormatError(f"header announces {m} edges, found {len(weights)}")
    return ChannelInstance(n, tuple((u, v, w) for (u, v), w in weights.items()))


def serialize_instance(inst: ChannelInstance) -> str:
    lines = [f"p ca {inst.n} {len(inst.edges)}"]
    lines += [f"e {u + 1} {v + 1} {w}" for u, v, w in inst.edges]
    return "\n".join(lines) + "\n"


def parse_assignment(text: str) -> Assignment:
    n = None
    colors: list[int] = []
    for lineno, toks in _content_lines(text):
        if toks[0] == "p":
            if len(toks) != 3 or toks[1] != "assign":
                raise FormatError("expected 'p assign <n>'", lineno)
            n = _int(toks[2], lineno)
        else:
            if n is None:
                raise FormatError("colors before problem line", lineno)
            colors += [_int(t, lineno) for t in toks]
    if n is None:
        raise FormatError("missing 'p assign' problem line")
    if len(colors) != n:
        raise FormatError(f"expected {n} colors, found {len(colors)}")
    if any(c < 1 for c in colors):
        raise FormatError("colors must be positive")
    return Assignment(tuple(colors))


def serialize_assignment(a: Assignment) -> str:
    return f"p assign {len(a)}\n" + " ".join(map(str, a.colors)) + "\n"


def random_instance(n: int, density: float, wmax: int, seed: int) -> ChannelInstance:
    """Random instance from a SplitMix64 stream.

    Pairs (u, v), u < v, are visited in lexicographic order. Each pair draws
    one 64-bit word; it is an edge when ``(word >> 11) * 2**-53 < density``.
    An edge then draws a second word and gets weight ``1 + word % wmax``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    if wmax < 1:
        raise ValueError("wmax must be >= 1")
    gen = SplitMix64(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if gen.next_float() < density:
                edges.append((u, v, 1 + gen.next_u64() % wmax))
    return ChannelInstance(n, tuple(edges))


def instance_with_ell(n: int, density: float, ell: int, seed: int) -> ChannelInstance:
    """Random instance whose largest weight is exactly ``ell``.

    Draws ``random_instance(n, density, ell, seed)`` and, if no edge reached
    weight ``ell``, sets the pair (0, 1) to ``ell``.
    """
    inst = random_instance(n, density, max(ell, 1), seed)
    if ell == 0:
        return ChannelInstance(n)
    if n < 2:
        raise ValueError("need n >= 2 for a positive ell")
    if inst.ell == ell:
        return inst
    weights = {(u, v): w for u, v, w in inst.edges}
    weights[(0, 1)] = ell
    return ChannelInstance.from_weights(n, weights)
