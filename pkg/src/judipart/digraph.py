"""Digraph core: immutable arc-list digraphs with array adjacency.

Conventions used across the package:

- Vertices are integers 0..n-1.
- An arc is an ordered pair (tail, head). Loops and duplicate same-direction
  arcs are rejected at construction; anti-parallel pairs (u, v) and (v, u) are
  allowed and count as two arcs.
- e(A, B) counts arcs with tail in A and head in B; A and B need not be
  disjoint from the rest of the graph, only valid vertex sets.
- A bipartition assigns every vertex side 1 or side 2; the two directed cut
  counts are e12 (side 1 -> side 2) and e21 (side 2 -> side 1).

The arc arrays keep construction order, so serializing and re-parsing a graph
is an identity on both the vertex count and the arc sequence.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DuplicateArcError,
    EdgeListParseError,
    EmptyGraphError,
    LoopArcError,
    PartitionError,
    VertexOutOfRangeError,
)


@dataclass(frozen=True)
class VertexStats:
    """Per-vertex degree bookkeeping.

    splus = outdegree - indegree (signed); sminus = -splus; s = |splus|.
    degree - s is always even: it is twice min(outdegree, indegree).
    """

    dplus: int
    dminus: int
    degree: int
    splus: int
    sminus: int
    s: int


@dataclass(frozen=True)
class CutValue:
    e12: int
    e21: int
    minval: int


class Digraph:
    """Immutable digraph over vertices 0..n-1.

    Build via :func:`from_arc_list` or :func:`parse_edge_list`; the raw
    constructor trusts its inputs.
    """

    __slots__ = (
        "n",
        "m",
        "tails",
        "heads",
        "out_degrees",
        "in_degrees",
        "_out_indptr",
        "_out_targets",
        "_in_indptr",
        "_in_sources",
        "_arc_codes",
    )

    def __init__(self, n: int, tails: np.ndarray, heads: np.ndarray):
        self.n = int(n)
        self.m = int(len(tails))
        self.tails = tails
        self.heads = heads
        self.out_degrees = np.bincount(tails, minlength=n).astype(np.int64)
        self.in_degrees = np.bincount(heads, minlength=n).astype(np.int64)
        order = np.argsort(tails, kind="stable")
        self._out_indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(self.out_degrees, out=self._out_indptr[1:])
        self._out_targets = heads[order]
        order = np.argsort(heads, kind="stable")
        self._in_indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(self.in_degrees, out=self._in_indptr[1:])
        self._in_sources = tails[order]
        self._arc_codes = None
        for arr in (self.tails, self.heads, self.out_degrees, self.in_degrees,
                    self._out_targets, self._in_sources):
            arr.setflags(write=False)

    def out_neighbors(self, v: int) -> np.ndarray:
        return self._out_targets[self._out_indptr[v]:self._out_indptr[v + 1]]

    def in_neighbors(self, v: int) -> np.ndarray:
        return self._in_sources[self._in_indptr[v]:self._in_indptr[v + 1]]

    def arc_codes(self) -> frozenset:
        """Set of tail * n + head codes; built lazily, cached."""
        if self._arc_codes is None:
            codes = self.tails.astype(np.int64) * self.n + self.heads
            self._arc_codes = frozenset(codes.tolist())
        return self._arc_codes

    def has_arc(self, u: int, v: int) -> bool:
        return u * self.n + v in self.arc_codes()

    def degree(self, v: int) -> int:
        return int(self.out_degrees[v] + self.in_degrees[v])

    def degrees(self) -> np.ndarray:
        return self.out_degrees + self.in_degrees

    def to_arc_list(self) -> list[tuple[int, int]]:
        return list(zip(self.tails.tolist(), self.heads.tolist()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and bool(np.array_equal(self.tails, other.tails))
            and bool(np.array_equal(self.heads, other.heads))
        )

    def __hash__(self):
        return hash((self.n, self.m, self.tails.tobytes(), self.heads.tobytes()))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


def from_arc_list(n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
    """Validate and build a digraph from (tail, head) pairs."""
    if n < 0:
        raise VertexOutOfRangeError(f"vertex count must be nonnegative, got {n}")
    pairs = list(arcs)
    if pairs:
        arr = np.asarray(pairs, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise EdgeListParseError("arcs must be (tail, head) pairs")
        tails, heads = arr[:, 0].copy(), arr[:, 1].copy()
    else:
        tails = np.zeros(0, dtype=np.int64)
        heads = np.zeros(0, dtype=np.int64)
    bad = (tails < 0) | (tails >= n) | (heads < 0) | (heads >= n)
    if bad.any():
        i = int(np.argmax(bad))
        raise VertexOutOfRangeError(
            f"arc ({int(tails[i])}, {int(heads[i])}) out of range for n={n}"
        )
    loops = tails == heads
    if loops.any():
        i = int(np.argmax(loops))
        raise LoopArcError(f"loop arc at vertex {int(tails[i])}")
    codes = tails * n + heads
    if len(np.unique(codes)) != len(codes):
        seen = set()
        for u, v in zip(tails.tolist(), heads.tolist()):
            if (u, v) in seen:
                raise DuplicateArcError(f"duplicate arc ({u}, {v})")
            seen.add((u, v))
    return Digraph(n, tails, heads)


def _as_mask(D: Digraph, vs: Iterable[int], what: str) -> np.ndarray:
    mask = np.zeros(D.n, dtype=bool)
    for v in vs:
        if not 0 <= v < D.n:
            raise VertexOutOfRangeError(f"{what} contains vertex {v}, n={D.n}")
        mask[v] = True
    return mask


def e_between(D: Digraph, a: Iterable[int], b: Iterable[int]) -> int:
    """Number of arcs with tail in a and head in b."""
    if D.m == 0:
        _as_mask(D, a, "A"), _as_mask(D, b, "B")
        return 0
    ma = _as_mask(D, a, "A")
    mb = _as_mask(D, b, "B")
    return int(np.count_nonzero(ma[D.tails] & mb[D.heads]))


def vertex_stats(D: Digraph) -> dict[int, VertexStats]:
    out = {}
    for v in range(D.n):
        dp = int(D.out_degrees[v])
        dm = int(D.in_degrees[v])
        sp = dp - dm
        out[v] = VertexStats(
            dplus=dp, dminus=dm, degree=dp + dm, splus=sp, sminus=-sp, s=abs(sp)
        )
    return out


def max_degree(D: Digraph) -> int:
    if D.n == 0:
        raise EmptyGraphError("max degree of an empty graph is undefined")
    if D.m == 0:
        return 0
    return int((D.out_degrees + D.in_degrees).max())


def min_outdegree(D: Digraph) -> int:
    if D.n == 0:
        raise EmptyGraphError("min outdegree of an empty graph is undefined")
    return int(D.out_degrees.min())


class Bipartition:
    """Assignment of every vertex to side 1 or side 2."""

    __slots__ = ("sides",)

    def __init__(self, sides: Sequence[int] | np.ndarray):
        arr = np.asarray(sides, dtype=np.uint8)
        if arr.ndim != 1:
            raise PartitionError("side assignment must be one-dimensional")
        if arr.size and not np.isin(arr, (1, 2)).all():
            raise PartitionError("sides must be 1 or 2")
        arr = arr.copy()
        arr.setflags(write=False)
        self.sides = arr

    @classmethod
    def from_side1(cls, n: int, side1: Iterable[int]) -> "Bipartition":
        sides = np.full(n, 2, dtype=np.uint8)
        for v in side1:
            if not 0 <= v < n:
                raise VertexOutOfRangeError(f"side-1 vertex {v} out of range, n={n}")
            sides[v] = 1
        return cls(sides)

    @property
    def n(self) -> int:
        return int(self.sides.size)

    def side(self, v: int) -> int:
        return int(self.sides[v])

    def side1(self) -> tuple[int, ...]:
        return tuple(np.flatnonzero(self.sides == 1).tolist())

    def side2(self) -> tuple[int, ...]:
        return tuple(np.flatnonzero(self.sides == 2).tolist())

    def flipped(self) -> "Bipartition":
        return Bipartition(np.where(self.sides == 1, 2, 1).astype(np.uint8))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bipartition):
            return NotImplemented
        return bool(np.array_equal(self.sides, other.sides))

    def __hash__(self):
        return hash(self.sides.tobytes())

    def __repr__(self) -> str:
        return f"Bipartition(side1={list(self.side1())})"


def cut_counts(D: Digraph, P: Bipartition) -> CutValue:
    """Directed cut counts of a bipartition."""
    if P.n != D.n:
        raise PartitionError(f"bipartition covers {P.n} vertices, graph has {D.n}")
    if D.m == 0:
        return CutValue(0, 0, 0)
    ts = P.sides[D.tails]
    hs = P.sides[D.heads]
    e12 = int(np.count_nonzero((ts == 1) & (hs == 2)))
    e21 = int(np.count_nonzero((ts == 2) & (hs == 1)))
    return CutValue(e12, e21, min(e12, e21))


def parse_edge_list(text: str) -> Digraph:
    """Parse the package edge-list format.

    Lines starting with '#' and blank lines are ignored. The first data line
    is 'n m'; exactly m data lines 'u v' follow (0-based vertex ids).
    """
    header = None
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"line {lineno}: expected two integers, got {raw!r}")
        if header is None:
            header = (a, b, lineno)
        else:
            arcs.append((a, b))
    if header is None:
        raise EdgeListParseError("no header line 'n m' found")
    n, m, lineno = header
    if n < 0 or m < 0:
        raise EdgeListParseError(f"line {lineno}: header values must be nonnegative")
    if len(arcs) != m:
        raise EdgeListParseError(f"header declares m={m} arcs but {len(arcs)} follow")
    try:
        return from_arc_list(n, arcs)
    except (LoopArcError, DuplicateArcError, VertexOutOfRangeError) as exc:
        raise type(exc)(f"edge list invalid: {exc}") from exc


def format_edge_list(D: Digraph) -> str:
    lines = [f"{D.n} {D.m}"]
    lines.extend(f"{u} {v}" for u, v in zip(D.tails.tolist(), D.heads.tolist()))
    return "\n".join(lines) + "\n"


def load_edge_list(path) -> Digraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def save_edge_list(D: Digraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(D))
