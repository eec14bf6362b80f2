"""Bitstring vertices, lexicographic order, levels, and fundamental intervals.

Vertices of the binary cube are strings x = x_1 x_2 ... x_d with x_1 the most
significant bit, so the lexicographic order on strings coincides with the
integer order on their values.  Everything downstream (hosts, richness,
tiling) is phrased in terms of the level delta(x, y) of a pair: the first
index at which the two strings differ.

Indices are 1-based in docstrings (matching the usual convention for string
positions) and 0-based only inside bit arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True, order=False)
class BitString:
    """A binary string of fixed length ``d`` stored as a machine integer.

    ``value`` is sum_i bits_i * 2^(d-i), so comparing values compares strings
    lexicographically.  Leading zeros are significant: BitString(3, 1) is 001.
    """

    d: int
    value: int

    def __post_init__(self) -> None:
        if self.d < 0:
            raise ValueError(f"length must be non-negative, got {self.d}")
        if not 0 <= self.value < (1 << self.d):
            raise ValueError(f"value {self.value} out of range for length {self.d}")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitString":
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bits must be 0/1, got {b!r}")
            value = (value << 1) | b
        return cls(len(bits), value)

    @classmethod
    def from_str(cls, s: str) -> "BitString":
        return cls.from_bits([int(c) for c in s])

    def bit(self, i: int) -> int:
        """The i-th bit, 1-based, bit 1 most significant."""
        if not 1 <= i <= self.d:
            raise IndexError(f"bit index {i} out of range [1, {self.d}]")
        return (self.value >> (self.d - i)) & 1

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.d - i)) & 1 for i in range(1, self.d + 1))

    def __str__(self) -> str:
        return format(self.value, f"0{self.d}b") if self.d else ""

    def __lt__(self, other: "BitString") -> bool:
        return lex_less(self, other)


def delta(x: BitString, y: BitString) -> int:
    """First index at which x and y differ (1-based)."""
    if x.d != y.d:
        raise ValueError(f"length mismatch: {x.d} != {y.d}")
    xor = x.value ^ y.value
    if xor == 0:
        raise ValueError("delta is undefined for equal strings")
    return x.d - (xor.bit_length() - 1)


def delta_int(u: int, v: int, d: int) -> int:
    """delta on raw integer-coded vertices of {0,1}^d."""
    xor = u ^ v
    if xor == 0:
        raise ValueError("delta is undefined for equal strings")
    return d - (xor.bit_length() - 1)


def lex_less(x: BitString, y: BitString) -> bool:
    """True iff x strictly precedes y lexicographically."""
    if x.d != y.d:
        raise ValueError(f"length mismatch: {x.d} != {y.d}")
    return x.value < y.value


@dataclass(frozen=True)
class FundamentalInterval:
    """The set of strings in {0,1}^d that extend a fixed prefix of length ``level``."""

    d: int
    prefix: BitString

    def __post_init__(self) -> None:
        if not 0 <= self.prefix.d <= self.d:
            raise ValueError(f"prefix length {self.prefix.d} out of range [0, {self.d}]")

    @property
    def level(self) -> int:
        return self.prefix.d

    @property
    def size(self) -> int:
        return 1 << (self.d - self.level)

    @property
    def lo(self) -> int:
        """Integer value of the smallest member."""
        return self.prefix.value << (self.d - self.level)

    @property
    def hi(self) -> int:
        """Integer value of the largest member."""
        return self.lo + self.size - 1

    def members(self) -> Iterator[BitString]:
        for v in range(self.lo, self.hi + 1):
            yield BitString(self.d, v)

    def __contains__(self, x: BitString) -> bool:
        return x.d == self.d and self.lo <= x.value <= self.hi

    def lhs(self) -> "FundamentalInterval":
        """The half whose next bit is 0."""
        if self.level >= self.d:
            raise ValueError("singleton interval has no halves")
        return FundamentalInterval(self.d, BitString(self.level + 1, self.prefix.value << 1))

    def rhs(self) -> "FundamentalInterval":
        """The half whose next bit is 1."""
        if self.level >= self.d:
            raise ValueError("singleton interval has no halves")
        return FundamentalInterval(self.d, BitString(self.level + 1, (self.prefix.value << 1) | 1))


def fundamental_partition(d: int, level: int) -> list[FundamentalInterval]:
    """The 2^level fundamental intervals at the given level, in order."""
    if not 0 <= level <= d:
        raise ValueError(f"level {level} out of range [0, {d}]")
    return [FundamentalInterval(d, BitString(level, p)) for p in range(1 << level)]


def tau(level: int, d: int) -> int:
    """Number of pairs u < v in {0,1}^d with delta(u, v) = level: 2^(2d-level-1)."""
    if not 1 <= level <= d:
        raise ValueError(f"level {level} out of range [1, {d}]")
    return 1 << (2 * d - level - 1)


def tau_of_set(A: Iterable[BitString], level: int) -> int:
    """Number of pairs u < v in A with delta(u, v) = level (exact count)."""
    A_list = list(A)
    count = 0
    for i, u in enumerate(A_list):
        for v in A_list[i + 1:]:
            if u.value != v.value and delta(u, v) == level:
                count += 1
    return count


class OrderedGraph:
    """An ordered graph on vertices 0..n-1 with the natural order.

    Edges are unordered pairs (u, v) with u < v.  Per-vertex forward and
    backward neighbourhoods are kept as bitmasks for fast containment search.
    Instances are immutable after construction.
    """

    __slots__ = ("n", "edges", "_fwd", "_bwd")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        canon = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if u > v:
                u, v = v, u
            if not (0 <= u < v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            canon.add((u, v))
        self.n = n
        self.edges = frozenset(canon)
        fwd = [0] * n
        bwd = [0] * n
        for u, v in canon:
            fwd[u] |= 1 << v
            bwd[v] |= 1 << u
        self._fwd = tuple(fwd)
        self._bwd = tuple(bwd)

    def forward(self, u: int) -> int:
        """Bitmask of neighbours v > u."""
        return self._fwd[u]

    def backward(self, u: int) -> int:
        """Bitmask of neighbours v < u."""
        return self._bwd[u]

    def adjacency(self, u: int) -> int:
        return self._fwd[u] | self._bwd[u]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (self._fwd[u] >> v) & 1 == 1

    def num_edges(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def subgraph_edges(self, keep: Iterable[tuple[int, int]]) -> "OrderedGraph":
        """Spanning subgraph on the same vertex set with the given edges."""
        keep = set(tuple(sorted(e)) for e in keep)
        extra = keep - self.edges
        if extra:
            raise ValueError(f"edges not in graph: {sorted(extra)[:3]}")
        return OrderedGraph(self.n, keep)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, OrderedGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"OrderedGraph(n={self.n}, m={len(self.edges)})"


class HypercubeGraph:
    """An ordered graph on {0,1}^d, vertices coded as integers 0..2^d-1.

    Adjacency is stored as one bitmask per vertex so that dense graphs on
    moderately large cubes (d up to ~12) stay cheap to hold and query.
    """

    __slots__ = ("d", "adj")

    def __init__(self, d: int, edges: Iterable[tuple[int, int]] = (), adj: Sequence[int] | None = None):
        if d < 1:
            raise ValueError("dimension must be at least 1")
        self.d = d
        n = 1 << d
        if adj is not None:
            if len(adj) != n:
                raise ValueError("adjacency table has wrong size")
            for v, mask in enumerate(adj):
                if (mask >> v) & 1:
                    raise ValueError(f"self-loop at {v}")
            self.adj = tuple(adj)
            for v, mask in enumerate(self.adj):
                if mask >> n:
                    raise ValueError("adjacency mask out of range")
        else:
            table = [0] * n
            for u, v in edges:
                if u == v:
                    raise ValueError(f"self-loop at {u}")
                if not (0 <= u < n and 0 <= v < n):
                    raise ValueError(f"edge ({u}, {v}) out of range for d={d}")
                table[u] |= 1 << v
                table[v] |= 1 << u
            self.adj = tuple(table)

    @property
    def n(self) -> int:
        return 1 << self.d

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adj[u] >> v) & 1 == 1

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            mask = self.adj[u] & ~((1 << (u + 1)) - 1)
            while mask:
                low = mask & -mask
                yield (u, low.bit_length() - 1)
                mask ^= low

    def num_edges(self) -> int:
        return sum(bin(m).count("1") for m in self.adj) // 2

    def backward_mask(self, v: int, level: int) -> int:
        """Bitmask of all u < v with delta(u, v) = level (whether adjacent or not).

        Nonempty only when bit ``level`` of v is 1, in which case it is the
        aligned block of 2^(d-level) strings agreeing with v before ``level``
        and having 0 there.
        """
        if not 1 <= level <= self.d:
            raise ValueError(f"level {level} out of range [1, {self.d}]")
        width = self.d - level
        if (v >> width) & 1 == 0:
            return 0
        lo = (v >> (width + 1)) << (width + 1)
        block = (1 << (1 << width)) - 1
        return block << lo

    def forward_mask(self, v: int, level: int) -> int:
        """Bitmask of all u > v with delta(v, u) = level (whether adjacent or not)."""
        if not 1 <= level <= self.d:
            raise ValueError(f"level {level} out of range [1, {self.d}]")
        width = self.d - level
        if (v >> width) & 1 == 1:
            return 0
        lo = ((v >> (width + 1)) << (width + 1)) | (1 << width)
        block = (1 << (1 << width)) - 1
        return block << lo

    def backward_degree(self, v: int, level: int) -> int:
        """Number of backward level-``level`` neighbours of v."""
        return bin(self.adj[v] & self.backward_mask(v, level)).count("1")

    def level_counts(self) -> list[int]:
        """e_level for level = 1..d (index 0 unused)."""
        counts = [0] * (self.d + 1)
        for v in range(self.n):
            for level in range(1, self.d + 1):
                counts[level] += self.backward_degree(v, level)
        return counts

    def to_ordered(self) -> OrderedGraph:
        return OrderedGraph(self.n, list(self.edges()))

    def subgraph_edges(self, keep: Iterable[tuple[int, int]]) -> "HypercubeGraph":
        g = HypercubeGraph(self.d, keep)
        for u, v in g.edges():
            if not self.has_edge(u, v):
                raise ValueError(f"edge ({u}, {v}) not in graph")
        return g

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HypercubeGraph) and self.d == other.d and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.d, self.adj))

    def __repr__(self) -> str:
        return f"HypercubeGraph(d={self.d}, m={self.num_edges()})"


@dataclass(frozen=True)
class LevelProfile:
    """Per-level edge counts of a graph on {0,1}^d against full-cube capacities."""

    d: int
    counts: tuple[int, ...]  # counts[level] for level in 1..d; counts[0] == 0

    def __post_init__(self) -> None:
        if len(self.counts) != self.d + 1 or self.counts[0] != 0:
            raise ValueError("counts must be indexed 1..d with counts[0] == 0")
        for level in range(1, self.d + 1):
            if not 0 <= self.counts[level] <= tau(level, self.d):
                raise ValueError(f"count at level {level} exceeds capacity")

    def capacity(self, level: int) -> int:
        return tau(level, self.d)

    def ratio(self, level: int) -> float:
        return self.counts[level] / tau(level, self.d)

    @property
    def total(self) -> int:
        return sum(self.counts)


def level_profile(g: HypercubeGraph) -> LevelProfile:
    return LevelProfile(g.d, tuple(g.level_counts()))
