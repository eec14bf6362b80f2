"""Ordered-subgraph containment and the monotone-path classification.

An ordered copy of a pattern F in a host G is a strictly increasing injection
of vertex labels that maps every pattern edge to a host edge.  The
backtracking search places pattern vertices left to right, so at each step
the candidate host vertices form an interval above the previous image and
edge constraints reduce to bitmask intersections with backward
neighbourhoods already placed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .core import OrderedGraph


@dataclass(frozen=True)
class EmbeddingWitness:
    """An order-preserving edge-preserving injection, pattern vertex i -> map[i]."""

    map: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.map)


def validate_witness(pattern: OrderedGraph, host: OrderedGraph, w: EmbeddingWitness) -> bool:
    """Pure checker: strictly increasing, in range, and edge-preserving."""
    if len(w.map) != pattern.n:
        return False
    for img in w.map:
        if not 0 <= img < host.n:
            return False
    for a, b in zip(w.map, w.map[1:]):
        if a >= b:
            return False
    return all(host.has_edge(w.map[u], w.map[v]) for u, v in pattern.edges)


def contains_ordered(pattern: OrderedGraph, host: OrderedGraph) -> Optional[EmbeddingWitness]:
    """Find one ordered copy of ``pattern`` in ``host``, or None.

    Vertices of the pattern are placed in increasing order; the image of
    vertex i must exceed the image of i-1 and lie in the intersection of the
    forward neighbourhoods of the already-placed backward neighbours of i.
    """
    k, n = pattern.n, host.n
    if k == 0:
        return EmbeddingWitness(())
    if k > n:
        return None
    # forward degree pruning: image of i needs at least as many host
    # neighbours above/below as the pattern vertex has
    images: list[int] = []

    def candidates(i: int) -> int:
        lo = images[i - 1] + 1 if i else 0
        mask = ((1 << n) - 1) & ~((1 << lo) - 1)
        back = pattern.backward(i)
        while back:
            low = back & -back
            j = low.bit_length() - 1
            mask &= host.forward(images[j])
            back ^= low
        return mask

    def extend(i: int) -> bool:
        if i == k:
            return True
        # leave room for the remaining k - i - 1 vertices
        mask = candidates(i) & ((1 << (n - (k - i - 1))) - 1)
        while mask:
            low = mask & -mask
            v = low.bit_length() - 1
            mask ^= low
            images.append(v)
            if extend(i + 1):
                return True
            images.pop()
        return False

    if extend(0):
        return EmbeddingWitness(tuple(images))
    return None


def contains_ordered_bruteforce(pattern: OrderedGraph, host: OrderedGraph) -> bool:
    """Independent oracle: enumerate all increasing injections."""
    for combo in combinations(range(host.n), pattern.n):
        if all(host.has_edge(combo[u], combo[v]) for u, v in pattern.edges):
            return True
    return pattern.n == 0


@dataclass(frozen=True)
class MonotoneProfile:
    """lengths[v] = length of the longest increasing path ending at v."""

    lengths: tuple[int, ...]

    @property
    def longest(self) -> int:
        return max(self.lengths, default=0)


def monotone_profile(g: OrderedGraph) -> MonotoneProfile:
    """Single left-to-right pass: len(v) = 1 + max over backward neighbours."""
    lengths = [0] * g.n
    for v in range(g.n):
        back = g.backward(v)
        best = -1
        while back:
            low = back & -back
            u = low.bit_length() - 1
            best = max(best, lengths[u])
            back ^= low
        lengths[v] = best + 1
    return MonotoneProfile(tuple(lengths))


def monotone_p3(k: int = 3) -> OrderedGraph:
    """The increasing path on k vertices (k=3: the monotone path of length two)."""
    return OrderedGraph(k, [(i, i + 1) for i in range(k - 1)])


def has_monotone_p3(g: OrderedGraph) -> bool:
    """True iff some vertex has both a backward and a forward neighbour."""
    return monotone_profile(g).longest >= 2


def find_monotone_p3(g: OrderedGraph) -> Optional[tuple[int, int, int]]:
    """A witness u < v < w with edges uv and vw, or None."""
    for v in range(g.n):
        back, fwd = g.backward(v), g.forward(v)
        if back and fwd:
            u = (back & -back).bit_length() - 1
            w = (fwd & -fwd).bit_length() - 1
            return (u, v, w)
    return None


def interval_chromatic(g: OrderedGraph) -> int:
    """Minimum number of order-intervals partitioning V with no internal edge.

    Leftmost-greedy extension: start a new interval exactly when the next
    vertex has a neighbour inside the current one.  Greedy is optimal for
    interval partitions (cross-checked exhaustively in tests).
    """
    if g.n == 0:
        return 1
    parts = 1
    start = 0
    for v in range(1, g.n):
        inside = g.backward(v) >> start
        if inside:
            parts += 1
            start = v
    return parts


def interval_chromatic_bruteforce(g: OrderedGraph) -> int:
    """Oracle: try all interval partitions by number of parts (n <= ~10)."""
    n = g.n
    if n == 0:
        return 1

    def ok(cuts: tuple[int, ...]) -> bool:
        bounds = [0, *cuts, n]
        for a, b in zip(bounds, bounds[1:]):
            for u, v in g.edges:
                if a <= u and v < b:
                    return False
        return True

    for parts in range(1, n + 1):
        for cuts in combinations(range(1, n), parts - 1):
            if ok(cuts):
                return parts
    return n


def pi_ordered(g: OrderedGraph) -> Fraction:
    """Complete-host density limit 1 - 1/(chi_interval - 1)."""
    chi = interval_chromatic(g)
    if chi < 2:
        raise ValueError("density limit is undefined for an edgeless pattern")
    return 1 - Fraction(1, chi - 1)


def build_hk(k: int) -> OrderedGraph:
    """The staircase H_k on [k] x {0,1}: edges (x,0)(y,1) for x <= y.

    Vertex (i, b) (1-based i) gets label 2(i-1) + b, so the labels carry the
    lexicographic order on pairs.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    edges = [(2 * a, 2 * b + 1) for a in range(k) for b in range(a, k)]
    return OrderedGraph(2 * k, edges)


class MonotonePathError(ValueError):
    """Raised when a pattern unexpectedly contains an increasing 2-edge path."""

    def __init__(self, witness: tuple[int, int, int]):
        super().__init__(f"pattern contains the increasing path {witness}")
        self.witness = witness


def embed_into_hk(g: OrderedGraph) -> EmbeddingWitness:
    """The explicit embedding v_i -> (i, len_i) of a path-free graph into H_k.

    Requires g to have no increasing 2-edge path; k = |V(g)|.
    """
    witness = find_monotone_p3(g)
    if witness is not None:
        raise MonotonePathError(witness)
    lengths = monotone_profile(g).lengths
    return EmbeddingWitness(tuple(2 * i + lengths[i] for i in range(g.n)))


class VanishingClass(enum.Enum):
    ZERO = "ZERO"
    AT_LEAST_QUARTER = "AT_LEAST_QUARTER"


def classify_vanishing(g: OrderedGraph) -> VanishingClass:
    """Relative density is zero iff there is no increasing 2-edge path."""
    if has_monotone_p3(g):
        return VanishingClass.AT_LEAST_QUARTER
    return VanishingClass.ZERO
