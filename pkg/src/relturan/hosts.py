"""Seeded construction of the blocked random host family and complete hosts.

The host on {0,1}^d x [m] keeps an m x m boolean matrix per ordered pair of
blocks (x, y), x < y; entry (i, j) says whether (x, i)(y, j) is an edge.  Each
cross-block pair is present independently with probability 2^(level - d)
where level = delta(x, y).  There are no intra-block edges.

Randomness comes from a counter-based generator (Philox) keyed by
(seed, block-pair index), so the output is independent of generation order
and worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import HypercubeGraph, OrderedGraph, delta_int, tau

#: refuse hosts with more vertices than this unless the caller overrides
DEFAULT_VERTEX_BUDGET = 1 << 21


class BudgetError(ValueError):
    pass


def _pair_index(x: int, y: int, n_blocks: int) -> int:
    """Index of (x, y), x < y, in lexicographic order over all block pairs."""
    return x * (2 * n_blocks - x - 1) // 2 + (y - x - 1)


def _pair_rng(seed: int, pair_idx: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.Philox(key=np.array([seed, pair_idx], dtype=np.uint64))
    )


class BlockedGraph:
    """A graph on {0,1}^d x [m] with block structure, ordered lexicographically.

    ``blocks[(x, y)]`` for x < y is an m x m boolean array; row i, column j is
    the pair ((x, i), (y, j)).  Vertex (x, i) precedes (y, j) iff x < y or
    x == y and i < j.
    """

    __slots__ = ("d", "m", "seed", "blocks")

    def __init__(self, d: int, m: int, seed: int, blocks: dict[tuple[int, int], np.ndarray]):
        self.d = d
        self.m = m
        self.seed = seed
        self.blocks = blocks

    @property
    def n_blocks(self) -> int:
        return 1 << self.d

    @property
    def n(self) -> int:
        return self.m << self.d

    def block_matrix(self, x: int, y: int) -> np.ndarray:
        if not 0 <= x < y < self.n_blocks:
            raise ValueError(f"need 0 <= x < y < {self.n_blocks}")
        return self.blocks.get((x, y), np.zeros((self.m, self.m), dtype=bool))

    def level_counts(self) -> list[int]:
        """Edge count per level 1..d (index 0 unused)."""
        counts = [0] * (self.d + 1)
        for (x, y), mat in self.blocks.items():
            counts[delta_int(x, y, self.d)] += int(mat.sum())
        return counts

    def num_edges(self) -> int:
        return sum(int(mat.sum()) for mat in self.blocks.values())

    def thin_every_other(self) -> "BlockedGraph":
        """Deterministic half-density subgraph: keep every second edge per block pair."""
        blocks = {}
        for key, mat in self.blocks.items():
            flat = mat.flatten()
            idx = np.flatnonzero(flat)
            flat[idx[1::2]] = False
            blocks[key] = flat.reshape(mat.shape)
        return BlockedGraph(self.d, self.m, self.seed, blocks)

    def to_ordered(self, budget: int = DEFAULT_VERTEX_BUDGET) -> OrderedGraph:
        """Flatten to vertex labels x * m + i (lexicographic order preserved)."""
        if self.n > budget:
            raise BudgetError(f"{self.n} vertices exceeds budget {budget}")
        edges = []
        for (x, y), mat in self.blocks.items():
            rows, cols = np.nonzero(mat)
            base_x, base_y = x * self.m, y * self.m
            edges.extend((base_x + int(i), base_y + int(j)) for i, j in zip(rows, cols))
        return OrderedGraph(self.n, edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BlockedGraph) or (self.d, self.m) != (other.d, other.m):
            return False
        keys = set(self.blocks) | set(other.blocks)
        return all(
            np.array_equal(self.block_matrix(*k), other.block_matrix(*k)) for k in keys
        )

    def __repr__(self) -> str:
        return f"BlockedGraph(d={self.d}, m={self.m}, seed={self.seed})"


def generate_host(m: int, d: int, seed: int, budget: int = DEFAULT_VERTEX_BUDGET) -> BlockedGraph:
    """Sample the blocked host: cross-block pair probability 2^(delta(x,y) - d)."""
    if m < 1 or d < 1:
        raise ValueError("need m >= 1 and d >= 1")
    if (m << d) > budget:
        raise BudgetError(f"{m << d} vertices exceeds budget {budget}")
    n_blocks = 1 << d
    blocks: dict[tuple[int, int], np.ndarray] = {}
    for x in range(n_blocks):
        for y in range(x + 1, n_blocks):
            p = 2.0 ** (delta_int(x, y, d) - d)
            rng = _pair_rng(seed, _pair_index(x, y, n_blocks))
            if p >= 1.0:
                blocks[(x, y)] = np.ones((m, m), dtype=bool)
            else:
                blocks[(x, y)] = rng.random((m, m)) < p
    return BlockedGraph(d, m, seed, blocks)


@dataclass(frozen=True)
class LevelCheck:
    level: int
    count: int
    expected: float  # 2^(d-1) m^2
    relative_error: float  # signed
    ok: bool


@dataclass(frozen=True)
class PairCheck:
    x: int
    y: int
    p_size: int
    q_size: int
    edges: int
    bound: float  # (1 + eps) 2^(delta - d) |P| |Q|
    ok: bool


@dataclass(frozen=True)
class HostReport:
    """Statistical verification of the two defining host properties."""

    d: int
    m: int
    epsilon: float
    level_checks: tuple[LevelCheck, ...]
    pair_checks: tuple[PairCheck, ...]
    worst_pair_excess: float  # max over checks of edges / bound

    @property
    def levels_ok(self) -> bool:
        return all(c.ok for c in self.level_checks)

    @property
    def pairs_ok(self) -> bool:
        return all(c.ok for c in self.pair_checks)

    @property
    def ok(self) -> bool:
        return self.levels_ok and self.pairs_ok


def verify_host(
    host: BlockedGraph, epsilon: float, sample_budget: int, seed: int
) -> HostReport:
    """Check per-level counts and sampled cross-block subset densities.

    Property (i): e_level in (1 +- epsilon) 2^(d-1) m^2 for every level.
    Property (ii): for sampled block pairs and uniform subsets P, Q of size
    ceil(m^(2/3)), the P-Q edge count is at most
    (1 + epsilon) 2^(delta - d) |P| |Q|.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    d, m = host.d, host.m
    expected = (1 << (d - 1)) * m * m
    level_checks = []
    for level, count in enumerate(host.level_counts()):
        if level == 0:
            continue
        rel = (count - expected) / expected
        level_checks.append(
            LevelCheck(level, count, float(expected), rel, abs(rel) <= epsilon)
        )

    rng = np.random.Generator(np.random.Philox(key=np.array([seed, 0], dtype=np.uint64)))
    subset_size = min(m, math.ceil(m ** (2 / 3)))
    pair_checks = []
    worst = 0.0
    n_blocks = host.n_blocks
    for _ in range(sample_budget):
        x = int(rng.integers(n_blocks))
        y = int(rng.integers(n_blocks))
        if x == y:
            y = (x + 1) % n_blocks
        if x > y:
            x, y = y, x
        p_idx = rng.choice(m, size=subset_size, replace=False)
        q_idx = rng.choice(m, size=subset_size, replace=False)
        mat = host.block_matrix(x, y)
        edges = int(mat[np.ix_(p_idx, q_idx)].sum())
        bound = (1 + epsilon) * 2.0 ** (delta_int(x, y, d) - d) * subset_size * subset_size
        pair_checks.append(PairCheck(x, y, subset_size, subset_size, edges, bound, edges <= bound))
        if bound > 0:
            worst = max(worst, edges / bound)
    return HostReport(d, m, epsilon, tuple(level_checks), tuple(pair_checks), worst)


def complete_ordered(n: int, budget: int = DEFAULT_VERTEX_BUDGET) -> OrderedGraph:
    if n < 1:
        raise ValueError("need n >= 1")
    if n > budget or n > 4096:
        raise BudgetError(f"complete graph on {n} vertices refused")
    return OrderedGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_hypercube(d: int, budget: int = DEFAULT_VERTEX_BUDGET) -> HypercubeGraph:
    if d < 1:
        raise ValueError("need d >= 1")
    n = 1 << d
    if n > budget or d > 13:
        raise BudgetError(f"complete cube graph at d={d} refused")
    full = (1 << n) - 1
    adj = [full ^ (1 << v) for v in range(n)]
    return HypercubeGraph(d, adj=adj)
