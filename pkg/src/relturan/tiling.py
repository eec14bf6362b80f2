"""The windowed random embedding into the full cube and its exact law.

The sampler draws a window of consecutive positions inside an ascending
level set, a uniform subset of levels within the window, and then uniform
bitstring blocks that assemble into a chain v_1 < ... < v_h whose
consecutive pairs split exactly at the chosen levels.  The exact oracle
computes the probability that a fixed (i, j) slot lands on a fixed pair
(x, y) by counting admissible level sets, in exact rational arithmetic.

Window convention: the start a is uniform on the integers [0, L - w), the
half-open variant; the level positions used are (a, a + w].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import HypercubeGraph, OrderedGraph, delta_int, tau

DEFAULT_REPORT_BUDGET = 1 << 22  # max number of exact cells in a report


@dataclass(frozen=True)
class TilingConfig:
    """Ambient dimension, working level set, window width, chain length."""

    d: int
    levels: tuple[int, ...]  # ascending subset of [1, d]
    w: int
    h: int

    def __post_init__(self) -> None:
        if any(not 1 <= l <= self.d for l in self.levels):
            raise ValueError("levels must lie in [1, d]")
        if list(self.levels) != sorted(set(self.levels)):
            raise ValueError("levels must be strictly ascending")
        if not 1 <= self.h <= self.w:
            raise ValueError("need 1 <= h <= w")
        if self.w >= len(self.levels):
            raise ValueError("window must be shorter than the level set")

    @property
    def L(self) -> int:
        return len(self.levels)

    def position_of(self, level: int) -> int:
        """1-based index of a level inside the level set, or 0 if absent."""
        try:
            return self.levels.index(level) + 1
        except ValueError:
            return 0


@dataclass(frozen=True)
class EmbeddingSample:
    """One draw: window start, chosen levels, and the vertex chain."""

    a: int
    levels: tuple[int, ...]  # l_1 < ... < l_h
    vertices: tuple[int, ...]  # v_1 < ... < v_h, integer-coded

    def check(self, cfg: TilingConfig) -> None:
        assert 0 <= self.a < cfg.L - cfg.w
        for l in self.levels:
            pos = cfg.position_of(l)
            assert self.a < pos <= self.a + cfg.w
        for vi, vj, l in zip(self.vertices, self.vertices[1:], self.levels):
            assert vi < vj and delta_int(vi, vj, cfg.d) == l
        top = self.levels[-1]
        assert (self.vertices[-1] >> (cfg.d - top)) & 1 == 0


def sample_embedding(cfg: TilingConfig, rng: np.random.Generator) -> EmbeddingSample:
    """One draw of the embedding chain (single-sample convenience wrapper)."""
    v, a, levels = _sample_batch(cfg, 1, rng)
    return EmbeddingSample(int(a[0]), tuple(int(l) for l in levels[0]), tuple(int(x) for x in v[0]))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.array([seed, 0], dtype=np.uint64)))


def _sample_batch(
    cfg: TilingConfig, n: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised sampling: returns (vertices [n, h], a [n], levels [n, h])."""
    d, L, w, h = cfg.d, cfg.L, cfg.w, cfg.h
    if d > 62:
        raise ValueError("vectorised sampler supports d <= 62")
    a = rng.integers(0, L - w, size=n)
    # uniform h-subset of the w window offsets, via ranking random reals
    keys = rng.random((n, w))
    offsets = np.sort(np.argpartition(keys, h - 1, axis=1)[:, :h], axis=1) + 1
    positions = a[:, None] + offsets  # 1-based positions in [L]
    level_table = np.asarray((0,) + cfg.levels, dtype=np.int64)
    levels = level_table[positions]

    z = rng.integers(0, 1 << d, size=n, dtype=np.uint64)  # shared prefix blocks
    verts = np.empty((n, h), dtype=np.uint64)
    sep = np.zeros(n, dtype=np.uint64)
    full = np.uint64((1 << d) - 1)
    for t in range(h):
        lt = levels[:, t]
        s = (d - lt).astype(np.uint64)  # suffix width; bit index of the split bit
        pref_mask = (full >> (s + np.uint64(1))) << (s + np.uint64(1))
        wt = rng.integers(0, 1 << d, size=n, dtype=np.uint64)
        suf_mask = (np.uint64(1) << s) - np.uint64(1)
        verts[:, t] = (z & pref_mask) | sep | (wt & suf_mask)
        sep = sep | (np.uint64(1) << s)
    return verts, a, levels


def sample_many(cfg: TilingConfig, n: int, seed: int) -> np.ndarray:
    """n sampled vertex chains as an [n, h] integer array."""
    verts, _, _ = _sample_batch(cfg, n, make_rng(seed))
    return verts


def exact_pair_probability(cfg: TilingConfig, i: int, j: int, x: int, y: int) -> Fraction:
    """P(v_i = x and v_j = y), exact.

    Counts admissible level sets per window position: the slot-i level is
    pinned at the split level of (x, y); lower slots take positions where y
    has bit 1, slot j a position where y has bit 0, and higher slots are
    free.  The bitstring blocks contribute the factor
    2^(j-1) / 2^(2d - split - 1).
    """
    d, L, w, h = cfg.d, cfg.L, cfg.w, cfg.h
    if not 1 <= i < j <= h:
        raise ValueError("need 1 <= i < j <= h")
    if not 0 <= x < y < (1 << d):
        raise ValueError("need 0 <= x < y < 2^d")
    split = delta_int(x, y, d)
    kappa = cfg.position_of(split)
    if kappa == 0:
        return Fraction(0)

    # ones[p] = number of positions q <= p where y has bit 1 at level iota(q)
    ones = [0] * (L + 1)
    for p in range(1, L + 1):
        bit = (y >> (d - cfg.levels[p - 1])) & 1
        ones[p] = ones[p - 1] + bit

    def count_ones(lo: int, hi: int) -> int:
        # positions in [lo, hi]
        if hi < lo:
            return 0
        return ones[hi] - ones[lo - 1]

    total = 0
    for a in range(0, L - w):
        if not a < kappa <= a + w:
            continue
        c1 = math.comb(count_ones(a + 1, kappa - 1), i - 1)
        if c1 == 0:
            continue
        inner = 0
        for r in range(kappa + 1, a + w + 1):
            bit_r = (y >> (d - cfg.levels[r - 1])) & 1
            if bit_r != 0:
                continue
            inner += math.comb(count_ones(kappa + 1, r - 1), j - i - 1) * math.comb(
                a + w - r, h - j
            )
        total += c1 * inner
    prob_levels = Fraction(total, (L - w) * math.comb(w, h))
    return prob_levels * Fraction(1 << (j - 1), 1 << (2 * d - split - 1))


def exact_vertex_probability(cfg: TilingConfig, x: int) -> Fraction:
    """P(v_1 = x) for chains of length h = 1."""
    if cfg.h != 1:
        raise ValueError("vertex marginal is defined for h = 1 configurations")
    d, L, w = cfg.d, cfg.L, cfg.w
    total = Fraction(0)
    for p in range(1, L + 1):
        level = cfg.levels[p - 1]
        if (x >> (d - level)) & 1:
            continue  # split bit must be 0
        windows = sum(1 for a in range(0, L - w) if a < p <= a + w)
        total += Fraction(windows, (L - w) * w) * Fraction(1, 1 << (d - 1))
    return total


def exact_edge_probability(
    pattern: OrderedGraph, cfg: TilingConfig, x: int, y: int
) -> Fraction:
    """P(xy lands on an embedded pattern edge): sum over pattern edges.

    The per-edge events are disjoint because the chain is strictly
    increasing, so the sum is exact.
    """
    if pattern.n != cfg.h:
        raise ValueError("pattern size must equal the chain length")
    total = Fraction(0)
    for u, v in pattern.sorted_edges():
        total += exact_pair_probability(cfg, u + 1, v + 1, x, y)
    return total


@dataclass(frozen=True)
class LevelGuarantee:
    level: int
    threshold: Fraction
    passing_pairs: int
    total_pairs: int

    @property
    def pass_fraction(self) -> Fraction:
        return Fraction(self.passing_pairs, self.total_pairs)


@dataclass(frozen=True)
class GuaranteeReport:
    epsilon: float
    per_level: tuple[LevelGuarantee, ...]
    passing_levels: int  # levels whose pair pass-fraction reaches 1 - epsilon

    @property
    def level_fraction(self) -> Fraction:
        return Fraction(self.passing_levels, len(self.per_level))


def tiling_guarantee_report(
    pattern: OrderedGraph,
    cfg: TilingConfig,
    epsilon: float,
    budget: int = DEFAULT_REPORT_BUDGET,
) -> GuaranteeReport:
    """Exact per-level fractions of pairs meeting the near-uniform bound.

    For each working level, every pair (x, y) splitting there is checked
    against (1 - eps) e(pattern) / (L tau_level).  The probability depends
    on x only through the split level, so cells are grouped by y.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    d = cfg.d
    cells = len(cfg.levels) << (d - 1)
    if cells > budget:
        raise ValueError(f"{cells} exact cells exceed budget {budget}")
    e_pat = len(pattern.edges)
    eps = Fraction(epsilon)
    per_level = []
    passing_levels = 0
    for level in cfg.levels:
        cap = tau(level, d)
        threshold = (1 - eps) * Fraction(e_pat, cfg.L * cap)
        passing = 0
        width = d - level
        per_y = 1 << width  # x's pairing with a given y at this level
        for y in range(1 << d):
            if (y >> width) & 1 == 0:
                continue
            x = y & ~((1 << (width + 1)) - 1)  # any representative splits alike
            if exact_edge_probability(pattern, cfg, x, y) >= threshold:
                passing += per_y
        per_level.append(LevelGuarantee(level, threshold, passing, cap))
        if Fraction(passing, cap) >= 1 - eps:
            passing_levels += 1
    return GuaranteeReport(epsilon, tuple(per_level), passing_levels)


def good_vertex_check(y: int, cfg: TilingConfig, m_window: int, eta: float) -> bool:
    """Near-balance of y's bits along the level-set positions.

    True iff every window J of at least m_window positions has, for each bit
    value, at least (1 - eta)/2 |J| positions where y carries that bit.
    """
    if m_window < 1:
        raise ValueError("m_window must be at least 1")
    d, L = cfg.d, cfg.L
    ones = [0] * (L + 1)
    for p in range(1, L + 1):
        ones[p] = ones[p - 1] + ((y >> (d - cfg.levels[p - 1])) & 1)
    for lo in range(1, L + 1):
        for hi in range(lo + m_window - 1, L + 1):
            size = hi - lo + 1
            c1 = ones[hi] - ones[lo - 1]
            need = (1 - eta) / 2 * size
            if c1 < need or (size - c1) < need:
                return False
    return True
