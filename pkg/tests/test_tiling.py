import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relturan.core import OrderedGraph, delta_int
from relturan.patterns import monotone_p3
from relturan.tiling import (
    EmbeddingSample,
    TilingConfig,
    exact_edge_probability,
    exact_pair_probability,
    exact_vertex_probability,
    good_vertex_check,
    make_rng,
    sample_embedding,
    sample_many,
    tiling_guarantee_report,
)


def full_cfg(d, w, h):
    return TilingConfig(d, tuple(range(1, d + 1)), w, h)


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            TilingConfig(4, (1, 2, 3), 3, 2)  # w not < L
        with pytest.raises(ValueError):
            TilingConfig(4, (2, 1, 3), 1, 1)  # not ascending
        with pytest.raises(ValueError):
            TilingConfig(4, (1, 5), 1, 1)  # level out of range
        with pytest.raises(ValueError):
            TilingConfig(4, (1, 2, 3), 2, 3)  # h > w

    def test_position_of(self):
        cfg = TilingConfig(5, (2, 4, 5), 2, 1)
        assert cfg.position_of(4) == 2
        assert cfg.position_of(3) == 0
        assert cfg.L == 3


class TestSampler:
    @given(st.integers(0, 10**6))
    @settings(max_examples=40, deadline=None)
    def test_sample_invariants(self, seed):
        cfg = full_cfg(d=7, w=4, h=3)
        smp = sample_embedding(cfg, make_rng(seed))
        smp.check(cfg)  # window membership, split levels, top bit

    def test_subset_cfg_invariants(self):
        cfg = TilingConfig(8, (1, 3, 4, 6, 8), 3, 2)
        rng = make_rng(5)
        for _ in range(300):
            sample_embedding(cfg, rng).check(cfg)

    def test_batch_deterministic(self):
        cfg = full_cfg(6, 3, 2)
        assert np.array_equal(sample_many(cfg, 100, seed=9), sample_many(cfg, 100, seed=9))

    def test_chains_strictly_increasing(self):
        cfg = full_cfg(6, 4, 4)
        verts = sample_many(cfg, 500, seed=2)
        assert (np.diff(verts.astype(np.int64), axis=1) > 0).all()

    def test_block_reassembly(self):
        # prefix above the split level is shared by consecutive vertices,
        # and all separator bits between successive levels are 1
        cfg = full_cfg(7, 5, 3)
        rng = make_rng(3)
        for _ in range(200):
            smp = sample_embedding(cfg, rng)
            for vi, vj, lv in zip(smp.vertices, smp.vertices[1:], smp.levels):
                shift = cfg.d - lv + 1
                assert vi >> shift == vj >> shift


class TestExactOracle:
    def test_law_of_total_probability(self):
        cfg = full_cfg(d=6, w=3, h=3)
        n = 1 << cfg.d
        for i, j in ((1, 2), (1, 3), (2, 3)):
            total = sum(
                exact_pair_probability(cfg, i, j, x, y)
                for x in range(n)
                for y in range(x + 1, n)
            )
            assert total == 1

    def test_vertex_marginal_sums_to_one(self):
        cfg = TilingConfig(5, (1, 2, 3, 4, 5), 2, 1)
        assert sum(exact_vertex_probability(cfg, x) for x in range(32)) == 1

    def test_zero_when_level_unavailable(self):
        cfg = TilingConfig(5, (1, 2, 4, 5), 2, 2)
        # x, y splitting at level 3, which is not in the level set
        assert exact_pair_probability(cfg, 1, 2, 0b00000, 0b00100) == 0

    def test_monte_carlo_agreement(self):
        cfg = full_cfg(d=6, w=3, h=3)
        pat = monotone_p3()
        n_samples = 200_000
        verts = sample_many(cfg, n_samples, seed=4)
        rng = np.random.Generator(np.random.Philox(key=np.array([17, 0], dtype=np.uint64)))
        checked = 0
        while checked < 10:
            x = int(rng.integers(0, 63))
            y = int(rng.integers(x + 1, 64))
            p = exact_edge_probability(pat, cfg, x, y)
            if p == 0:
                continue
            hits = 0
            for (u, v) in pat.sorted_edges():
                hits += int(((verts[:, u] == x) & (verts[:, v] == y)).sum())
            emp = hits / n_samples
            se = math.sqrt(float(p) * (1 - float(p)) / n_samples)
            assert abs(emp - float(p)) <= 4 * se + 1e-12
            checked += 1

    def test_rejects_bad_slots(self):
        cfg = full_cfg(5, 2, 2)
        with pytest.raises(ValueError):
            exact_pair_probability(cfg, 2, 1, 0, 1)
        with pytest.raises(ValueError):
            exact_pair_probability(cfg, 1, 2, 3, 3)


class TestGuaranteeReport:
    def test_report_structure(self):
        cfg = full_cfg(d=5, w=3, h=3)
        report = tiling_guarantee_report(monotone_p3(), cfg, epsilon=0.5)
        assert len(report.per_level) == 5
        for lg in report.per_level:
            assert 0 <= lg.passing_pairs <= lg.total_pairs

    def test_budget_refusal(self):
        cfg = full_cfg(d=10, w=3, h=3)
        with pytest.raises(ValueError):
            tiling_guarantee_report(monotone_p3(), cfg, 0.5, budget=10)

    def test_pattern_size_must_match(self):
        cfg = full_cfg(5, 3, 3)
        with pytest.raises(ValueError):
            exact_edge_probability(OrderedGraph(2, [(0, 1)]), cfg, 0, 1)


class TestGoodVertex:
    def test_alternating_is_good(self):
        d = 8
        cfg = full_cfg(d, 2, 1)
        y = int("01010101", 2)
        # odd windows of an alternating string are off by one, so eta must
        # absorb a 1/3 deficit at window size 3
        assert good_vertex_check(y, cfg, m_window=2, eta=0.5)

    def test_all_zeros_is_bad(self):
        d = 8
        cfg = full_cfg(d, 2, 1)
        assert not good_vertex_check(0, cfg, m_window=2, eta=0.25)

    def test_good_proportion_at_moderate_scale(self):
        d = 12
        cfg = full_cfg(d, 2, 1)
        m_window = math.ceil(math.log(d) ** 2)
        good = sum(
            1 for y in range(1 << d) if good_vertex_check(y, cfg, m_window, eta=0.5)
        )
        assert good / (1 << d) > 0.5
