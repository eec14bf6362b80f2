import numpy as np
import pytest

from relturan.core import delta_int
from relturan.hosts import (
    BudgetError,
    _pair_index,
    complete_hypercube,
    complete_ordered,
    generate_host,
    verify_host,
)


class TestPairIndex:
    def test_bijective(self):
        for d in (1, 2, 3):
            nb = 1 << d
            seen = [_pair_index(x, y, nb) for x in range(nb) for y in range(x + 1, nb)]
            assert sorted(seen) == list(range(nb * (nb - 1) // 2))


class TestGeneration:
    def test_deterministic(self):
        assert generate_host(6, 3, seed=5) == generate_host(6, 3, seed=5)

    def test_seed_changes_edges(self):
        a = generate_host(8, 3, seed=0)
        b = generate_host(8, 3, seed=1)
        assert a != b

    def test_top_level_blocks_complete(self):
        # delta = d gives probability 1: sibling blocks fully joined
        host = generate_host(3, 2, seed=9)
        for x in range(4):
            for y in range(x + 1, 4):
                if delta_int(x, y, 2) == 2:
                    assert host.block_matrix(x, y).all()

    def test_no_intra_block_edges(self):
        host = generate_host(4, 2, seed=3)
        assert all(x < y for x, y in host.blocks)

    def test_budget_refusal(self):
        with pytest.raises(BudgetError):
            generate_host(1 << 12, 10, seed=0)

    def test_edge_probability_converges(self):
        # empirical block density vs 2^(delta - d) at a fixed block pair
        m, d = 200, 3
        host = generate_host(m, d, seed=2)
        x, y = 0, 4  # delta = 1, p = 1/4
        mat = host.block_matrix(x, y)
        p = 2.0 ** (delta_int(x, y, d) - d)
        se = np.sqrt(p * (1 - p) / mat.size)
        assert abs(mat.mean() - p) <= 3 * se

    def test_level_counts_sum(self):
        host = generate_host(5, 3, seed=7)
        assert sum(host.level_counts()[1:]) == host.num_edges()

    def test_thin_every_other_halves(self):
        host = generate_host(6, 2, seed=1)
        thin = host.thin_every_other()
        for key, mat in host.blocks.items():
            kept = int(thin.blocks[key].sum())
            assert kept == (int(mat.sum()) + 1) // 2
            assert not (thin.blocks[key] & ~mat).any()

    def test_to_ordered_labels(self):
        host = generate_host(3, 1, seed=0)
        og = host.to_ordered()
        assert og.n == 6
        mat = host.block_matrix(0, 1)
        for i in range(3):
            for j in range(3):
                assert og.has_edge(i, 3 + j) == bool(mat[i, j])


class TestVerification:
    def test_passes_at_moderate_scale(self):
        host = generate_host(64, 3, seed=0)
        report = verify_host(host, epsilon=0.3, sample_budget=50, seed=1)
        assert report.levels_ok and report.pairs_ok

    def test_detects_level_imbalance(self):
        host = generate_host(64, 3, seed=0).thin_every_other()
        report = verify_host(host, epsilon=0.3, sample_budget=10, seed=1)
        assert not report.levels_ok

    def test_report_shape(self):
        host = generate_host(16, 2, seed=0)
        report = verify_host(host, epsilon=0.5, sample_budget=7, seed=0)
        assert len(report.level_checks) == 2
        assert len(report.pair_checks) == 7
        assert all(c.p_size == c.q_size == 7 for c in report.pair_checks)  # ceil(16^(2/3))

    def test_rejects_bad_epsilon(self):
        host = generate_host(4, 2, seed=0)
        with pytest.raises(ValueError):
            verify_host(host, epsilon=0.0, sample_budget=1, seed=0)


class TestCompleteHosts:
    def test_complete_ordered(self):
        g = complete_ordered(5)
        assert len(g.edges) == 10

    def test_complete_ordered_refusal(self):
        with pytest.raises(BudgetError):
            complete_ordered(5000)

    def test_complete_hypercube(self):
        g = complete_hypercube(3)
        assert g.num_edges() == 28
        counts = g.level_counts()
        assert counts[1:] == [16, 8, 4]

    def test_complete_hypercube_refusal(self):
        with pytest.raises(BudgetError):
            complete_hypercube(14)
