import pytest

from commhide import synthgen
from commhide.synthgen import InfeasibleParamsError, SynthParams


class TestParams:
    def test_probabilities(self):
        p_in, p_out = SynthParams(100, 4, 0.2, 10.0).probabilities()
        # s = 25: p_in = 0.8*10/24, p_out = 0.2*10/75
        assert p_in == pytest.approx(0.8 * 10 / 24)
        assert p_out == pytest.approx(0.2 * 10 / 75)

    @pytest.mark.parametrize(
        "n,k,mu,deg",
        [
            (100, 3, 0.2, 10.0),  # n not a multiple of k
            (0, 2, 0.2, 10.0),
            (4, 4, 0.2, 2.0),  # community size 1
            (100, 4, 0.0, 10.0),  # mu not in (0, 1)
            (100, 4, 1.0, 10.0),
            (100, 4, 0.2, -1.0),
            (100, 50, 0.1, 30.0),  # p_in > 1
        ],
    )
    def test_infeasible(self, n, k, mu, deg):
        with pytest.raises(InfeasibleParamsError):
            SynthParams(n, k, mu, deg).probabilities()


class TestGenerate:
    def test_deterministic(self):
        params = SynthParams(200, 4, 0.3, 12.0, seed=5)
        g1, p1 = synthgen.generate(params)
        g2, p2 = synthgen.generate(params)
        assert g1 == g2 and p1 == p2

    def test_seed_changes_graph(self):
        g1, _ = synthgen.generate(SynthParams(200, 4, 0.3, 12.0, seed=1))
        g2, _ = synthgen.generate(SynthParams(200, 4, 0.3, 12.0, seed=2))
        assert g1 != g2

    def test_ground_truth_blocks(self):
        g, p = synthgen.generate(SynthParams(100, 4, 0.3, 10.0, seed=0))
        assert p.community_ids() == [0, 1, 2, 3]
        for c in range(4):
            assert p.members(c) == set(range(c * 25, (c + 1) * 25))

    def test_simple_graph(self):
        g, _ = synthgen.generate(SynthParams(150, 3, 0.4, 14.0, seed=3))
        seen = set()
        for u, v in g.edges():
            assert u < v
            assert (u, v) not in seen
            seen.add((u, v))

    def test_empirical_degree_and_mixing(self):
        n, k, mu, deg = 1200, 6, 0.3, 16.0
        g, p = synthgen.generate(SynthParams(n, k, mu, deg, seed=7))
        avg_deg = 2 * g.edge_count / n
        assert avg_deg == pytest.approx(deg, rel=0.05)
        inter = sum(
            1 for u, v in g.edges() if p.labels[u] != p.labels[v]
        )
        assert inter / g.edge_count == pytest.approx(mu, abs=0.04)
