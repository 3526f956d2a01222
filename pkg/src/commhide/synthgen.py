"""Seeded planted-partition (equal-size SBM) generator.

Communities have equal size s = n / k. Edge probabilities are derived so
that the expected degree is avg_deg and the expected fraction of a node's
edges leaving its community is mu:

    p_in  = (1 - mu) * avg_deg / (s - 1)
    p_out = mu * avg_deg / (n - s)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import CommunityPartition, Graph


class InfeasibleParamsError(ValueError):
    pass


@dataclass(frozen=True)
class SynthParams:
    n: int
    k_comms: int
    mu: float
    avg_deg: float
    seed: int = 0

    def probabilities(self) -> tuple[float, float]:
        if self.n <= 0 or self.k_comms <= 0 or self.n % self.k_comms != 0:
            raise InfeasibleParamsError(
                "n must be a positive multiple of k_comms"
            )
        s = self.n // self.k_comms
        if s < 2 or not (0.0 < self.mu < 1.0) or self.avg_deg <= 0:
            raise InfeasibleParamsError(
                "need community size >= 2, mu in (0,1), avg_deg > 0"
            )
        p_in = (1.0 - self.mu) * self.avg_deg / (s - 1)
        p_out = self.mu * self.avg_deg / (self.n - s)
        if p_in > 1.0 or p_out > 1.0:
            raise InfeasibleParamsError(
                f"derived probabilities out of range: p_in={p_in:.3f}, p_out={p_out:.3f}"
            )
        return p_in, p_out


def _sample_pair_indices(rng: np.random.Generator, n_pairs: int, p: float) -> np.ndarray:
    """Distinct uniform pair indices with Binomial(n_pairs, p) count."""
    if n_pairs == 0 or p <= 0.0:
        return np.empty(0, dtype=np.int64)
    m = rng.binomial(n_pairs, p)
    if m == 0:
        return np.empty(0, dtype=np.int64)
    chosen: set[int] = set()
    while len(chosen) < m:
        draw = rng.integers(0, n_pairs, size=m - len(chosen))
        chosen.update(int(x) for x in draw)
    return np.fromiter(chosen, dtype=np.int64, count=m)


def generate(params: SynthParams) -> tuple[Graph, CommunityPartition]:
    p_in, p_out = params.probabilities()
    rng = np.random.default_rng(params.seed)
    s = params.n // params.k_comms
    blocks = [list(range(c * s, (c + 1) * s)) for c in range(params.k_comms)]
    g = Graph(params.n)

    # pair index of (i, j), i < j, is row_start[i] + (j - i - 1)
    row_start = np.cumsum(np.concatenate(([0], np.arange(s - 1, 0, -1))))
    n_pairs = s * (s - 1) // 2
    for block in blocks:
        idx = _sample_pair_indices(rng, n_pairs, p_in)
        rows = np.searchsorted(row_start, idx, side="right") - 1
        cols = idx - row_start[rows] + rows + 1
        for i, j in zip(rows, cols):
            g.add_edge(block[int(i)], block[int(j)])

    for bi in range(params.k_comms):
        for bj in range(bi + 1, params.k_comms):
            for t in _sample_pair_indices(rng, s * s, p_out):
                g.add_edge(blocks[bi][int(t) // s], blocks[bj][int(t) % s])

    labels = [v // s for v in range(params.n)]
    return g, CommunityPartition(labels)
