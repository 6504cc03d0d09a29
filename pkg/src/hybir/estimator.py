"""Scikit-learn style wrapper so the engine composes with the ML ecosystem."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .engine import RunConfig, pipeline_sources, run_bc
from .graph import as_graph


class HybridBetweenness(BaseEstimator, TransformerMixin):
    """Per-vertex betweenness scores from the two-worker engine.

    ``fit`` accepts a Graph, an edge array of shape (n_edges, 2|3), or a
    path to an edge-list file.  With ``num_sources=None`` every vertex is a
    source and the scores are exact.
    """

    def __init__(
        self,
        mode="hybir",
        num_sources=None,
        sources=None,
        seed=0,
        ratio=0.5,
        backward_strategies=("vertex-pull", "edge-push"),
        pipeline=False,
    ):
        self.mode = mode
        self.num_sources = num_sources
        self.sources = sources
        self.seed = seed
        self.ratio = ratio
        self.backward_strategies = backward_strategies
        self.pipeline = pipeline

    def _config(self) -> RunConfig:
        return RunConfig(
            num_sources=self.num_sources,
            sources=self.sources,
            seed=self.seed,
            ratio=self.ratio,
            mode=self.mode,
            backward_strategies=tuple(self.backward_strategies),
        )

    def fit(self, X, y=None):
        g = as_graph(X)
        cfg = self._config()
        runner = pipeline_sources if (self.pipeline and self.mode == "hybir") else run_bc
        result = runner(g, cfg)
        self.graph_ = g
        self.bc_ = result.bc
        self.result_ = result
        self.n_features_in_ = g.num_vertices
        return self

    def transform(self, X=None):
        """Column vector of centrality scores for the fitted graph."""
        if not hasattr(self, "bc_"):
            raise NotFittedError("call fit before transform")
        return np.asarray(self.bc_, dtype=float).reshape(-1, 1)

    def top_vertices(self, k=10):
        if not hasattr(self, "bc_"):
            raise NotFittedError("call fit first")
        order = np.argsort(-self.bc_, kind="stable")[:k]
        return [(int(v), float(self.bc_[v])) for v in order]
