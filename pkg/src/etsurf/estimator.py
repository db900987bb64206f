"""scikit-learn style wrapper around the census.

``fit`` runs the construction on a sequence of graphs and keeps the records;
``transform`` maps each graph to a row of per-type surface counts, which makes
the census usable inside ordinary pipelines.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .construct import census_graph
from .errors import CeilingExceeded, EtsurfError
from .validation import check_graphs, check_limits, check_types

FE_COLUMNS = ("(1,4)", "(1,2).1", "(1,2).2", "(2,2)", "(2,1)")


class SurfaceCensus(TransformerMixin, BaseEstimator):
    """Census of edge-transitive surfaces over a set of face graphs.

    Parameters
    ----------
    types : str or sequence of pairs
        Face-edge types to report, e.g. ``"1,2;1,4"``.
    max_aut_order, max_subgroups, max_paths : int
        Resource ceilings.
    on_error : {"raise", "skip"}
        ``"skip"`` records the failure in ``failures_`` and moves on.
    """

    def __init__(self, types="1,2;1,4;2,1;2,2", max_aut_order=100_000,
                 max_subgroups=10_000, max_paths=1_000_000, on_error="raise"):
        self.types = types
        self.max_aut_order = max_aut_order
        self.max_subgroups = max_subgroups
        self.max_paths = max_paths
        self.on_error = on_error

    def _run(self, graphs):
        types = check_types(self.types)
        limits = check_limits(self.max_aut_order, self.max_subgroups, self.max_paths)
        if self.on_error not in ("raise", "skip"):
            raise ValueError(f"on_error must be 'raise' or 'skip', not {self.on_error!r}")
        per_graph, failures = [], []
        for i, g in enumerate(graphs):
            gid = g.name or f"graph{i}"
            try:
                per_graph.append(census_graph(g, gid, types, limits))
            except (CeilingExceeded, EtsurfError) as exc:
                if self.on_error == "raise":
                    raise
                failures.append((gid, str(exc)))
                per_graph.append([])
        return per_graph, failures

    def fit(self, X, y=None):
        self.fit_transform(X)
        return self

    def transform(self, X):
        """Counts per face-edge label, one row per graph, columns FE_COLUMNS."""
        check_is_fitted(self, "records_")
        per_graph, _ = self._run(check_graphs(X))
        return self._counts(per_graph)

    def fit_transform(self, X, y=None):
        graphs = check_graphs(X)
        per_graph, self.failures_ = self._run(graphs)
        self.records_ = sorted(r for rs in per_graph for r in rs)
        self.n_features_in_ = 1
        return self._counts(per_graph)

    @staticmethod
    def _counts(per_graph):
        out = np.zeros((len(per_graph), len(FE_COLUMNS)), dtype=np.int64)
        for i, recs in enumerate(per_graph):
            for r in recs:
                out[i, FE_COLUMNS.index(r.fe_label)] += 1
        return out

    def get_feature_names_out(self, input_features=None):
        return np.asarray(FE_COLUMNS, dtype=object)
