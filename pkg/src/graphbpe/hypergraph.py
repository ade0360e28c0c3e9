"""Hypergraph views of tokenized graphs and the 1-hop (centroid) baseline."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
import scipy.sparse as sp

from .graph import SimpleGraph, TokenizedGraph


@dataclass(frozen=True)
class Hypergraph:
    """``num_vertices`` original nodes and an ordered list of hyperedges.

    ``weights`` holds the diagonal of the hyperedge weight matrix and
    defaults to all ones.
    """

    num_vertices: int
    hyperedges: tuple[tuple[int, ...], ...]
    weights: tuple[float, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        edges = tuple(tuple(sorted(set(int(v) for v in e))) for e in self.hyperedges)
        for m, e in enumerate(edges):
            if not e:
                raise ValueError(f"hyperedge {m} is empty")
            if e[0] < 0 or e[-1] >= self.num_vertices:
                raise ValueError(f"hyperedge {m} references a vertex outside 0..{self.num_vertices - 1}")
        weights = (1.0,) * len(edges) if self.weights is None else tuple(float(w) for w in self.weights)
        if len(weights) != len(edges):
            raise ValueError(f"{len(weights)} weights for {len(edges)} hyperedges")
        if any(not w > 0 for w in weights):
            raise ValueError("hyperedge weights must be strictly positive")
        object.__setattr__(self, "hyperedges", edges)
        object.__setattr__(self, "weights", weights)

    @property
    def num_hyperedges(self) -> int:
        return len(self.hyperedges)


class Incidence(NamedTuple):
    """Nonzero coordinates ``(vertex, hyperedge)`` of the incidence matrix."""

    entries: list[tuple[int, int]]
    shape: tuple[int, int]


def to_hypergraph(tg: TokenizedGraph) -> Hypergraph:
    """Hyperedges from a tokenization.

    Every hypernode with two or more nodes is a hyperedge. A singleton
    hypernode ``{v}`` contributes one hyperedge ``{v, w}`` per original
    edge at ``v``. Duplicates are dropped and the list is sorted.
    """
    g = tg.base
    found: set[tuple[int, ...]] = set()
    for hn in tg.hypernodes:
        if len(hn.nodes) >= 2:
            found.add(tuple(hn.nodes))
        else:
            v = hn.nodes[0]
            for w in g.neighbors(v):
                found.add((v, w) if v < w else (w, v))
    return Hypergraph(g.num_nodes, tuple(sorted(found)))


def centroid_hypergraph(g: SimpleGraph) -> Hypergraph:
    """One hyperedge per vertex: the vertex plus its 1-hop neighbors."""
    return Hypergraph(g.num_nodes, tuple((v,) + g.neighbors(v) for v in range(g.num_nodes)))


def incidence(hg: Hypergraph) -> Incidence:
    entries = sorted((n, m) for m, e in enumerate(hg.hyperedges) for n in e)
    return Incidence(entries, (hg.num_vertices, hg.num_hyperedges))


def incidence_matrix(hg: Hypergraph) -> sp.csr_matrix:
    """The ``N x M`` 0/1 incidence matrix as a sparse CSR matrix."""
    inc = incidence(hg)
    if inc.entries:
        rows, cols = np.array(inc.entries, dtype=np.int64).T
    else:
        rows = cols = np.zeros(0, dtype=np.int64)
    data = np.ones(len(rows), dtype=np.float64)
    return sp.csr_matrix((data, (rows, cols)), shape=inc.shape)


def weight_matrix(hg: Hypergraph) -> sp.dia_matrix:
    """Diagonal ``M x M`` hyperedge weight matrix."""
    return sp.diags(np.asarray(hg.weights, dtype=np.float64), format="dia")


def build_hypergraphs(
    graphs: Sequence[SimpleGraph] | Sequence[TokenizedGraph], mode: str = "graphbpe"
) -> list[Hypergraph]:
    if mode == "centroid":
        return [centroid_hypergraph(g if isinstance(g, SimpleGraph) else g.base) for g in graphs]
    if mode == "graphbpe":
        out = []
        for g in graphs:
            if not isinstance(g, TokenizedGraph):
                raise TypeError("graphbpe mode needs tokenized graphs")
            out.append(to_hypergraph(g))
        return out
    raise ValueError(f"unknown hypergraph mode {mode!r}; expected graphbpe or centroid")
