"""Locating ring systems and cliques for the preprocessing contraction."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .context import ContextualizerKind, base_identities, context_node_set
from .graph import SimpleGraph, TokenizedGraph, contract, init_tokenized

RING_TAG = "RING"
CLIQUE_TAG = "CLIQUE"


class TopologyKind(str, enum.Enum):
    NONE = "none"
    RING = "ring"
    CLIQUE = "clique"


@dataclass(frozen=True)
class Topology:
    kind: TopologyKind = TopologyKind.NONE
    min_clique_size: int = 3

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", TopologyKind(self.kind))
        if self.kind is TopologyKind.CLIQUE and self.min_clique_size < 3:
            raise ValueError(f"min_clique_size must be >= 3, got {self.min_clique_size}")
        if self.min_clique_size < 1:
            raise ValueError("min_clique_size must be positive")

    @classmethod
    def parse(cls, value: "str | Topology | None", min_clique_size: int = 3) -> "Topology":
        if isinstance(value, Topology):
            return value
        if value is None:
            return cls()
        try:
            return cls(TopologyKind(str(value).lower()), min_clique_size)
        except ValueError:
            raise ValueError(f"unknown topology {value!r}; expected none, ring or clique") from None


def find_bridges(g: SimpleGraph) -> set[tuple[int, int]]:
    """Bridges of ``g`` as ``(min, max)`` pairs (iterative Tarjan low-link)."""
    n = g.num_nodes
    disc = [-1] * n
    low = [0] * n
    bridges: set[tuple[int, int]] = set()
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        # frames: (node, parent, next neighbor position)
        stack = [(root, -1, 0)]
        while stack:
            v, parent, i = stack[-1]
            nbrs = g.adjacency[v]
            if i < len(nbrs):
                stack[-1] = (v, parent, i + 1)
                w = nbrs[i]
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, v, 0))
                elif w != parent:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if parent != -1:
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        bridges.add((min(v, parent), max(v, parent)))
    return bridges


def find_ring_systems(g: SimpleGraph) -> list[list[int]]:
    """Connected components of the subgraph formed by all non-bridge edges.

    Each such component is a fused ring system: every one of its edges lies
    on a cycle. Sets are returned sorted and ordered by smallest member.
    """
    bridges = find_bridges(g)
    parent = list(range(g.num_nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    touched = set()
    for e in g.edges:
        if e in bridges:
            continue
        u, v = e
        touched.update(e)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    systems: dict[int, list[int]] = {}
    for v in sorted(touched):
        systems.setdefault(find(v), []).append(v)
    return sorted(systems.values(), key=lambda s: s[0])


def maximal_cliques(g: SimpleGraph) -> list[list[int]]:
    """All maximal cliques (Bron-Kerbosch with Tomita pivoting), each sorted."""
    adj = [set(a) for a in g.adjacency]
    out: list[list[int]] = []

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            if r:
                out.append(sorted(r))
            return
        pivot = max(p | x, key=lambda u: (len(adj[u] & p), -u))
        for v in sorted(p - adj[pivot]):
            expand(r + [v], p & adj[v], x & adj[v])
            p.discard(v)
            x.add(v)

    expand([], set(range(g.num_nodes)), set())
    return sorted(out)


def find_cliques(g: SimpleGraph, min_size: int = 3) -> list[list[int]]:
    """Greedy disjoint selection of maximal cliques with at least ``min_size`` nodes.

    Candidates are visited largest first, ties by ascending node list; a
    clique is kept when it shares no node with one already kept. The result
    is ordered by smallest member.
    """
    if min_size < 3:
        raise ValueError(f"min_size must be >= 3, got {min_size}")
    cands = [c for c in maximal_cliques(g) if len(c) >= min_size]
    cands.sort(key=lambda c: (-len(c), c))
    used: set[int] = set()
    chosen = []
    for c in cands:
        if used.isdisjoint(c):
            chosen.append(c)
            used.update(c)
    return sorted(chosen, key=lambda c: c[0])


def find_topology(g: SimpleGraph, topo: Topology) -> list[list[int]]:
    if topo.kind is TopologyKind.RING:
        return find_ring_systems(g)
    if topo.kind is TopologyKind.CLIQUE:
        return find_cliques(g, topo.min_clique_size)
    return []


def preprocess(
    g: SimpleGraph,
    topo: Topology | str | None = None,
    ctx: ContextualizerKind | str = ContextualizerKind.NEIGHBORHOOD,
) -> TokenizedGraph:
    """Singleton tokenization of ``g`` with every found ring system or
    clique already contracted into one tagged hypernode."""
    topo = Topology.parse(topo)
    ctx = ContextualizerKind.parse(ctx)
    tg = init_tokenized(g, base_identities(g, ctx))
    if topo.kind is TopologyKind.NONE:
        return tg
    sets = find_topology(g, topo)
    tag = RING_TAG if topo.kind is TopologyKind.RING else CLIQUE_TAG
    # singleton hypernode j holds original node j here
    return contract(tg, sets, [context_node_set(g, s, ctx, tag) for s in sets])
