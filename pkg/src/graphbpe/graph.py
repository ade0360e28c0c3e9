"""Graph data model: labeled simple graphs, hypernode tokenizations, contraction.

Both types are immutable. Every operation returns a new value, so snapshots
taken during training can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import (
    EndpointOutOfRangeError,
    GroupNotConnectedError,
    GroupTooSmallError,
    IndexOutOfRangeError,
    LengthMismatchError,
    OverlappingGroupsError,
    SelfLoopError,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected node-labeled graph without self-loops or parallel edges.

    ``edges`` is normalized on construction: each edge is stored as
    ``(min, max)`` and the tuple is sorted and deduplicated.
    """

    labels: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    name: str | None = None
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        labels = tuple(str(x) for x in self.labels)
        n = len(labels)
        seen: set[Edge] = set()
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise EndpointOutOfRangeError(f"edge ({u}, {v}) out of range for {n} nodes")
            if u == v:
                raise SelfLoopError(f"self-loop on node {u}")
            seen.add((u, v) if u < v else (v, u))
        edges = tuple(sorted(seen))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))

    @property
    def num_nodes(self) -> int:
        return len(self.labels)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]


def build_graph(
    labels: Sequence[str], edges: Iterable[Sequence[int]] = (), name: str | None = None
) -> SimpleGraph:
    """Build a normalized :class:`SimpleGraph`.

    >>> g = build_graph(["a", "b"], [(0, 1), (1, 0)])
    >>> g.num_nodes, g.edges
    (2, ((0, 1),))
    """
    return SimpleGraph(tuple(labels), tuple(tuple(e) for e in edges), name)


@dataclass(frozen=True)
class Hypernode:
    nodes: tuple[int, ...]
    identity: str


@dataclass(frozen=True)
class TokenizedGraph:
    """A partition of ``base``'s nodes into identified hypernodes.

    Hyper-edges are derived from the base graph: ``(j, k)`` is present iff
    some original edge joins a node of hypernode ``j`` to one of ``k``.
    Hypernodes are kept ordered by their smallest original node.
    """

    base: SimpleGraph
    hypernodes: tuple[Hypernode, ...]
    hyper_edges: tuple[Edge, ...] = field(init=False)
    owner: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = self.base.num_nodes
        owner = [-1] * n
        for j, hn in enumerate(self.hypernodes):
            if not hn.nodes:
                raise GroupTooSmallError(f"hypernode {j} is empty")
            if not hn.identity:
                raise ValueError(f"hypernode {j} has an empty identity")
            for v in hn.nodes:
                if not 0 <= v < n:
                    raise IndexOutOfRangeError(f"node {v} out of range for {n} nodes")
                if owner[v] != -1:
                    raise OverlappingGroupsError(f"node {v} appears in hypernodes {owner[v]} and {j}")
                owner[v] = j
        if -1 in owner:
            raise ValueError(f"node {owner.index(-1)} is not covered by any hypernode")
        crossing = set()
        for u, v in self.base.edges:
            a, b = owner[u], owner[v]
            if a != b:
                crossing.add((a, b) if a < b else (b, a))
        object.__setattr__(self, "hyper_edges", tuple(sorted(crossing)))
        object.__setattr__(self, "owner", tuple(owner))

    @property
    def num_hypernodes(self) -> int:
        return len(self.hypernodes)

    @property
    def identities(self) -> tuple[str, ...]:
        return tuple(h.identity for h in self.hypernodes)

    def hyper_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.hypernodes]
        for j, k in self.hyper_edges:
            adj[j].append(k)
            adj[k].append(j)
        return adj


def init_tokenized(g: SimpleGraph, identities: Sequence[str]) -> TokenizedGraph:
    """One singleton hypernode per original node."""
    if len(identities) != g.num_nodes:
        raise LengthMismatchError(
            f"{len(identities)} identities supplied for {g.num_nodes} nodes"
        )
    return TokenizedGraph(g, tuple(Hypernode((i,), s) for i, s in enumerate(identities)))


def contract(
    tg: TokenizedGraph, groups: Sequence[Iterable[int]], identities: Sequence[str]
) -> TokenizedGraph:
    """Contract each group of hypernode indices into one hypernode.

    Groups must be disjoint, have at least two members and be connected
    in ``tg`` (so the component count is preserved). A contracted
    group takes the position of its smallest member; all other hypernodes
    keep their relative order. Edges are rebuilt from the base graph, so
    parallel crossings collapse and edges internal to a group vanish.
    """
    if len(groups) != len(identities):
        raise LengthMismatchError(f"{len(groups)} groups but {len(identities)} identities")
    m = tg.num_hypernodes
    group_of = [-1] * m
    members: list[list[int]] = []
    for gi, grp in enumerate(groups):
        idx = sorted(set(int(j) for j in grp))
        if len(idx) < 2:
            raise GroupTooSmallError(f"group {gi} has {len(idx)} member(s); need at least 2")
        for j in idx:
            if not 0 <= j < m:
                raise IndexOutOfRangeError(f"hypernode index {j} out of range for {m} hypernodes")
            if group_of[j] != -1:
                raise OverlappingGroupsError(f"hypernode {j} is in groups {group_of[j]} and {gi}")
            group_of[j] = gi
        members.append(idx)

    if not members:
        return tg
    _check_connected(tg, members)
    out: list[Hypernode] = []
    for j, hn in enumerate(tg.hypernodes):
        gi = group_of[j]
        if gi == -1:
            out.append(hn)
        elif members[gi][0] == j:
            nodes = sorted(v for k in members[gi] for v in tg.hypernodes[k].nodes)
            out.append(Hypernode(tuple(nodes), identities[gi]))
    return TokenizedGraph(tg.base, tuple(out))


def _check_connected(tg: TokenizedGraph, members: list[list[int]]) -> None:
    edge_set = set(tg.hyper_edges)
    adj = None
    for gi, idx in enumerate(members):
        if len(idx) == 2:
            ok = (idx[0], idx[1]) in edge_set
        else:
            if adj is None:
                adj = tg.hyper_adjacency()
            inside = set(idx)
            seen = {idx[0]}
            stack = [idx[0]]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w in inside and w not in seen:
                        seen.add(w)
                        stack.append(w)
            ok = len(seen) == len(idx)
        if not ok:
            raise GroupNotConnectedError(f"group {gi} {idx} is not connected")


def connected_components(g: Union[SimpleGraph, TokenizedGraph]) -> list[list[int]]:
    """Components as sorted index lists, ordered by smallest member.

    Indices are original nodes for a :class:`SimpleGraph` and hypernode
    indices for a :class:`TokenizedGraph`.
    """
    if isinstance(g, TokenizedGraph):
        adj: Sequence[Sequence[int]] = g.hyper_adjacency()
    else:
        adj = g.adjacency
    seen = [False] * len(adj)
    comps = []
    for s in range(len(adj)):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps
