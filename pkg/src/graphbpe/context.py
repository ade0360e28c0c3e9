"""Contextualizers: turning nodes, node sets and edges into identity strings.

String layout
-------------
* base identity of a node: ``label`` (pse), ``label(n1,n2,...)``
  (neighborhood, sorted neighbor labels) or ``label(degree)`` (structural);
  the characters ``( ) , | - { } \\`` inside labels are backslash-escaped;
* node set: member base identities, sorted, joined by ``|``, optionally
  wrapped as ``TAG{...}``;
* edge: the two endpoint identities, sorted, escaped, joined by ``-``.

Every layer can be split back into its parts with :func:`split_unescaped`
and :func:`unescape`.
"""

from __future__ import annotations

import bisect
import enum
from typing import Iterable

from .errors import EmptySetError, IndexOutOfRangeError, NotAnEdgeError
from .graph import SimpleGraph, TokenizedGraph

LABEL_SPECIALS = frozenset("(),|-{}\\")
EDGE_SEP = "-"
SET_SEP = "|"


class ContextualizerKind(str, enum.Enum):
    NEIGHBORHOOD = "neighborhood"
    PSE = "pse"
    STRUCTURAL = "structural"

    @classmethod
    def parse(cls, value: "str | ContextualizerKind") -> "ContextualizerKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown contextualizer {value!r}; expected one of {choices}") from None


def escape(s: str, specials: Iterable[str] = LABEL_SPECIALS) -> str:
    specials = frozenset(specials) | {"\\"}
    return "".join("\\" + ch if ch in specials else ch for ch in s)


def unescape(s: str) -> str:
    out = []
    it = iter(s)
    for ch in it:
        if ch == "\\":
            ch = next(it, "")
        out.append(ch)
    return "".join(out)


def split_unescaped(s: str, sep: str) -> list[str]:
    """Split ``s`` at occurrences of the single character ``sep`` that are not
    backslash-escaped. Parts are returned still escaped."""
    parts, cur = [], []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "\\" and i + 1 < len(s):
            cur.append(s[i : i + 2])
            i += 2
            continue
        if ch == sep:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
        i += 1
    parts.append("".join(cur))
    return parts


def base_identity(g: SimpleGraph, v: int, kind: ContextualizerKind | str) -> str:
    """Identity of a single original node.

    >>> from graphbpe.graph import build_graph
    >>> g = build_graph(["c"] * 3, [(0, 1), (1, 2), (0, 2)])
    >>> base_identity(g, 0, "neighborhood"), base_identity(g, 0, "structural")
    ('c(c,c)', 'c(2)')
    """
    kind = ContextualizerKind.parse(kind)
    if not 0 <= v < g.num_nodes:
        raise IndexOutOfRangeError(f"node {v} out of range for {g.num_nodes} nodes")
    label = escape(g.labels[v])
    if kind is ContextualizerKind.PSE:
        return label
    if kind is ContextualizerKind.STRUCTURAL:
        return f"{label}({g.degree(v)})"
    nbrs = sorted(escape(g.labels[w]) for w in g.neighbors(v))
    return f"{label}({','.join(nbrs)})"


def base_identities(g: SimpleGraph, kind: ContextualizerKind | str) -> list[str]:
    return [base_identity(g, v, kind) for v in range(g.num_nodes)]


def context_node_set(
    g: SimpleGraph,
    node_set: Iterable[int],
    kind: ContextualizerKind | str,
    tag: str | None = None,
) -> str:
    """Order-independent identity for a set of original nodes."""
    members = sorted(set(node_set))
    if not members:
        raise EmptySetError("cannot contextualize an empty node set")
    joined = SET_SEP.join(sorted(base_identity(g, v, kind) for v in members))
    if tag is not None:
        return f"{tag}{{{joined}}}"
    return joined


def pair_context(a: str, b: str) -> str:
    """Orderless context of two identities: ``pair_context(a, b) == pair_context(b, a)``."""
    if b < a:
        a, b = b, a
    return escape(a, EDGE_SEP) + EDGE_SEP + escape(b, EDGE_SEP)


def split_pair_context(s: str) -> tuple[str, str]:
    """Inverse of :func:`pair_context` (returns the sorted identities)."""
    parts = split_unescaped(s, EDGE_SEP)
    if len(parts) != 2:
        raise ValueError(f"{s!r} is not a pair context")
    return unescape(parts[0]), unescape(parts[1])


def edge_context(tg: TokenizedGraph, e: tuple[int, int]) -> str:
    j, k = e
    key = (j, k) if j < k else (k, j)
    i = bisect.bisect_left(tg.hyper_edges, key)
    if i == len(tg.hyper_edges) or tg.hyper_edges[i] != key:
        raise NotAnEdgeError(f"({j}, {k}) is not an edge of the tokenized graph")
    return pair_context(tg.hypernodes[j].identity, tg.hypernodes[k].identity)
