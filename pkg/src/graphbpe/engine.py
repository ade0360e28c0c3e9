"""Count-and-merge training loop and replay of learned merge rules.

Each iteration contextualizes every hyper-edge of every graph, tallies the
contexts, picks the most frequent one (ties: smallest string) and contracts
its occurrences everywhere. Within a graph, overlapping occurrences are
resolved greedily in ascending order of the edge's smallest original nodes.

Counting and merging are independent per graph and can be spread over a
thread pool; per-graph results are combined in corpus order, so the output
does not depend on the number of workers.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, NamedTuple, Sequence, TypeVar

from .context import ContextualizerKind, pair_context
from .errors import VersionMismatchError
from .graph import Edge, SimpleGraph, TokenizedGraph, contract
from .topology import Topology, preprocess

FORMAT_VERSION = 1

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class MergeRule:
    step: int
    context: str
    frequency: int

    def __post_init__(self) -> None:
        if self.step < 1:
            raise ValueError(f"rule step must be >= 1, got {self.step}")
        if self.frequency < 1:
            raise ValueError(f"rule frequency must be >= 1, got {self.frequency}")
        if not self.context:
            raise ValueError("rule context must be non-empty")


@dataclass(frozen=True)
class Vocabulary:
    contextualizer: ContextualizerKind = ContextualizerKind.NEIGHBORHOOD
    topology: Topology = field(default_factory=Topology)
    rules: tuple[MergeRule, ...] = ()
    format_version: int = FORMAT_VERSION

    def __post_init__(self) -> None:
        object.__setattr__(self, "contextualizer", ContextualizerKind.parse(self.contextualizer))
        object.__setattr__(self, "rules", tuple(self.rules))
        for i, r in enumerate(self.rules, start=1):
            if r.step != i:
                raise ValueError(f"rule at position {i} has step {r.step}")

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def contexts(self) -> list[str]:
        return [r.context for r in self.rules]


@dataclass
class PairCounter:
    """Context string -> total count, and context -> graph index -> edges."""

    counts: dict[str, int] = field(default_factory=dict)
    occurrences: dict[str, dict[int, list[Edge]]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.counts)

    def edges_for(self, context: str, graph_index: int) -> list[Edge]:
        return self.occurrences.get(context, {}).get(graph_index, [])


class TrainResult(NamedTuple):
    vocabulary: Vocabulary
    snapshots: list[tuple[TokenizedGraph, ...]] | None
    final: tuple[TokenizedGraph, ...]


def resolve_workers(workers: int | None) -> int:
    if not workers:
        return os.cpu_count() or 1
    if workers < 0:
        raise ValueError(f"worker count must be >= 0, got {workers}")
    return workers


class _Mapper:
    """Order-preserving map over a thread pool (or inline for one worker)."""

    def __init__(self, workers: int | None = 1):
        self.workers = resolve_workers(workers)
        self._pool: ThreadPoolExecutor | None = None
        self._depth = 0

    def __enter__(self) -> "_Mapper":
        # re-entrant: the outermost block owns the pool
        if self._depth == 0 and self.workers > 1:
            self._pool = ThreadPoolExecutor(max_workers=self.workers)
        self._depth += 1
        return self

    def __exit__(self, *exc) -> None:
        self._depth -= 1
        if self._depth == 0 and self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    def map(self, fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
        if self._pool is None or len(items) < 2:
            return [fn(x) for x in items]
        chunk = max(1, len(items) // (self.workers * 4))
        return list(self._pool.map(fn, items, chunksize=chunk))


def _mapper(workers: "int | None | _Mapper") -> _Mapper:
    return workers if isinstance(workers, _Mapper) else _Mapper(workers)


_pair_context = lru_cache(maxsize=1 << 16)(pair_context)


def graph_contexts(tg: TokenizedGraph) -> Iterator[tuple[str, Edge]]:
    ids = tg.identities
    for j, k in tg.hyper_edges:
        yield _pair_context(ids[j], ids[k]), (j, k)


def _count_one(tg: TokenizedGraph) -> dict[str, list[Edge]]:
    found: dict[str, list[Edge]] = {}
    for ctx, e in graph_contexts(tg):
        found.setdefault(ctx, []).append(e)
    return found


def count_pairs(corpus: Sequence[TokenizedGraph], workers: int | None = 1) -> PairCounter:
    """Tally the contexts of all hyper-edges in ``corpus``."""
    with _mapper(workers) as m:
        per_graph = m.map(_count_one, list(corpus))
    counts: dict[str, int] = {}
    occ: dict[str, dict[int, list[Edge]]] = {}
    for i, found in enumerate(per_graph):
        for ctx, edges in found.items():
            counts[ctx] = counts.get(ctx, 0) + len(edges)
            occ.setdefault(ctx, {})[i] = edges
    keys = sorted(counts)
    return PairCounter({k: counts[k] for k in keys}, {k: occ[k] for k in keys})


def select_best(pc: PairCounter, step: int = 1) -> MergeRule | None:
    """Most frequent context; ties go to the lexicographically smallest."""
    if not pc.counts:
        return None
    ctx = min(pc.counts, key=lambda s: (-pc.counts[s], s))
    return MergeRule(step, ctx, pc.counts[ctx])


def disjoint_occurrences(tg: TokenizedGraph, edges: Sequence[Edge]) -> list[Edge]:
    """Greedy maximal subset of ``edges`` with no shared hypernode.

    Candidates are taken in ascending order of (smaller, larger) of the two
    hypernodes' smallest original node ids.
    """

    def key(e: Edge) -> tuple[int, int]:
        a, b = tg.hypernodes[e[0]].nodes[0], tg.hypernodes[e[1]].nodes[0]
        return (a, b) if a < b else (b, a)

    used: set[int] = set()
    kept = []
    for j, k in sorted(edges, key=key):
        if j in used or k in used:
            continue
        used.update((j, k))
        kept.append((j, k))
    return kept


def merge_graph(tg: TokenizedGraph, context: str, edges: Sequence[Edge]) -> TokenizedGraph:
    if not edges:
        return tg
    kept = disjoint_occurrences(tg, edges)
    return contract(tg, kept, [context] * len(kept))


def merge_step(
    corpus: Sequence[TokenizedGraph],
    rule: MergeRule | str,
    pc: PairCounter | None = None,
    workers: int | None = 1,
) -> tuple[TokenizedGraph, ...]:
    """Contract every occurrence (greedy-disjoint) of ``rule`` in every graph.

    Occurrences come from ``pc`` when given, otherwise they are recomputed.
    """
    context = rule.context if isinstance(rule, MergeRule) else rule
    if pc is None:
        pc = count_pairs(corpus, workers)
    occ = pc.occurrences.get(context, {})
    jobs = [(tg, occ.get(i, [])) for i, tg in enumerate(corpus)]
    with _mapper(workers) as m:
        return tuple(m.map(lambda job: merge_graph(job[0], context, job[1]), jobs))


def train(
    corpus: Sequence[SimpleGraph],
    steps: int,
    topo: Topology | str | None = None,
    ctx: ContextualizerKind | str = ContextualizerKind.NEIGHBORHOOD,
    emit_snapshots: bool = True,
    workers: int | None = 1,
    on_step: Callable[[MergeRule], None] | None = None,
) -> TrainResult:
    """Learn up to ``steps`` merge rules on ``corpus``.

    Stops early once no hyper-edge is left anywhere. When ``emit_snapshots``
    is set, ``snapshots[t]`` is the corpus after ``t`` rules (``snapshots[0]``
    is the preprocessed corpus).
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    topo = Topology.parse(topo)
    ctx = ContextualizerKind.parse(ctx)
    with _Mapper(workers) as m:
        current = tuple(m.map(lambda g: preprocess(g, topo, ctx), list(corpus)))
        snapshots = [current] if emit_snapshots else None
        rules: list[MergeRule] = []
        for step in range(1, steps + 1):
            pc = count_pairs(current, m)
            rule = select_best(pc, step)
            if rule is None:
                break
            current = merge_step(current, rule, pc, m)
            rules.append(rule)
            if snapshots is not None:
                snapshots.append(current)
            if on_step is not None:
                on_step(rule)
    vocab = Vocabulary(contextualizer=ctx, topology=topo, rules=tuple(rules))
    return TrainResult(vocab, snapshots, current)


def _check_version(vocab: Vocabulary) -> None:
    if vocab.format_version != FORMAT_VERSION:
        raise VersionMismatchError(
            f"vocabulary format_version {vocab.format_version} is not supported "
            f"(expected {FORMAT_VERSION})"
        )


def apply_rules(tg: TokenizedGraph, rules: Sequence[MergeRule]) -> TokenizedGraph:
    for rule in rules:
        if not tg.hyper_edges:
            break
        edges = [e for c, e in graph_contexts(tg) if c == rule.context]
        tg = merge_graph(tg, rule.context, edges)
    return tg


def apply(vocab: Vocabulary, g: SimpleGraph) -> TokenizedGraph:
    """Tokenize ``g`` by preprocessing it and replaying ``vocab``'s rules in order."""
    _check_version(vocab)
    tg = preprocess(g, vocab.topology, vocab.contextualizer)
    return apply_rules(tg, vocab.rules)


def replay(
    vocab: Vocabulary, corpus: Sequence[SimpleGraph], workers: int | None = 1
) -> list[tuple[TokenizedGraph, ...]]:
    """Snapshots of ``corpus`` after 0, 1, ..., len(vocab) rules."""
    _check_version(vocab)
    with _Mapper(workers) as m:
        current = tuple(m.map(lambda g: preprocess(g, vocab.topology, vocab.contextualizer), list(corpus)))
        out = [current]
        for rule in vocab.rules:
            current = tuple(m.map(lambda tg: apply_rules(tg, [rule]), current))
            out.append(current)
    return out
