"""Reading and writing corpora, vocabularies, tokenizations and incidence exports."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from .context import ContextualizerKind
from .engine import FORMAT_VERSION, MergeRule, Vocabulary
from .errors import (
    CrossGraphEdgeError,
    DanglingEdgeError,
    DataError,
    GraphError,
    MalformedLineError,
    MissingFileError,
    SchemaViolationError,
    SmilesError,
    VersionMismatchError,
)
from .graph import Hypernode, SimpleGraph, TokenizedGraph, build_graph
from .hypergraph import Hypergraph, incidence
from .smiles import parse_smiles
from .topology import Topology, TopologyKind

INCIDENCE_HEADER = "#graphbpe-incidence v1"


@dataclass(frozen=True)
class Corpus:
    graphs: tuple[SimpleGraph, ...]
    source: str = ""
    label_alphabet: tuple[str, ...] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "graphs", tuple(self.graphs))
        alphabet = sorted({lab for g in self.graphs for lab in g.labels})
        object.__setattr__(self, "label_alphabet", tuple(alphabet))

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)

    def __getitem__(self, i: int) -> SimpleGraph:
        return self.graphs[i]


def _write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def _dump_json(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


# -- TUDataset ---------------------------------------------------------------


def _tud_prefix(prefix) -> Path:
    p = Path(prefix)
    if p.is_dir():
        return p / p.name
    return p


def _read_lines(path: Path) -> list[tuple[int, str]]:
    if not path.is_file():
        raise MissingFileError("required file not found", str(path))
    with open(path, encoding="utf-8") as f:
        return [(no, line.strip()) for no, line in enumerate(f, start=1) if line.strip()]


def _read_int_column(path: Path) -> list[int]:
    out = []
    for no, line in _read_lines(path):
        try:
            out.append(int(line))
        except ValueError:
            raise MalformedLineError(f"expected an integer, got {line!r}", str(path), no) from None
    return out


def parse_tudataset(prefix) -> Corpus:
    """Load a TUDataset-layout corpus.

    ``prefix`` is either the common file prefix (``.../MUTAG/MUTAG``) or the
    dataset directory itself. Reads ``_A.txt``, ``_graph_indicator.txt`` and
    ``_node_labels.txt``; edges are 1-based, listed in either or both
    directions.
    """
    base = _tud_prefix(prefix)
    a_path = Path(f"{base}_A.txt")
    ind_path = Path(f"{base}_graph_indicator.txt")
    lab_path = Path(f"{base}_node_labels.txt")
    for p in (a_path, ind_path, lab_path):
        if not p.is_file():
            raise MissingFileError("required file not found", str(p))

    indicator = _read_int_column(ind_path)
    labels = _read_int_column(lab_path)
    if len(labels) != len(indicator):
        raise MalformedLineError(
            f"{len(labels)} node labels but {len(indicator)} indicator lines", str(lab_path)
        )

    members: dict[int, list[int]] = defaultdict(list)
    local = [0] * len(indicator)
    for node, gid in enumerate(indicator):
        local[node] = len(members[gid])
        members[gid].append(node)

    edges: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for no, line in _read_lines(a_path):
        parts = line.split(",")
        try:
            u, v = (int(x) for x in parts)
        except ValueError:
            raise MalformedLineError(f"expected 'u, v', got {line!r}", str(a_path), no) from None
        for x in (u, v):
            if not 1 <= x <= len(indicator):
                raise DanglingEdgeError(f"edge references unknown node {x}", str(a_path), no)
        u, v = u - 1, v - 1
        if indicator[u] != indicator[v]:
            raise CrossGraphEdgeError(
                f"edge joins graph {indicator[u]} and graph {indicator[v]}", str(a_path), no
            )
        if u == v:
            raise MalformedLineError(f"self-loop on node {u + 1}", str(a_path), no)
        edges[indicator[u]].append((local[u], local[v]))

    graphs = []
    for gid in sorted(members):
        nodes = members[gid]
        graphs.append(build_graph([str(labels[n]) for n in nodes], edges[gid], str(gid)))
    return Corpus(tuple(graphs), f"tud:{base}")


# -- SMILES ------------------------------------------------------------------


def read_smiles_file(path) -> Corpus:
    """One SMILES per line; text after the first whitespace is the name.
    Blank lines and lines starting with ``#`` are skipped."""
    path = Path(path)
    graphs = []
    for no, line in _read_lines(path):
        if line.startswith("#"):
            continue
        fields = line.split(None, 1)
        name = fields[1].strip() if len(fields) > 1 else None
        try:
            graphs.append(parse_smiles(fields[0], name))
        except SmilesError as e:
            raise type(e)(e.message, path=str(path), line=no) from None
    return Corpus(tuple(graphs), f"smiles:{path}")


# -- JSON corpus -------------------------------------------------------------


def _schema(cond: bool, where: str, msg: str, path) -> None:
    if not cond:
        raise SchemaViolationError(f"{where}: {msg}", str(path))


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _load_json(path) -> Any:
    path = Path(path)
    if not path.is_file():
        raise MissingFileError("file not found", str(path))
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise SchemaViolationError(f"invalid JSON: {e.msg}", str(path), e.lineno) from None


def _graph_from_json(obj: Any, where: str, path) -> SimpleGraph:
    _schema(isinstance(obj, dict), where, "expected an object", path)
    name = obj.get("name")
    _schema(name is None or isinstance(name, str), f"{where}.name", "expected a string or null", path)
    labels = obj.get("labels")
    _schema(isinstance(labels, list), f"{where}.labels", "expected an array", path)
    for i, lab in enumerate(labels):
        _schema(isinstance(lab, str), f"{where}.labels[{i}]", "expected a string", path)
    edges = obj.get("edges", [])
    _schema(isinstance(edges, list), f"{where}.edges", "expected an array", path)
    for i, e in enumerate(edges):
        w = f"{where}.edges[{i}]"
        _schema(isinstance(e, list) and len(e) == 2 and all(map(_is_int, e)), w, "expected [u, v]", path)
        _schema(all(0 <= x < len(labels) for x in e), w, "endpoint out of range", path)
        _schema(e[0] != e[1], w, "self-loop", path)
    return build_graph(labels, edges, name)


def _graph_to_json(g: SimpleGraph) -> dict:
    return {"name": g.name, "labels": list(g.labels), "edges": [list(e) for e in g.edges]}


def read_json_corpus(path) -> Corpus:
    doc = _load_json(path)
    _schema(isinstance(doc, dict), "$", "expected an object", path)
    graphs = doc.get("graphs")
    _schema(isinstance(graphs, list), "$.graphs", "expected an array", path)
    return Corpus(
        tuple(_graph_from_json(g, f"$.graphs[{i}]", path) for i, g in enumerate(graphs)),
        f"json:{path}",
    )


def write_json_corpus(corpus: Corpus | Sequence[SimpleGraph], path) -> None:
    _write_text(path, _dump_json({"graphs": [_graph_to_json(g) for g in corpus]}))


def load_corpus(path, fmt: str) -> Corpus:
    if fmt == "tud":
        return parse_tudataset(path)
    if fmt == "smiles":
        return read_smiles_file(path)
    if fmt == "json":
        return read_json_corpus(path)
    raise ValueError(f"unknown input format {fmt!r}; expected tud, smiles or json")


# -- vocabulary --------------------------------------------------------------


def vocabulary_to_dict(vocab: Vocabulary) -> dict:
    return {
        "format_version": vocab.format_version,
        "contextualizer": vocab.contextualizer.value,
        "topology": {
            "kind": vocab.topology.kind.value,
            "min_clique_size": vocab.topology.min_clique_size,
        },
        "rules": [{"step": r.step, "context": r.context, "frequency": r.frequency} for r in vocab.rules],
    }


def vocabulary_from_dict(doc: Any, path="<memory>") -> Vocabulary:
    _schema(isinstance(doc, dict), "$", "expected an object", path)
    version = doc.get("format_version")
    _schema(_is_int(version), "$.format_version", "expected an integer", path)
    if version != FORMAT_VERSION:
        raise VersionMismatchError(
            f"format_version {version} is not supported (expected {FORMAT_VERSION})", str(path)
        )
    try:
        ctx = ContextualizerKind.parse(doc.get("contextualizer"))
    except ValueError as e:
        raise SchemaViolationError(f"$.contextualizer: {e}", str(path)) from None
    topo = doc.get("topology")
    _schema(isinstance(topo, dict), "$.topology", "expected an object", path)
    size = topo.get("min_clique_size", 3)
    _schema(_is_int(size), "$.topology.min_clique_size", "expected an integer", path)
    try:
        topology = Topology(TopologyKind(topo.get("kind")), size)
    except ValueError as e:
        raise SchemaViolationError(f"$.topology: {e}", str(path)) from None
    rules_doc = doc.get("rules")
    _schema(isinstance(rules_doc, list), "$.rules", "expected an array", path)
    rules = []
    for i, r in enumerate(rules_doc):
        w = f"$.rules[{i}]"
        _schema(isinstance(r, dict), w, "expected an object", path)
        _schema(r.get("step") == i + 1 and _is_int(r.get("step")), f"{w}.step", f"expected step {i + 1}", path)
        _schema(isinstance(r.get("context"), str) and r["context"] != "", f"{w}.context", "expected a non-empty string", path)
        _schema(_is_int(r.get("frequency")) and r["frequency"] >= 1, f"{w}.frequency", "expected a positive integer", path)
        rules.append(MergeRule(r["step"], r["context"], r["frequency"]))
    return Vocabulary(ctx, topology, tuple(rules), version)


def write_vocabulary(vocab: Vocabulary, path) -> None:
    _write_text(path, _dump_json(vocabulary_to_dict(vocab)))


def read_vocabulary(path) -> Vocabulary:
    return vocabulary_from_dict(_load_json(path), path)


# -- tokenized graphs --------------------------------------------------------


def tokenized_to_dict(tg: TokenizedGraph) -> dict:
    d = _graph_to_json(tg.base)
    d["hypernodes"] = [{"nodes": list(h.nodes), "identity": h.identity} for h in tg.hypernodes]
    d["hyper_edges"] = [list(e) for e in tg.hyper_edges]
    return d


def tokenized_from_dict(obj: Any, where: str = "$", path="<memory>") -> TokenizedGraph:
    base = _graph_from_json(obj, where, path)
    hns = obj.get("hypernodes")
    _schema(isinstance(hns, list), f"{where}.hypernodes", "expected an array", path)
    out = []
    for i, h in enumerate(hns):
        w = f"{where}.hypernodes[{i}]"
        _schema(isinstance(h, dict), w, "expected an object", path)
        nodes = h.get("nodes")
        _schema(isinstance(nodes, list) and nodes and all(map(_is_int, nodes)), f"{w}.nodes", "expected a non-empty integer array", path)
        _schema(isinstance(h.get("identity"), str) and h["identity"] != "", f"{w}.identity", "expected a non-empty string", path)
        out.append(Hypernode(tuple(sorted(nodes)), h["identity"]))
    try:
        tg = TokenizedGraph(base, tuple(out))
    except (GraphError, ValueError) as e:
        raise SchemaViolationError(f"{where}.hypernodes: {e}", str(path)) from None
    if "hyper_edges" in obj:
        given = sorted(tuple(sorted(e)) for e in obj["hyper_edges"])
        _schema(given == list(tg.hyper_edges), f"{where}.hyper_edges", "inconsistent with hypernodes and edges", path)
    return tg


def write_tokenized(graphs: Iterable[TokenizedGraph], path) -> None:
    _write_text(path, _dump_json({"graphs": [tokenized_to_dict(tg) for tg in graphs]}))


def read_tokenized(path) -> list[TokenizedGraph]:
    doc = _load_json(path)
    _schema(isinstance(doc, dict) and isinstance(doc.get("graphs"), list), "$.graphs", "expected an array", path)
    return [tokenized_from_dict(g, f"$.graphs[{i}]", path) for i, g in enumerate(doc["graphs"])]


def write_snapshots(snapshots: Sequence[Sequence[TokenizedGraph]], path) -> None:
    """Hypernode partitions for every step; base graphs are stored once."""
    doc = {
        "graphs": [_graph_to_json(tg.base) for tg in snapshots[0]] if snapshots else [],
        "steps": [
            {
                "step": t,
                "hypernodes": [
                    [{"nodes": list(h.nodes), "identity": h.identity} for h in tg.hypernodes] for tg in snap
                ],
            }
            for t, snap in enumerate(snapshots)
        ],
    }
    _write_text(path, _dump_json(doc))


# -- incidence export --------------------------------------------------------


def incidence_sidecar_path(path) -> Path:
    return Path(f"{path}.json")


def write_incidence(hypergraphs: Sequence[Hypergraph], path, names: Sequence[str | None] | None = None) -> Path:
    """Write the TSV incidence export and its JSON sidecar; returns the sidecar path."""
    lines = [INCIDENCE_HEADER, "graph_id\thyperedge_id\tnode_id"]
    meta = []
    for gid, hg in enumerate(hypergraphs):
        for n, m in incidence(hg).entries:
            lines.append(f"{gid}\t{m}\t{n}")
        meta.append(
            {
                "graph_id": gid,
                "name": names[gid] if names else None,
                "num_vertices": hg.num_vertices,
                "num_hyperedges": hg.num_hyperedges,
                "weights": list(hg.weights),
            }
        )
    _write_text(path, "\n".join(lines) + "\n")
    side = incidence_sidecar_path(path)
    _write_text(side, _dump_json({"format": "graphbpe-incidence", "version": 1, "graphs": meta}))
    return side


def read_incidence(path) -> list[Hypergraph]:
    """Rebuild hypergraphs from a TSV export and its sidecar."""
    path = Path(path)
    rows = _read_lines(path)
    if not rows or rows[0][1] != INCIDENCE_HEADER:
        raise SchemaViolationError(f"missing header line {INCIDENCE_HEADER!r}", str(path), 1)
    side = _load_json(incidence_sidecar_path(path))
    metas = side.get("graphs", []) if isinstance(side, dict) else []
    members: list[dict[int, list[int]]] = [defaultdict(list) for _ in metas]
    for no, line in rows[1:]:
        if line.startswith("graph_id"):
            continue
        try:
            gid, m, n = (int(x) for x in line.split("\t"))
            members[gid][m].append(n)
        except (ValueError, IndexError):
            raise MalformedLineError(f"bad incidence row {line!r}", str(path), no) from None
    out = []
    for meta, mem in zip(metas, members):
        edges = tuple(tuple(mem[m]) for m in range(meta["num_hyperedges"]))
        try:
            out.append(Hypergraph(meta["num_vertices"], edges, tuple(meta["weights"])))
        except ValueError as e:
            raise SchemaViolationError(str(e), str(path)) from None
    return out


__all__ = [
    "Corpus",
    "DataError",
    "INCIDENCE_HEADER",
    "load_corpus",
    "parse_tudataset",
    "read_incidence",
    "read_json_corpus",
    "read_smiles_file",
    "read_tokenized",
    "read_vocabulary",
    "tokenized_from_dict",
    "tokenized_to_dict",
    "vocabulary_from_dict",
    "vocabulary_to_dict",
    "write_incidence",
    "write_json_corpus",
    "write_snapshots",
    "write_tokenized",
    "write_vocabulary",
]
