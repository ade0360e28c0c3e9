"""Command-line interface.

Exit status: 0 on success, 1 on usage errors, 2 on data errors (unreadable
or malformed input, with file and line where known).
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from . import __version__
from .corpus import (
    load_corpus,
    read_vocabulary,
    write_incidence,
    write_snapshots,
    write_tokenized,
    write_vocabulary,
)
from .context import ContextualizerKind
from .engine import apply, replay, resolve_workers, train
from .errors import DataError, GraphError
from .hypergraph import centroid_hypergraph, to_hypergraph
from .stats import step_stats, write_stats_csv
from .topology import Topology, TopologyKind

log = logging.getLogger("graphbpe")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _non_negative(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {n}")
    return n


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="corpus path (TUDataset directory or prefix, .smi file, or JSON)")
    p.add_argument("--format", required=True, choices=["tud", "smiles", "json"])
    p.add_argument("--workers", type=_non_negative, default=0, help="threads for counting/merging (0 = auto)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphbpe", description="Byte-pair-encoding style tokenization of graph corpora.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("train", help="learn merge rules from a corpus")
    _add_input(p)
    p.add_argument("--steps", type=_non_negative, default=100)
    p.add_argument("--topology", choices=[k.value for k in TopologyKind], default="none")
    p.add_argument("--min-clique-size", type=_non_negative, default=3)
    p.add_argument("--contextualizer", choices=[k.value for k in ContextualizerKind], default="neighborhood")
    p.add_argument("--out", required=True, help="vocabulary JSON output")
    p.add_argument("--stats", help="per-step statistics CSV output")
    p.add_argument("--snapshots", help="JSON output with the tokenization after every step")
    p.add_argument("--tokenized", help="JSON output with the final tokenized graphs")

    p = sub.add_parser("apply", help="tokenize a corpus with a learned vocabulary")
    _add_input(p)
    p.add_argument("--vocab", required=True)
    p.add_argument("--out", required=True, help="tokenized graphs JSON output")

    p = sub.add_parser("export-hypergraph", help="write hypergraph incidence TSV")
    _add_input(p)
    p.add_argument("--mode", choices=["graphbpe", "centroid"], default="graphbpe")
    p.add_argument("--vocab", help="vocabulary used to tokenize the input (graphbpe mode)")
    p.add_argument("--out", required=True, help="incidence TSV output; sidecar written to <out>.json")

    p = sub.add_parser("stats", help="per-step statistics of replaying a vocabulary on a corpus")
    _add_input(p)
    p.add_argument("--vocab", required=True)
    p.add_argument("--out", required=True, help="statistics CSV output")
    return parser


def _cmd_train(args) -> None:
    if args.topology == "clique" and args.min_clique_size < 3:
        raise UsageError("--min-clique-size must be at least 3")
    corpus = load_corpus(args.input, args.format)
    topo = Topology(TopologyKind(args.topology), max(args.min_clique_size, 3))
    want_snapshots = bool(args.stats or args.snapshots)
    log.info("training on %d graphs for up to %d steps", len(corpus), args.steps)
    result = train(
        corpus.graphs,
        args.steps,
        topo,
        args.contextualizer,
        emit_snapshots=want_snapshots,
        workers=resolve_workers(args.workers),
        on_step=lambda r: log.debug("step %d: %s x%d", r.step, r.context, r.frequency),
    )
    write_vocabulary(result.vocabulary, args.out)
    if args.stats:
        write_stats_csv(step_stats(result.snapshots, result.vocabulary), args.stats)
    if args.snapshots:
        write_snapshots(result.snapshots, args.snapshots)
    if args.tokenized:
        write_tokenized(result.final, args.tokenized)
    log.info("learned %d rules", len(result.vocabulary.rules))


def _cmd_apply(args) -> None:
    vocab = read_vocabulary(args.vocab)
    corpus = load_corpus(args.input, args.format)
    write_tokenized([apply(vocab, g) for g in corpus], args.out)


def _cmd_export(args) -> None:
    if args.mode == "graphbpe" and not args.vocab:
        raise UsageError("export-hypergraph --mode graphbpe requires --vocab")
    corpus = load_corpus(args.input, args.format)
    if args.mode == "centroid":
        hgs = [centroid_hypergraph(g) for g in corpus]
    else:
        vocab = read_vocabulary(args.vocab)
        hgs = [to_hypergraph(apply(vocab, g)) for g in corpus]
    write_incidence(hgs, args.out, [g.name for g in corpus])


def _cmd_stats(args) -> None:
    vocab = read_vocabulary(args.vocab)
    corpus = load_corpus(args.input, args.format)
    snaps = replay(vocab, corpus.graphs, resolve_workers(args.workers))
    write_stats_csv(step_stats(snaps, vocab), args.out)


COMMANDS = {
    "train": _cmd_train,
    "apply": _cmd_apply,
    "export-hypergraph": _cmd_export,
    "stats": _cmd_stats,
}


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        sys.stderr.write(str(e))
        return EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        COMMANDS[args.command](args)
    except UsageError as e:
        sys.stderr.write(f"graphbpe: error: {e}\n")
        return EXIT_USAGE
    except (DataError, GraphError) as e:
        sys.stderr.write(f"graphbpe: {e}\n")
        return EXIT_DATA
    except OSError as e:
        sys.stderr.write(f"graphbpe: {e.filename or ''}: {e.strerror}\n")
        return EXIT_DATA
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
