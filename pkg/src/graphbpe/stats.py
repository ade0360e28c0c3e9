"""Per-step corpus statistics over training snapshots."""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import astuple, dataclass, fields
from typing import Sequence

from .engine import Vocabulary
from .errors import LengthMismatchError
from .graph import TokenizedGraph


@dataclass(frozen=True)
class StepStats:
    step: int
    rule_context: str
    rule_frequency: int
    total_hypernodes: int
    mean_hypernodes_per_graph: float
    compression_ratio: float
    distinct_identities: int


CSV_COLUMNS = tuple(f.name for f in fields(StepStats))


def snapshot_stats(snapshot: Sequence[TokenizedGraph], step: int = 0, rule_context: str = "", rule_frequency: int = 0) -> StepStats:
    total = sum(tg.num_hypernodes for tg in snapshot)
    mean = total / len(snapshot) if snapshot else 0.0
    # graphs without nodes have no defined ratio and are left out of the mean
    ratios = [tg.num_hypernodes / tg.base.num_nodes for tg in snapshot if tg.base.num_nodes]
    ratio = sum(ratios) / len(ratios) if ratios else 1.0
    distinct = len({h.identity for tg in snapshot for h in tg.hypernodes})
    return StepStats(step, rule_context, rule_frequency, total, mean, ratio, distinct)


def step_stats(snapshots: Sequence[Sequence[TokenizedGraph]], vocab: Vocabulary) -> list[StepStats]:
    """One row per snapshot; row ``t > 0`` describes the rule that produced it."""
    if len(snapshots) != len(vocab.rules) + 1:
        raise LengthMismatchError(
            f"{len(snapshots)} snapshots for {len(vocab.rules)} rules (expected {len(vocab.rules) + 1})"
        )
    rows = [snapshot_stats(snapshots[0])]
    for rule, snap in zip(vocab.rules, snapshots[1:]):
        rows.append(snapshot_stats(snap, rule.step, rule.context, rule.frequency))
    return rows


def token_frequency(snapshot: Sequence[TokenizedGraph]) -> list[tuple[str, int]]:
    """Hypernode identity counts, most frequent first, ties by identity."""
    counts = Counter(h.identity for tg in snapshot for h in tg.hypernodes)
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))


def stats_to_csv(rows: Sequence[StepStats]) -> str:
    """RFC 4180 CSV with a header row; ``rule_context`` is always quoted."""
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(CSV_COLUMNS)
    w = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_NONNUMERIC)
    for r in rows:
        w.writerow(astuple(r))
    return buf.getvalue()


def write_stats_csv(rows: Sequence[StepStats], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(stats_to_csv(rows))


def read_stats_csv(path) -> list[StepStats]:
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        if tuple(header) != CSV_COLUMNS:
            raise ValueError(f"unexpected stats header {header}")
        out = []
        for rec in reader:
            out.append(
                StepStats(int(rec[0]), rec[1], int(rec[2]), int(rec[3]), float(rec[4]), float(rec[5]), int(rec[6]))
            )
    return out
