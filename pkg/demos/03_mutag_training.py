# coding: utf-8

# # Training on MUTAG
#
# MUTAG ships with this repository under data/MUTAG in TUDataset layout.
# We learn 100 merge rules with ring preprocessing and look at how quickly
# the corpus shrinks.

# %%

import time
from pathlib import Path

from graphbpe import parse_tudataset, train
from graphbpe.stats import step_stats, token_frequency

corpus = parse_tudataset(Path(__file__).resolve().parents[1] / "data" / "MUTAG")
print(len(corpus), "graphs; labels", corpus.label_alphabet)


# %%

t0 = time.perf_counter()
result = train(corpus.graphs, 100, "ring", "neighborhood", workers=0)
print(f"{len(result.vocabulary.rules)} rules in {time.perf_counter() - t0:.2f} s")


# %%
# Compression ratio is the mean over graphs of hypernodes / original nodes.

rows = step_stats(result.snapshots, result.vocabulary)
for row in rows[::10]:
    print(f"step {row.step:3d}  ratio {row.compression_ratio:.3f}  hypernodes {row.total_hypernodes}")


# %%
# The most common tokens at the end. Long identities are nested contexts.

for identity, n in token_frequency(result.final)[:8]:
    print(n, identity[:70])
