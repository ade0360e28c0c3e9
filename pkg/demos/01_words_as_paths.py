# coding: utf-8

# # Text BPE as a special case
#
# A word is a path graph whose nodes carry one letter each. With the `pse`
# contextualizer a hypernode's identity is just its label, so training on
# paths behaves like ordinary byte-pair encoding on the words.

# %%

from graphbpe import count_pairs, train
from graphbpe.graph import build_graph

words = ["low", "low", "lowest", "widest"]
corpus = [build_graph(list(w), [(i, i + 1) for i in range(len(w) - 1)], w) for w in words]


# %%
# Before any merge, every adjacent letter pair is a candidate. Edge contexts
# are orderless, so "o-w" and "w-o" are the same string.

result = train(corpus, steps=100, ctx="pse")
for context, n in sorted(count_pairs(result.snapshots[0]).counts.items(), key=lambda kv: (-kv[1], kv[0])):
    print(f"{context:6s} {n}")


# %%
# The winner at each step is the most frequent context, ties broken by the
# smaller string. Training stops early once every word is one hypernode.

for rule in result.vocabulary.rules:
    print(rule.step, rule.context, rule.frequency)


# %%

for tg in result.final:
    print(tg.base.name, "->", [h.identity for h in tg.hypernodes])
