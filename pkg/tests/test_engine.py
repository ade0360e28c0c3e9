import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphbpe.engine import (
    MergeRule,
    PairCounter,
    Vocabulary,
    apply,
    count_pairs,
    merge_step,
    replay,
    select_best,
    train,
)
from graphbpe.errors import VersionMismatchError
from graphbpe.graph import build_graph, init_tokenized
from graphbpe.topology import Topology, TopologyKind, preprocess

from oracles import brute_count, cycle_graph, path_graph, random_corpus, random_graph, random_tokenized, text_bpe

WORDS = ["low", "low", "lowest", "widest"]

# computed by oracles.text_bpe on WORDS (order-free pairs, smallest-string tie-break)
WORDS_FIRST_COUNTS = {
    "l-o": 3, "o-w": 3, "e-s": 2, "s-t": 2, "e-w": 1, "i-w": 1, "d-i": 1, "d-e": 1,
}
WORDS_RULE_COUNT = 8


def words_corpus():
    return [path_graph(w) for w in WORDS]


def pse(graphs):
    return [preprocess(g, None, "pse") for g in graphs]


def test_frozen_values_match_oracle():
    rules, first, final = text_bpe(WORDS)
    assert first == WORDS_FIRST_COUNTS
    assert len(rules) == WORDS_RULE_COUNT
    assert all(len(w) == 1 for w in final)


class TestCountPairs:
    def test_words(self):
        pc = count_pairs(pse(words_corpus()))
        assert pc.counts == WORDS_FIRST_COUNTS

    def test_empty(self):
        pc = count_pairs([])
        assert pc.counts == {} and pc.occurrences == {}

    def test_single_edge(self):
        pc = count_pairs(pse([path_graph("ab")]))
        assert pc.counts == {"a-b": 1}
        assert pc.occurrences == {"a-b": {0: [(0, 1)]}}

    def test_counts_match_occurrences(self, rng):
        for _ in range(30):
            corpus = [random_tokenized(rng, random_graph(rng)) for _ in range(rng.randint(0, 8))]
            pc = count_pairs(corpus)
            for s, n in pc.counts.items():
                assert n == sum(len(v) for v in pc.occurrences[s].values())
                for i, edges in pc.occurrences[s].items():
                    assert set(edges) <= set(corpus[i].hyper_edges)

    @settings(max_examples=100, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), workers=st.sampled_from([1, 3]))
    def test_matches_brute_force(self, seed, workers):
        rng = random.Random(seed)
        corpus = [random_tokenized(rng, random_graph(rng, 12)) for _ in range(rng.randint(0, 50))]
        assert count_pairs(corpus, workers).counts == dict(brute_count(corpus))


class TestSelectBest:
    def test_words_tie_break(self):
        rule = select_best(count_pairs(pse(words_corpus())))
        assert rule == MergeRule(1, "l-o", 3)

    def test_empty(self):
        assert select_best(PairCounter()) is None

    def test_lexicographic_tie(self):
        assert select_best(PairCounter({"x-y": 2, "a-b": 2})).context == "a-b"


class TestMergeStep:
    def test_low(self):
        corpus = pse([path_graph("low")])
        (tg,) = merge_step(corpus, MergeRule(1, "l-o", 1), count_pairs(corpus))
        assert [h.nodes for h in tg.hypernodes] == [(0, 1), (2,)]
        assert tg.hypernodes[0].identity == "l-o"

    def test_greedy_disjoint(self):
        corpus = pse([path_graph("aba")])
        (tg,) = merge_step(corpus, "a-b")
        assert [h.nodes for h in tg.hypernodes] == [(0, 1), (2,)]
        assert tg.hyper_edges == ((0, 1),)

    def test_no_match_unchanged(self):
        corpus = pse([path_graph("xyz")])
        assert merge_step(corpus, "a-b") == tuple(corpus)

    def test_all_disjoint_occurrences_merged(self):
        corpus = pse([path_graph("abab")])
        (tg,) = merge_step(corpus, "a-b")
        assert [h.nodes for h in tg.hypernodes] == [(0, 1), (2, 3)]

    def test_ring_of_four_alternating(self):
        # edges (0,1),(1,2),(2,3),(0,3) all "a-b"; greedy keeps (0,1),(2,3)
        corpus = pse([cycle_graph("abab")])
        (tg,) = merge_step(corpus, "a-b")
        assert [h.nodes for h in tg.hypernodes] == [(0, 1), (2, 3)]


class TestTrain:
    def test_words(self):
        res = train(words_corpus(), 100, None, "pse")
        assert res.vocabulary.contexts[0] == "l-o"
        assert len(res.vocabulary.rules) == WORDS_RULE_COUNT
        assert all(tg.num_hypernodes == 1 for tg in res.final)
        oracle_rules, _, _ = text_bpe(WORDS)
        assert [(r.context, r.frequency) for r in res.vocabulary.rules] == oracle_rules

    def test_zero_steps(self, rng):
        corpus = random_corpus(rng)
        res = train(corpus, 0, "ring", "neighborhood")
        assert res.vocabulary.rules == ()
        assert len(res.snapshots) == 1

    def test_single_nodes(self):
        res = train([build_graph(["a"]), build_graph(["b"])], 5, None, "pse")
        assert res.vocabulary.rules == ()

    def test_no_snapshots(self):
        res = train(words_corpus(), 3, None, "pse", emit_snapshots=False)
        assert res.snapshots is None
        assert len(res.vocabulary.rules) == 3

    def test_negative_steps(self):
        with pytest.raises(ValueError):
            train([], -1)

    def test_vocabulary_metadata(self):
        topo = Topology(TopologyKind.CLIQUE, 4)
        res = train(words_corpus(), 2, topo, "structural")
        assert res.vocabulary.topology == topo
        assert res.vocabulary.contextualizer.value == "structural"
        assert [r.step for r in res.vocabulary.rules] == [1, 2]

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_monotone_compression_and_replay(self, seed):
        rng = random.Random(seed)
        corpus = random_corpus(rng, max_graphs=10, max_nodes=10)
        topo = rng.choice(["none", "ring", "clique"])
        ctx = rng.choice(["neighborhood", "pse", "structural"])
        res = train(corpus, 15, topo, ctx)
        sizes = [sum(tg.num_hypernodes for tg in snap) for snap in res.snapshots]
        assert all(b < a for a, b in zip(sizes, sizes[1:]))
        assert len(res.snapshots) == len(res.vocabulary.rules) + 1
        for g, tg in zip(corpus, res.final):
            assert apply(res.vocabulary, g) == tg
        assert replay(res.vocabulary, corpus) == res.snapshots

    def test_text_correspondence(self, rng):
        for _ in range(40):
            words = ["".join(rng.choice("abc") for _ in range(rng.randint(1, 7))) for _ in range(rng.randint(1, 6))]
            res = train([path_graph(w) for w in words], 30, None, "pse")
            rules, _, final = text_bpe(words, 30)
            assert [(r.context, r.frequency) for r in res.vocabulary.rules] == rules
            assert [tg.num_hypernodes for tg in res.final] == [len(w) for w in final]


class TestApply:
    def test_replays_training(self):
        res = train(words_corpus(), 100, None, "pse")
        tg = apply(res.vocabulary, path_graph("low"))
        assert tg == res.final[0]
        assert tg.num_hypernodes == 1

    def test_unseen_labels(self):
        res = train(words_corpus(), 100, None, "pse")
        g = path_graph("qr")
        assert apply(res.vocabulary, g) == init_tokenized(g, ["q", "r"])

    def test_empty_vocab_still_preprocesses(self):
        vocab = Vocabulary("pse", Topology(TopologyKind.RING))
        assert apply(vocab, cycle_graph("cccccc")).num_hypernodes == 1

    def test_version_mismatch(self):
        with pytest.raises(VersionMismatchError):
            apply(Vocabulary(format_version=99), path_graph("ab"))


def test_determinism_across_workers(rng):
    corpus = random_corpus(rng, 30, 15)
    runs = [train(corpus, 20, "ring", "neighborhood", workers=w) for w in (1, 2, 8)]
    assert all(r.vocabulary == runs[0].vocabulary for r in runs)
    assert all(r.snapshots == runs[0].snapshots for r in runs)
