import json
import subprocess
import sys

import pytest

from graphbpe.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, run
from graphbpe.corpus import Corpus, read_incidence, read_tokenized, read_vocabulary, write_json_corpus
from graphbpe.stats import read_stats_csv

from conftest import REPO
from oracles import path_graph, random_corpus, text_bpe

WORDS = ["low", "low", "lowest", "widest"]
MOLECULES = "c1ccccc1 benzene\nc1cc(c(cc1F)[N+](=O)[O-])F nitro\nCC(=O)Oc1ccccc1C(=O)O aspirin\nC1CC1C2CC2 bicyclo\n"


@pytest.fixture
def words_json(tmp_path):
    p = tmp_path / "words.json"
    write_json_corpus(Corpus(tuple(path_graph(w, name=w) for w in WORDS), "words"), p)
    return p


@pytest.fixture
def mols(tmp_path):
    p = tmp_path / "mols.smi"
    p.write_text(MOLECULES)
    return p


def test_train_words(words_json, tmp_path):
    out, stats = tmp_path / "v.json", tmp_path / "s.csv"
    code = run(["train", "--input", str(words_json), "--format", "json", "--steps", "50",
                "--contextualizer", "pse", "--out", str(out), "--stats", str(stats)])
    assert code == EXIT_OK
    vocab = read_vocabulary(out)
    rules, _, _ = text_bpe(WORDS)
    assert [(r.context, r.frequency) for r in vocab.rules] == rules
    rows = read_stats_csv(stats)
    assert len(rows) == len(rules) + 1
    assert rows[-1].total_hypernodes == 4


def test_pipeline(mols, tmp_path):
    v, tok, snap, stats2 = (tmp_path / n for n in ("v.json", "tok.json", "snap.json", "s2.csv"))
    base = ["--input", str(mols), "--format", "smiles"]
    assert run(["train", *base, "--steps", "10", "--topology", "ring", "--out", str(v),
                "--snapshots", str(snap), "--tokenized", str(tok)]) == EXIT_OK
    applied = tmp_path / "applied.json"
    assert run(["apply", *base, "--vocab", str(v), "--out", str(applied)]) == EXIT_OK
    assert read_tokenized(applied) == read_tokenized(tok)
    assert run(["stats", *base, "--vocab", str(v), "--out", str(stats2)]) == EXIT_OK
    assert len(read_stats_csv(stats2)) == len(read_vocabulary(v).rules) + 1
    assert len(json.loads(snap.read_text())["steps"]) == len(read_vocabulary(v).rules) + 1

    inc = tmp_path / "inc.tsv"
    assert run(["export-hypergraph", *base, "--vocab", str(v), "--out", str(inc)]) == EXIT_OK
    hgs = read_incidence(inc)
    assert len(hgs) == 4
    assert hgs[0].hyperedges == (tuple(range(6)),)
    meta = json.loads((tmp_path / "inc.tsv.json").read_text())
    assert [g["name"] for g in meta["graphs"]] == ["benzene", "nitro", "aspirin", "bicyclo"]

    cen = tmp_path / "cen.tsv"
    assert run(["export-hypergraph", *base, "--mode", "centroid", "--out", str(cen)]) == EXIT_OK
    assert [h.num_vertices for h in read_incidence(cen)] == [len(h.hyperedges) for h in read_incidence(cen)]


def test_outputs_identical_across_runs_and_workers(tmp_path, rng):
    corpus = tmp_path / "c.json"
    write_json_corpus(Corpus(tuple(random_corpus(rng, 25, 12)), "rand"), corpus)
    blobs = []
    for w in ("1", "2", "8", "1"):
        d = tmp_path / f"w{w}_{len(blobs)}"
        d.mkdir()
        base = ["--input", str(corpus), "--format", "json", "--workers", w]
        assert run(["train", *base, "--steps", "30", "--topology", "ring", "--out", str(d / "vocab.json"),
                    "--stats", str(d / "steps.csv")]) == EXIT_OK
        assert run(["export-hypergraph", *base, "--vocab", str(d / "vocab.json"), "--out", str(d / "inc.tsv")]) == EXIT_OK
        blobs.append(tuple((d / n).read_bytes() for n in ("vocab.json", "steps.csv", "inc.tsv", "inc.tsv.json")))
    assert all(b == blobs[0] for b in blobs)


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["train", "--format", "json", "--out", "x"],
        ["train", "--input", "x", "--format", "sdf", "--out", "x"],
        ["train", "--input", "x", "--format", "json", "--out", "x", "--steps", "-3"],
        ["train", "--input", "x", "--format", "json", "--out", "x", "--topology", "star"],
        ["train", "--input", "x", "--format", "json", "--out", "x", "--topology", "clique", "--min-clique-size", "2"],
        ["export-hypergraph", "--input", "x", "--format", "json", "--out", "y"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_data_errors(tmp_path, capsys):
    bad = tmp_path / "bad.smi"
    bad.write_text("CCO\nc1cc\n")
    assert run(["train", "--input", str(bad), "--format", "smiles", "--out", str(tmp_path / "v")]) == EXIT_DATA
    assert "bad.smi:2" in capsys.readouterr().err

    missing = tmp_path / "nothing"
    assert run(["train", "--input", str(missing), "--format", "tud", "--out", str(tmp_path / "v")]) == EXIT_DATA

    ok = tmp_path / "ok.smi"
    ok.write_text("CC\n")
    vocab = tmp_path / "v.json"
    vocab.write_text('{"format_version": 99}')
    assert run(["apply", "--input", str(ok), "--format", "smiles", "--vocab", str(vocab),
                "--out", str(tmp_path / "t.json")]) == EXIT_DATA
    assert run(["apply", "--input", str(ok), "--format", "smiles", "--vocab", str(tmp_path / "none.json"),
                "--out", str(tmp_path / "t.json")]) == EXIT_DATA


def test_module_entry_point(mols, tmp_path):
    out = tmp_path / "v.json"
    proc = subprocess.run(
        [sys.executable, "-m", "graphbpe", "train", "--input", str(mols), "--format", "smiles",
         "--steps", "3", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert len(read_vocabulary(out).rules) <= 3
    proc = subprocess.run([sys.executable, "-m", "graphbpe", "apply"], capture_output=True, text=True)
    assert proc.returncode == 1


GOLDEN = REPO / "tests" / "golden"


@pytest.mark.parametrize("workers", ["1", "3", "0"])
def test_golden_files(tmp_path, workers):
    src = ["--input", str(GOLDEN / "mols.smi"), "--format", "smiles", "--workers", workers]
    vocab = tmp_path / "vocab.json"
    assert run(["train", *src, "--steps", "12", "--topology", "ring", "--contextualizer", "neighborhood",
                "--out", str(vocab), "--stats", str(tmp_path / "steps.csv")]) == EXIT_OK
    assert run(["export-hypergraph", *src, "--vocab", str(vocab), "--out", str(tmp_path / "inc.tsv")]) == EXIT_OK
    for name in ("vocab.json", "steps.csv", "inc.tsv", "inc.tsv.json"):
        assert (tmp_path / name).read_bytes() == (GOLDEN / name).read_bytes(), name
