import csv
import os

import pytest

from readgauge.cli import (
    ingest_corpus,
    load_scores,
    main,
    parse_feature_sets,
)
from readgauge.errors import DuplicateId, MissingDoc, MissingFile, ReadgaugeError


@pytest.fixture(scope="module")
def small_corpus(tmp_path_factory):
    out = tmp_path_factory.mktemp("corpus")
    code = main(["synth", "--out", str(out), "--docs", "45", "--classes", "3", "--seed", "7"])
    assert code == 0
    return str(out)


def manifest_of(corpus_dir):
    return os.path.join(corpus_dir, "manifest.csv")


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


class TestParseFeatureSets:
    def test_plus_join_equals_repeats(self):
        assert parse_feature_sets(["flesch+linguistic"]) == parse_feature_sets(
            ["flesch", "linguistic"]
        )

    def test_dedup(self):
        assert parse_feature_sets(["flesch", "flesch+flesch"]) == ["flesch"]

    def test_unknown_rejected(self):
        with pytest.raises(ReadgaugeError):
            parse_feature_sets(["flesch+bogus"])

    def test_word_types_allowed(self):
        assert parse_feature_sets(["word_types"]) == ["word_types"]


class TestIngest:
    def test_ingest_synth(self, small_corpus):
        docs = ingest_corpus(manifest_of(small_corpus))
        assert len(docs) == 45
        assert len({d.doc_id for d in docs}) == 45
        assert all(d.label is not None for d in docs)
        assert all(d.sentences for d in docs)

    def test_missing_manifest(self, tmp_path):
        with pytest.raises(MissingFile):
            ingest_corpus(str(tmp_path / "nope.csv"))

    def test_duplicate_id(self, tmp_path):
        (tmp_path / "a.txt").write_text("Hi.", encoding="utf-8")
        m = tmp_path / "manifest.csv"
        m.write_text(
            "doc_id,path,class_name,age_low,age_high\nd1,a.txt,x,,\nd1,a.txt,x,,\n",
            encoding="utf-8",
        )
        with pytest.raises(DuplicateId):
            ingest_corpus(str(m))

    def test_missing_doc(self, tmp_path):
        m = tmp_path / "manifest.csv"
        m.write_text(
            "doc_id,path,class_name,age_low,age_high\nd1,gone.txt,x,,\n",
            encoding="utf-8",
        )
        with pytest.raises(MissingDoc):
            ingest_corpus(str(m))


class TestLoadScores:
    def test_roundtrip(self, tmp_path):
        p = tmp_path / "scores.csv"
        p.write_text(
            "doc_id,score_name,value\nd1,gpt,0.5\nd1,bert,1.5\nd2,gpt,2.0\n",
            encoding="utf-8",
        )
        scores = load_scores(str(p))
        assert scores["d1"] == [("gpt", 0.5), ("bert", 1.5)]
        assert scores["d2"] == [("gpt", 2.0)]

    def test_duplicate_pair(self, tmp_path):
        p = tmp_path / "scores.csv"
        p.write_text("doc_id,score_name,value\nd1,gpt,0.5\nd1,gpt,0.6\n", encoding="utf-8")
        with pytest.raises(DuplicateId):
            load_scores(str(p))


class TestSynthCommand:
    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(["synth", "--out", str(a), "--docs", "12", "--seed", "3"]) == 0
        assert main(["synth", "--out", str(b), "--docs", "12", "--seed", "3"]) == 0
        ma = (a / "manifest.csv").read_bytes()
        mb = (b / "manifest.csv").read_bytes()
        assert ma == mb
        for row in read_csv(str(a / "manifest.csv"))[1:]:
            doc = row[1]
            assert (a / doc).read_bytes() == (b / doc).read_bytes()

    def test_seed_changes_text(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        main(["synth", "--out", str(a), "--docs", "6", "--seed", "1"])
        main(["synth", "--out", str(b), "--docs", "6", "--seed", "2"])
        docs_a = sorted((a / "docs").glob("*.txt"))
        docs_b = sorted((b / "docs").glob("*.txt"))
        assert any(x.read_text() != y.read_text() for x, y in zip(docs_a, docs_b))


class TestExtractCommand:
    def test_extract_and_rerun_byte_identical(self, small_corpus, tmp_path):
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        argv = ["extract", "--manifest", manifest_of(small_corpus), "--features", "flesch"]
        assert main(argv + ["--out", str(out1)]) == 0
        assert main(argv + ["--out", str(out2)]) == 0
        assert (out1 / "features.csv").read_bytes() == (out2 / "features.csv").read_bytes()
        rows = read_csv(str(out1 / "features.csv"))
        assert rows[0][:2] == ["doc_id", "label"]
        assert len(rows) == 46  # header + 45 docs
        assert len(rows[0]) == 2 + 12

    def test_plus_union_matches_repeated_flags(self, small_corpus, tmp_path):
        out1, out2 = tmp_path / "u1", tmp_path / "u2"
        base = ["extract", "--manifest", manifest_of(small_corpus)]
        assert main(base + ["--features", "flesch+lexical_diversity", "--out", str(out1)]) == 0
        assert main(base + ["--features", "flesch", "--features", "lexical_diversity", "--out", str(out2)]) == 0
        assert (out1 / "features.csv").read_bytes() == (out2 / "features.csv").read_bytes()

    def test_unknown_feature_set_exits_1(self, small_corpus, tmp_path, capsys):
        code = main([
            "extract", "--manifest", manifest_of(small_corpus),
            "--features", "bogus", "--out", str(tmp_path / "x"),
        ])
        assert code == 1
        assert capsys.readouterr().err.startswith("error:")


class TestTrainEvalCommands:
    def test_train_writes_model(self, small_corpus, tmp_path):
        out = tmp_path / "model"
        code = main([
            "train", "--manifest", manifest_of(small_corpus),
            "--features", "flesch", "--model", "logistic", "--out", str(out),
        ])
        assert code == 0
        assert (out / "model.json").is_file()

    def test_eval_outputs_and_determinism(self, small_corpus, tmp_path):
        out1, out2 = tmp_path / "e1", tmp_path / "e2"
        argv = [
            "eval", "--manifest", manifest_of(small_corpus),
            "--features", "flesch", "--model", "logistic",
            "--folds", "3", "--seed", "7",
        ]
        assert main(argv + ["--out", str(out1)]) == 0
        assert main(argv + ["--out", str(out2)]) == 0
        assert (out1 / "eval_summary.csv").read_bytes() == (out2 / "eval_summary.csv").read_bytes()
        assert (out1 / "eval_folds.csv").read_bytes() == (out2 / "eval_folds.csv").read_bytes()
        folds = read_csv(str(out1 / "eval_folds.csv"))
        assert folds[0] == ["fold", "weighted_f1", "macro_f1"]
        assert len(folds) == 4
        summary = read_csv(str(out1 / "eval_summary.csv"))
        assert summary[1][0] == "flesch"
        assert 0.0 <= float(summary[1][1]) <= 1.0

    def test_missing_score_coverage(self, small_corpus, tmp_path, capsys):
        scores = tmp_path / "scores.csv"
        scores.write_text("doc_id,score_name,value\nd0,oracle,0\n", encoding="utf-8")
        code = main([
            "train", "--manifest", manifest_of(small_corpus),
            "--features", "flesch", "--model", "logistic",
            "--scores", str(scores), "--out", str(tmp_path / "m"),
        ])
        assert code == 1
        assert "error:" in capsys.readouterr().err


class TestReportCommand:
    def test_sorted_ascending_by_weighted_f1(self, tmp_path):
        reports = tmp_path / "reports"
        reports.mkdir()
        (reports / "b.csv").write_text(
            "features,weighted_f1,macro_f1,sd_weighted_f1,sd_macro_f1\nsetB,0.9,0.9,0.0,0.0\n",
            encoding="utf-8",
        )
        (reports / "a.csv").write_text(
            "features,weighted_f1,macro_f1,sd_weighted_f1,sd_macro_f1\nsetA,0.5,0.5,0.0,0.0\n",
            encoding="utf-8",
        )
        out = tmp_path / "out"
        assert main(["report", "--reports", str(reports), "--out", str(out)]) == 0
        rows = read_csv(str(out / "report.csv"))
        assert [r[0] for r in rows[1:]] == ["setA", "setB"]
