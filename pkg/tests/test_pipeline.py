import numpy as np
import pytest

from readgauge.errors import MissingScore
from readgauge.pipeline import FeaturePipeline, PipelineConfig
from readgauge.registry import Resources
from readgauge.textcore import make_document


def corpus():
    easy = "The cat sat. The dog ran. It was fun."
    hard = (
        "Notwithstanding unprecedented circumstances, the investigation "
        "demonstrated extraordinarily complicated interdependencies throughout."
    )
    docs, labels = [], []
    for i in range(12):
        docs.append(make_document(f"e{i}", easy + f" Word{i}."))
        labels.append(0)
        docs.append(make_document(f"h{i}", hard + f" Word{i}."))
        labels.append(1)
    return docs, labels


def flesch_pipeline(model="logistic", scores=None):
    cfg = PipelineConfig(feature_sets=["flesch"], model=model)
    return FeaturePipeline(cfg, Resources(), scores)


class TestFitPredict:
    def test_logistic_separates(self):
        docs, labels = corpus()
        pipe = flesch_pipeline()
        pipe.fit(docs, labels)
        assert pipe.predict(docs) == labels

    def test_linear_kind_is_untuned_svm(self):
        docs, labels = corpus()
        pipe = flesch_pipeline(model="linear")
        pipe.fit(docs, labels)
        preds = pipe.predict(docs)
        assert sum(p == l for p, l in zip(preds, labels)) / len(labels) >= 0.9

    def test_unknown_model_kind(self):
        with pytest.raises(ValueError):
            FeaturePipeline(PipelineConfig(feature_sets=["flesch"], model="tree"), Resources())

    def test_predict_before_fit_asserts(self):
        pipe = flesch_pipeline()
        with pytest.raises(AssertionError):
            pipe.predict([make_document("d", "Hi.")])


class TestWordTypes:
    def test_vocab_from_training_docs_only(self):
        cfg = PipelineConfig(feature_sets=["word_types"], model="logistic")
        pipe = FeaturePipeline(cfg, Resources())
        train = [make_document("a", "apple banana"), make_document("b", "banana cherry")]
        pipe.fit(train, [0, 1])
        assert pipe.vocab == ["apple", "banana", "cherry"]
        assert pipe.feature_names == ("wt_apple", "wt_banana", "wt_cherry")
        # unseen words at predict time do not widen the matrix
        preds = pipe.predict([make_document("c", "durian banana")])
        assert preds[0] in (0, 1)


class TestFusion:
    def test_scores_appended_after_features(self):
        docs, labels = corpus()
        scores = {d.doc_id: [("oracle", float(l))] for d, l in zip(docs, labels)}
        pipe = flesch_pipeline(scores=scores)
        pipe.fit(docs, labels)
        assert pipe.feature_names[-1] == "oracle"
        assert pipe.predict(docs) == labels

    def test_missing_score_raises(self):
        docs, labels = corpus()
        scores = {docs[0].doc_id: [("oracle", 0.0)]}
        pipe = flesch_pipeline(scores=scores)
        with pytest.raises(MissingScore):
            pipe.fit(docs, labels)


class TestClone:
    def test_clone_shares_static_cache_not_fit_state(self):
        docs, labels = corpus()
        pipe = flesch_pipeline()
        pipe.fit(docs, labels)
        copy = pipe.clone()
        assert copy.model is None
        assert copy.vocab is None
        assert copy._static_cache is pipe._static_cache

    def test_clone_refit_matches(self):
        docs, labels = corpus()
        pipe = flesch_pipeline()
        pipe.fit(docs, labels)
        copy = pipe.clone()
        copy.fit(docs, labels)
        np.testing.assert_array_equal(copy.model.weights, pipe.model.weights)
