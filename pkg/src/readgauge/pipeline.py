"""End-to-end pipeline: feature extraction + optional fusion + linear model.

Fold-independent features are cached per document (they are pure functions
of the text); everything fold-dependent — the word-type vocabulary, the
scaler and the model — is fit inside ``fit`` from the training documents
only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import models, registry
from .errors import MissingScore
from .models import LinearModel, LogisticConfig, SvmConfig
from .textcore import Document

MODEL_KINDS = ("svm", "logistic", "linear")


@dataclass
class PipelineConfig:
    feature_sets: list[str]
    model: str = "svm"  # svm | logistic | linear (C=1 svm, no tuning)
    svm_cfg: SvmConfig = field(default_factory=SvmConfig)
    logistic_cfg: LogisticConfig = field(default_factory=LogisticConfig)
    seed: int = 7


class FeaturePipeline:
    def __init__(
        self,
        config: PipelineConfig,
        resources: registry.Resources,
        scores: Optional[dict[str, list[tuple[str, float]]]] = None,
        _static_cache: Optional[dict[str, dict[str, float]]] = None,
    ):
        if config.model not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {config.model!r}")
        self.config = config
        self.resources = resources
        self.scores = scores
        # Shared across clones: features that do not depend on the fold.
        self._static_cache = _static_cache if _static_cache is not None else {}
        self.vocab: Optional[list[str]] = None
        self.model: Optional[LinearModel] = None
        self.feature_names: Optional[tuple[str, ...]] = None

    def clone(self) -> "FeaturePipeline":
        return FeaturePipeline(
            self.config, self.resources, self.scores, self._static_cache
        )

    # -- feature assembly ---------------------------------------------------

    def _static_features(self, doc: Document) -> dict[str, float]:
        cached = self._static_cache.get(doc.doc_id)
        if cached is None:
            static_sets = [s for s in self.config.feature_sets if s != "word_types"]
            if static_sets:
                fs = registry.union_sets(static_sets)
                cached = registry.extract(doc, fs, self.resources)
            else:
                cached = {}
            self._static_cache[doc.doc_id] = cached
        return cached

    def _doc_vector(self, doc: Document) -> dict[str, float]:
        feats = dict(self._static_features(doc))
        if "word_types" in self.config.feature_sets:
            res = registry.Resources(vocab=self.vocab)
            wt = registry.extract(doc, registry.resolve_set("word_types", self.vocab), res)
            feats.update(wt)
        if self.scores is not None:
            if doc.doc_id not in self.scores:
                raise MissingScore(f"no external score rows for doc {doc.doc_id!r}")
            feats = models.fuse(feats, self.scores[doc.doc_id])
        return feats

    def _matrix(self, docs: Sequence[Document]) -> tuple[np.ndarray, tuple[str, ...]]:
        rows = [self._doc_vector(d) for d in docs]
        if not rows:
            return np.zeros((0, 0)), ()
        names = tuple(rows[0].keys())
        X = np.array([[r[n] for n in names] for r in rows], dtype=float)
        return X, names

    # -- fit / predict ------------------------------------------------------

    def fit(self, docs: Sequence[Document], labels: Sequence[int]) -> None:
        if "word_types" in self.config.feature_sets:
            counts: dict[str, int] = {}
            for doc in docs:
                for tok in doc.word_tokens:
                    counts[tok.lowercased] = counts.get(tok.lowercased, 0) + 1
            self.vocab = sorted(counts)
        X, names = self._matrix(docs)
        self.feature_names = names
        y = np.asarray(labels, dtype=int)
        if self.config.model == "logistic":
            self.model = models.train_logistic(X, y, self.config.logistic_cfg, names)
        elif self.config.model == "svm":
            cfg = self.config.svm_cfg
            c = self._tune_c(X, y, cfg)
            self.model = models.train_linear_svm(
                X, y, SvmConfig(C=c, epochs=cfg.epochs, lr=cfg.lr, seed=cfg.seed), names
            )
        else:  # "linear": the C=1 linear SVM without tuning
            self.model = models.train_linear_svm(X, y, SvmConfig(C=1.0), names)

    def _tune_c(self, X: np.ndarray, y: np.ndarray, cfg: SvmConfig) -> float:
        # Too few samples to cross-validate the grid meaningfully.
        if len(y) < 10:
            return cfg.C

        def trainer(Xt, yt, c):
            return models.train_linear_svm(
                Xt, yt, SvmConfig(C=c, epochs=cfg.epochs, lr=cfg.lr, seed=cfg.seed)
            )

        return models.grid_search_c(
            trainer, X, y, models.DEFAULT_C_GRID,
            folds=min(5, len(y)), seed=self.config.seed,
        )

    def predict(self, docs: Sequence[Document]) -> list[int]:
        assert self.model is not None, "fit before predict"
        X, names = self._matrix(docs)
        if X.size == 0 and not docs:
            return []
        return list(models.predict(self.model, X, names))
