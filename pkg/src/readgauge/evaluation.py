"""Cross-validation, F1 scoring and the training-set-size ablation."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Protocol, Sequence

import numpy as np

from .errors import LengthMismatch, SizeTooLarge, TooFewSamples
from .textcore import Document


@dataclass(frozen=True)
class FoldPlan:
    k: int
    assignments: dict[str, int]
    seed: int
    stratified: bool


@dataclass
class EvalReport:
    fold_weighted: list[float]
    fold_macro: list[float]
    confusions: list[np.ndarray]

    @property
    def mean_weighted(self) -> float:
        return float(np.mean(self.fold_weighted))

    @property
    def mean_macro(self) -> float:
        return float(np.mean(self.fold_macro))

    @property
    def sd_weighted(self) -> float:
        return float(np.std(self.fold_weighted))  # population SD over folds

    @property
    def sd_macro(self) -> float:
        return float(np.std(self.fold_macro))


class Pipeline(Protocol):
    def fit(self, docs: Sequence[Document], labels: Sequence[int]) -> None: ...

    def predict(self, docs: Sequence[Document]) -> list[int]: ...

    def clone(self) -> "Pipeline": ...


def kfold(
    doc_ids: Sequence[str],
    labels: Sequence[int],
    k: int,
    seed: int,
    stratified: bool = True,
) -> FoldPlan:
    """Deterministic, balanced fold assignment (optionally per-class)."""
    n = len(doc_ids)
    if len(labels) != n:
        raise LengthMismatch(f"{n} ids vs {len(labels)} labels")
    if k < 2 or k > n:
        raise TooFewSamples(f"k={k} with n={n}")
    rng = random.Random(seed)
    assignments: dict[str, int] = {}
    if stratified:
        by_class: dict[int, list[str]] = {}
        for doc_id, label in zip(doc_ids, labels):
            by_class.setdefault(label, []).append(doc_id)
        cursor = 0
        for label in sorted(by_class):
            ids = sorted(by_class[label])
            rng.shuffle(ids)
            for doc_id in ids:
                assignments[doc_id] = cursor % k
                cursor += 1
    else:
        ids = sorted(doc_ids)
        rng.shuffle(ids)
        for i, doc_id in enumerate(ids):
            assignments[doc_id] = i % k
    return FoldPlan(k=k, assignments=assignments, seed=seed, stratified=stratified)


def confusion_matrix(y_true: Sequence[int], y_pred: Sequence[int], n_classes: int) -> np.ndarray:
    cm = np.zeros((n_classes, n_classes), dtype=int)
    for t, p in zip(y_true, y_pred):
        cm[t, p] += 1
    return cm


def f1_scores(
    y_true: Sequence[int], y_pred: Sequence[int], n_classes: int
) -> tuple[list[float], float, float]:
    """Per-class F1, support-weighted F1, and unweighted macro F1.

    Classes absent from y_true contribute zero weight to the weighted score
    and an F1 of zero to the macro mean.
    """
    if len(y_true) != len(y_pred):
        raise LengthMismatch(f"{len(y_true)} true vs {len(y_pred)} predicted")
    cm = confusion_matrix(y_true, y_pred, n_classes)
    per_class = []
    for c in range(n_classes):
        tp = cm[c, c]
        fp = cm[:, c].sum() - tp
        fn = cm[c, :].sum() - tp
        denom = 2 * tp + fp + fn
        per_class.append(2 * tp / denom if denom else 0.0)
    supports = cm.sum(axis=1)
    total = supports.sum()
    weighted = (
        float(sum(s * f for s, f in zip(supports, per_class)) / total) if total else 0.0
    )
    macro = float(sum(per_class) / n_classes) if n_classes else 0.0
    return per_class, weighted, macro


def cross_validate(
    pipeline: Pipeline,
    docs: Sequence[Document],
    labels: Sequence[int],
    n_classes: int,
    k: int = 5,
    seed: int = 7,
    stratified: bool = True,
) -> EvalReport:
    """k-fold protocol: fit on the train folds only, score the held-out fold."""
    doc_ids = [d.doc_id for d in docs]
    plan = kfold(doc_ids, labels, k=k, seed=seed, stratified=stratified)
    fold_weighted: list[float] = []
    fold_macro: list[float] = []
    confusions: list[np.ndarray] = []
    for fold in range(k):
        train_idx = [i for i, d in enumerate(docs) if plan.assignments[d.doc_id] != fold]
        test_idx = [i for i, d in enumerate(docs) if plan.assignments[d.doc_id] == fold]
        model = pipeline.clone()
        model.fit([docs[i] for i in train_idx], [labels[i] for i in train_idx])
        preds = model.predict([docs[i] for i in test_idx])
        truth = [labels[i] for i in test_idx]
        _, weighted, macro = f1_scores(truth, preds, n_classes)
        fold_weighted.append(weighted)
        fold_macro.append(macro)
        confusions.append(confusion_matrix(truth, preds, n_classes))
    return EvalReport(fold_weighted=fold_weighted, fold_macro=fold_macro, confusions=confusions)


def _stratified_order(indices: list[int], labels: Sequence[int], rng: random.Random) -> list[int]:
    """Interleave shuffled per-class index lists so every prefix is balanced."""
    by_class: dict[int, list[int]] = {}
    for i in indices:
        by_class.setdefault(labels[i], []).append(i)
    pools = []
    for label in sorted(by_class):
        pool = sorted(by_class[label])
        rng.shuffle(pool)
        pools.append(pool)
    order: list[int] = []
    pos = 0
    while any(pos < len(p) for p in pools):
        for pool in pools:
            if pos < len(pool):
                order.append(pool[pos])
        pos += 1
    return order


def size_ablation(
    pipeline_with: Pipeline,
    pipeline_without: Pipeline,
    sizes: Sequence[int],
    docs: Sequence[Document],
    labels: Sequence[int],
    n_classes: int,
    seed: int = 7,
) -> list[tuple[int, float, float]]:
    """Macro F1 of both pipelines at nested training sizes on one fixed test split.

    A stratified 20% split is held out once; each size trains on a prefix of
    one stratified shuffle of the remaining pool, so samples nest.
    """
    doc_ids = [d.doc_id for d in docs]
    plan = kfold(doc_ids, labels, k=5, seed=seed, stratified=True)
    test_idx = [i for i, d in enumerate(docs) if plan.assignments[d.doc_id] == 0]
    pool_idx = [i for i, d in enumerate(docs) if plan.assignments[d.doc_id] != 0]
    if max(sizes) > len(pool_idx):
        raise SizeTooLarge(f"max size {max(sizes)} > pool {len(pool_idx)}")
    rng = random.Random(seed)
    order = _stratified_order(pool_idx, labels, rng)
    test_docs = [docs[i] for i in test_idx]
    test_labels = [labels[i] for i in test_idx]
    curve: list[tuple[int, float, float]] = []
    for size in sizes:
        chosen = order[:size]
        train_docs = [docs[i] for i in chosen]
        train_labels = [labels[i] for i in chosen]
        row = []
        for pipe in (pipeline_with, pipeline_without):
            model = pipe.clone()
            model.fit(train_docs, train_labels)
            preds = model.predict(test_docs)
            _, _, macro = f1_scores(test_labels, preds, n_classes)
            row.append(macro)
        curve.append((size, row[0], row[1]))
    return curve
