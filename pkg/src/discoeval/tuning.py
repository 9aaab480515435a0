"""Discriminative tuning of linear metric-combination weights.

Pairwise learning-to-rank: every human preference (winner w over loser l
at segment s) yields the two difference vectors f(w,s) - f(l,s) with
label 1 and its negation with label 0, and an L2-regularized logistic
regression is fit on all of them -- no subsampling.  The symmetric
emission pins any bias at 0, so the model is bias-free by construction.

Segment-level predictions pass the interpolated raw score through a
sigmoid; system-level predictions average the raw (pre-sigmoid) scores.

The optimizer is deterministic full-batch gradient descent with
backtracking line search and zero initialization, so identical inputs
and configuration reproduce identical weights bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from discoeval.errors import DataError, NoValueError
from discoeval.judgments import expand_pairs
from discoeval.scores import ScoreMatrix
from discoeval.stats import TiePolicy, kendall_tau


@dataclass(frozen=True)
class TrainConfig:
    l2: float = 1e-3
    max_epochs: int = 5000
    tolerance: float = 1e-9
    seed: int = 0

    def __post_init__(self):
        if self.l2 < 0:
            raise ValueError("l2 strength must be non-negative")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


@dataclass
class WeightVector:
    schema: list[str]
    weights: np.ndarray

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if self.weights.shape != (len(self.schema),):
            raise DataError(f"weight count {self.weights.shape} does not match "
                            f"schema of length {len(self.schema)}")
        if not np.all(np.isfinite(self.weights)):
            raise DataError("non-finite weights")


@dataclass
class TrainingSet:
    schema: list[str]
    features: np.ndarray  # (n_instances, n_metrics) difference vectors
    labels: np.ndarray    # (n_instances,) in {0, 1}


def feature_vector(matrix: ScoreMatrix, schema, langpair: str, system: str, segment: int) -> np.ndarray:
    """Scores of one (system, segment) in schema order.  A missing metric
    value is an error, never a silent zero."""
    return np.array([matrix.get(m, langpair, system, segment) for m in schema],
                    dtype=np.float64)


def build_instances(pairs, matrix: ScoreMatrix, schema) -> TrainingSet:
    """Symmetric difference-vector instances from pairwise judgments."""
    schema = list(schema)
    rows = []
    labels = []
    for p in pairs:
        fw = feature_vector(matrix, schema, p.langpair, p.winner, p.segment)
        fl = feature_vector(matrix, schema, p.langpair, p.loser, p.segment)
        diff = fw - fl
        rows.append(diff)
        labels.append(1.0)
        rows.append(-diff)
        labels.append(0.0)
    if not rows:
        raise DataError("no training instances")
    return TrainingSet(schema=schema,
                       features=np.vstack(rows),
                       labels=np.array(labels, dtype=np.float64))


def _objective_and_grad(w, X, signs, l2):
    # mean logistic loss on signed margins + (l2/2)||w||^2
    margins = signs * (X @ w)
    # log(1 + exp(-m)) computed stably
    loss = np.mean(np.logaddexp(0.0, -margins)) + 0.5 * l2 * (w @ w)
    sigma = 1.0 / (1.0 + np.exp(np.clip(margins, -500, 500)))  # sigma(-m)
    grad = -(X.T @ (signs * sigma)) / X.shape[0] + l2 * w
    return loss, grad


def train(instances: TrainingSet, cfg: TrainConfig = TrainConfig()) -> WeightVector:
    """Fit weights by full-batch gradient descent with backtracking line
    search (Armijo).  Stops when the objective improves by less than the
    tolerance or the epoch cap is reached.  Loss never increases across
    accepted steps."""
    X = instances.features
    signs = 2.0 * instances.labels - 1.0
    w = np.zeros(X.shape[1])
    loss, grad = _objective_and_grad(w, X, signs, cfg.l2)
    if not np.isfinite(loss):
        raise DataError(f"non-finite loss at start; feature scale max {np.abs(X).max()}")
    step = 1.0
    for _ in range(cfg.max_epochs):
        grad_sq = grad @ grad
        if grad_sq == 0.0:
            break
        step = min(step * 2.0, 1e6)  # allow growth after cautious steps
        while True:
            candidate = w - step * grad
            new_loss, new_grad = _objective_and_grad(candidate, X, signs, cfg.l2)
            if np.isfinite(new_loss) and new_loss <= loss - 1e-4 * step * grad_sq:
                break
            step *= 0.5
            if step < 1e-20:
                new_loss, new_grad, candidate = loss, grad, w
                break
        improvement = loss - new_loss
        w, loss, grad = candidate, new_loss, new_grad
        if improvement < cfg.tolerance:
            break
    if not np.all(np.isfinite(w)):
        raise DataError(f"non-finite weights; feature scale max {np.abs(X).max()}")
    return WeightVector(schema=instances.schema, weights=w)


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


def predict_segment(w: WeightVector, features: np.ndarray) -> float:
    """Sigmoid of the interpolated raw score."""
    features = np.asarray(features, dtype=np.float64)
    if features.shape != w.weights.shape:
        raise DataError(f"feature length {features.shape} does not match schema "
                        f"of length {len(w.schema)}")
    return float(_sigmoid(w.weights @ features))


def predict_system(w: WeightVector, segment_features) -> float:
    """Mean of raw (pre-sigmoid) interpolated scores over the segments."""
    rows = [np.asarray(f, dtype=np.float64) for f in segment_features]
    if not rows:
        raise DataError("no segments to aggregate")
    for f in rows:
        if f.shape != w.weights.shape:
            raise DataError("feature length does not match schema")
    return float(np.mean([w.weights @ f for f in rows]))


@dataclass
class CrossvalResult:
    per_fold_tau: list[float]
    pooled_tau: float
    fold_weights: list[WeightVector] = field(default_factory=list)


def crossval_tau(matrix: ScoreMatrix, records, folds, cfg: TrainConfig = TrainConfig(),
                 schema=None, tie_policy: TiePolicy = TiePolicy.DISCORDANT) -> CrossvalResult:
    """Document-held-out cross-validation of the tuned combination.

    For every fold, weights are trained on the judgments of all other
    folds (language pairs pooled), and the held-out segments are scored
    with the raw interpolation.  The pooled Tau is computed over the union
    of all held-out predictions, so every judged segment is predicted
    exactly once.
    """
    schema = list(schema) if schema is not None else matrix.metrics()
    per_fold = []
    weights_per_fold = []
    pooled_judgments = []
    pooled_scores: dict[tuple[str, str, int], float] = {}

    for fold in range(folds.k):
        train_records = [r for r in records if folds.fold_of(r.document) != fold]
        test_records = [r for r in records if folds.fold_of(r.document) == fold]
        train_pairs = [p for r in train_records for p in expand_pairs(r)]
        test_pairs = [p for r in test_records for p in expand_pairs(r)]
        if not test_pairs:
            raise NoValueError(f"fold {fold} has zero evaluable pairs")
        w = train(build_instances(train_pairs, matrix, schema), cfg)
        weights_per_fold.append(w)

        fold_scores: dict[tuple[str, str, int], float] = {}
        for p in test_pairs:
            for system in (p.winner, p.loser):
                key = (p.langpair, system, p.segment)
                if key not in fold_scores:
                    f = feature_vector(matrix, schema, p.langpair, system, p.segment)
                    fold_scores[key] = float(w.weights @ f)
        per_fold.append(kendall_tau(test_pairs, fold_scores, tie_policy))
        pooled_judgments.extend(test_pairs)
        pooled_scores.update(fold_scores)

    pooled = kendall_tau(pooled_judgments, pooled_scores, tie_policy)
    return CrossvalResult(per_fold_tau=per_fold, pooled_tau=pooled,
                          fold_weights=weights_per_fold)


# -- weight file I/O --------------------------------------------------------


def write_weights(w: WeightVector, path):
    with open(path, "w", encoding="utf-8") as fh:
        for metric, weight in zip(w.schema, w.weights):
            fh.write(f"{metric}\t{weight:.12g}\n")


def read_weights(path) -> WeightVector:
    schema = []
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise DataError(f"{path}:{lineno}: expected 2 columns, got {len(cols)}")
            try:
                values.append(float(cols[1]))
            except ValueError:
                raise DataError(f"{path}:{lineno}: bad weight {cols[1]!r}") from None
            schema.append(cols[0])
    if not schema:
        raise DataError(f"{path}: empty weight file")
    return WeightVector(schema=schema, weights=np.array(values))
