"""Training presets that drive AdaGrad over planned constraint batches.

``specialize`` mutates ``store.current`` in place (``store.original`` is
never touched) and returns the store together with a :class:`TrainLog`.
Given identical inputs and seed, every preset produces a bit-identical
output matrix.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .constraints import ConstraintSet
from .embeddings import EmbeddingStore, nearest_neighbors
from .losses import (
    LossResult,
    Margins,
    asymmetric_norm_loss,
    attract_repel_reg_loss,
    contrastive_loss,
    counterfit_preserve_loss,
    distance_with_grads,
    hypernym_triplet_loss,
    preservation_loss,
    quadruplet_hierarchy_loss,
    triplet_attract_loss,
    triplet_repel_loss,
)
from .sampling import MiniBatch, emit_pair_triplets, plan_epoch, quad_join, select_negatives

PRESETS = (
    "retrofitting",
    "counterfitting",
    "attract_repel",
    "lear",
    "hierarchy_fitting",
    "hierarchy_fitting_ad_dir",
    "hierarchy_fitting_ad_indir",
)


class NonFiniteGradientError(RuntimeError):
    """Raised when a gradient update would write non-finite values."""


@dataclass
class SpecializeConfig:
    """Hyperparameters for one specialization run."""

    preset: str
    margins: Margins = field(default_factory=Margins)
    learning_rate: float = 0.03
    epochs: int = 20
    batch_size: int = 128
    seed: int = 7
    adagrad_epsilon: float = 1e-8
    neighbor_k: int = 10
    retrofit_alpha: float = 1.0
    retrofit_iterations: int = 10
    negative_policy: str = "closest_plus_random"
    sample_k: int = 2

    def __post_init__(self) -> None:
        if self.preset not in PRESETS:
            raise ValueError(f"unknown preset {self.preset!r}, expected one of {PRESETS}")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.neighbor_k < 1:
            raise ValueError("neighbor_k must be >= 1")
        if self.retrofit_iterations < 1:
            raise ValueError("retrofit_iterations must be >= 1")
        if self.sample_k < 1:
            raise ValueError("sample_k must be >= 1")


@dataclass
class TrainLog:
    """Per-epoch mean loss and active-hinge fraction for every relation trained."""

    epochs: list[dict[str, tuple[float, float]]] = field(default_factory=list)
    wall_time: float = 0.0
    batches_processed: int = 0

    def to_tsv(self) -> str:
        lines = []
        for epoch_no, entry in enumerate(self.epochs, start=1):
            for relation, (mean_loss, active_fraction) in entry.items():
                lines.append(f"{epoch_no}\t{relation}\t{mean_loss:.6g}\t{active_fraction:.6g}")
        return "\n".join(lines) + ("\n" if lines else "")


def adagrad_step(
    matrix: np.ndarray,
    accumulators: np.ndarray,
    grads: dict[int, np.ndarray],
    learning_rate: float,
    epsilon: float,
) -> None:
    """Apply one sparse AdaGrad update in place, ascending row order.

    Per touched coordinate: acc += g^2 then x -= lr * g / (sqrt(acc) + eps).
    Coordinates with zero gradient are left bit-identical.
    """
    for row in sorted(grads):
        g = grads[row]
        if not np.all(np.isfinite(g)):
            raise NonFiniteGradientError(f"non-finite gradient at row {row}")
        nz = g != 0.0
        if not np.any(nz):
            continue
        gn = g[nz]
        acc_row = accumulators[row]
        acc_row[nz] += gn * gn
        matrix[row][nz] -= learning_rate * gn / (np.sqrt(acc_row[nz]) + epsilon)


def _check_required(preset: str, constraints: ConstraintSet) -> None:
    if preset == "retrofitting":
        if not constraints.synonyms and not constraints.direct_hypernyms:
            raise ValueError(
                "preset 'retrofitting' requires nonempty synonyms or direct_hypernyms"
            )
        return
    required = {
        "counterfitting": ("synonyms", "antonyms"),
        "attract_repel": ("synonyms", "antonyms"),
        "lear": ("synonyms", "antonyms", "direct_hypernyms"),
        "hierarchy_fitting": ("synonyms", "antonyms", "direct_hypernyms"),
        "hierarchy_fitting_ad_dir": ("synonyms", "antonyms", "direct_hypernyms"),
        "hierarchy_fitting_ad_indir": ("synonyms", "antonyms", "direct_hypernyms"),
    }[preset]
    for name in required:
        if not getattr(constraints, name):
            raise ValueError(f"preset {preset!r} requires nonempty {name}")
    if preset.startswith("hierarchy_fitting") and not quad_join(constraints):
        raise ValueError(
            f"preset {preset!r} requires at least one quadruplet join "
            "(a synonym pair whose word has a direct hypernym)"
        )


def specialize(
    store: EmbeddingStore, constraints: ConstraintSet, config: SpecializeConfig
) -> tuple[EmbeddingStore, TrainLog]:
    """Run the configured preset and return the (in-place) specialized store."""
    _check_required(config.preset, constraints)
    start = time.perf_counter()
    if config.preset == "retrofitting":
        log = _run_retrofit(store, constraints, config.retrofit_alpha, config.retrofit_iterations)
    elif config.preset == "counterfitting":
        log = _run_counterfit(store, constraints, config)
    else:
        log = _run_metric(store, constraints, config)
    log.wall_time = time.perf_counter() - start
    return store, log


# --- retrofitting -----------------------------------------------------------

def _run_retrofit(
    store: EmbeddingStore,
    constraints: ConstraintSet,
    alpha: float,
    iterations: int,
    tol: float = 1e-6,
) -> TrainLog:
    adjacency: dict[int, list[int]] = defaultdict(list)
    for a, b in sorted(constraints.synonyms | constraints.direct_hypernyms):
        adjacency[a].append(b)
        adjacency[b].append(a)
    linked = sorted(adjacency)
    log = TrainLog()
    if not linked:
        return log
    frac_updated = len(linked) / len(store)
    for _ in range(iterations):
        prev = store.current.copy()
        for row in linked:
            neighbor_mean = prev[adjacency[row]].mean(axis=0)
            store.current[row] = (alpha * store.original[row] + neighbor_mean) / (alpha + 1.0)
        max_change = float(np.max(np.abs(store.current[linked] - prev[linked])))
        log.epochs.append({"retrofit": (max_change, frac_updated)})
        log.batches_processed += 1
        if max_change < tol:
            break
    return log


def retrofit(
    store: EmbeddingStore,
    constraints: ConstraintSet,
    alpha: float = 1.0,
    iterations: int = 10,
) -> EmbeddingStore:
    """Closed-form positive-pair averaging over the synonym + direct hypernym graph.

    Runs Jacobi sweeps of ``f(a) = (alpha * orig(a) + mean of neighbor f) /
    (alpha + 1)`` until ``iterations`` rounds or max per-component change
    below 1e-6. Words with no constraint edges are untouched.
    """
    _run_retrofit(store, constraints, alpha, iterations)
    return store


# --- counter-fitting --------------------------------------------------------

def _original_neighbor_sets(
    store: EmbeddingStore, rows: list[int], k: int
) -> dict[int, list[tuple[int, float]]]:
    k = min(k, len(store) - 1)
    return {
        row: [(j, 1.0 - c) for j, c in nearest_neighbors(store, row, k, space="original")]
        for row in rows
    }


def _run_counterfit(
    store: EmbeddingStore, constraints: ConstraintSet, config: SpecializeConfig
) -> TrainLog:
    m = config.margins
    constrained = sorted(
        {r for pair in constraints.synonyms | constraints.antonyms for r in pair}
    )
    neighbor_sets = _original_neighbor_sets(store, constrained, config.neighbor_k)
    accumulators: dict[str, np.ndarray] = {}
    log = TrainLog()
    for epoch in range(config.epochs):
        plan = plan_epoch(
            constraints, config.batch_size, config.seed, epoch=epoch, relations=("syn", "ant")
        )
        stats = _EpochStats()
        for batch in plan:
            res = LossResult()
            for a, b in batch.items:
                if batch.relation == "syn":
                    # pull synonyms until their distance is within m_syn
                    d, g_a, g_b = distance_with_grads(store.current[a], store.current[b])
                    res.n_hinges += 1
                    if d - m.m_syn > 0:
                        res.n_active += 1
                        res.loss += d - m.m_syn
                        res.add_grad(a, g_a)
                        res.add_grad(b, g_b)
                else:
                    res.merge(contrastive_loss(a, b, 0, m.m_ant, store))
            for row in sorted({r for item in batch.items for r in item}):
                res.merge(counterfit_preserve_loss(row, neighbor_sets[row], store))
            _apply(store, accumulators, res, config, batch)
            stats.record(batch.relation, res)
        log.epochs.append(stats.summary())
        log.batches_processed += len(plan)
    return log


def counterfit(
    store: EmbeddingStore, constraints: ConstraintSet, config: SpecializeConfig
) -> EmbeddingStore:
    """Margined synonym pull / antonym push with original-space neighbor preservation.

    Neighbor sets are the top ``config.neighbor_k`` original-space neighbors
    of every constrained word, computed once before training.
    """
    _run_counterfit(store, constraints, config)
    return store


# --- triplet / quadruplet metric presets -------------------------------------

@dataclass
class _MetricFeatures:
    relations: tuple[str, ...]
    reg: str  # "triplet" or "batch"
    hyper_margin: float
    mirror_hyper: bool
    closed_hyper: bool
    closed_ad: bool


def _metric_features(preset: str, margins: Margins) -> _MetricFeatures:
    if preset == "attract_repel":
        return _MetricFeatures(("syn", "ant"), "triplet", 0.0, False, False, False)
    if preset == "lear":
        return _MetricFeatures(
            ("syn", "ant", "hyper", "ad"), "triplet", margins.m_syn, True, True, True
        )
    relations: tuple[str, ...] = ("syn", "ant", "hyper", "quad")
    closed_ad = False
    if preset == "hierarchy_fitting_ad_dir":
        relations = relations + ("ad",)
    elif preset == "hierarchy_fitting_ad_indir":
        relations = relations + ("ad",)
        closed_ad = True
    return _MetricFeatures(relations, "batch", margins.m_hyp, False, False, closed_ad)


class _EpochStats:
    def __init__(self) -> None:
        self.loss_sum: dict[str, float] = defaultdict(float)
        self.batches: dict[str, int] = defaultdict(int)
        self.hinges: dict[str, int] = defaultdict(int)
        self.active: dict[str, int] = defaultdict(int)
        self.order: list[str] = []

    def record(self, relation: str, res: LossResult) -> None:
        if relation not in self.loss_sum:
            self.order.append(relation)
        self.loss_sum[relation] += res.loss
        self.batches[relation] += 1
        self.hinges[relation] += res.n_hinges
        self.active[relation] += res.n_active

    def summary(self) -> dict[str, tuple[float, float]]:
        out = {}
        for rel in self.order:
            n = self.batches[rel]
            mean_loss = self.loss_sum[rel] / n if n else 0.0
            frac = self.active[rel] / self.hinges[rel] if self.hinges[rel] else 0.0
            out[rel] = (mean_loss, frac)
        return out


def _apply(
    store: EmbeddingStore,
    accumulators: dict[str, np.ndarray],
    res: LossResult,
    config: SpecializeConfig,
    batch: MiniBatch,
) -> None:
    """Apply one batch update with the relation's own AdaGrad state.

    Each constraint category optimizes its own loss with its own
    accumulators; sharing one accumulator would let the high-traffic cosine
    relations starve the norm-asymmetry updates.
    """
    if not res.grads:
        return
    acc = accumulators.get(batch.relation)
    if acc is None:
        acc = accumulators.setdefault(batch.relation, np.zeros_like(store.current))
    try:
        adagrad_step(store.current, acc, res.grads, config.learning_rate, config.adagrad_epsilon)
    except NonFiniteGradientError as exc:
        raise NonFiniteGradientError(
            f"{exc} (relation {batch.relation}, epoch {batch.epoch}, "
            f"batch {batch.batch_index})"
        ) from exc


def _batch_loss(
    batch: MiniBatch,
    constraints: ConstraintSet,
    store: EmbeddingStore,
    config: SpecializeConfig,
    features: _MetricFeatures,
) -> LossResult:
    m = config.margins
    res = LossResult()
    relation = batch.relation

    if relation in ("syn", "hyper"):
        mirror = True if relation == "syn" else features.mirror_hyper
        margin = m.m_syn if relation == "syn" else features.hyper_margin
        loss_fn = triplet_attract_loss if relation == "syn" else hypernym_triplet_loss
        for t in emit_pair_triplets(
            batch, constraints, store, config.negative_policy, config.sample_k, mirror=mirror
        ):
            res.merge(loss_fn(t.anchor, t.partner, t.aux_samples, margin, store))
            if features.reg == "triplet":
                for aux in t.aux_samples:
                    res.merge(attract_repel_reg_loss([t.anchor, t.partner, aux], store, m.m_reg))
    elif relation == "ant":
        for t in emit_pair_triplets(
            batch, constraints, store, config.negative_policy, config.sample_k,
            mirror=True, mode="positives",
        ):
            res.merge(triplet_repel_loss(t.anchor, t.partner, t.aux_samples, m.m_ant, store))
            if features.reg == "triplet":
                for aux in t.aux_samples:
                    res.merge(attract_repel_reg_loss([t.anchor, t.partner, aux], store, m.m_reg))
    elif relation == "quad":
        for anchor, synonym, hypernym in batch.items:
            negatives = select_negatives(
                anchor, batch, constraints, store, config.negative_policy, config.sample_k
            )
            if not negatives:
                continue
            res.merge(
                quadruplet_hierarchy_loss(
                    anchor, synonym, hypernym, negatives, m.m_hie_syn, m.m_hie_hyp, store
                )
            )
    elif relation == "ad":
        for hyponym, hypernym in batch.items:
            res.merge(asymmetric_norm_loss(hyponym, hypernym, m.ad_weight, store))

    if features.reg == "batch":
        rows = sorted({r for item in batch.items for r in item})
        res.merge(preservation_loss(rows, store, m.gamma_reg))
    return res


def _run_metric(
    store: EmbeddingStore, constraints: ConstraintSet, config: SpecializeConfig
) -> TrainLog:
    features = _metric_features(config.preset, config.margins)
    if (features.closed_hyper or features.closed_ad) and not constraints.closure_computed:
        constraints.compute_closure()
    accumulators: dict[str, np.ndarray] = {}
    log = TrainLog()
    for epoch in range(config.epochs):
        plan = plan_epoch(
            constraints,
            config.batch_size,
            config.seed,
            epoch=epoch,
            relations=features.relations,
            closed_hypernyms=features.closed_hyper,
            closed_ad=features.closed_ad,
        )
        stats = _EpochStats()
        for batch in plan:
            res = _batch_loss(batch, constraints, store, config, features)
            _apply(store, accumulators, res, config, batch)
            stats.record(batch.relation, res)
        log.epochs.append(stats.summary())
        log.batches_processed += len(plan)
    return log
