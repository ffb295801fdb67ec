"""Per-epoch batch planning and online in-batch sample selection."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .constraints import ConstraintSet
from .embeddings import EmbeddingStore, distance

RELATION_CYCLE = ("syn", "ant", "hyper", "quad", "ad")

NEGATIVE_POLICIES = ("closest_plus_random", "closest_only")


@dataclass
class MiniBatch:
    """One relation's chunk of constraint instances within an epoch plan.

    Items are row pairs for ``syn``/``ant``/``hyper``/``ad`` batches and
    (anchor, synonym, hypernym) triples for ``quad`` batches. ``seed`` is the
    base training seed, carried so that in-batch random draws are replayable.
    """

    relation: str
    items: list[tuple[int, ...]]
    epoch: int
    batch_index: int
    seed: int = 0


@dataclass
class SampledTriplet:
    """An anchor/partner instance with its online-selected auxiliary rows."""

    anchor: int
    partner: int
    aux_samples: list[int] = field(default_factory=list)
    aux_kind: str = "negative_closest"


def quad_join(constraints: ConstraintSet) -> list[tuple[int, int, int]]:
    """(anchor, synonym, hypernym) seeds: each synonym pair joined with each
    direct hypernym of either word (the hypernym-owning word becomes the anchor)."""
    hypers: dict[int, list[int]] = defaultdict(list)
    for lo, hi in sorted(constraints.direct_hypernyms):
        hypers[lo].append(hi)
    seeds: list[tuple[int, int, int]] = []
    for a, s in sorted(constraints.synonyms):
        for h in hypers.get(a, ()):
            seeds.append((a, s, h))
        for h in hypers.get(s, ()):
            seeds.append((s, a, h))
    return seeds


def _relation_instances(
    constraints: ConstraintSet, relation: str, closed_hypernyms: bool, closed_ad: bool
) -> list[tuple[int, ...]]:
    if relation == "syn":
        return sorted(constraints.synonyms)
    if relation == "ant":
        return sorted(constraints.antonyms)
    if relation in ("hyper", "ad"):
        closed = closed_hypernyms if relation == "hyper" else closed_ad
        source = constraints.indirect_hypernyms if closed else constraints.direct_hypernyms
        return sorted(source)
    if relation == "quad":
        return quad_join(constraints)
    raise ValueError(f"unknown relation {relation!r}")


def plan_epoch(
    constraints: ConstraintSet,
    batch_size: int,
    seed: int,
    epoch: int = 0,
    relations: tuple[str, ...] = ("syn", "ant", "hyper", "quad"),
    closed_hypernyms: bool = False,
    closed_ad: bool = False,
) -> list[MiniBatch]:
    """Shuffle each relation's instances and interleave their batches round-robin.

    The shuffle is keyed on (seed, epoch, relation), so a plan is a pure
    function of its arguments. Relations with no instances are skipped; if
    every requested relation is empty, that is an error. ``closed_hypernyms``
    and ``closed_ad`` switch the hyper and norm-asymmetry streams between the
    direct pairs and the transitive closure.
    """
    if batch_size < 1:
        raise ValueError("batch_size must be >= 1")
    for rel in relations:
        if rel not in RELATION_CYCLE:
            raise ValueError(f"unknown relation {rel!r}")

    chunks: dict[str, list[list[tuple[int, ...]]]] = {}
    for rel in RELATION_CYCLE:
        if rel not in relations:
            continue
        items = _relation_instances(constraints, rel, closed_hypernyms, closed_ad)
        if not items:
            continue
        rng = np.random.default_rng((seed, epoch, RELATION_CYCLE.index(rel)))
        order = rng.permutation(len(items))
        shuffled = [items[i] for i in order]
        chunks[rel] = [shuffled[i : i + batch_size] for i in range(0, len(shuffled), batch_size)]
    if not chunks:
        raise ValueError("all constraint relations are empty")

    plan: list[MiniBatch] = []
    round_idx = 0
    while any(round_idx < len(batches) for batches in chunks.values()):
        for rel in RELATION_CYCLE:
            batches = chunks.get(rel)
            if batches is not None and round_idx < len(batches):
                plan.append(
                    MiniBatch(
                        relation=rel,
                        items=batches[round_idx],
                        epoch=epoch,
                        batch_index=len(plan),
                        seed=seed,
                    )
                )
        round_idx += 1
    return plan


def _candidate_pool(
    anchor: int, batch: MiniBatch, constraints: ConstraintSet
) -> list[int]:
    """Rows from the batch's other instances, minus rows constrained to the anchor."""
    excluded = constraints.partners(batch.relation, anchor)
    pool: set[int] = set()
    for item in batch.items:
        if anchor in item:
            continue
        pool.update(item)
    pool.discard(anchor)
    pool -= excluded
    return sorted(pool)


def _anchor_distances(anchor: int, pool: list[int], store: EmbeddingStore) -> np.ndarray:
    M = store.current
    v = M[anchor]
    cand = M[pool]
    sims = (cand @ v) / (np.linalg.norm(cand, axis=1) * np.linalg.norm(v))
    return 1.0 - np.clip(sims, -1.0, 1.0)


def _aux_rng(batch: MiniBatch, anchor: int, role: int) -> np.random.Generator:
    return np.random.default_rng((batch.seed, batch.epoch, batch.batch_index, anchor, role))


def select_negatives(
    anchor: int,
    batch: MiniBatch,
    constraints: ConstraintSet,
    store: EmbeddingStore,
    policy: str = "closest_plus_random",
    k: int = 2,
) -> list[int]:
    """Pick k negative rows from the remaining mini-batch for an anchor.

    ``closest_only`` takes the k smallest current-space distances (ties by
    row index). ``closest_plus_random`` takes the single closest row plus
    k - 1 uniform draws from the rest. An empty candidate pool yields an
    empty list, which callers treat as "skip this instance".
    """
    if policy not in NEGATIVE_POLICIES:
        raise ValueError(f"unknown policy {policy!r}, expected one of {NEGATIVE_POLICIES}")
    if k < 1:
        raise ValueError("k must be >= 1")
    pool = _candidate_pool(anchor, batch, constraints)
    if not pool:
        return []
    dist = _anchor_distances(anchor, pool, store)
    if policy == "closest_only":
        order = np.argsort(dist, kind="stable")
        return [pool[i] for i in order[: min(k, len(pool))]]
    closest = pool[int(np.argmin(dist))]
    picks = [closest]
    rest = [r for r in pool if r != closest]
    n_random = min(k - 1, len(rest))
    if n_random > 0:
        rng = _aux_rng(batch, anchor, role=0)
        for i in rng.choice(len(rest), size=n_random, replace=False):
            picks.append(rest[int(i)])
    return picks


def select_positives(
    anchor: int,
    batch: MiniBatch,
    constraints: ConstraintSet,
    store: EmbeddingStore,
    k: int = 2,
) -> list[int]:
    """Pick the k farthest in-batch rows from the anchor (mirror of the
    closest-negative selection), used as positives when repelling antonyms."""
    if k < 1:
        raise ValueError("k must be >= 1")
    pool = _candidate_pool(anchor, batch, constraints)
    if not pool:
        return []
    dist = _anchor_distances(anchor, pool, store)
    order = np.argsort(-dist, kind="stable")
    return [pool[i] for i in order[: min(k, len(pool))]]


def classify_negative(
    anchor: int, positive: int, candidate: int, margin: float, store: EmbeddingStore
) -> str:
    """Classify a candidate negative as hard, semi_hard, or easy.

    Hard: closer to the anchor than the positive. Easy: beyond the positive's
    distance plus the margin. The boundaries belong to semi_hard so the three
    classes partition the distance line.
    """
    M = store.current
    d_ac = distance(M[anchor], M[candidate])
    d_ap = distance(M[anchor], M[positive])
    if d_ac < d_ap:
        return "hard"
    if d_ac <= margin + d_ap:
        return "semi_hard"
    return "easy"


def emit_pair_triplets(
    batch: MiniBatch,
    constraints: ConstraintSet,
    store: EmbeddingStore,
    policy: str = "closest_plus_random",
    k: int = 2,
    mirror: bool = True,
    mode: str = "negatives",
) -> list[SampledTriplet]:
    """Expand a pair batch into sampled triplets, one record per aux kind.

    Symmetric relations mirror each pair into both anchor orders. Instances
    whose candidate pool is empty are skipped.
    """
    if mode not in ("negatives", "positives"):
        raise ValueError(f"unknown mode {mode!r}")
    triplets: list[SampledTriplet] = []
    for a, b in batch.items:
        anchor_orders = ((a, b), (b, a)) if mirror else ((a, b),)
        for anchor, partner in anchor_orders:
            if mode == "negatives":
                rows = select_negatives(anchor, batch, constraints, store, policy, k)
                if not rows:
                    continue
                if policy == "closest_plus_random":
                    triplets.append(
                        SampledTriplet(anchor, partner, [rows[0]], "negative_closest")
                    )
                    if len(rows) > 1:
                        triplets.append(
                            SampledTriplet(anchor, partner, rows[1:], "negative_random")
                        )
                else:
                    triplets.append(SampledTriplet(anchor, partner, rows, "negative_closest"))
            else:
                rows = select_positives(anchor, batch, constraints, store, k)
                if not rows:
                    continue
                triplets.append(SampledTriplet(anchor, partner, rows, "positive_farthest"))
    return triplets
