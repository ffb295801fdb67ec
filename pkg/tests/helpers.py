"""Shared fixtures and oracle utilities for the test suite."""

from __future__ import annotations

import numpy as np

from lexfit import ConstraintSet, EmbeddingStore


def random_store(seed: int, n: int, dim: int) -> EmbeddingStore:
    rng = np.random.default_rng(seed)
    vocab = [f"w{i:03d}" for i in range(n)]
    return EmbeddingStore(vocab, rng.standard_normal((n, dim)))


def fd_gradients(loss_fn, store, rows, h: float = 1e-5) -> dict[int, np.ndarray]:
    """Central finite differences of loss_fn().loss w.r.t. the given rows of store.current."""
    grads = {}
    for row in rows:
        g = np.zeros(store.dim)
        for i in range(store.dim):
            saved = store.current[row, i]
            store.current[row, i] = saved + h
            up = loss_fn().loss
            store.current[row, i] = saved - h
            down = loss_fn().loss
            store.current[row, i] = saved
            g[i] = (up - down) / (2.0 * h)
        grads[row] = g
    return grads


def grad_rel_error(analytic: dict, numeric: dict, rows) -> float:
    """Relative L2 error between two sparse gradients over a row set."""
    dim = next(iter(numeric.values())).shape[0] if numeric else 1
    zero = np.zeros(dim)
    a = np.concatenate([analytic.get(r, zero) for r in rows]) if rows else zero
    b = np.concatenate([numeric.get(r, zero) for r in rows]) if rows else zero
    scale = max(np.linalg.norm(a), np.linalg.norm(b))
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(a - b) / scale)


def toy_hierarchy_fixture(seed: int = 0, noise: float = 0.4) -> tuple[EmbeddingStore, ConstraintSet]:
    """60-word, 10-d fixture: 20 synonym, 10 antonym, 15 direct-hypernym pairs.

    Six synonym triangles over words 0..17 plus two extra pairs; each
    triangle's first two words share a hypernym in 40..45, which makes the
    quadruplet join nonempty (26 seeds). Antonyms oppose different triangles.
    Vectors are drawn around per-group base directions with heavy noise, the
    way related words cluster loosely in distributional space; the rest of
    the vocabulary is uniform noise.
    """
    rng = np.random.default_rng(seed)
    dim = 10
    vectors = rng.standard_normal((60, dim))
    groups = [
        (0, 1, 2, 40), (3, 4, 5, 41), (6, 7, 8, 42),
        (9, 10, 11, 43), (12, 13, 14, 44), (15, 16, 17, 45),
        (18, 19, 46), (20, 21, 47), (22, 48),
    ]
    for members in groups:
        base = rng.standard_normal(dim)
        for word in members:
            vectors[word] = base + noise * rng.standard_normal(dim)
    store = EmbeddingStore([f"w{i:03d}" for i in range(60)], vectors)
    cs = ConstraintSet()
    for t in range(6):
        a, b, c = 3 * t, 3 * t + 1, 3 * t + 2
        for pair in ((a, b), (a, c), (b, c)):
            cs.add_pair("syn", *pair)
        cs.add_pair("hyper", a, 40 + t)
        cs.add_pair("hyper", b, 40 + t)
    cs.add_pair("syn", 18, 19)
    cs.add_pair("syn", 20, 21)
    cs.add_pair("hyper", 18, 46)
    cs.add_pair("hyper", 20, 47)
    cs.add_pair("hyper", 22, 48)
    for a, b in ((0, 3), (1, 4), (2, 5), (6, 9), (7, 10), (8, 11),
                 (12, 15), (13, 16), (14, 17), (18, 20)):
        cs.add_pair("ant", a, b)
    assert len(cs.synonyms) == 20 and len(cs.antonyms) == 10
    assert len(cs.direct_hypernyms) == 15
    return store, cs


def taxonomy_fixture(seed: int = 0) -> tuple[EmbeddingStore, ConstraintSet, list[tuple[int, int]]]:
    """27-node, 3-level taxonomy: 3 roots, 6 mids, 18 leaves (24 direct pairs).

    Synonym pairs sit between sibling leaves; antonym pairs cross roots.
    Returns the direct (hyponym, hypernym) pairs for norm-direction audits.
    """
    store = random_store(seed, 27, 10)
    cs = ConstraintSet()
    direct = []
    for k in range(6):  # mids 3..8 under roots 0..2
        direct.append((3 + k, k // 2))
    for m in range(6):  # leaves 9..26 under mids 3..8
        for leaf in range(3):
            direct.append((9 + 3 * m + leaf, 3 + m))
    for lo, hi in direct:
        cs.add_pair("hyper", lo, hi)
    for m in range(6):
        cs.add_pair("syn", 9 + 3 * m, 9 + 3 * m + 1)
    for a, b in ((9, 15), (10, 16), (11, 17), (15, 21), (16, 22), (17, 23)):
        cs.add_pair("ant", a, b)
    return store, cs, direct
