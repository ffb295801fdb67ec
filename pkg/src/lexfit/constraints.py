"""Lexical relation pair ingestion, canonicalization, and hypernym closure."""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field

from .embeddings import EmbeddingStore

log = logging.getLogger(__name__)

RELATIONS = ("syn", "ant", "hyper")


class PairFileError(ValueError):
    """Raised when a relation pair file has a malformed line."""


@dataclass
class PairLoadReport:
    """What a single pair-file ingestion added and dropped."""

    relation: str
    added: int = 0
    dropped_oov: int = 0
    dropped_self: int = 0
    dropped_conflict: int = 0


class ConstraintSet:
    """Deduplicated word-index pairs per lexical relation.

    Symmetric relations (synonyms, antonyms) store each pair once with the
    smaller row first. Hypernym pairs are ordered ``(hyponym, hypernym)``.
    A pair claimed as both synonym and antonym is kept as an antonym only:
    repelling a genuinely contrasting pair is safer than attracting it.
    """

    def __init__(self) -> None:
        self.synonyms: set[tuple[int, int]] = set()
        self.antonyms: set[tuple[int, int]] = set()
        self.direct_hypernyms: set[tuple[int, int]] = set()
        self.indirect_hypernyms: set[tuple[int, int]] = set()
        self.closure_computed: bool = False
        self.dropped_oov: int = 0
        self.dropped_self: int = 0
        self.dropped_conflict: int = 0
        self._partner_cache: dict[str, dict[int, set[int]]] | None = None

    def add_pair(self, relation: str, row_a: int, row_b: int) -> tuple[bool, str | None]:
        """Insert one pair; returns (added, drop_reason)."""
        if relation not in RELATIONS:
            raise ValueError(f"unknown relation {relation!r}, expected one of {RELATIONS}")
        if row_a == row_b:
            self.dropped_self += 1
            return False, "self"
        self._partner_cache = None
        if relation == "hyper":
            pair = (row_a, row_b)
            if pair in self.direct_hypernyms:
                return False, None
            self.direct_hypernyms.add(pair)
            self.closure_computed = False
            return True, None
        pair = (row_a, row_b) if row_a < row_b else (row_b, row_a)
        if relation == "syn":
            if pair in self.antonyms:
                self.dropped_conflict += 1
                return False, "conflict"
            if pair in self.synonyms:
                return False, None
            self.synonyms.add(pair)
            return True, None
        # antonymy wins over a previously ingested synonym claim
        if pair in self.synonyms:
            self.synonyms.remove(pair)
            self.dropped_conflict += 1
        if pair in self.antonyms:
            return False, None
        self.antonyms.add(pair)
        return True, None

    def partners(self, relation: str, row: int) -> set[int]:
        """Rows constrained to ``row`` under a relation (hypernymy: either direction).

        The ``quad`` relation unions synonym and direct-hypernym partners, since
        quadruplet instances draw on both.
        """
        if self._partner_cache is None:
            cache: dict[str, dict[int, set[int]]] = {
                "syn": defaultdict(set),
                "ant": defaultdict(set),
                "hyper": defaultdict(set),
            }
            for a, b in self.synonyms:
                cache["syn"][a].add(b)
                cache["syn"][b].add(a)
            for a, b in self.antonyms:
                cache["ant"][a].add(b)
                cache["ant"][b].add(a)
            for a, b in self.direct_hypernyms | self.indirect_hypernyms:
                cache["hyper"][a].add(b)
                cache["hyper"][b].add(a)
            self._partner_cache = cache
        if relation == "quad":
            return self._partner_cache["syn"].get(row, set()) | self._partner_cache[
                "hyper"
            ].get(row, set())
        if relation == "ad":
            relation = "hyper"
        if relation not in self._partner_cache:
            raise ValueError(f"unknown relation {relation!r}")
        return self._partner_cache[relation].get(row, set())

    def compute_closure(self, max_depth: int | None = None) -> set[tuple[int, int]]:
        """Fill ``indirect_hypernyms`` with the transitive closure of the direct pairs."""
        self.indirect_hypernyms = hypernym_closure(self.direct_hypernyms, max_depth)
        self.closure_computed = True
        self._partner_cache = None
        return self.indirect_hypernyms


def load_pairs(
    constraints: ConstraintSet, path: str, relation: str, store: EmbeddingStore
) -> PairLoadReport:
    """Ingest a pair file, restricted to the store's vocabulary.

    One pair per line, two whitespace-separated tokens; ``#``-prefixed lines
    are comments. Constraint tokens are matched exactly (no back-off); pairs
    with either word out of vocabulary are dropped and counted.
    """
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}, expected one of {RELATIONS}")
    report = PairLoadReport(relation=relation)
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise PairFileError(f"{path}:{lineno}: expected 2 tokens, got {len(parts)}")
            row_a = store.index.get(parts[0])
            row_b = store.index.get(parts[1])
            if row_a is None or row_b is None:
                report.dropped_oov += 1
                constraints.dropped_oov += 1
                continue
            added, reason = constraints.add_pair(relation, row_a, row_b)
            if added:
                report.added += 1
            elif reason == "self":
                report.dropped_self += 1
            elif reason == "conflict":
                report.dropped_conflict += 1
    if report.dropped_oov or report.dropped_self or report.dropped_conflict:
        log.info(
            "%s: kept %d %s pairs (dropped: %d oov, %d self, %d conflict)",
            path, report.added, relation,
            report.dropped_oov, report.dropped_self, report.dropped_conflict,
        )
    return report


def hypernym_closure(
    direct: set[tuple[int, int]], max_depth: int | None = None
) -> set[tuple[int, int]]:
    """Transitive closure of ordered hypernym pairs, up to ``max_depth`` hops.

    Cycles terminate via a visited set; self-pairs are never emitted. The
    result always contains the direct pairs (depth 1).
    """
    if max_depth is not None and max_depth < 1:
        raise ValueError("max_depth must be >= 1 or None for unbounded")
    successors: dict[int, set[int]] = defaultdict(set)
    for lo, hi in direct:
        successors[lo].add(hi)
    closure: set[tuple[int, int]] = set()
    for src in successors:
        reached: set[int] = set()
        frontier = {src}
        depth = 0
        while frontier and (max_depth is None or depth < max_depth):
            nxt: set[int] = set()
            for node in frontier:
                nxt |= successors.get(node, set())
            nxt -= reached
            reached |= nxt
            frontier = nxt
            depth += 1
        closure.update((src, dst) for dst in reached if dst != src)
    return closure


def constraint_stats(constraints: ConstraintSet) -> dict[str, int]:
    """Exact cardinalities per relation plus cumulative drop counts."""
    return {
        "synonyms": len(constraints.synonyms),
        "antonyms": len(constraints.antonyms),
        "direct_hypernyms": len(constraints.direct_hypernyms),
        "indirect_hypernyms": len(constraints.indirect_hypernyms),
        "dropped_oov": constraints.dropped_oov,
        "dropped_self": constraints.dropped_self,
        "dropped_conflict": constraints.dropped_conflict,
    }
