"""Keyword normalization, spelling-variant grouping and keyword statistics.

Two distinct labels are linked when their edit distance is within a
length-dependent threshold (see :class:`GroupingPolicy`); groups are the
connected components of that link relation.
"""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, replace
from itertools import combinations
from pathlib import Path
from statistics import fmean
from typing import Iterable, Mapping, Optional

from .corpus import Corpus
from .strdist import levenshtein, levenshtein_bounded

DocSets = Mapping[str, "set[str] | frozenset[str]"]

_WS = re.compile(r"\s+")
_WORD_SPLIT = re.compile(r"[\s\-]+")


@dataclass(frozen=True)
class GroupingPolicy:
    tier1_min_len: int = 5
    tier1_max_dist: int = 1
    tier2_min_len: int = 9
    tier2_max_dist: int = 2

    def __post_init__(self) -> None:
        if self.tier2_min_len <= self.tier1_min_len:
            raise ValueError("tier2_min_len must exceed tier1_min_len")
        if min(self.tier1_max_dist, self.tier2_max_dist, self.tier1_min_len) < 0:
            raise ValueError("policy values must be non-negative")

    def threshold_for_length(self, length: int) -> int:
        if length >= self.tier2_min_len:
            return self.tier2_max_dist
        if length >= self.tier1_min_len:
            return self.tier1_max_dist
        return 0


DEFAULT_POLICY = GroupingPolicy()


@dataclass(frozen=True)
class KeywordGroup:
    canonical_label: str
    variants: dict[str, int]
    doc_ids: frozenset[str]
    mean_pub_year: Optional[float] = None
    mean_citations: Optional[float] = None

    @property
    def occurrences(self) -> int:
        return len(self.doc_ids)


def normalize_label(raw: str) -> str:
    """Lowercase, collapse whitespace and drop trailing periods/commas. Hyphens stay."""
    label = _WS.sub(" ", raw.lower()).strip()
    while label and label[-1] in ".,":
        label = label[:-1].rstrip()
    return label


def extract_keywords(corpus: Corpus, include_keywords_plus: bool = False) -> dict[str, set[str]]:
    """Map every normalized keyword to the uids of the documents listing it."""
    mapping: dict[str, set[str]] = defaultdict(set)
    for doc in corpus.documents:
        raw = doc.author_keywords + (doc.keywords_plus if include_keywords_plus else ())
        for kw in raw:
            label = normalize_label(kw)
            if label:
                mapping[label].add(doc.uid)
    return dict(mapping)


def effective_threshold(a: str, b: str, policy: GroupingPolicy = DEFAULT_POLICY) -> int:
    return policy.threshold_for_length(min(len(a), len(b)))


def linked(a: str, b: str, policy: GroupingPolicy = DEFAULT_POLICY) -> bool:
    """Direct-link predicate between two normalized labels."""
    return levenshtein(a, b) <= effective_threshold(a, b, policy)


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller index as root keeps the structure independent of union order
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _segments(length: int, k: int) -> list[tuple[int, int]]:
    """(start, length) of the k + 1 near-equal pieces of a string of ``length``."""
    base, extra = divmod(length, k + 1)
    out, pos = [], 0
    for i in range(k + 1):
        size = base + (1 if i >= k + 1 - extra else 0)
        out.append((pos, size))
        pos += size
    return out


def _candidate_pairs(labels: list[str], policy: GroupingPolicy) -> set[tuple[int, int]]:
    # Pigeonhole filter: if ed(s, r) <= k, one of the k + 1 pieces of s occurs
    # unchanged in r, shifted by at most k. Labels are indexed in length order,
    # so the shorter side of every pair (which fixes the threshold) is already
    # indexed when the longer one is probed.
    max_k = max(policy.tier1_max_dist, policy.tier2_max_dist)
    order = sorted(range(len(labels)), key=lambda i: (len(labels[i]), labels[i]))
    index: dict[tuple[int, int, str], list[int]] = defaultdict(list)
    wildcard: dict[int, list[int]] = defaultdict(list)  # too short to split; matches anything
    lengths_seen: set[int] = set()
    pairs: set[tuple[int, int]] = set()
    for idx in order:
        r = labels[idx]
        n = len(r)
        for length in range(max(0, n - max_k), n + 1):
            k = policy.threshold_for_length(length)
            if not k or n - length > k or length not in lengths_seen:
                continue
            found = set(wildcard.get(length, ()))
            for seg, (start, size) in enumerate(_segments(length, k)):
                for pos in range(max(0, start - k), min(n - size, start + k) + 1):
                    found.update(index.get((length, seg, r[pos:pos + size]), ()))
            for other in found:
                pairs.add((other, idx) if other < idx else (idx, other))
        k = policy.threshold_for_length(n)
        if k:
            lengths_seen.add(n)
            pieces = _segments(n, k)
            if any(size == 0 for _, size in pieces):
                wildcard[n].append(idx)
            else:
                for seg, (start, size) in enumerate(pieces):
                    index[(n, seg, r[start:start + size])].append(idx)
    return pairs


def _build_groups(labels: list[str], docsets: DocSets, ds: _DisjointSet) -> list[KeywordGroup]:
    members: dict[int, list[str]] = defaultdict(list)
    for idx, label in enumerate(labels):
        members[ds.find(idx)].append(label)
    groups = []
    for variants in members.values():
        counts = {v: len(docsets[v]) for v in variants}
        ordered = sorted(counts, key=lambda v: (-counts[v], v))
        doc_ids = frozenset().union(*(docsets[v] for v in variants))
        groups.append(KeywordGroup(ordered[0], {v: counts[v] for v in ordered}, doc_ids))
    groups.sort(key=lambda g: (-g.occurrences, g.canonical_label))
    return groups


def group_keywords(
    docsets: DocSets,
    policy: GroupingPolicy = DEFAULT_POLICY,
    corpus: Optional[Corpus] = None,
    prune: bool = True,
) -> list[KeywordGroup]:
    """Cluster spelling variants by transitive closure of the link relation.

    With ``prune=False`` every pair is compared with the exact distance; this
    is the slow reference path. When ``corpus`` is given the per-group mean
    year and citation count are filled in.
    """
    labels = sorted(docsets)
    ds = _DisjointSet(len(labels))
    if prune:
        for i, j in sorted(_candidate_pairs(labels, policy)):
            if ds.find(i) == ds.find(j):
                continue  # already connected; the link cannot change the partition
            a, b = labels[i], labels[j]
            k = effective_threshold(a, b, policy)
            if k and levenshtein_bounded(a, b, k) is not None:
                ds.union(i, j)
    else:
        for i, j in combinations(range(len(labels)), 2):
            if linked(labels[i], labels[j], policy):
                ds.union(i, j)
    groups = _build_groups(labels, docsets, ds)
    if corpus is not None:
        groups = [with_stats(g, corpus) for g in groups]
    return groups


def keyword_stats(group: KeywordGroup, corpus: Corpus) -> tuple[int, float, float]:
    """(occurrences, mean publication year, mean times cited) over the group's documents."""
    if not group.doc_ids:
        raise ValueError(f"group {group.canonical_label!r} has no documents")
    index = corpus.by_uid
    try:
        docs = [index[uid] for uid in group.doc_ids]
    except KeyError as exc:
        raise ValueError(f"group {group.canonical_label!r} references unknown document {exc.args[0]!r}") from None
    return len(docs), fmean(d.pub_year for d in docs), fmean(d.times_cited for d in docs)


def with_stats(group: KeywordGroup, corpus: Corpus) -> KeywordGroup:
    _, year, cites = keyword_stats(group, corpus)
    return replace(group, mean_pub_year=year, mean_citations=cites)


def load_stopwords(path: str | Path) -> set[str]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return {w.strip().lower() for w in lines if w.strip() and not w.lstrip().startswith("#")}


def split_words(docsets: DocSets, stopwords: Iterable[str] = ()) -> dict[str, set[str]]:
    """Break labels into words on whitespace and hyphens, keeping document sets."""
    stop = set(stopwords)
    words: dict[str, set[str]] = defaultdict(set)
    for label, uids in docsets.items():
        for word in _WORD_SPLIT.split(label):
            if word and word not in stop:
                words[word].update(uids)
    return dict(words)


def words_as_groups(words: DocSets, corpus: Optional[Corpus] = None) -> list[KeywordGroup]:
    """Wrap single words as one-variant groups so they share the group table layout."""
    groups = [KeywordGroup(w, {w: len(u)}, frozenset(u)) for w, u in words.items()]
    if corpus is not None:
        groups = [with_stats(g, corpus) for g in groups]
    groups.sort(key=lambda g: (-g.occurrences, g.canonical_label))
    return groups


def shared_occurrence(items: DocSets) -> dict[tuple[str, str], int]:
    """Document overlap counts for every pair of items that share a document.

    Both orientations of each pair are present, and ``(i, i)`` holds the size
    of item ``i``'s document set.
    """
    by_doc: dict[str, list[str]] = defaultdict(list)
    counts: dict[tuple[str, str], int] = {}
    for item, uids in items.items():
        counts[(item, item)] = len(uids)
        for uid in uids:
            by_doc[uid].append(item)
    for present in by_doc.values():
        for a, b in combinations(sorted(present), 2):
            counts[(a, b)] = counts.get((a, b), 0) + 1
    for (a, b), n in list(counts.items()):
        if a != b:
            counts[(b, a)] = n
    return counts
