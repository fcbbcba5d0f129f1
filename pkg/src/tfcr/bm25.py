"""Inverted index over candidate documents and Okapi BM25 scoring.

The score of candidate ``d`` for query terms ``q_1 .. q_n`` is::

    sum_i  log((N - n(q_i) + 0.5) / (n(q_i) + 0.5))
           * f_i * (k1 + 1) / (f_i + k1 * (1 - b + b * dl / avgdl))

with natural log. The idf factor is not clamped by default, so terms that
occur in more than half the collection carry negative weight.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from .corpus import CandidateDocument
from .textpipe import tokenize


@dataclass(frozen=True)
class Bm25Params:
    k1: float = 1.2
    b: float = 0.75
    clamp_idf: bool = False

    def __post_init__(self):
        if not self.k1 >= 0:
            raise ValueError(f"k1 must be >= 0, got {self.k1}")
        if not 0 <= self.b <= 1:
            raise ValueError(f"b must lie in [0, 1], got {self.b}")


@dataclass
class Index:
    """Postings plus the collection statistics BM25 needs.

    ``years`` carries candidate publication years (``None`` when unknown)
    so the recommender can apply its date filter without the corpus.
    """

    postings: dict[str, list[tuple[str, int]]]
    doc_length: dict[str, int]
    avgdl: float
    n_docs: int
    doc_freq: dict[str, int]
    years: dict[str, int | None] = field(default_factory=dict)

    def __post_init__(self):
        self._tf: dict[str, dict[str, int]] = {cid: {} for cid in self.doc_length}
        for term, plist in self.postings.items():
            for cid, f in plist:
                self._tf[cid][term] = f

    def __contains__(self, cand_id: str) -> bool:
        return cand_id in self.doc_length

    @property
    def doc_ids(self) -> list[str]:
        return sorted(self.doc_length)

    def term_frequency(self, term: str, cand_id: str) -> int:
        return self._tf[cand_id].get(term, 0)


def index_from_terms(
    doc_terms: Mapping[str, Sequence[str]], years: Mapping[str, int | None] | None = None
) -> Index:
    """Build an index from already-normalised term lists keyed by id."""
    if not doc_terms:
        raise ValueError("cannot build an index over an empty candidate collection")
    postings: dict[str, list[tuple[str, int]]] = {}
    doc_length: dict[str, int] = {}
    for cid in sorted(doc_terms):
        terms = doc_terms[cid]
        doc_length[cid] = len(terms)
        for term, f in sorted(Counter(terms).items()):
            postings.setdefault(term, []).append((cid, f))
    n_docs = len(doc_length)
    return Index(
        postings=postings,
        doc_length=doc_length,
        avgdl=sum(doc_length.values()) / n_docs,
        n_docs=n_docs,
        doc_freq={t: len(p) for t, p in postings.items()},
        years=dict(years) if years is not None else {cid: None for cid in doc_length},
    )


def build_index(
    candidates: Iterable[CandidateDocument],
    tokenizer: Callable[[str], list[str]] = tokenize,
) -> Index:
    """Index candidates on title + abstract."""
    terms: dict[str, list[str]] = {}
    years: dict[str, int | None] = {}
    for cand in candidates:
        if cand.cand_id in terms:
            raise ValueError(f"duplicate cand_id {cand.cand_id!r}")
        terms[cand.cand_id] = tokenizer(cand.text)
        years[cand.cand_id] = cand.year
    return index_from_terms(terms, years)


def idf(term: str, index: Index, clamp: bool = False) -> float:
    n = index.doc_freq.get(term, 0)
    value = math.log((index.n_docs - n + 0.5) / (n + 0.5))
    return max(value, 0.0) if clamp else value


def _term_part(f: int, dl: int, index: Index, params: Bm25Params) -> float:
    norm = params.k1 * (1 - params.b + params.b * dl / index.avgdl)
    return f * (params.k1 + 1) / (f + norm)


def bm25_score(query: Sequence[str], cand_id: str, index: Index, params: Bm25Params = Bm25Params()) -> float:
    """Score one candidate; a query term repeated m times counts m times."""
    if cand_id not in index:
        raise KeyError(f"unknown candidate {cand_id!r}")
    dl = index.doc_length[cand_id]
    if dl == 0:
        return 0.0
    tf = index._tf[cand_id]
    score = 0.0
    for term, mult in sorted(Counter(query).items()):
        f = tf.get(term, 0)
        if f:
            score += mult * idf(term, index, params.clamp_idf) * _term_part(f, dl, index, params)
    return score


def score_all(query: Sequence[str], index: Index, params: Bm25Params = Bm25Params()) -> dict[str, float]:
    """BM25 score for every indexed candidate, walking postings only."""
    scores = dict.fromkeys(index.doc_length, 0.0)
    for term, mult in sorted(Counter(query).items()):
        plist = index.postings.get(term)
        if not plist:
            continue
        w = mult * idf(term, index, params.clamp_idf)
        for cid, f in plist:
            scores[cid] += w * _term_part(f, index.doc_length[cid], index, params)
    return scores


class RankedEntry(NamedTuple):
    cand_id: str
    score: float
    tf_weight: float = 0.0


def sort_entries(entries: Iterable[RankedEntry]) -> list[RankedEntry]:
    """Descending score, ties broken by ascending cand_id."""
    return sorted(entries, key=lambda e: (-e.score, e.cand_id))


def rank_all(query: Sequence[str], index: Index, params: Bm25Params = Bm25Params()) -> list[RankedEntry]:
    scores = score_all(query, index, params)
    return sort_entries(RankedEntry(cid, s) for cid, s in scores.items())
