"""Term-function profiles, weighted BM25, and the recommendation pipeline.

A candidate's profile counts how often it was cited from training
paragraphs of each ranking term function. At query time the share of the
query's function in that profile boosts the BM25 score::

    score = (1 + alpha * weight) * bm25

where ``alpha = 1`` is the unscaled combination.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Mapping

from .bm25 import Bm25Params, Index, RankedEntry, score_all, sort_entries
from .corpus import RANKING_TF, Corpus, TermFunction, parse_ranking_tf
from .textpipe import tokenize

DEFAULT_TOP_N = 30


class Variant(str, enum.Enum):
    PLAIN = "plain-bm25"
    TFW = "tfw-bm25"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TermFunctionProfile:
    """Citation counts ordered (problem, method, problem+method, method+problem)."""

    cand_id: str
    counts: tuple[int, int, int, int] = (0, 0, 0, 0)

    def __post_init__(self):
        if len(self.counts) != 4 or any(c < 0 for c in self.counts):
            raise ValueError(f"profile counts must be 4 non-negative integers, got {self.counts}")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def count(self, tf: TermFunction) -> int:
        return self.counts[RANKING_TF.index(tf)]


@dataclass(frozen=True)
class Query:
    text: str
    term_function: TermFunction
    year_cutoff: int | None = None
    alpha: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "term_function", parse_ranking_tf(self.term_function))
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")


RankedList = list[RankedEntry]


def build_profiles(
    corpus: Corpus,
    training_doc_ids: Iterable[str] | None = None,
    exclude_paragraphs: Iterable[str] = (),
) -> dict[str, TermFunctionProfile]:
    """Count ranking-function citations of every candidate.

    Only paragraphs of *training_doc_ids* (all originals when ``None``)
    count, minus any paragraph id in *exclude_paragraphs*; cross-validation
    uses the latter to hold out a test fold.
    """
    if training_doc_ids is None:
        doc_ids = set(corpus.originals)
    else:
        doc_ids = set(training_doc_ids)
        unknown = sorted(doc_ids - set(corpus.originals))
        if unknown:
            raise KeyError(f"unknown training doc ids: {unknown}")
    excluded = set(exclude_paragraphs)

    counts = {cid: [0, 0, 0, 0] for cid in corpus.candidates}
    for doc_id in doc_ids:
        for par in corpus.originals[doc_id].paragraphs:
            if par.paragraph_id in excluded or par.term_function not in RANKING_TF:
                continue
            slot = RANKING_TF.index(par.term_function)
            for ref in par.cited_refs:
                if ref in counts:
                    counts[ref][slot] += 1
    return {cid: TermFunctionProfile(cid, tuple(c)) for cid, c in sorted(counts.items())}


def tf_weight(profile: TermFunctionProfile, q_f: TermFunction | str) -> float:
    """Share of *profile* citations made with function *q_f*; 0 for an uncited candidate."""
    q_f = parse_ranking_tf(q_f)
    total = profile.total
    if total == 0:
        return 0.0
    return profile.count(q_f) / total


def tfw_score(bm25: float, weight: float, alpha: float = 1.0) -> float:
    return (1.0 + alpha * weight) * bm25


def recommend(
    query: Query,
    index: Index,
    profiles: Mapping[str, TermFunctionProfile],
    params: Bm25Params = Bm25Params(),
    variant: Variant | str = Variant.TFW,
    top_n: int = DEFAULT_TOP_N,
    lenient_year: bool = False,
    tokenizer: Callable[[str], list[str]] = tokenize,
) -> RankedList:
    """Rank candidates for *query*, drop those not strictly older than the cutoff, truncate.

    Candidates with an unknown year are dropped when a cutoff is given,
    unless ``lenient_year`` is set.
    """
    variant = Variant(variant)
    if top_n < 1:
        raise ValueError(f"top_n must be >= 1, got {top_n}")
    if set(profiles) != set(index.doc_length):
        raise ValueError("profiles and index cover different candidate collections")

    bm25 = score_all(tokenizer(query.text), index, params)
    entries = []
    for cid, s in bm25.items():
        w = tf_weight(profiles[cid], query.term_function)
        if variant is Variant.TFW:
            s = tfw_score(s, w, query.alpha)
        entries.append(RankedEntry(cid, s, w))
    ranked = sort_entries(entries)

    if query.year_cutoff is not None:
        ranked = [e for e in ranked if _passes_year(index.years.get(e.cand_id), query.year_cutoff, lenient_year)]
    return ranked[:top_n]


def _passes_year(year: int | None, cutoff: int, lenient: bool) -> bool:
    if year is None:
        return lenient
    return year < cutoff


def dump_profiles(profiles: Mapping[str, TermFunctionProfile], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for cid in sorted(profiles):
            fh.write(json.dumps({"cand_id": cid, "counts": list(profiles[cid].counts)}) + "\n")


def load_profiles(path: str | Path) -> dict[str, TermFunctionProfile]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            rec = json.loads(line)
            counts = rec["counts"]
            if not (isinstance(counts, list) and len(counts) == 4 and all(isinstance(c, int) for c in counts)):
                raise ValueError(f"{path}:{lineno}: counts must be an array of 4 integers")
            out[rec["cand_id"]] = TermFunctionProfile(rec["cand_id"], tuple(counts))
    return out
