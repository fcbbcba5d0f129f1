"""Seeded synthetic corpora with a known term-function citation structure.

Every candidate belongs to one topic and has a dominant ranking function.
A paragraph picks a topic and a label, then cites candidates of that topic;
each citation goes to a candidate whose dominant function matches the
label with probability ``1 - noise``. Paragraph text is drawn from the
topic vocabulary plus a few cue words of its function, and mentions the
"signature" words of the papers it cites at a configurable rate, so text
similarity alone is informative but not decisive.

Candidate years always precede citing-document years.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..corpus import RANKING_TF, CandidateDocument, Corpus, OriginalDocument, Paragraph, TermFunction
from ..textpipe import tokenize

# Average paragraph shares over the four ranking functions observed in
# annotated related-work sections; the remaining mass is split over the other five.
TARGET_RANKING_SHARES = {
    TermFunction.PROBLEM_PLUS_METHOD: 38.2,
    TermFunction.PROBLEM: 29.5,
    TermFunction.METHOD_PLUS_PROBLEM: 15.6,
    TermFunction.METHOD: 6.0,
}


def _default_shares() -> dict[TermFunction, float]:
    shares = dict(TARGET_RANKING_SHARES)
    others = [tf for tf in TermFunction if tf not in shares]
    rest = 100.0 - sum(shares.values())
    for tf in others:
        shares[tf] = rest / len(others)
    return shares


@dataclass
class GeneratorConfig:
    n_originals: int = 60
    n_candidates: int = 240
    paragraphs_per_doc: tuple[int, int] = (4, 6)
    cites_per_paragraph: tuple[int, int] = (2, 4)
    fields: tuple[str, ...] = ("information-extraction", "sentiment-analysis", "recommender-systems")
    topics_per_field: int = 2
    noise: float = 0.2
    tf_shares: dict[TermFunction, float] = field(default_factory=_default_shares)
    topic_vocab_size: int = 40
    field_vocab_size: int = 60
    field_word_rate: float = 0.5
    function_vocab_size: int = 8
    filler_vocab_size: int = 60
    signature_words: int = 2
    signature_rate: float = 0.5
    paragraph_length: tuple[int, int] = (25, 45)
    abstract_length: tuple[int, int] = (30, 60)
    candidate_years: tuple[int, int] = (1990, 2005)
    original_years: tuple[int, int] = (2008, 2020)

    def check(self) -> None:
        if self.n_candidates < 1 or self.n_originals < 1:
            raise ValueError("need at least one original and one candidate")
        if not self.fields or self.topics_per_field < 1:
            raise ValueError("need at least one field and one topic per field")
        if self.n_candidates < len(self.fields) * self.topics_per_field:
            raise ValueError("fewer candidates than topics")
        if not 0 <= self.noise <= 1:
            raise ValueError(f"noise must lie in [0, 1], got {self.noise}")
        if not 0 <= self.signature_rate <= 1 or not 0 <= self.field_word_rate <= 1:
            raise ValueError("signature_rate and field_word_rate must lie in [0, 1]")
        for lo, hi in (self.paragraphs_per_doc, self.cites_per_paragraph, self.paragraph_length, self.abstract_length):
            if lo < 1 or hi < lo:
                raise ValueError(f"bad range ({lo}, {hi})")
        if self.candidate_years[1] >= self.original_years[0]:
            raise ValueError("candidate years must all precede original years")
        unknown = set(self.tf_shares) - set(TermFunction)
        if unknown or any(v < 0 for v in self.tf_shares.values()) or sum(self.tf_shares.values()) <= 0:
            raise ValueError("tf_shares must map term functions to non-negative weights")


_ONSETS = list("bdfgklmnprstvz") + ["br", "dr", "gl", "kr", "pl", "st", "tr"]
_NUCLEI = list("aeiou")
_CODAS = list("dgkmnprt")


class _WordFactory:
    """Pseudo-words whose normalised stems are pairwise distinct."""

    def __init__(self, rng: np.random.Generator):
        self.rng = rng
        self.stems: set[str] = set()

    def word(self) -> str:
        while True:
            n_syll = int(self.rng.integers(2, 4))
            parts = [
                _ONSETS[self.rng.integers(len(_ONSETS))] + _NUCLEI[self.rng.integers(len(_NUCLEI))]
                for _ in range(n_syll)
            ]
            w = "".join(parts) + _CODAS[self.rng.integers(len(_CODAS))]
            toks = tokenize(w)
            if len(toks) == 1 and toks[0] not in self.stems:
                self.stems.add(toks[0])
                return w

    def words(self, n: int) -> list[str]:
        return [self.word() for _ in range(n)]


def _between(rng: np.random.Generator, bounds: tuple[int, int]) -> int:
    return int(rng.integers(bounds[0], bounds[1] + 1))


def gen_synthetic(config: GeneratorConfig | None = None, seed: int = 0) -> Corpus:
    config = config or GeneratorConfig()
    config.check()
    rng = np.random.default_rng(seed)
    words = _WordFactory(rng)

    topics = [(f, t) for f in config.fields for t in range(config.topics_per_field)]
    topic_vocab = {tp: words.words(config.topic_vocab_size) for tp in topics}
    field_vocab = {f: words.words(config.field_vocab_size) for f in config.fields}
    function_vocab = {tf: words.words(config.function_vocab_size) for tf in TermFunction}
    filler = words.words(config.filler_vocab_size)

    def draw(vocab: list[str], n: int) -> list[str]:
        return [vocab[i] for i in rng.integers(len(vocab), size=n)]

    def topical(tp: tuple[str, int], n: int) -> list[str]:
        # topic words mixed with words shared by every topic of the field
        n_field = int(rng.binomial(n, config.field_word_rate))
        return draw(topic_vocab[tp], n - n_field) + draw(field_vocab[tp[0]], n_field)

    # candidates: round-robin over topics, then over ranking functions within a topic
    candidates: list[CandidateDocument] = []
    cand_topic: dict[str, tuple[str, int]] = {}
    cand_dominant: dict[str, TermFunction] = {}
    signatures: dict[str, list[str]] = {}
    width = len(str(config.n_candidates - 1))
    for i in range(config.n_candidates):
        cid = f"c{i:0{width}d}"
        tp = topics[i % len(topics)]
        cand_topic[cid] = tp
        cand_dominant[cid] = RANKING_TF[(i // len(topics)) % len(RANKING_TF)]
        signatures[cid] = words.words(config.signature_words)
        title = topical(tp, 3) + signatures[cid][:1] + topical(tp, 2)
        abstract = topical(tp, _between(rng, config.abstract_length)) + signatures[cid]
        abstract += draw(filler, len(abstract) // 3)
        rng.shuffle(abstract)
        candidates.append(
            CandidateDocument(cid, " ".join(title).capitalize(), " ".join(abstract), _between(rng, config.candidate_years))
        )

    by_topic: dict[tuple[str, int], list[str]] = {tp: [] for tp in topics}
    for cid, tp in cand_topic.items():
        by_topic[tp].append(cid)

    labels = sorted(config.tf_shares, key=lambda tf: tf.value)
    probs = np.array([config.tf_shares[tf] for tf in labels], dtype=float)
    probs /= probs.sum()

    originals: list[OriginalDocument] = []
    width = len(str(config.n_originals - 1))
    for d in range(config.n_originals):
        doc_id = f"d{d:0{width}d}"
        fld = config.fields[d % len(config.fields)]
        field_topics = [tp for tp in topics if tp[0] == fld]
        paragraphs = []
        for p in range(_between(rng, config.paragraphs_per_doc)):
            tp = field_topics[rng.integers(len(field_topics))]
            label = labels[rng.choice(len(labels), p=probs)]
            pool = by_topic[tp]
            match = [c for c in pool if cand_dominant[c] is label]
            other = [c for c in pool if cand_dominant[c] is not label]
            n_cites = min(_between(rng, config.cites_per_paragraph), len(pool))
            cited: list[str] = []
            for _ in range(n_cites):
                use_match = rng.random() >= config.noise
                src = [c for c in (match if use_match else other) if c not in cited]
                if src:
                    # an exhausted pool shortens the list rather than crossing over
                    cited.append(src[rng.integers(len(src))])
            if not cited:
                cited.append(pool[rng.integers(len(pool))])
            body = topical(tp, _between(rng, config.paragraph_length))
            body += draw(function_vocab[label], 3) + draw(filler, len(body) // 4)
            for c in cited:
                for sig in signatures[c]:
                    if rng.random() < config.signature_rate:
                        body.append(sig)
            rng.shuffle(body)
            paragraphs.append(Paragraph(f"{doc_id}-p{p}", " ".join(body).capitalize() + ".", label, frozenset(cited)))
        originals.append(
            OriginalDocument(
                doc_id=doc_id,
                title=" ".join(topical(field_topics[0], 6)).capitalize(),
                abstract=" ".join(topical(field_topics[0], 40)),
                year=_between(rng, config.original_years),
                field=fld,
                paragraphs=tuple(paragraphs),
            )
        )
    return Corpus.from_documents(originals, candidates)


def dominant_functions(config: GeneratorConfig | None = None) -> dict[str, TermFunction]:
    """Dominant function of each generated candidate id (independent of seed)."""
    config = config or GeneratorConfig()
    n_topics = len(config.fields) * config.topics_per_field
    width = len(str(config.n_candidates - 1))
    return {
        f"c{i:0{width}d}": RANKING_TF[(i // n_topics) % len(RANKING_TF)] for i in range(config.n_candidates)
    }
