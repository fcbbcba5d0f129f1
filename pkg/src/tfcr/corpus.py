"""Document and annotation data model, plus line-delimited JSON ingestion.

Two files describe a corpus:

* an *originals* file, one citing paper per line, each carrying its
  related-work paragraphs with a term-function label and the ids of the
  references each paragraph cites;
* a *candidates* file, one citable paper per line.

Text is stored verbatim. Normalisation happens in :mod:`tfcr.textpipe`.
"""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

logger = logging.getLogger(__name__)


class TermFunction(str, enum.Enum):
    """Role a related-work paragraph plays with respect to the citing paper."""

    APPLICATION = "application"
    DATASET = "dataset"
    EVALUATION = "evaluation"
    METHOD = "method"
    METHOD_PLUS_PROBLEM = "method+problem"
    PROBLEM = "problem"
    PROBLEM_PLUS_METHOD = "problem+method"
    TOOL = "tool"
    TOPIC_IRRELEVANT = "topic-irrelevant"

    @classmethod
    def parse(cls, label: str) -> "TermFunction":
        if isinstance(label, TermFunction):
            return label
        try:
            return cls(label)
        except ValueError:
            valid = ", ".join(tf.value for tf in cls)
            raise ValueError(f"unknown term function {label!r} (expected one of: {valid})") from None

    @property
    def is_ranking(self) -> bool:
        return self in RANKING_TF

    def __str__(self) -> str:
        return self.value


# Order is the one used for profile count vectors everywhere in the package.
RANKING_TF: tuple[TermFunction, ...] = (
    TermFunction.PROBLEM,
    TermFunction.METHOD,
    TermFunction.PROBLEM_PLUS_METHOD,
    TermFunction.METHOD_PLUS_PROBLEM,
)


def parse_ranking_tf(label: str | TermFunction) -> TermFunction:
    """Parse *label* and require it to be one of the four ranking functions."""
    tf = TermFunction.parse(label)
    if tf not in RANKING_TF:
        valid = ", ".join(t.value for t in RANKING_TF)
        raise ValueError(f"term function {tf.value!r} cannot be used for ranking (expected one of: {valid})")
    return tf


@dataclass(frozen=True)
class Paragraph:
    paragraph_id: str
    text: str
    term_function: TermFunction
    cited_refs: frozenset[str] = frozenset()
    unannotated: bool = False


@dataclass(frozen=True)
class OriginalDocument:
    doc_id: str
    title: str
    abstract: str
    year: int
    field: str
    paragraphs: tuple[Paragraph, ...] = ()


@dataclass(frozen=True)
class CandidateDocument:
    cand_id: str
    title: str
    abstract: str = ""
    year: int | None = None

    @property
    def text(self) -> str:
        """Text that gets indexed: title followed by abstract."""
        return f"{self.title} {self.abstract}"


@dataclass(frozen=True)
class Corpus:
    """Original (citing) documents and the candidate pool, keyed by id."""

    originals: Mapping[str, OriginalDocument]
    candidates: Mapping[str, CandidateDocument]

    @classmethod
    def from_documents(
        cls, originals: Iterable[OriginalDocument], candidates: Iterable[CandidateDocument]
    ) -> "Corpus":
        """Build a corpus, rejecting duplicate ids.

        Use :func:`validate_corpus` to inspect the remaining invariants.
        """
        orig_map: dict[str, OriginalDocument] = {}
        for doc in originals:
            if doc.doc_id in orig_map:
                raise CorpusError(f"duplicate doc_id {doc.doc_id!r}")
            orig_map[doc.doc_id] = doc
        cand_map: dict[str, CandidateDocument] = {}
        for cand in candidates:
            if cand.cand_id in cand_map:
                raise CorpusError(f"duplicate cand_id {cand.cand_id!r}")
            cand_map[cand.cand_id] = cand
        return cls(orig_map, cand_map)

    def paragraphs(self) -> Iterable[tuple[OriginalDocument, Paragraph]]:
        """Yield ``(document, paragraph)`` pairs in doc_id order."""
        for doc_id in sorted(self.originals):
            doc = self.originals[doc_id]
            for par in doc.paragraphs:
                yield doc, par

    @property
    def fields(self) -> list[str]:
        return sorted({doc.field for doc in self.originals.values()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return dict(self.originals) == dict(other.originals) and dict(self.candidates) == dict(
            other.candidates
        )

    __hash__ = None  # type: ignore[assignment]


class CorpusError(ValueError):
    """Raised for malformed or inconsistent corpus input."""


@dataclass
class LoadReport:
    n_originals: int = 0
    n_paragraphs: int = 0
    n_candidates: int = 0
    dropped_refs: list[tuple[str, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def n_dropped(self) -> int:
        return len(self.dropped_refs)


# ---------------------------------------------------------------------------
# validation

def validate_corpus(corpus: Corpus) -> list[str]:
    """Return a list of human-readable invariant violations (empty if none)."""
    problems: list[str] = []
    seen_pars: set[str] = set()
    for key, doc in corpus.originals.items():
        if key != doc.doc_id:
            problems.append(f"original keyed {key!r} has doc_id {doc.doc_id!r}")
        if isinstance(doc.year, bool) or not isinstance(doc.year, int) or doc.year <= 0:
            problems.append(f"original {doc.doc_id!r}: year must be a positive integer, got {doc.year!r}")
        for par in doc.paragraphs:
            where = f"paragraph {par.paragraph_id!r} of {doc.doc_id!r}"
            if par.paragraph_id in seen_pars:
                problems.append(f"duplicate paragraph_id {par.paragraph_id!r}")
            seen_pars.add(par.paragraph_id)
            if not par.text.strip():
                problems.append(f"{where}: empty text")
            if not isinstance(par.term_function, TermFunction):
                problems.append(f"{where}: invalid term function {par.term_function!r}")
            if (
                not par.cited_refs
                and par.term_function is not TermFunction.TOPIC_IRRELEVANT
                and not par.unannotated
            ):
                problems.append(f"{where}: no cited references")
            for ref in sorted(par.cited_refs):
                if ref not in corpus.candidates:
                    problems.append(f"{where}: dangling reference {ref!r}")
    for key, cand in corpus.candidates.items():
        if key != cand.cand_id:
            problems.append(f"candidate keyed {key!r} has cand_id {cand.cand_id!r}")
        if not cand.title.strip():
            problems.append(f"candidate {cand.cand_id!r}: empty title")
    return problems


# ---------------------------------------------------------------------------
# JSON lines I/O

_ORIGINAL_KEYS = {"doc_id", "title", "abstract", "year", "field", "paragraphs"}
_PARAGRAPH_KEYS = {"paragraph_id", "text", "term_function", "cited_refs", "unannotated"}
_CANDIDATE_KEYS = {"cand_id", "title", "abstract", "year"}


def _read_jsonl(path: Path) -> Iterable[tuple[int, dict]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}:{lineno}: malformed JSON ({exc.msg})") from None
            if not isinstance(record, dict):
                raise CorpusError(f"{path}:{lineno}: expected a JSON object")
            yield lineno, record


def _require(record: dict, key: str, kind, where: str):
    if key not in record:
        raise CorpusError(f"{where}: missing key {key!r}")
    value = record[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise CorpusError(f"{where}: key {key!r} has wrong type {type(value).__name__}")
    return value


def _warn_unknown(record: dict, known: set[str], where: str, report: LoadReport) -> None:
    extra = sorted(set(record) - known)
    if extra:
        msg = f"{where}: ignoring unknown keys {extra}"
        logger.warning(msg)
        report.warnings.append(msg)


def _parse_paragraph(raw, where: str, report: LoadReport) -> Paragraph:
    if not isinstance(raw, dict):
        raise CorpusError(f"{where}: paragraph must be an object")
    _warn_unknown(raw, _PARAGRAPH_KEYS, where, report)
    refs = _require(raw, "cited_refs", list, where)
    if not all(isinstance(r, str) for r in refs):
        raise CorpusError(f"{where}: cited_refs must be strings")
    try:
        tf = TermFunction.parse(_require(raw, "term_function", str, where))
    except ValueError as exc:
        raise CorpusError(f"{where}: {exc}") from None
    return Paragraph(
        paragraph_id=_require(raw, "paragraph_id", str, where),
        text=_require(raw, "text", str, where),
        term_function=tf,
        cited_refs=frozenset(refs),
        unannotated=bool(raw.get("unannotated", False)),
    )


def read_candidates(path: str | Path, report: LoadReport | None = None) -> list[CandidateDocument]:
    report = report if report is not None else LoadReport()
    path = Path(path)
    out = []
    for lineno, rec in _read_jsonl(path):
        where = f"{path}:{lineno}"
        _warn_unknown(rec, _CANDIDATE_KEYS, where, report)
        year = rec.get("year")
        if year is not None and (isinstance(year, bool) or not isinstance(year, int)):
            raise CorpusError(f"{where}: key 'year' must be an integer or null")
        out.append(
            CandidateDocument(
                cand_id=_require(rec, "cand_id", str, where),
                title=_require(rec, "title", str, where),
                abstract=rec.get("abstract") or "",
                year=year,
            )
        )
    return out


def read_originals(path: str | Path, report: LoadReport | None = None) -> list[OriginalDocument]:
    report = report if report is not None else LoadReport()
    path = Path(path)
    out = []
    for lineno, rec in _read_jsonl(path):
        where = f"{path}:{lineno}"
        _warn_unknown(rec, _ORIGINAL_KEYS, where, report)
        pars = _require(rec, "paragraphs", list, where)
        out.append(
            OriginalDocument(
                doc_id=_require(rec, "doc_id", str, where),
                title=_require(rec, "title", str, where),
                abstract=_require(rec, "abstract", str, where),
                year=_require(rec, "year", int, where),
                field=_require(rec, "field", str, where),
                paragraphs=tuple(
                    _parse_paragraph(p, f"{where} paragraph {i}", report) for i, p in enumerate(pars)
                ),
            )
        )
    return out


def load_corpus(
    originals_path: str | Path,
    candidates_path: str | Path,
    lenient: bool = False,
) -> tuple[Corpus, LoadReport]:
    """Load and validate a corpus from two JSON-lines files.

    In strict mode any invariant violation raises :class:`CorpusError`. With
    ``lenient=True`` references to unknown candidates are dropped and
    recorded in the returned report instead; other violations are reported
    as warnings. Duplicate ids are always fatal.
    """
    report = LoadReport()
    candidates = read_candidates(candidates_path, report)
    originals = read_originals(originals_path, report)
    corpus = Corpus.from_documents(originals, candidates)

    if lenient:
        fixed = []
        for doc in originals:
            pars = []
            for par in doc.paragraphs:
                dangling = sorted(r for r in par.cited_refs if r not in corpus.candidates)
                if dangling:
                    report.dropped_refs.extend((par.paragraph_id, r) for r in dangling)
                    par = Paragraph(
                        par.paragraph_id,
                        par.text,
                        par.term_function,
                        par.cited_refs.difference(dangling),
                        par.unannotated,
                    )
                pars.append(par)
            fixed.append(OriginalDocument(doc.doc_id, doc.title, doc.abstract, doc.year, doc.field, tuple(pars)))
        corpus = Corpus.from_documents(fixed, candidates)
        for ref in report.dropped_refs:
            logger.warning("dropped dangling reference %r in paragraph %r", ref[1], ref[0])
        for problem in validate_corpus(corpus):
            logger.warning(problem)
            report.warnings.append(problem)
    else:
        problems = validate_corpus(corpus)
        if problems:
            raise CorpusError("; ".join(problems))

    report.n_originals = len(corpus.originals)
    report.n_candidates = len(corpus.candidates)
    report.n_paragraphs = sum(len(d.paragraphs) for d in corpus.originals.values())
    return corpus, report


def original_to_record(doc: OriginalDocument) -> dict:
    return {
        "doc_id": doc.doc_id,
        "title": doc.title,
        "abstract": doc.abstract,
        "year": doc.year,
        "field": doc.field,
        "paragraphs": [
            {
                "paragraph_id": p.paragraph_id,
                "text": p.text,
                "term_function": p.term_function.value,
                "cited_refs": sorted(p.cited_refs),
                **({"unannotated": True} if p.unannotated else {}),
            }
            for p in doc.paragraphs
        ],
    }


def candidate_to_record(cand: CandidateDocument) -> dict:
    return {"cand_id": cand.cand_id, "title": cand.title, "abstract": cand.abstract, "year": cand.year}


def dump_corpus(corpus: Corpus, originals_path: str | Path, candidates_path: str | Path) -> None:
    """Write *corpus* as two JSON-lines files, records sorted by id."""
    with open(originals_path, "w", encoding="utf-8", newline="\n") as fh:
        for doc_id in sorted(corpus.originals):
            fh.write(json.dumps(original_to_record(corpus.originals[doc_id]), ensure_ascii=False) + "\n")
    with open(candidates_path, "w", encoding="utf-8", newline="\n") as fh:
        for cand_id in sorted(corpus.candidates):
            fh.write(json.dumps(candidate_to_record(corpus.candidates[cand_id]), ensure_ascii=False) + "\n")
