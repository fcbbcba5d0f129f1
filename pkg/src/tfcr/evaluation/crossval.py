"""K-fold evaluation of plain and term-function-weighted BM25.

Query units are annotated paragraphs carrying one of the four ranking
functions. Within each field they are split into folds; for every fold the
profiles are rebuilt from the remaining paragraphs of that field, and each
held-out paragraph is run as a query dated by its citing document.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

from ..bm25 import Bm25Params, Index, build_index
from ..corpus import RANKING_TF, Corpus
from ..textpipe import tokenize
from ..tfrank import Query, Variant, build_profiles, recommend
from .metrics import f1_score

DEFAULT_KS = (5, 10, 20, 30)
DEFAULT_FOLDS = 5
AVG = "avg"
CSV_HEADER = ("variant", "field", "fold", "k", "precision", "recall", "f1")


@dataclass(frozen=True)
class FoldAssignment:
    fold_of: dict[str, int]
    seed: int
    n_folds: int

    def members(self, fold: int) -> list[str]:
        return sorted(u for u, f in self.fold_of.items() if f == fold)

    def sizes(self) -> list[int]:
        return [len(self.members(f)) for f in range(self.n_folds)]


def make_folds(unit_ids: Iterable[str], n_folds: int = DEFAULT_FOLDS, seed: int = 0) -> FoldAssignment:
    """Seeded random partition into *n_folds* folds whose sizes differ by at most one."""
    ids = sorted(unit_ids)
    if len(set(ids)) != len(ids):
        raise ValueError("unit ids must be unique")
    if n_folds < 2:
        raise ValueError(f"need at least 2 folds, got {n_folds}")
    if len(ids) < n_folds:
        raise ValueError(f"cannot split {len(ids)} units into {n_folds} folds")
    perm = np.random.default_rng(seed).permutation(len(ids))
    return FoldAssignment({ids[j]: i % n_folds for i, j in enumerate(perm)}, seed, n_folds)


class EvalRow(NamedTuple):
    variant: str
    field: str
    fold: int | str
    k: int
    precision: float
    recall: float
    f1: float


@dataclass
class EvalReport:
    rows: list[EvalRow]
    config: dict
    folds: dict[str, FoldAssignment] = field(default_factory=dict)
    n_queries: int = 0
    n_skipped: int = 0

    def get(self, variant: str, fld: str, k: int, fold: int | str = AVG) -> EvalRow:
        for r in self.rows:
            if r.variant == str(variant) and r.field == fld and r.k == k and r.fold == fold:
                return r
        raise KeyError((variant, fld, k, fold))

    def mean(self, variant: str, k: int, metric: str) -> float:
        """Metric from the fold-averaged rows, averaged over fields."""
        vals = [getattr(r, metric) for r in self.rows if r.variant == str(variant) and r.k == k and r.fold == AVG]
        if not vals:
            raise KeyError((variant, k))
        return float(np.mean(vals))

    def to_csv(self) -> str:
        buf = io.StringIO()
        for key in sorted(self.config):
            buf.write(f"# {key}={self.config[key]}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            w.writerow([r.variant, r.field, r.fold, r.k, repr(r.precision), repr(r.recall), repr(r.f1)])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "config": self.config,
            "n_queries": self.n_queries,
            "n_skipped": self.n_skipped,
            "rows": [r._asdict() for r in self.rows],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def write(self, out_dir: str | Path, stem: str = "report") -> tuple[Path, Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        csv_path, json_path = out / f"{stem}.csv", out / f"{stem}.json"
        csv_path.write_text(self.to_csv(), encoding="utf-8", newline="\n")
        json_path.write_text(self.to_json(), encoding="utf-8", newline="\n")
        return csv_path, json_path

    def format_table(self) -> str:
        ks = sorted({r.k for r in self.rows})
        lines = [f"{'run':<36}" + "".join(f"{'P@%d' % k:>8}{'R@%d' % k:>8}{'F1@%d' % k:>8}" for k in ks)]
        for r0 in self.rows:
            if r0.fold != AVG or r0.k != ks[0]:
                continue
            cells = []
            for k in ks:
                r = self.get(r0.variant, r0.field, k)
                cells.append(f"{r.precision:8.3f}{r.recall:8.3f}{r.f1:8.3f}")
            lines.append(f"{r0.field + ' ' + r0.variant:<36}" + "".join(cells))
        return "\n".join(lines)


class _Unit(NamedTuple):
    paragraph_id: str
    doc_id: str
    text: str
    term_function: object
    year: int
    relevant: frozenset


def _units_by_field(corpus: Corpus, ground_truth: str) -> tuple[dict[str, list[_Unit]], int]:
    if ground_truth not in ("paragraph", "article"):
        raise ValueError(f"ground_truth must be 'paragraph' or 'article', got {ground_truth!r}")
    units: dict[str, list[_Unit]] = {}
    skipped = 0
    for doc, par in corpus.paragraphs():
        if par.term_function not in RANKING_TF or par.unannotated:
            continue
        if ground_truth == "paragraph":
            relevant = par.cited_refs
        else:
            relevant = frozenset().union(*(p.cited_refs for p in doc.paragraphs))
        if not relevant:
            skipped += 1
            continue
        units.setdefault(doc.field, []).append(
            _Unit(par.paragraph_id, doc.doc_id, par.text, par.term_function, doc.year, relevant)
        )
    return units, skipped


def fold_profiles(corpus: Corpus, folds: FoldAssignment, fld: str, fold: int) -> dict:
    """Profiles for one fold: every paragraph of *fld* outside the held-out fold."""
    docs = [d.doc_id for d in corpus.originals.values() if d.field == fld]
    return build_profiles(corpus, docs, exclude_paragraphs=folds.members(fold))


def cross_validate(
    corpus: Corpus,
    params: Bm25Params = Bm25Params(),
    alpha: float = 1.0,
    variants: Iterable[Variant | str] = (Variant.PLAIN, Variant.TFW),
    ks: Sequence[int] = DEFAULT_KS,
    seed: int = 0,
    n_folds: int = DEFAULT_FOLDS,
    top_n: int | None = None,
    ground_truth: str = "paragraph",
    lenient_year: bool = False,
    micro: bool = False,
    index: Index | None = None,
    tokenizer: Callable[[str], list[str]] = tokenize,
) -> EvalReport:
    """Run every variant on one shared fold partition per field.

    Metrics are averaged over the queries of a fold (or pooled with
    ``micro=True``), then over folds. F1 on every row is computed from that
    row's precision and recall.
    """
    variants = sorted({Variant(v) for v in variants}, key=lambda v: v.value)
    ks = sorted(set(ks))
    if not ks or ks[0] < 1:
        raise ValueError(f"ks must be positive, got {ks}")
    top_n = top_n if top_n is not None else ks[-1]
    if index is None:
        index = build_index(corpus.candidates.values(), tokenizer)
    units, skipped = _units_by_field(corpus, ground_truth)

    config = {
        "k1": params.k1,
        "b": params.b,
        "clamp_idf": params.clamp_idf,
        "alpha": alpha,
        "top_n": top_n,
        "n_folds": n_folds,
        "seed": seed,
        "ks": ",".join(map(str, ks)),
        "variants": ",".join(v.value for v in variants),
        "ground_truth": ground_truth,
        "lenient_year": lenient_year,
        "averaging": "micro" if micro else "macro",
    }
    report = EvalReport(rows=[], config=config, n_skipped=skipped)

    for fld in sorted(units):
        folds = make_folds([u.paragraph_id for u in units[fld]], n_folds, seed)
        report.folds[fld] = folds
        report.n_queries += len(units[fld])
        # per variant, per k: list over folds of (precision, recall)
        per_fold: dict[tuple[Variant, int], list[tuple[float, float]]] = {(v, k): [] for v in variants for k in ks}
        for fold in range(n_folds):
            test_ids = set(folds.members(fold))
            profiles = fold_profiles(corpus, folds, fld, fold)
            test_units = [u for u in units[fld] if u.paragraph_id in test_ids]
            for v in variants:
                acc = {k: _Accumulator() for k in ks}
                for u in test_units:
                    query = Query(u.text, u.term_function, year_cutoff=u.year, alpha=alpha)
                    ranked = recommend(query, index, profiles, params, v, top_n, lenient_year, tokenizer)
                    ids = [e.cand_id for e in ranked]
                    for k in ks:
                        acc[k].add(ids[:k], u.relevant)
                for k in ks:
                    p, r = acc[k].result(micro)
                    per_fold[v, k].append((p, r))
                    report.rows.append(EvalRow(v.value, fld, fold, k, p, r, f1_score(p, r)))
        for v in variants:
            for k in ks:
                p = float(np.mean([pr[0] for pr in per_fold[v, k]]))
                r = float(np.mean([pr[1] for pr in per_fold[v, k]]))
                report.rows.append(EvalRow(v.value, fld, AVG, k, p, r, f1_score(p, r)))

    report.rows.sort(key=lambda r: (r.variant, r.field, r.fold == AVG, r.fold if r.fold != AVG else 0, r.k))
    return report


class _Accumulator:
    def __init__(self):
        self.precisions: list[float] = []
        self.recalls: list[float] = []
        self.hits = self.returned = self.relevant = 0

    def add(self, top: list[str], relevant: frozenset) -> None:
        hits = sum(1 for c in top if c in relevant)
        self.precisions.append(hits / len(top) if top else 0.0)
        self.recalls.append(hits / len(relevant))
        self.hits += hits
        self.returned += len(top)
        self.relevant += len(relevant)

    def result(self, micro: bool) -> tuple[float, float]:
        if micro:
            p = self.hits / self.returned if self.returned else 0.0
            r = self.hits / self.relevant if self.relevant else 0.0
            return p, r
        if not self.precisions:
            return 0.0, 0.0
        return float(np.mean(self.precisions)), float(np.mean(self.recalls))


def alpha_grid(step: float = 0.1) -> list[float]:
    """Grid over (0, 1] at *step*, e.g. 0.1, 0.2, ..., 1.0."""
    n = int(round(1.0 / step))
    if n < 1 or abs(n * step - 1.0) > 1e-9:
        raise ValueError(f"step must divide 1 evenly, got {step}")
    return [round((i + 1) / n, 10) for i in range(n)]


def sweep_alpha(
    corpus: Corpus,
    grid: Iterable[float] | None = None,
    k: int = 20,
    metric: str = "f1",
    **kwargs,
) -> list[tuple[float, float]]:
    """Weighted-BM25 *metric*@*k* for each alpha, on one fold partition.

    Extra keyword arguments go to :func:`cross_validate`; the candidate
    index is built once and shared across the grid.
    """
    grid = list(alpha_grid() if grid is None else grid)
    for a in grid:
        if not 0 < a <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {a}")
    kwargs.setdefault("ks", (k,))
    if k not in kwargs["ks"]:
        raise ValueError(f"k={k} missing from ks")
    if kwargs.get("index") is None:
        kwargs["index"] = build_index(corpus.candidates.values(), kwargs.get("tokenizer", tokenize))
    out = []
    for a in grid:
        report = cross_validate(corpus, alpha=a, variants=(Variant.TFW,), **kwargs)
        out.append((a, report.mean(Variant.TFW, k, metric)))
    return out
