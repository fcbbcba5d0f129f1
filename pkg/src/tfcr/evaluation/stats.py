"""Term-function distribution of annotated paragraphs."""

from __future__ import annotations

from collections import Counter
from typing import NamedTuple

from ..corpus import Corpus, TermFunction

ALL_FIELDS = "all"


class DistributionRow(NamedTuple):
    field: str
    term_function: TermFunction
    count: int
    percentage: float


def tf_distribution(corpus: Corpus, group_by_field: bool = True) -> list[DistributionRow]:
    """Paragraph counts and percentages for all nine functions, per field or pooled."""
    counts: dict[str, Counter] = {}
    for doc, par in corpus.paragraphs():
        key = doc.field if group_by_field else ALL_FIELDS
        counts.setdefault(key, Counter())[par.term_function] += 1
    if not group_by_field:
        counts.setdefault(ALL_FIELDS, Counter())

    rows = []
    for fld in sorted(counts):
        c = counts[fld]
        total = sum(c.values())
        for tf in TermFunction:
            pct = 100.0 * c[tf] / total if total else 0.0
            rows.append(DistributionRow(fld, tf, c[tf], pct))
    return rows


def format_distribution(rows: list[DistributionRow]) -> str:
    lines = [f"{'field':<24} {'term_function':<18} {'count':>7} {'percent':>8}"]
    for r in rows:
        lines.append(f"{r.field:<24} {r.term_function.value:<18} {r.count:>7d} {r.percentage:>7.2f}%")
    return "\n".join(lines)
