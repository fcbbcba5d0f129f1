"""Cohen's kappa between two annotators' term-function labels."""

from __future__ import annotations

import csv
from collections import Counter
from pathlib import Path
from typing import Sequence

import numpy as np

from ..corpus import TermFunction


def cohen_kappa(labels_a: Sequence[TermFunction], labels_b: Sequence[TermFunction]) -> float:
    """Chance-corrected agreement ``(p_o - p_e) / (1 - p_e)``.

    Returns 1.0 when both annotators used one and the same label throughout.
    """
    if len(labels_a) != len(labels_b):
        raise ValueError(f"label sequences differ in length ({len(labels_a)} vs {len(labels_b)})")
    n = len(labels_a)
    if n == 0:
        raise ValueError("kappa needs at least one labelled item")
    p_o = sum(a == b for a, b in zip(labels_a, labels_b)) / n
    ca, cb = Counter(labels_a), Counter(labels_b)
    p_e = sum(ca[c] * cb[c] for c in ca) / (n * n)
    if p_e == 1.0:
        return 1.0
    return (p_o - p_e) / (1 - p_e)


def confusion_matrix(labels_a: Sequence[TermFunction], labels_b: Sequence[TermFunction]) -> np.ndarray:
    """9x9 counts, rows annotator A, columns annotator B, in ``TermFunction`` order."""
    order = {tf: i for i, tf in enumerate(TermFunction)}
    mat = np.zeros((len(order), len(order)), dtype=np.int64)
    for a, b in zip(labels_a, labels_b, strict=True):
        mat[order[a], order[b]] += 1
    return mat


def read_annotations(path: str | Path) -> dict[str, TermFunction]:
    """Read a ``paragraph_id<TAB>term_function`` file; a header row is optional."""
    out: dict[str, TermFunction] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh, delimiter="\t"), start=1):
            if not row or not "".join(row).strip():
                continue
            if lineno == 1 and row[:2] == ["paragraph_id", "term_function"]:
                continue
            if len(row) < 2:
                raise ValueError(f"{path}:{lineno}: expected 2 tab-separated columns")
            pid, label = row[0].strip(), row[1].strip()
            if pid in out:
                raise ValueError(f"{path}:{lineno}: duplicate paragraph_id {pid!r}")
            try:
                out[pid] = TermFunction.parse(label)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return out


def align_annotations(
    a: dict[str, TermFunction], b: dict[str, TermFunction]
) -> tuple[list[TermFunction], list[TermFunction], list[str]]:
    """Join two annotation maps on paragraph id.

    Returns the aligned label lists (sorted by id) and the ids present in
    only one of the inputs.
    """
    shared = sorted(set(a) & set(b))
    unmatched = sorted(set(a) ^ set(b))
    return [a[p] for p in shared], [b[p] for p in shared], unmatched
