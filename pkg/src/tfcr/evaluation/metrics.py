"""Set-based retrieval metrics over a ranked recommendation list."""

from __future__ import annotations

from typing import Collection, Sequence


def f1_score(precision: float, recall: float) -> float:
    if precision + recall <= 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def precision_recall_f1(recommended: Sequence[str], relevant: Collection[str], k: int) -> tuple[float, float, float]:
    """Precision, recall and F1 of the first *k* recommendations.

    When fewer than *k* items were returned, precision divides by the number
    actually returned (an empty list scores 0 everywhere).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not relevant:
        raise ValueError("relevant set is empty")
    relevant = set(relevant)
    top = recommended[:k]
    hits = sum(1 for item in top if item in relevant)
    precision = hits / len(top) if top else 0.0
    recall = hits / len(relevant)
    return precision, recall, f1_score(precision, recall)
