"""Metrics, cross-validation, annotator agreement, statistics, synthetic data."""

from .crossval import (
    AVG,
    DEFAULT_KS,
    EvalReport,
    EvalRow,
    FoldAssignment,
    alpha_grid,
    cross_validate,
    fold_profiles,
    make_folds,
    sweep_alpha,
)
from .kappa import align_annotations, cohen_kappa, confusion_matrix, read_annotations
from .metrics import f1_score, precision_recall_f1
from .stats import DistributionRow, format_distribution, tf_distribution
from .synthetic import TARGET_RANKING_SHARES, GeneratorConfig, dominant_functions, gen_synthetic

__all__ = [
    "AVG",
    "DEFAULT_KS",
    "DistributionRow",
    "EvalReport",
    "EvalRow",
    "FoldAssignment",
    "GeneratorConfig",
    "TARGET_RANKING_SHARES",
    "align_annotations",
    "alpha_grid",
    "cohen_kappa",
    "confusion_matrix",
    "cross_validate",
    "dominant_functions",
    "f1_score",
    "fold_profiles",
    "format_distribution",
    "gen_synthetic",
    "make_folds",
    "precision_recall_f1",
    "read_annotations",
    "sweep_alpha",
    "tf_distribution",
]
