"""Classifier ensemble selection and fusion.

Thin wrapper over the C++ core: dataset loading, the pairwise diversity
measures, kappa, the Wilcoxon signed-rank test, and full protocol runs.
"""

from cife._core import (
    Dataset,
    __version__,
    accuracy,
    diversity_scores,
    kappa,
    list_protocols,
    load_csv,
    majority_vote,
    make_folds,
    parse_protocol,
    run_grid,
    run_protocol,
    wilcoxon_signed_rank,
    win_tie_loss,
)

__all__ = [
    "Dataset",
    "__version__",
    "accuracy",
    "diversity_scores",
    "kappa",
    "list_protocols",
    "load_csv",
    "majority_vote",
    "make_folds",
    "parse_protocol",
    "run_grid",
    "run_protocol",
    "wilcoxon_signed_rank",
    "win_tie_loss",
]
