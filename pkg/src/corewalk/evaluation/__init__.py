from .experiment import (ExperimentReport, RepeatResult, evaluate_embedding, make_method, report_csv,
                         run_experiment, sweep_csv)
from .logistic import LinkLogisticRegression, log_loss_and_grad, pair_feature_matrix, pair_features, train_logistic
from .metrics import confusion_counts, f1_score
from .pca import PowerPCA, pca_csv, pca_project, principal_directions
from .split import TEST, TRAIN, VALIDATION, LinkPredictionSplit, make_split

__all__ = [
    "ExperimentReport", "RepeatResult", "evaluate_embedding", "make_method", "report_csv", "run_experiment",
    "sweep_csv", "LinkLogisticRegression", "log_loss_and_grad", "pair_feature_matrix", "pair_features",
    "train_logistic", "confusion_counts", "f1_score", "PowerPCA", "pca_csv", "pca_project",
    "principal_directions", "TEST", "TRAIN", "VALIDATION", "LinkPredictionSplit", "make_split",
]
