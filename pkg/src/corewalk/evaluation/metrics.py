import numpy as np


def confusion_counts(predictions, labels) -> tuple[int, int, int, int]:
    """(tp, fp, fn, tn) for boolean predictions against boolean labels."""
    p = np.asarray(predictions, dtype=bool)
    y = np.asarray(labels, dtype=bool)
    if p.shape != y.shape:
        raise ValueError(f"length mismatch: {p.shape} predictions vs {y.shape} labels")
    tp = int(np.sum(p & y))
    fp = int(np.sum(p & ~y))
    fn = int(np.sum(~p & y))
    tn = int(np.sum(~p & ~y))
    return tp, fp, fn, tn


def f1_score(predictions, labels) -> float:
    """Harmonic mean of precision and recall, in [0, 1].

    Empty ratios count as 0, so F1 is 0 whenever there is no true positive.
    """
    tp, fp, fn, _ = confusion_counts(predictions, labels)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)
