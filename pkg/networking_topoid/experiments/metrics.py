"""
Scores used by the experiments.
"""
import numpy as np

from networking_topoid.graph import shift


def nrmse_fitness(y, y_hat):
    """Per-channel 100 (1 - ||y - y_hat|| / ||y - mean(y)||).

    Rows are time samples.
    """
    y = np.atleast_2d(np.asarray(y, dtype=float))
    y_hat = np.atleast_2d(np.asarray(y_hat, dtype=float))
    error = np.linalg.norm(y - y_hat, axis=0)
    spread = np.linalg.norm(y - y.mean(axis=0), axis=0)
    spread = np.where(spread > 0, spread, np.inf)
    return 100.0 * (1.0 - error / spread)


def eigenvalue_errors(estimated, true):
    """Absolute differences of non-increasingly sorted spectra."""
    estimated = np.sort(np.asarray(estimated, dtype=float))[::-1]
    true = np.sort(np.asarray(true, dtype=float))[::-1]
    return np.abs(estimated - true)


def relative_eigenvalue_error(estimated, true):
    true = np.asarray(true, dtype=float)
    scale = max(float(np.max(np.abs(true))), np.finfo(float).tiny)
    return float(np.max(eigenvalue_errors(estimated, true)) / scale)


def support_recovery(estimated, true, threshold):
    """Edge-set comparison after dropping weights below `threshold`."""
    found = shift.edges(estimated, threshold)
    actual = shift.edges(true, threshold)
    return {
        "exact": found == actual,
        "true_positives": len(found & actual),
        "false_positives": len(found - actual),
        "false_negatives": len(actual - found),
    }


def relative_error(estimated, true):
    true = np.asarray(true, dtype=float)
    return float(np.linalg.norm(np.asarray(estimated) - true) /
                 max(np.linalg.norm(true), np.finfo(float).tiny))


def mode_diagonality(projection):
    """Diagonal energy share of a mode projection |Q^T S Q|."""
    projection = np.asarray(projection, dtype=float)
    total = np.sum(projection ** 2)
    if total == 0:
        return 1.0
    return float(np.sum(np.diag(projection) ** 2) / total)


def is_monotone(series, slack=1e-12):
    series = np.asarray(series, dtype=float)
    return bool(np.all(np.diff(series) <=
                       slack * np.maximum(1.0, series[:-1])))
