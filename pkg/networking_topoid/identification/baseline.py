"""
Covariance baseline: graph spectrum and modes read off the sample output
covariance, ignoring the dynamics that generated the data.
"""
import attr
import numpy as np
from oslo_log import log as logging

from networking_topoid.common import exceptions
from networking_topoid.common import utils

LOG = logging.getLogger(__name__)


@attr.s(frozen=True, eq=False)
class BaselineEstimate(object):
    covariance = attr.ib(converter=utils.frozen)
    # rescaled to the requested trace, non-increasing
    eigenvalues = attr.ib(converter=utils.frozen)
    basis = attr.ib(converter=utils.frozen)

    @property
    def shift(self):
        """Covariance rescaled like the eigenvalues, as a graph estimate."""
        return (self.basis * self.eigenvalues).dot(self.basis.T)

    def alignment(self, s):
        """Share of the energy of Q^T S Q on its diagonal, in [0, 1]."""
        projected = self.basis.T.dot(np.asarray(s, dtype=float)).dot(
            self.basis)
        total = np.sum(projected ** 2)
        if total == 0:
            return 1.0
        return float(np.sum(np.diag(projected) ** 2) / total)


def covariance_baseline(traj, trace=None):
    """Sample covariance of the outputs and its eigendecomposition.

    The eigenvalues are scaled so they sum to `trace` (the known trace of
    the graph shift) when given.
    """
    if traj.q < 2:
        raise exceptions.InsufficientData(
            reason="covariance needs at least 2 samples")
    outputs = traj.outputs - traj.outputs.mean(axis=0)
    covariance = outputs.T.dot(outputs) / (traj.q - 1)
    values, basis = np.linalg.eigh(utils.symmetrize(covariance))
    values, basis = values[::-1], basis[:, ::-1]
    if trace is not None:
        total = values.sum()
        if total <= 0:
            raise exceptions.InsufficientData(
                reason="output covariance has zero trace")
        values = values * (trace / total)
    LOG.debug("Covariance baseline over {} samples".format(traj.q))
    return BaselineEstimate(covariance=covariance, eigenvalues=values,
                            basis=basis)
