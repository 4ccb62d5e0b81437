"""
Block-Hankel data matrices.

Column t of the output matrix stacks y(t), ..., y(t + alpha - 1); the input
matrix is built the same way, so Y = O_alpha X + T_alpha U + noise.
"""
import attr
import numpy as np
from oslo_log import log as logging

from networking_topoid.common import exceptions
from networking_topoid.common import utils

LOG = logging.getLogger(__name__)


def block_hankel(samples, alpha, start=0, stop=None):
    """(alpha d) x (stop - start) block-Hankel matrix of q x d samples."""
    samples = np.asarray(samples, dtype=float)
    columns = samples.shape[0] - alpha + 1
    stop = columns if stop is None else min(stop, columns)
    return np.vstack([samples[start + i:stop + i].T for i in range(alpha)])


@attr.s(frozen=True, eq=False)
class HankelBlocks(object):
    """Stacked outputs Y ((alpha L) x T) and inputs U ((alpha P) x T)."""

    Y = attr.ib(converter=utils.frozen)
    U = attr.ib(converter=utils.frozen)
    alpha = attr.ib()
    n_states = attr.ib()

    @property
    def T(self):
        return self.Y.shape[1]

    @property
    def L(self):
        return self.Y.shape[0] // self.alpha

    @property
    def P(self):
        return self.U.shape[0] // self.alpha

    def split(self, beta):
        """Past (depth beta) and future (depth alpha - beta) blocks.

        Returns (Y1, U1, Y2, U2).
        """
        return (self.Y[:beta * self.L], self.U[:beta * self.P],
                self.Y[beta * self.L:], self.U[beta * self.P:])


def required_samples(alpha, n_states):
    return alpha + n_states


def check_depth(alpha, n_states, q):
    if alpha <= n_states:
        raise exceptions.DepthTooSmall(alpha=alpha, n_states=n_states)
    required = required_samples(alpha, n_states)
    if q < required:
        raise exceptions.TrajectoryTooShort(q=q, required=required)


def build_hankel(traj, alpha, n_states):
    """Block-Hankel matrices of a trajectory with T = Q - alpha + 1."""
    check_depth(alpha, n_states, traj.q)
    y = block_hankel(traj.outputs, alpha)
    u = block_hankel(traj.inputs, alpha)
    LOG.debug("Hankel depth {} with {} columns".format(alpha, y.shape[1]))
    return HankelBlocks(Y=y, U=u, alpha=alpha, n_states=n_states)
