"""
Continuous-time recovery from identified discrete matrices.

    f_x(S_x) = log(A) / tau
    f_u(S_u) = (A - I)^-1 f_x(S_x) B
"""
import attr
import numpy as np
import scipy.linalg
from oslo_log import log as logging

from networking_topoid.common import config
from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.common import utils
from networking_topoid.dynamics import scalar_maps
from networking_topoid.dynamics import simulation

LOG = logging.getLogger(__name__)

CERTIFICATE_TOL = 1e-6


@attr.s(frozen=True, eq=False)
class ContinuousEstimate(object):
    """Recovered f_x(S_x), f_u(S_u) and the state-graph eigenvalues."""

    fx_hat = attr.ib(converter=utils.frozen)
    fu_hat = attr.ib(converter=utils.frozen)
    tau = attr.ib(converter=float)
    lambda_x = attr.ib(converter=utils.frozen)
    # exp(fx_hat tau) against the A passed in
    certificate = attr.ib(default=0.0, converter=float)
    # the same against the symmetrized A whose logarithm was taken
    symmetric_certificate = attr.ib(default=None)
    spectral_fallback = attr.ib(default=False)

    def to_dict(self):
        return {
            "fx_hat": utils.array_document(self.fx_hat),
            "fu_hat": utils.array_document(self.fu_hat),
            "tau": self.tau,
            "lambda_x": [float(v) for v in self.lambda_x],
            "certificate": self.certificate,
            "symmetric_certificate": (
                None if self.symmetric_certificate is None
                else float(self.symmetric_certificate)),
            "spectral_fallback": bool(self.spectral_fallback),
        }

    @classmethod
    def from_dict(cls, document):
        return cls(fx_hat=utils.array_from_document(document["fx_hat"]),
                   fu_hat=utils.array_from_document(document["fu_hat"]),
                   tau=document["tau"],
                   lambda_x=document["lambda_x"],
                   certificate=document.get("certificate", 0.0),
                   symmetric_certificate=document.get(
                       "symmetric_certificate"),
                   spectral_fallback=document.get("spectral_fallback",
                                                  False))


def _is_symmetric(matrix, tol):
    scale = max(1.0, float(np.max(np.abs(matrix))))
    return utils.asymmetry(matrix) <= tol * scale


def _check_log_domain(values):
    for value in np.atleast_1d(values):
        magnitude = abs(value)
        if magnitude < constants.LOG_EIGEN_FLOOR:
            raise exceptions.LogarithmUndefined(
                eigenvalue=value, reason="is numerically zero")
        if (np.real(value) < 0 and
                abs(np.imag(value)) <= 1e-12 * magnitude):
            raise exceptions.LogarithmUndefined(
                eigenvalue=value,
                reason="lies on the closed negative real axis")


def principal_log(a, symmetric_tol=None):
    """Principal matrix logarithm of a real matrix.

    Symmetric input takes the eigendecomposition path; otherwise
    scipy.linalg.logm (inverse scaling and squaring on the Schur form).
    """
    symmetric_tol = config.option("IDENTIFICATION",
                                  "log_symmetric_tolerance", symmetric_tol)
    a = utils.as_matrix(a, "A", square=True)
    if _is_symmetric(a, symmetric_tol):
        values, basis = np.linalg.eigh(utils.symmetrize(a))
        _check_log_domain(values)
        return utils.symmetrize((basis * np.log(values)).dot(basis.T))
    _check_log_domain(np.linalg.eigvals(a))
    result = scipy.linalg.logm(a)
    if np.iscomplexobj(result):
        leak = float(np.max(np.abs(result.imag)))
        if leak > 1e-8 * max(1.0, float(np.max(np.abs(result.real)))):
            raise exceptions.LogarithmUndefined(
                eigenvalue="(complex logarithm)",
                reason="has no real principal branch, imaginary part "
                       "{:.3g}".format(leak))
        result = result.real
    return result


def _eigenvalues(matrix):
    if _is_symmetric(matrix, constants.SYMMETRY_TOL):
        return np.linalg.eigvalsh(utils.symmetrize(matrix))
    values = np.linalg.eigvals(matrix)
    return np.real(values)


def invert_scalar_map(map_name, values, **params):
    """Entrywise inverse image through a bijective map, non-increasing."""
    scalar_map = scalar_maps.get(map_name, **params)
    result = scalar_map.inverse(values)
    return np.sort(np.atleast_1d(result))[::-1]


def recover_continuous(ss_hat, fx_map=scalar_maps.NEG_IDENTITY,
                       symmetrize=None, fallback_condition=None):
    """ContinuousEstimate from a discrete StateSpace.

    With `symmetrize` (IDENTIFICATION.symmetrize_undirected when None) the
    transition matrix is replaced by its symmetric part first.
    """
    symmetrize = config.option("IDENTIFICATION", "symmetrize_undirected",
                               symmetrize)
    fallback_condition = config.option("IDENTIFICATION",
                                       "fallback_condition",
                                       fallback_condition)
    a_input = np.asarray(ss_hat.A, dtype=float)
    a = a_input
    tau = ss_hat.tau
    if symmetrize:
        gap = utils.asymmetry(a)
        if gap > constants.SYMMETRY_TOL:
            LOG.warning("Symmetrizing transition estimate with asymmetry "
                        "{:.3g}".format(gap))
        a = utils.symmetrize(a)
    fx_hat = principal_log(a) / tau

    n = a.shape[0]
    shifted = a - np.eye(n)
    fallback = bool(np.linalg.cond(shifted) > fallback_condition)
    if fallback:
        LOG.warning("A - I is ill-conditioned, recovering f_u(S_u) from "
                    "the transition integral")
        _, integral = simulation.transition(fx_hat, tau)
        fu_hat = np.linalg.solve(integral, ss_hat.B)
    else:
        fu_hat = np.linalg.solve(shifted, fx_hat.dot(ss_hat.B))

    reproduced, _ = simulation.transition(fx_hat, tau)
    certificate = np.linalg.norm(reproduced - a_input) / np.linalg.norm(
        a_input)
    symmetric_certificate = None
    if symmetrize:
        symmetric_certificate = float(
            np.linalg.norm(reproduced - a) / np.linalg.norm(a))
    if certificate > CERTIFICATE_TOL:
        LOG.warning("exp(fx_hat tau) deviates from the estimated transition "
                    "by {:.3g}".format(certificate))
    lambda_x = invert_scalar_map(fx_map, _eigenvalues(fx_hat))
    return ContinuousEstimate(fx_hat=fx_hat, fu_hat=fu_hat, tau=tau,
                              lambda_x=lambda_x, certificate=certificate,
                              symmetric_certificate=symmetric_certificate,
                              spectral_fallback=fallback)


def recover_input_graph(fu_hat, fu_map=scalar_maps.NEG_IDENTITY, t=None):
    """Input graph shift and eigenvalues from an estimated f_u(S_u).

    In transformed coordinates pass the similarity `t`, giving
    f_u(S_u) = T^-1 f_u,T.

    Returns (S_u, lambda_u) with lambda_u non-increasing.
    """
    fu_hat = np.asarray(fu_hat, dtype=float)
    if t is not None:
        fu_hat = np.linalg.solve(t, fu_hat)
    s_u = scalar_maps.get(fu_map).inverse_matrix(fu_hat)
    return s_u, np.sort(_eigenvalues(s_u))[::-1]
