"""
Frobenius projections onto sets of symmetric matrices with prescribed
spectra. Each keeps the eigenvectors of its argument and moves only the
eigenvalues, both sides sorted non-increasing.
"""
import numpy as np
from oslo_log import log as logging

from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.graph import shift
from networking_topoid.reconstruction import matching

LOG = logging.getLogger(__name__)

# relative slack before a spectral norm counts as exceeding rho
RHO_SLACK = 1e-12


def _target_vector(values, n, name):
    values = np.atleast_1d(np.asarray(values, dtype=float))
    if values.shape != (n,):
        raise exceptions.ShapeMismatch(name=name, expected=(n,),
                                       actual=values.shape)
    if np.any(np.diff(values) > 0):
        raise exceptions.InvalidInput(name=name,
                                      reason="not sorted non-increasing")
    return values


def _spectrum(s, spectrum=None):
    return shift.eig_sym(s) if spectrum is None else spectrum


def project_M(s, lambda_o, spectrum=None):
    """Nearest matrix with spectrum exactly lambda_o."""
    spectrum = _spectrum(s, spectrum)
    lambda_o = _target_vector(lambda_o, spectrum.n, "lambda_o")
    return spectrum.compose(lambda_o)


def project_M_ab(s, lambda_o, lower, upper, spectrum=None):
    """Eigenvalue i moved to lambda_o[i] + clamp(gap_i, lower_i, upper_i)."""
    spectrum = _spectrum(s, spectrum)
    lambda_o = _target_vector(lambda_o, spectrum.n, "lambda_o")
    lower = np.broadcast_to(np.asarray(lower, dtype=float), lambda_o.shape)
    upper = np.broadcast_to(np.asarray(upper, dtype=float), lambda_o.shape)
    if np.any(lower > upper):
        raise exceptions.InvalidBounds(reason="lower exceeds upper")
    gap = spectrum.values - lambda_o
    return spectrum.compose(lambda_o + np.clip(gap, lower, upper))


def project_M_eps(s, lambda_o, epsilon, spectrum=None):
    """Eigenvalues pulled to within epsilon of lambda_o."""
    if epsilon < 0:
        raise exceptions.InvalidBounds(reason="epsilon must be >= 0")
    return project_M_ab(s, lambda_o, -epsilon, epsilon, spectrum)


def project_M_psd(s, spectrum=None):
    """Nearest positive semidefinite matrix."""
    spectrum = _spectrum(s, spectrum)
    return project_M_ab(s, np.zeros(spectrum.n), 0.0, np.inf, spectrum)


def project_M_eps_m(s, lambda_m, epsilon=0.0, rho=np.inf, spectrum=None):
    """m known eigenvalues (within epsilon), the rest free in [-rho, rho].

    The known eigenvalues are placed by an optimal matching against the
    spectrum of `s`; unmatched eigenvalues keep their positions.
    """
    spectrum = _spectrum(s, spectrum)
    lambda_m = np.atleast_1d(np.asarray(lambda_m, dtype=float))
    if lambda_m.size > spectrum.n:
        raise exceptions.ShapeMismatch(name="lambda_m",
                                       expected="m <= {}".format(spectrum.n),
                                       actual=lambda_m.size)
    if np.any(np.diff(lambda_m) > 0):
        raise exceptions.InvalidInput(name="lambda_m",
                                      reason="not sorted non-increasing")
    values = np.array(spectrum.values)
    norm = np.max(np.abs(values))
    if norm > rho * (1.0 + RHO_SLACK):
        LOG.warning("Spectral norm {:.6g} exceeds rho {:.6g}, clipping".format(
            norm, rho))
    if lambda_m.size:
        positions, _ = matching.match_eigenvalues(values, lambda_m, epsilon,
                                                  rho)
        for target, j in zip(lambda_m, positions):
            values[j] = target + np.clip(values[j] - target, -epsilon,
                                         epsilon)
    return spectrum.compose(np.clip(values, -rho, rho))


def project_spectral(s, target, spectrum=None):
    """Projection onto the spectral set described by a SpectralTarget."""
    kind = target.kind
    if kind == constants.SPECTRAL_M:
        return project_M(s, target.lambda_o, spectrum)
    if kind == constants.SPECTRAL_M_EPS:
        return project_M_eps(s, target.lambda_o, target.epsilon, spectrum)
    if kind == constants.SPECTRAL_M_EPS_M:
        return project_M_eps_m(s, target.lambda_m, target.epsilon,
                               target.rho, spectrum)
    return project_M_ab(s, target.lambda_o, target.lower, target.upper,
                        spectrum)
