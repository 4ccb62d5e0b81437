"""
Instrumental-variable identification of a diffusion on the karate club
graph under state and observation noise, against the covariance baseline.
"""
import numpy as np
from oslo_log import log as logging

from networking_topoid.common import constants
from networking_topoid.common import utils
from networking_topoid.dynamics import model
from networking_topoid.dynamics import scalar_maps
from networking_topoid.dynamics import simulation
from networking_topoid.experiments import base
from networking_topoid.experiments import metrics
from networking_topoid.graph import generators
from networking_topoid.graph import shift
from networking_topoid.identification import baseline
from networking_topoid.identification import spectral
from networking_topoid.identification import subspace

LOG = logging.getLogger(__name__)


def run_iv_karate(config):
    report = base.Report(config)
    laplacian = shift.to_laplacian(generators.karate_club())
    n = laplacian.n
    cm = model.ContinuousModel.from_graphs(
        laplacian, np.eye(n), fx_scalar=scalar_maps.NEG_IDENTITY,
        fu_scalar=scalar_maps.IDENTITY)
    ss = simulation.discretize(cm, config.tau)
    inputs = config.input_scale * simulation.gaussian_input(
        n, config.samples, config.seed)
    traj = simulation.simulate(ss, inputs=inputs,
                               noise_state_var=config.noise_state_var,
                               noise_obs_var=config.noise_obs_var,
                               seed=base.noise_seed(config.seed),
                               keep_states=False)

    estimate = subspace.identify(traj, config.alpha, n, C=ss.C, D=ss.D,
                                 method=config.method, beta=config.beta,
                                 estimate_input=False)
    fx_hat = spectral.principal_log(
        utils.symmetrize(estimate.A_hat)) / config.tau
    s_hat = scalar_maps.get(scalar_maps.NEG_IDENTITY).inverse_matrix(fx_hat)
    lambda_hat = shift.eigenvalues(s_hat)
    true_values = shift.eigenvalues(laplacian)
    cov = baseline.covariance_baseline(traj,
                                       trace=np.trace(laplacian.matrix))

    iv_error = metrics.eigenvalue_errors(lambda_hat, true_values)
    cov_error = metrics.eigenvalue_errors(cov.eigenvalues, true_values)
    report.table("eigenvalues.csv", ["k", "true", "iv", "covariance"],
                 [np.arange(n), true_values, lambda_hat, cov.eigenvalues])
    limit = constants.SUPPORT_THRESHOLD
    recovered = shift.threshold(s_hat, limit)
    report.matrix("iv_graph.json", recovered)
    report.matrix("covariance_graph.json",
                  shift.threshold(cov.shift, limit))
    report.add(
        iv_mean_eigenvalue_error=float(np.mean(iv_error)),
        covariance_mean_eigenvalue_error=float(np.mean(cov_error)),
        iv_connected=shift.is_connected(recovered, limit),
        covariance_connected=shift.is_connected(cov.shift, limit),
        iv_edges=len(shift.edges(recovered, limit)),
        true_edges=len(shift.edges(laplacian, limit)),
        rank_gap=estimate.diagnostics.get("rank_gap"))
    LOG.info("Karate IV mean eigenvalue error {:.4g}, covariance {:.4g}"
             .format(report.metrics["iv_mean_eigenvalue_error"],
                     report.metrics["covariance_mean_eigenvalue_error"]))
    return report.close()
