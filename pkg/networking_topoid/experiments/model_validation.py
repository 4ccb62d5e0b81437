"""
Model validation: simulate a diffusion on a random regular graph driven
through a second graph, identify the sampled system and read the state
graph back from the recovered continuous-time generator.
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
from networking_topoid.reconstruction import alternating

LOG = logging.getLogger(__name__)

FX_MAP = scalar_maps.NEG_IDENTITY
FU_MAP = scalar_maps.NEG_SHIFTED


def build_system(config):
    """True state/input Laplacians and the sampled StateSpace."""
    state_graph = shift.to_laplacian(
        generators.random_regular(config.n, config.d, config.seed))
    input_graph = shift.to_laplacian(
        generators.random_regular(config.n, config.d, config.seed + 1))
    cm = model.ContinuousModel.from_graphs(state_graph, input_graph,
                                           fx_scalar=FX_MAP,
                                           fu_scalar=FU_MAP)
    return state_graph, input_graph, cm, simulation.discretize(cm,
                                                               config.tau)


def run_model_validation(config):
    report = base.Report(config)
    state_graph, input_graph, cm, ss = build_system(config)
    inputs = config.input_scale * simulation.gaussian_input(
        config.n, config.samples, config.seed)
    traj = simulation.simulate(ss, inputs=inputs,
                               noise_state_var=config.noise_state_var,
                               noise_obs_var=config.noise_obs_var,
                               seed=base.noise_seed(config.seed),
                               keep_states=False)

    estimate = subspace.identify(traj, config.alpha, config.n, C=ss.C,
                                 D=ss.D, method=config.method,
                                 beta=config.beta)
    ss_hat = model.StateSpace(A=estimate.A_hat, B=estimate.B_hat, C=ss.C,
                              D=ss.D, tau=config.tau)
    continuous = spectral.recover_continuous(ss_hat, fx_map=FX_MAP)
    s_hat = scalar_maps.get(FX_MAP).inverse_matrix(continuous.fx_hat)
    _, lambda_u = spectral.recover_input_graph(continuous.fu_hat, FU_MAP)

    true_values = shift.eigenvalues(state_graph)
    cov = baseline.covariance_baseline(traj,
                                       trace=np.trace(state_graph.matrix))
    report.table("eigenvalues.csv", ["k", "true", "estimated", "covariance"],
                 [np.arange(config.n), true_values, continuous.lambda_x,
                  cov.eigenvalues])
    modes = shift.eig_sym(utils.symmetrize(s_hat)).basis
    report.add(
        max_relative_eigenvalue_error=metrics.relative_eigenvalue_error(
            continuous.lambda_x, true_values),
        input_eigenvalue_error=float(np.max(metrics.eigenvalue_errors(
            lambda_u, shift.eigenvalues(input_graph)))),
        fx_relative_error=metrics.relative_error(continuous.fx_hat,
                                                 cm.fx_of_Sx),
        fu_relative_error=metrics.relative_error(continuous.fu_hat,
                                                 cm.fu_of_Su),
        support=metrics.support_recovery(s_hat, state_graph.matrix,
                                         constants.SUPPORT_THRESHOLD),
        certificate=continuous.certificate,
        symmetric_certificate=continuous.symmetric_certificate,
        rank_gap=estimate.diagnostics.get("rank_gap"),
        identified_alignment=metrics.mode_diagonality(
            alternating.mode_projection(modes, state_graph.matrix)),
        covariance_alignment=cov.alignment(state_graph.matrix),
        covariance_eigenvalue_error=float(np.mean(metrics.eigenvalue_errors(
            cov.eigenvalues, true_values))))
    report.matrix("state_graph.json", s_hat)
    utils.dump_json(report.path(constants.SUBSPACE_FILE),
                    estimate.to_dict())
    utils.dump_json(report.path(constants.CONTINUOUS_FILE),
                    continuous.to_dict())
    LOG.info("Model validation support recovery exact: {}".format(
        report.metrics["support"]["exact"]))
    return report.close()

