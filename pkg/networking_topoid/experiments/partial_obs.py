"""
Graph reconstruction from partial observations.

Half of the nodes of a diffusion driven through B = L_u + I are observed.
The identified system is only known up to a similarity, so the state graph
is searched among Laplacians consistent with the transformed realization
and the input graph follows from the similarity found for it.
"""
import numpy as np
import scipy.linalg
from oslo_log import log as logging

from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.dynamics import model
from networking_topoid.dynamics import scalar_maps
from networking_topoid.dynamics import simulation
from networking_topoid.experiments import base
from networking_topoid.experiments import metrics
from networking_topoid.graph import generators
from networking_topoid.graph import shift
from networking_topoid.identification import spectral
from networking_topoid.identification import subspace
from networking_topoid.reconstruction import alternating
from networking_topoid.reconstruction import consistency
from networking_topoid.reconstruction import target as target_mod

LOG = logging.getLogger(__name__)

# B = S_u + I
INPUT_MAP = {"name": scalar_maps.AFFINE, "a": 1.0, "b": 1.0}
GRAPH_ATTEMPTS = 20


def output_selector(n, observed):
    if observed == base.OBSERVE_ALL:
        return np.eye(n)
    return np.eye(n)[0::2]


def _observable(a, c):
    n = a.shape[0]
    o = simulation.observability_matrix(a, c, n)
    return np.linalg.matrix_rank(o) == n


def build_system(config):
    """Two random regular Laplacians giving an observable system.

    Graph seeds advance from config.seed until the pair is observable
    through the output selector.
    """
    c = output_selector(config.n, config.observed)
    for attempt in range(GRAPH_ATTEMPTS):
        seed = config.seed + 2 * attempt
        state_graph = shift.to_laplacian(
            generators.random_regular(config.n, config.d, seed))
        input_graph = shift.to_laplacian(
            generators.random_regular(config.n, config.d, seed + 1))
        a = scipy.linalg.expm(-config.tau * state_graph.matrix)
        if _observable(a, c):
            ss = model.StateSpace(
                A=a, B=input_graph.matrix + np.eye(config.n), C=c,
                D=np.zeros((c.shape[0], config.n)), tau=config.tau)
            return state_graph, input_graph, ss
    raise exceptions.RankDeficient(
        name="observability",
        reason="no observable graph pair in {} attempts".format(
            GRAPH_ATTEMPTS))


def run_partial_obs(config):
    report = base.Report(config)
    state_graph, input_graph, ss = build_system(config)
    n = config.n
    inputs = config.input_scale * simulation.gaussian_input(
        n, config.samples, config.seed)
    traj = simulation.simulate(ss, inputs=inputs,
                               noise_state_var=config.noise_state_var,
                               noise_obs_var=config.noise_obs_var,
                               seed=base.noise_seed(config.seed),
                               keep_states=False)
    estimate = subspace.identify(traj, config.alpha, n, C=ss.C, D=ss.D,
                                 method=config.method, beta=config.beta)

    cons = consistency.ConsistencyData(C=ss.C, C_T=ss.C, A_T=estimate.A_hat,
                                       B_T=estimate.B_hat, tau=config.tau)
    lambda_x = np.sort(np.real(np.linalg.eigvals(cons.S_T)))[::-1]
    spectral_target = target_mod.SpectralTarget(lambda_o=lambda_x)
    struct = target_mod.StructuralSet(kind=config.set_kind,
                                      consistency=cons)
    run = alternating.ap_solve(spectral_target, struct, seed=config.seed,
                               max_iter=config.max_iter)
    final = alternating.finalize(run, spectral_target, struct)
    s_hat = final.structural
    check = consistency.check_consistency(s_hat, cons)
    su_hat, lambda_u = spectral.recover_input_graph(estimate.B_hat,
                                                    INPUT_MAP, t=check.T)

    # held-out excitation
    test_inputs = simulation.gaussian_input(n, config.test_samples,
                                            config.seed + 1)
    truth = simulation.simulate(ss, inputs=test_inputs, keep_states=False)
    rebuilt = model.StateSpace(
        A=scipy.linalg.expm(-config.tau * s_hat),
        B=np.linalg.solve(check.T, estimate.B_hat), C=ss.C, D=ss.D,
        tau=config.tau)
    predicted = simulation.simulate(rebuilt, inputs=test_inputs,
                                    keep_states=False)
    fitness = metrics.nrmse_fitness(truth.outputs, predicted.outputs)

    true_modes = shift.eig_sym(state_graph).basis
    projection = alternating.mode_projection(true_modes, s_hat)
    report.table("mode_projection.csv",
                  ["col_{}".format(j) for j in range(n)], list(projection.T))
    report.table("fitness.csv", ["channel", "nrmse_fitness"],
                 [np.arange(fitness.size), fitness])
    report.table("eigenvalues.csv",
                 ["k", "state_true", "state_estimated", "input_true",
                  "input_estimated"],
                 [np.arange(n), shift.eigenvalues(state_graph),
                  shift.eigenvalues(final.spectral),
                  shift.eigenvalues(input_graph), lambda_u])
    alternating.write_run(report.directory, run)
    report.matrix("state_graph.json", s_hat,
                  constants.FAMILY_LAPLACIAN)
    report.matrix("input_graph.json", su_hat)
    report.add(
        min_fitness=float(np.min(fitness)),
        mean_fitness=float(np.mean(fitness)),
        input_eigenvalue_error=float(np.max(metrics.eigenvalue_errors(
            lambda_u, shift.eigenvalues(input_graph)))),
        state_spectrum_error=final.spectrum_error,
        input_support=metrics.support_recovery(
            su_hat, input_graph.matrix, constants.SUPPORT_THRESHOLD),
        state_support=metrics.support_recovery(
            s_hat, state_graph.matrix, constants.SUPPORT_THRESHOLD),
        mode_diagonality=metrics.mode_diagonality(projection),
        consistency=check.to_dict(),
        non_unique=estimate.non_unique,
        ap=run.summary())
    LOG.info("Partial observations: minimum NRMSE fitness {:.2f}%".format(
        report.metrics["min_fitness"]))
    return report.close()
