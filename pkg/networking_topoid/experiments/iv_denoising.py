"""
Consistency of the instrumental-variable span under noise: the largest
principal angle to the true observability span shrinks with the record
length.
"""
import numpy as np
from oslo_log import log as logging

from networking_topoid.common import synchronization
from networking_topoid.dynamics import model
from networking_topoid.dynamics import scalar_maps
from networking_topoid.dynamics import simulation
from networking_topoid.experiments import base
from networking_topoid.graph import generators
from networking_topoid.graph import shift
from networking_topoid.identification import subspace

LOG = logging.getLogger(__name__)


def build_system(config):
    laplacian = shift.to_laplacian(
        generators.random_regular(config.n, config.d, config.seed))
    cm = model.ContinuousModel.from_graphs(
        laplacian, np.eye(config.n), fx_scalar=scalar_maps.NEG_IDENTITY,
        fu_scalar=scalar_maps.IDENTITY)
    return simulation.discretize(cm, config.tau)


def largest_angle(ss, config, length, seed):
    """Largest principal angle (radians) for one noisy record."""
    inputs = config.input_scale * simulation.gaussian_input(
        ss.n_inputs, length, seed)
    traj = simulation.simulate(ss, inputs=inputs,
                               noise_state_var=config.noise_state_var,
                               noise_obs_var=config.noise_obs_var,
                               seed=base.noise_seed(seed),
                               keep_states=False)
    estimate = subspace.iv_subspace(traj, config.alpha, ss.n,
                                    beta=config.beta)
    gamma = config.alpha - config.beta
    truth = simulation.observability_matrix(ss.A, ss.C, gamma)
    return float(np.max(subspace.principal_angles(estimate.W, truth)))


def run_iv_denoising(config):
    report = base.Report(config)
    ss = build_system(config)
    keys = [(length, config.seed + k) for length in config.lengths
            for k in range(config.seeds)]
    runner = synchronization.Runner()
    try:
        angles, errors = runner.run(
            lambda key: largest_angle(ss, config, key[0], key[1]), keys)
    finally:
        runner.stop()

    lengths = sorted(config.lengths)
    medians = []
    for length in lengths:
        values = [angles[key] for key in sorted(angles) if key[0] == length]
        medians.append(float(np.median(values)) if values else np.nan)
    per_seed = [[angles.get((length, config.seed + k), np.nan)
                 for length in lengths] for k in range(config.seeds)]
    report.table("angles.csv",
                 ["seed"] + ["T_{}".format(length) for length in lengths],
                 [np.arange(config.seed, config.seed + config.seeds)] +
                 list(np.array(per_seed).T))
    report.table("median_angles.csv", ["T", "median_angle"],
                 [np.array(lengths), np.array(medians)])
    report.add(
        lengths=lengths,
        median_angles=medians,
        strictly_decreasing=bool(np.all(np.diff(medians) < 0)),
        failed_runs={"{}/{}".format(*key): str(err)
                     for key, err in sorted(errors.items())})
    LOG.info("IV denoising median angles {}".format(
        ", ".join("{:.3g}".format(m) for m in medians)))
    return report.close()
