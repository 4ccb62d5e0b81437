"""
Convergence of alternating projections on a regular graph with half of the
Laplacian spectrum known, plus the nonnegative-set variants.
"""
import numpy as np
from oslo_config import cfg
from oslo_log import log as logging

from networking_topoid.common import constants
from networking_topoid.experiments import base
from networking_topoid.experiments import metrics
from networking_topoid.graph import generators
from networking_topoid.graph import shift
from networking_topoid.reconstruction import alternating
from networking_topoid.reconstruction import target as target_mod

LOG = logging.getLogger(__name__)

DIAGONAL_START = "diagonal"


def _record(report, name, run):
    alternating.write_run(report.directory, run, prefix=name + "_")
    summary = run.summary()
    summary["monotone"] = metrics.is_monotone(
        run.proj_residual, cfg.CONF.RECONSTRUCTION.monotone_slack)
    summary["final_step"] = float(run.step_delta[-1])
    return summary


def _variants(config, adjacency):
    values = shift.eigenvalues(adjacency)
    nonnegative = target_mod.StructuralSet(kind=constants.SET_NONNEGATIVE)
    return {
        "nonnegative_exact": (target_mod.SpectralTarget(lambda_o=values),
                              nonnegative),
        "nonnegative_eps": (target_mod.SpectralTarget(
            lambda_o=values, epsilon=config.epsilon), nonnegative),
    }


def run_ap_convergence(config):
    report = base.Report(config)
    adjacency = generators.random_regular(config.n, config.d, config.seed)
    laplacian = shift.to_laplacian(adjacency)
    values = shift.eigenvalues(laplacian)
    rho = config.rho if config.rho is not None else float(values[0])
    spectral_target = target_mod.SpectralTarget(
        lambda_m=values[:config.m], size=config.n, rho=rho)
    struct = target_mod.StructuralSet(kind=config.set_kind)

    seeds = [config.seed + k for k in range(config.starts)]
    _, runs, errors = alternating.multi_start(
        spectral_target, struct, seeds, max_iter=config.max_iter)
    summaries = {}
    for seed in sorted(runs):
        summaries["start_{}".format(seed)] = _record(
            report, "start_{}".format(seed), runs[seed])

    # eigenvalues of a random start placed on the diagonal
    start = np.diag(np.sort(np.linalg.eigvalsh(
        alternating.initial_point(spectral_target, config.seed)))[::-1])
    diagonal = alternating.ap_solve(spectral_target, struct, s0=start,
                                    max_iter=config.max_iter)
    summaries[DIAGONAL_START] = _record(report, DIAGONAL_START, diagonal)

    for name, (variant_target, variant_set) in sorted(
            _variants(config, adjacency).items()):
        run = alternating.ap_solve(variant_target, variant_set,
                                   seed=config.seed,
                                   max_iter=config.max_iter)
        summaries[name] = _record(report, name, run)

    report.add(runs=summaries,
               failed_starts={str(k): str(v) for k, v in errors.items()},
               all_monotone=all(s["monotone"] for s in summaries.values()))
    return report.close()
