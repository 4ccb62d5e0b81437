"""
Experiment name to runner mapping.
"""
from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.experiments import ap_convergence
from networking_topoid.experiments import base
from networking_topoid.experiments import cospectral_trees
from networking_topoid.experiments import iv_denoising
from networking_topoid.experiments import iv_karate
from networking_topoid.experiments import model_validation
from networking_topoid.experiments import partial_obs

RUNNERS = {
    constants.EXPERIMENT_MODEL_VALIDATION:
        model_validation.run_model_validation,
    constants.EXPERIMENT_IV_KARATE: iv_karate.run_iv_karate,
    constants.EXPERIMENT_AP_CONVERGENCE: ap_convergence.run_ap_convergence,
    constants.EXPERIMENT_PARTIAL_OBS: partial_obs.run_partial_obs,
    constants.EXPERIMENT_IV_DENOISING: iv_denoising.run_iv_denoising,
    constants.EXPERIMENT_COSPECTRAL_TREES:
        cospectral_trees.run_cospectral_trees,
}


def run(config):
    """Run the experiment named by an ExperimentConfig, return metrics."""
    try:
        runner = RUNNERS[config.experiment]
    except KeyError:
        raise exceptions.InvalidConfig(
            field="experiment", reason="'{}' not in {}".format(
                config.experiment, ", ".join(base.EXPERIMENTS)))
    return runner(config)
