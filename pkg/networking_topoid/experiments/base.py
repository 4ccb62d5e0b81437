"""
Experiment configuration, parameter provenance and report files.
"""
import os

import attr
import numpy as np
from oslo_log import log as logging

from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.common import utils
from networking_topoid.reconstruction import target as target_mod
from networking_topoid import version

LOG = logging.getLogger(__name__)

DEFAULT = "default"
OVERRIDE = "override"

OBSERVE_ODD = "odd"
OBSERVE_ALL = "all"

# noise draws never share a stream with the input draws
NOISE_SEED_OFFSET = 1000003

EXPERIMENTS = (
    constants.EXPERIMENT_MODEL_VALIDATION,
    constants.EXPERIMENT_IV_KARATE,
    constants.EXPERIMENT_AP_CONVERGENCE,
    constants.EXPERIMENT_PARTIAL_OBS,
    constants.EXPERIMENT_IV_DENOISING,
    constants.EXPERIMENT_COSPECTRAL_TREES,
)


def _defaults(experiment, full_scale):
    if experiment == constants.EXPERIMENT_MODEL_VALIDATION:
        n = 50 if full_scale else 20
        return {"n": n, "d": 3, "tau": 1e-3,
                "samples": n ** 3 if full_scale else 5000,
                "noise_state_var": 0.0, "noise_obs_var": 0.0,
                "alpha": n + 2, "seed": 42,
                "method": constants.METHOD_PLAIN, "input_scale": 1.0}
    if experiment == constants.EXPERIMENT_IV_KARATE:
        n = constants.KARATE_NODES
        alpha = 2 * n + 2
        return {"n": n, "tau": 1e-3, "samples": 20 * n * alpha,
                "noise_state_var": 1e-3, "noise_obs_var": 1e-3,
                "alpha": alpha, "beta": alpha // 2, "seed": 7,
                "method": constants.METHOD_IV, "input_scale": 1.0}
    if experiment == constants.EXPERIMENT_AP_CONVERGENCE:
        n = 30
        return {"n": n, "d": 3, "m": n // 2, "epsilon": 1e-1, "seed": 3,
                "set_kind": constants.SET_LAPLACIAN_CVX, "starts": 5,
                "max_iter": 2000}
    if experiment == constants.EXPERIMENT_PARTIAL_OBS:
        n = 14
        return {"n": n, "d": 3, "tau": 1e-2, "samples": 3000,
                "noise_state_var": 0.0, "noise_obs_var": 0.0,
                "alpha": 2 * n + 2, "seed": 11,
                "set_kind": constants.SET_LAPLACIAN_CVX, "max_iter": 30,
                "observed": OBSERVE_ODD, "test_samples": 1000,
                "method": constants.METHOD_PLAIN, "input_scale": 1.0}
    if experiment == constants.EXPERIMENT_IV_DENOISING:
        n = 6
        alpha = 2 * n + 2
        return {"n": n, "d": 3, "tau": 1e-1, "noise_state_var": 1e-3,
                "noise_obs_var": 1e-3, "alpha": alpha, "beta": alpha // 2,
                "lengths": [500, 1000, 2000], "seeds": 20, "seed": 0,
                "input_scale": 1.0}
    return {}


def noise_seed(seed):
    return None if seed is None else seed + NOISE_SEED_OFFSET


def _invalid(field, reason):
    raise exceptions.InvalidConfig(field=field, reason=reason)


@attr.s(frozen=True)
class ExperimentConfig(object):
    """Parameters of one experiment run.

    Fields that do not apply to an experiment stay None. `provenance` maps
    every set field to "default" or "override".
    """

    experiment = attr.ib()
    n = attr.ib(default=None)
    d = attr.ib(default=None)
    tau = attr.ib(default=None)
    samples = attr.ib(default=None)
    noise_state_var = attr.ib(default=None)
    noise_obs_var = attr.ib(default=None)
    alpha = attr.ib(default=None)
    beta = attr.ib(default=None)
    epsilon = attr.ib(default=None)
    m = attr.ib(default=None)
    rho = attr.ib(default=None)
    seed = attr.ib(default=None)
    set_kind = attr.ib(default=None)
    starts = attr.ib(default=None)
    max_iter = attr.ib(default=None)
    method = attr.ib(default=None)
    input_scale = attr.ib(default=None)
    observed = attr.ib(default=None)
    test_samples = attr.ib(default=None)
    lengths = attr.ib(default=None)
    seeds = attr.ib(default=None)
    output_dir = attr.ib(default=None)
    provenance = attr.ib(factory=dict)

    @experiment.validator
    def _check_experiment(self, attribute, value):
        if value not in EXPERIMENTS:
            _invalid("experiment", "'{}' not in {}".format(
                value, ", ".join(EXPERIMENTS)))

    def __attrs_post_init__(self):
        self.validate()

    @classmethod
    def fields(cls):
        return [a.name for a in attr.fields(cls)
                if a.name not in ("experiment", "provenance")]

    @classmethod
    def build(cls, experiment, overrides=None, full_scale=False):
        """Experiment defaults with `overrides` (None values ignored)."""
        overrides = {k: v for k, v in (overrides or {}).items()
                     if v is not None}
        unknown = sorted(set(overrides) - set(cls.fields()))
        if unknown:
            _invalid(unknown[0], "unknown configuration field")
        if experiment not in EXPERIMENTS:
            _invalid("experiment", "'{}' not in {}".format(
                experiment, ", ".join(EXPERIMENTS)))
        values = _defaults(experiment, full_scale)
        provenance = {k: DEFAULT for k in values}
        values.update(overrides)
        provenance.update({k: OVERRIDE for k in overrides})
        return cls(experiment=experiment, provenance=provenance, **values)

    def validate(self):
        if self.n is not None and self.n < 2:
            _invalid("n", "need at least 2 nodes")
        if self.d is not None and not 0 < self.d < self.n:
            _invalid("d", "degree must lie in (0, n)")
        if self.tau is not None and not self.tau > 0:
            _invalid("tau", "sampling period must be positive")
        for name in ("noise_state_var", "noise_obs_var"):
            value = getattr(self, name)
            if value is not None and value < 0:
                _invalid(name, "variance must be >= 0, got {}".format(value))
        if self.alpha is not None and self.alpha <= self.n:
            raise exceptions.DepthTooSmall(alpha=self.alpha,
                                           n_states=self.n)
        if self.beta is not None and not 1 <= self.beta < self.alpha:
            _invalid("beta", "past depth must lie in [1, alpha)")
        for name in ("samples", "starts", "max_iter", "test_samples",
                     "seeds"):
            value = getattr(self, name)
            if value is not None and value < 1:
                _invalid(name, "must be >= 1")
        if self.epsilon is not None and self.epsilon < 0:
            _invalid("epsilon", "must be >= 0")
        if self.m is not None and not 0 <= self.m <= self.n:
            _invalid("m", "known eigenvalue count must lie in [0, n]")
        if self.rho is not None and not self.rho > 0:
            _invalid("rho", "must be positive")
        if (self.set_kind is not None and
                self.set_kind not in target_mod.STRUCTURAL_KINDS):
            _invalid("set_kind", "'{}' not in {}".format(
                self.set_kind, ", ".join(target_mod.STRUCTURAL_KINDS)))
        if self.method not in (None, constants.METHOD_PLAIN,
                               constants.METHOD_IV):
            _invalid("method", "use '{}' or '{}'".format(
                constants.METHOD_PLAIN, constants.METHOD_IV))
        if self.observed not in (None, OBSERVE_ODD, OBSERVE_ALL):
            _invalid("observed", "use '{}' or '{}'".format(OBSERVE_ODD,
                                                         OBSERVE_ALL))
        if self.input_scale is not None and self.input_scale < 0:
            _invalid("input_scale", "must be >= 0")
        if self.lengths is not None and self.alpha is not None:
            short = [q for q in self.lengths if q < self.alpha + self.n]
            if short:
                _invalid("lengths", "{} shorter than alpha + n = {}".format(
                    short, self.alpha + self.n))

    def to_dict(self):
        document = {"experiment": self.experiment}
        document.update({name: getattr(self, name)
                         for name in self.fields()})
        document["provenance"] = dict(self.provenance)
        return document

    @classmethod
    def from_dict(cls, document):
        return cls(**document)

    def run_directory(self):
        return os.path.join(utils.output_root(self.output_dir),
                            self.experiment)


def native(value):
    """Plain Python containers and scalars for JSON documents."""
    if isinstance(value, dict):
        return {str(k): native(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set)):
        items = sorted(value) if isinstance(value, set) else value
        return [native(v) for v in items]
    if isinstance(value, np.ndarray):
        return native(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    return value


class Report(object):
    """Files of one experiment run under <output root>/<experiment>."""

    def __init__(self, config):
        self.config = config
        self.directory = utils.ensure_dir(config.run_directory())
        self.metrics = {}
        utils.dump_json(self.path(constants.CONFIG_FILE),
                        native(self._header()))

    def _header(self):
        return {"experiment": self.config.experiment,
                "config": self.config.to_dict(),
                "provenance": self.config.provenance,
                "version": version.version_string()}

    def path(self, name):
        return os.path.join(self.directory, name)

    def add(self, **metrics):
        self.metrics.update(metrics)

    def table(self, name, header, columns):
        return utils.write_table_csv(self.path(name), header, columns)

    def matrix(self, name, matrix, family=constants.FAMILY_GENERIC):
        return utils.write_matrix_json(self.path(name), matrix, family)

    def close(self):
        document = self._header()
        document["metrics"] = self.metrics
        utils.dump_json(self.path(constants.METRICS_FILE), native(document))
        LOG.info("Experiment {} written to {}".format(
            self.config.experiment, self.directory))
        return self.metrics
