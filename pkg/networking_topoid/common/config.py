import os

from oslo_config import cfg
from oslo_log import log as logging

from networking_topoid.common import constants

graph_opts = [
    cfg.IntOpt(
        'regular_retry_budget',
        default=200,
        min=1,
        help="Seeded networkx attempts before random regular generation "
             "fails."
    ),
    cfg.FloatOpt(
        'symmetry_tolerance',
        default=constants.SYMMETRY_TOL,
        help="Largest |S - S^T| entry accepted as symmetric."
    ),
    cfg.FloatOpt(
        'eigen_tie_tolerance',
        default=1e-9,
        help="Eigenvalues closer than this are treated as one block."
    ),
]

identification_opts = [
    cfg.FloatOpt(
        'excitation_floor',
        default=1e-8,
        help="Smallest singular value of the input Hankel matrix, relative "
             "to the largest, accepted as full row-rank."
    ),
    cfg.FloatOpt(
        'rank_floor',
        default=1e-10,
        help="Smallest retained singular value, relative to the largest, "
             "accepted for the signal subspace."
    ),
    cfg.FloatOpt(
        'log_symmetric_tolerance',
        default=1e-8,
        help="Relative asymmetry under which the matrix logarithm uses the "
             "symmetric eigendecomposition."
    ),
    cfg.FloatOpt(
        'fallback_condition',
        default=1e12,
        help="Condition number of (A - I) above which the input transition "
             "matrix is recovered spectrally."
    ),
    cfg.BoolOpt(
        'symmetrize_undirected',
        default=True,
        help="Symmetrize noisy transition estimates before spectral recovery "
             "(undirected graph assumption)."
    ),
]

reconstruction_opts = [
    cfg.FloatOpt(
        'dykstra_tolerance',
        default=1e-10,
        help="Frobenius change between Dykstra sweeps that stops the loop."
    ),
    cfg.IntOpt(
        'dykstra_max_sweeps',
        default=5000,
        min=1,
        help="Dykstra sweep budget for the Laplacian projection."
    ),
    cfg.FloatOpt(
        'feasibility_tolerance',
        default=1e-6,
        help="Final structural residual accepted as converged."
    ),
    cfg.FloatOpt(
        'step_tolerance',
        default=1e-6,
        help="Iterate change that stops alternating projections."
    ),
    cfg.IntOpt(
        'max_iterations',
        default=2000,
        min=1,
        help="Alternating projections iteration budget."
    ),
    cfg.IntOpt(
        'escape_budget',
        default=5,
        min=0,
        help="Fixed-point escapes allowed per run."
    ),
    cfg.FloatOpt(
        'monotone_slack',
        default=1e-10,
        help="Increase of the structural residual tolerated between "
             "iterations before the run is aborted."
    ),
    cfg.FloatOpt(
        'fixed_point_tolerance',
        default=1e-10,
        help="Distance under which an iterate is reproduced by one cycle."
    ),
]

experiment_opts = [
    cfg.StrOpt(
        'output_dir',
        default=os.environ.get(constants.TOPOID_OUTPUT_ROOT_ENV,
                               constants.TOPOID_DEFAULT_OUTPUT_ROOT),
        help="Root directory for run outputs. Defaults to ${}.".format(
            constants.TOPOID_OUTPUT_ROOT_ENV)
    ),
    cfg.IntOpt(
        'workers',
        default=4,
        min=1,
        help="Green threads used for multi-start and Monte-Carlo fan-out."
    ),
    cfg.BoolOpt(
        'full_scale',
        default=False,
        help="Run experiments at the published scale instead of desk scale."
    ),
]


cfg.CONF.register_opts(graph_opts, "GRAPH")
cfg.CONF.register_opts(identification_opts, "IDENTIFICATION")
cfg.CONF.register_opts(reconstruction_opts, "RECONSTRUCTION")
cfg.CONF.register_opts(experiment_opts, "EXPERIMENT")
logging.register_options(cfg.CONF)


def list_opts():
    return [
        ("GRAPH", graph_opts),
        ("IDENTIFICATION", identification_opts),
        ("RECONSTRUCTION", reconstruction_opts),
        ("EXPERIMENT", experiment_opts),
    ]


def init(argv, conf=cfg.CONF):
    conf(argv, project=constants.TOPOID)


def setup_logging(conf=cfg.CONF):
    logging.setup(conf, constants.TOPOID)


def option(group, name, value=None):
    """Return `value` unless it is None, else the configured option."""
    if value is not None:
        return value
    return getattr(getattr(cfg.CONF, group), name)
