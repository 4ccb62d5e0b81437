"""
topoid - command line surface of the topology identification toolkit

    topoid simulate     write a trajectory of a graph diffusion
    topoid identify     subspace identification and continuous recovery
    topoid reconstruct  alternating projections toward a target spectrum
    topoid experiment   one of the bundled experiments
"""
import os
import sys

import numpy as np
from oslo_config import cfg
from oslo_log import log as logging
from oslo_serialization import jsonutils

from networking_topoid._i18n import _
from networking_topoid.common import config
from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.common import utils
from networking_topoid.dynamics import model
from networking_topoid.dynamics import scalar_maps
from networking_topoid.dynamics import simulation
from networking_topoid.experiments import base
from networking_topoid.experiments import registry
from networking_topoid.graph import generators
from networking_topoid.graph import io as graph_io
from networking_topoid.graph import shift
from networking_topoid.identification import spectral
from networking_topoid.identification import subspace
from networking_topoid.reconstruction import alternating
from networking_topoid.reconstruction import target as target_mod

LOG = logging.getLogger(__name__)

CONF = cfg.CONF

GRAPH_REGULAR = "regular"
GRAPH_KARATE = "karate"
INPUT_IDENTITY = "identity"

# ExperimentConfig field -> (flag, type, nargs)
EXPERIMENT_FLAGS = (
    ("n", "--nodes", int, None),
    ("d", "--degree", int, None),
    ("tau", "--tau", float, None),
    ("samples", "--samples", int, None),
    ("noise_state_var", "--noise-state-var", float, None),
    ("noise_obs_var", "--noise-obs-var", float, None),
    ("alpha", "--alpha", int, None),
    ("beta", "--beta", int, None),
    ("epsilon", "--epsilon", float, None),
    ("m", "--known", int, None),
    ("rho", "--rho", float, None),
    ("seed", "--seed", int, None),
    ("set_kind", "--set-kind", str, None),
    ("starts", "--starts", int, None),
    ("max_iter", "--max-iter", int, None),
    ("method", "--method", str, None),
    ("input_scale", "--input-scale", float, None),
    ("observed", "--observed", str, None),
    ("test_samples", "--test-samples", int, None),
    ("lengths", "--lengths", int, "+"),
    ("seeds", "--seeds", int, None),
    ("output_dir", "--output-dir", str, None),
)


def _command_directory(name):
    return os.path.join(utils.output_root(CONF.action.output_dir), name)


def do_simulate():
    args = CONF.action
    if args.graph == GRAPH_KARATE:
        state_graph = shift.to_laplacian(generators.karate_club())
    else:
        state_graph = shift.to_laplacian(
            generators.random_regular(args.n, args.d, args.seed))
    n = state_graph.n
    if args.input_graph == INPUT_IDENTITY:
        input_graph = shift.GraphShift(matrix=np.eye(n))
    else:
        input_graph = shift.to_laplacian(
            generators.random_regular(n, args.d, args.seed + 1))
    cm = model.ContinuousModel.from_graphs(state_graph, input_graph,
                                           fx_scalar=args.fx_map,
                                           fu_scalar=args.fu_map)
    ss = simulation.discretize(cm, args.tau)
    inputs = simulation.gaussian_input(n, args.samples, args.seed)
    traj = simulation.simulate(ss, inputs=inputs,
                               noise_state_var=args.noise_state_var,
                               noise_obs_var=args.noise_obs_var,
                               seed=base.noise_seed(args.seed),
                               keep_states=False)
    directory = _command_directory("simulate")
    simulation.write_trajectory(directory, traj)
    graph_io.write_json(os.path.join(directory, "state_graph.json"),
                        state_graph)
    graph_io.write_json(os.path.join(directory, "input_graph.json"),
                        input_graph)
    return {"directory": directory, "n": n, "samples": traj.q}


def do_identify():
    args = CONF.action
    traj = simulation.read_trajectory(args.trajectory_dir)
    n_states = args.n_states or traj.n_outputs
    alpha = args.alpha or n_states + 2
    c = None
    if args.output_map:
        c, _family = utils.read_matrix_json(args.output_map)
    estimate = subspace.identify(traj, alpha, n_states, C=c,
                                 method=args.method, beta=args.beta)
    c = np.eye(n_states) if c is None else c
    ss_hat = model.StateSpace(A=estimate.A_hat, B=estimate.B_hat, C=c,
                              D=np.zeros((c.shape[0], traj.n_inputs)),
                              tau=traj.tau)
    continuous = spectral.recover_continuous(ss_hat, fx_map=args.fx_map)
    directory = _command_directory("identify")
    utils.ensure_dir(directory)
    utils.dump_json(os.path.join(directory, constants.SUBSPACE_FILE),
                    estimate.to_dict())
    utils.dump_json(os.path.join(directory, constants.CONTINUOUS_FILE),
                    continuous.to_dict())
    return {"directory": directory,
            "lambda_x": [float(v) for v in continuous.lambda_x],
            "certificate": continuous.certificate,
            "symmetric_certificate": continuous.symmetric_certificate,
            "non_unique": estimate.non_unique}


def load_target(path, known=None, epsilon=0.0, rho=None):
    """SpectralTarget from a JSON eigenvalue list, a ContinuousEstimate or
    a SpectralTarget document.

    With `known` only the first `known` values are kept as a partial target
    of the full size.
    """
    document = utils.load_json(path)
    if isinstance(document, dict) and ("lambda_o" in document or
                                       "lambda_m" in document):
        return target_mod.SpectralTarget.from_dict(document)
    if isinstance(document, dict):
        try:
            values = document["lambda_x"]
        except KeyError:
            raise exceptions.InvalidInput(
                name=path, reason=_("no eigenvalues in target document"))
    else:
        values = document
    values = np.sort(np.asarray(values, dtype=float))[::-1]
    rho = np.inf if rho is None else rho
    if known is None:
        return target_mod.SpectralTarget(lambda_o=values, epsilon=epsilon)
    return target_mod.SpectralTarget(lambda_m=values[:known],
                                     size=values.size, epsilon=epsilon,
                                     rho=rho)


def do_reconstruct():
    args = CONF.action
    spectral_target = load_target(args.target, args.m, args.epsilon,
                                  args.rho)
    struct = target_mod.StructuralSet(kind=args.set_kind)
    seeds = [args.seed + k for k in range(args.starts)]
    run, runs, errors = alternating.multi_start(
        spectral_target, struct, seeds, max_iter=args.max_iter)
    final = alternating.finalize(run, spectral_target, struct)
    directory = _command_directory("reconstruct")
    alternating.write_run(directory, run)
    utils.write_matrix_json(os.path.join(directory, "structural.json"),
                            final.structural)
    utils.write_matrix_json(os.path.join(directory, "spectral.json"),
                            final.spectral)
    summary = run.summary()
    summary.update(directory=directory, seed=run.seed,
                   spectrum_error=final.spectrum_error,
                   failed_starts=sorted(errors))
    return summary


def do_experiment():
    args = CONF.action
    overrides = {}
    if args.config_json:
        overrides.update(utils.load_json(args.config_json))
        overrides.pop("experiment", None)
        overrides.pop("provenance", None)
    for field, _flag, _type, _nargs in EXPERIMENT_FLAGS:
        value = getattr(args, field)
        if value is not None:
            overrides[field] = value
    full_scale = args.full_scale or CONF.EXPERIMENT.full_scale
    experiment_config = base.ExperimentConfig.build(
        args.experiment, overrides, full_scale=full_scale)
    return registry.run(experiment_config)


def _add_simulate(subparsers):
    parser = subparsers.add_parser("simulate",
                                   help=_("Simulate a graph diffusion."))
    parser.add_argument("--graph", choices=(GRAPH_REGULAR, GRAPH_KARATE),
                        default=GRAPH_REGULAR)
    parser.add_argument("--input-graph",
                        choices=(GRAPH_REGULAR, INPUT_IDENTITY),
                        default=GRAPH_REGULAR)
    parser.add_argument("--nodes", dest="n", type=int, default=20)
    parser.add_argument("--degree", dest="d", type=int, default=3)
    parser.add_argument("--tau", type=float, default=1e-3)
    parser.add_argument("--samples", type=int, default=5000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--noise-state-var", type=float, default=0.0)
    parser.add_argument("--noise-obs-var", type=float, default=0.0)
    parser.add_argument("--fx-map", choices=scalar_maps.SUPPORTED,
                        default=scalar_maps.NEG_IDENTITY)
    parser.add_argument("--fu-map", choices=scalar_maps.SUPPORTED,
                        default=scalar_maps.NEG_SHIFTED)
    parser.add_argument("--output-dir")
    parser.set_defaults(func=do_simulate)


def _add_identify(subparsers):
    parser = subparsers.add_parser(
        "identify", help=_("Identify a trajectory and recover the "
                           "continuous-time generator."))
    parser.add_argument("--trajectory-dir", required=True)
    parser.add_argument("--n-states", type=int)
    parser.add_argument("--alpha", type=int)
    parser.add_argument("--beta", type=int)
    parser.add_argument("--method",
                        choices=(constants.METHOD_PLAIN, constants.METHOD_IV),
                        default=constants.METHOD_PLAIN)
    parser.add_argument("--output-map",
                        help=_("Matrix JSON file with the output map C."))
    parser.add_argument("--fx-map", choices=scalar_maps.SUPPORTED,
                        default=scalar_maps.NEG_IDENTITY)
    parser.add_argument("--output-dir")
    parser.set_defaults(func=do_identify)


def _add_reconstruct(subparsers):
    parser = subparsers.add_parser(
        "reconstruct", help=_("Build a graph shift with a target spectrum."))
    parser.add_argument("--target", required=True,
                        help=_("JSON eigenvalue list, ContinuousEstimate or "
                               "SpectralTarget document."))
    parser.add_argument("--known", dest="m", type=int)
    parser.add_argument("--epsilon", type=float, default=0.0)
    parser.add_argument("--rho", type=float)
    parser.add_argument("--set-kind", choices=target_mod.STRUCTURAL_KINDS[:3],
                        default=constants.SET_LAPLACIAN_CVX)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--starts", type=int, default=1)
    parser.add_argument("--max-iter", type=int)
    parser.add_argument("--output-dir")
    parser.set_defaults(func=do_reconstruct)


def _add_experiment(subparsers):
    parser = subparsers.add_parser("experiment",
                                   help=_("Run a bundled experiment."))
    # CONF.action.name is the sub-command itself
    parser.add_argument("experiment", metavar="name",
                        choices=base.EXPERIMENTS)
    # --config would clash with the global --config-file and --config-dir
    parser.add_argument("--config-json",
                        help=_("JSON file of configuration overrides, the "
                               "experiment --config file. Named --config-json "
                               "because oslo.config reserves --config-file "
                               "and --config-dir."))
    parser.add_argument("--full-scale", action="store_true", default=False)
    for field, flag, kind, nargs in EXPERIMENT_FLAGS:
        parser.add_argument(flag, dest=field, type=kind, nargs=nargs)
    parser.set_defaults(func=do_experiment)


def add_command_parsers(subparsers):
    _add_simulate(subparsers)
    _add_identify(subparsers)
    _add_reconstruct(subparsers)
    _add_experiment(subparsers)


command_opt = cfg.SubCommandOpt('action',
                                title='Commands',
                                help=_('Available commands'),
                                handler=add_command_parsers)

CONF.register_cli_opt(command_opt)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    config.init(argv)
    config.setup_logging()
    LOG.info("Topology identification {} ...".format(CONF.action.name))
    try:
        result = CONF.action.func()
    except exceptions.TopoidException as err:
        LOG.error("{} failed: {}".format(CONF.action.name, err))
        return err.exit_code
    except Exception as err:
        LOG.exception(err)
        return constants.EXIT_FAILURE
    LOG.info(jsonutils.dumps(base.native(result), sort_keys=True))
    return constants.EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
