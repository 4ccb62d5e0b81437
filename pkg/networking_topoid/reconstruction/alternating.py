"""
Alternating projections between a spectral set M and a structural set S.

    S_{k+1/2} = P_S(S_k)
    S_{k+1}   = P_M(S_{k+1/2})

The structural residual ||S_k - P_S(S_k)||_F cannot increase. When the
iteration stalls away from S and S_{k+1/2} has repeated eigenvalues, another
eigenbasis of S_{k+1/2} gives an equally near point of M; rotating within the
repeated blocks is used to leave the fixed point.
"""
import os

import attr
import numpy as np
import scipy.stats
from oslo_log import log as logging

from networking_topoid.common import config
from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.common import synchronization
from networking_topoid.common import utils
from networking_topoid.graph import shift
from networking_topoid.reconstruction import spectral_sets
from networking_topoid.reconstruction import structural_sets

LOG = logging.getLogger(__name__)


@attr.s(frozen=True, eq=False)
class APRun(object):
    """Telemetry and result of one alternating projections run."""

    final = attr.ib(converter=utils.frozen)
    proj_residual = attr.ib(converter=utils.frozen)
    step_delta = attr.ib(converter=utils.frozen)
    final_residual = attr.ib(converter=float)
    converged = attr.ib()
    # constants.STOP_STEP or constants.STOP_MAX_ITER
    stopped = attr.ib(default=constants.STOP_MAX_ITER)
    fixed_point_escapes = attr.ib(default=0)
    seed = attr.ib(default=None)
    iterates = attr.ib(default=None)

    @property
    def iterations(self):
        return len(self.step_delta)

    def summary(self):
        try:
            rate = estimate_linear_rate(self)
            rate_value = rate.rate if rate.linear else \
                constants.RATE_NOT_LINEAR
        except exceptions.InsufficientData:
            rate_value = None
        return {
            "converged": bool(self.converged),
            "stopped": self.stopped,
            "iterations": self.iterations,
            "final_residual": self.final_residual,
            "fixed_point_escapes": self.fixed_point_escapes,
            "rate": rate_value,
            "seed": self.seed,
        }


@attr.s(frozen=True)
class RateEstimate(object):
    rate = attr.ib()
    r_squared = attr.ib()
    linear = attr.ib()


@attr.s(frozen=True, eq=False)
class FinalEstimate(object):
    """Structural iterate and its exact-spectrum counterpart."""

    structural = attr.ib(converter=utils.frozen)
    spectral = attr.ib(converter=utils.frozen)
    # ||spectral - P_S(spectral)||
    structural_residual = attr.ib(converter=float)
    # largest eigenvalue deviation of `structural` from the target
    spectrum_error = attr.ib(converter=float)


def random_orthogonal(n, generator):
    if n == 1:
        return np.array([[1.0 if generator.random() < 0.5 else -1.0]])
    return scipy.stats.ortho_group.rvs(n, random_state=generator)


def _initial_values(target, generator):
    if target.lambda_o is not None:
        return target.lambda_o
    known = target.lambda_m
    free = target.n - known.size
    low, high = ((known.min(), known.max()) if known.size
                 else (-1.0, 1.0))
    if np.isfinite(target.rho):
        low, high = max(low, -target.rho), min(high, target.rho)
    fill = generator.uniform(low, high, size=free)
    return np.sort(np.concatenate([known, fill]))[::-1]


def initial_point(target, seed=None):
    """Q0 diag(target) Q0^T with a seeded random orthogonal Q0."""
    generator = utils.rng(seed)
    q0 = random_orthogonal(target.n, generator)
    values = _initial_values(target, generator)
    return utils.symmetrize((q0 * values).dot(q0.T))


def _rotated_spectrum(half, generator):
    """Eigendecomposition of `half` with random bases inside tie blocks.

    Returns None when every eigenvalue is simple.
    """
    spectrum = shift.eig_sym(half)
    basis = np.array(spectrum.basis)
    rotated = False
    for start, stop in shift.tie_blocks(spectrum.values):
        if stop - start < 2:
            continue
        basis[:, start:stop] = basis[:, start:stop].dot(
            random_orthogonal(stop - start, generator))
        rotated = True
    if not rotated:
        return None
    return shift.Spectrum(values=spectrum.values, basis=basis)


def detect_fixed_point(s_k, struct, target, tol=None):
    """True if one P_M(P_S(.)) cycle reproduces s_k."""
    tol = config.option("RECONSTRUCTION", "fixed_point_tolerance", tol)
    half = structural_sets.project_S(s_k, struct)
    cycled = spectral_sets.project_spectral(half, target)
    return bool(np.linalg.norm(cycled - s_k) <= tol)


def _check_monotone(residuals, slack, iteration):
    if len(residuals) < 2:
        return
    previous = residuals[-2]
    increase = residuals[-1] - previous
    if increase > slack * max(1.0, previous):
        raise exceptions.MonotonicityViolation(increase=increase,
                                               iteration=iteration)


def ap_solve(target, struct, s0=None, max_iter=None, tol_step=None,
             feas_tol=None, escape_budget=None, seed=None,
             keep_iterates=False, monotone_slack=None):
    """Alternating projections from s0 (a random point of M by default)."""
    max_iter = config.option("RECONSTRUCTION", "max_iterations", max_iter)
    tol_step = config.option("RECONSTRUCTION", "step_tolerance", tol_step)
    feas_tol = config.option("RECONSTRUCTION", "feasibility_tolerance",
                             feas_tol)
    escape_budget = config.option("RECONSTRUCTION", "escape_budget",
                                  escape_budget)
    monotone_slack = config.option("RECONSTRUCTION", "monotone_slack",
                                   monotone_slack)
    if not tol_step > 0:
        raise exceptions.InvalidConfig(field="tol_step",
                                       reason="must be positive")
    generator = utils.rng(seed)
    if s0 is None:
        current = initial_point(target, generator)
    else:
        current = spectral_sets.project_spectral(
            utils.as_matrix(s0, "S0", square=True), target)

    residuals = []
    deltas = []
    iterates = [current] if keep_iterates else None
    escapes = 0
    stopped = constants.STOP_MAX_ITER
    for iteration in range(max_iter):
        half = structural_sets.project_S(current, struct)
        residuals.append(float(np.linalg.norm(current - half)))
        _check_monotone(residuals, monotone_slack, iteration)
        following = spectral_sets.project_spectral(half, target)
        deltas.append(float(np.linalg.norm(current - following)))
        LOG.debug("AP iteration %s residual %.3e step %.3e", iteration,
                  residuals[-1], deltas[-1])
        if deltas[-1] <= tol_step and residuals[-1] > feas_tol:
            rotated = (_rotated_spectrum(half, generator)
                       if escapes < escape_budget else None)
            if rotated is not None:
                escapes += 1
                LOG.info("Escaping fixed point with residual {:.3e} "
                         "({} of {})".format(residuals[-1], escapes,
                                             escape_budget))
                following = spectral_sets.project_spectral(half, target,
                                                           rotated)
                deltas[-1] = float(np.linalg.norm(current - following))
                current = following
                if keep_iterates:
                    iterates.append(current)
                continue
        current = following
        if keep_iterates:
            iterates.append(current)
        if deltas[-1] <= tol_step:
            stopped = constants.STOP_STEP
            break

    final_residual = structural_sets.structural_residual(current, struct)
    converged = final_residual <= feas_tol
    LOG.info("AP {} after {} iterations on {}, residual {:.3e}".format(
        "converged" if converged else "stopped", len(deltas), stopped,
        final_residual))
    return APRun(final=current, proj_residual=residuals, step_delta=deltas,
                 final_residual=final_residual, converged=converged,
                 stopped=stopped,
                 fixed_point_escapes=escapes,
                 seed=seed if not isinstance(seed, np.random.Generator)
                 else None,
                 iterates=iterates)


def estimate_linear_rate(run):
    """Geometric rate of step_delta over the last half of the iterations.

    Accepts an APRun or a sequence of step sizes.
    """
    deltas = np.asarray(getattr(run, "step_delta", run), dtype=float)
    tail = deltas[deltas.size // 2:]
    tail = tail[tail > 0]
    if tail.size < constants.RATE_MIN_ITERATIONS:
        raise exceptions.InsufficientData(
            reason="rate needs {} positive steps, got {}".format(
                constants.RATE_MIN_ITERATIONS, tail.size))
    fit = scipy.stats.linregress(np.arange(tail.size), np.log(tail))
    rate = float(np.exp(fit.slope))
    linear = bool(0.0 < rate < 1.0 - 1e-9)
    return RateEstimate(rate=rate, r_squared=float(fit.rvalue ** 2),
                        linear=linear)


def finalize(run, target, struct):
    """Project the last iterate onto S, then onto M for an exact spectrum."""
    structural = structural_sets.project_S(run.final, struct)
    exact = spectral_sets.project_spectral(structural, target)
    observed = shift.eigenvalues(structural)
    if target.lambda_o is not None:
        error = np.max(np.abs(observed - target.lambda_o))
    elif target.lambda_m.size:
        error = np.max([np.min(np.abs(observed - value))
                        for value in target.lambda_m])
    else:
        error = 0.0
    return FinalEstimate(
        structural=structural, spectral=exact,
        structural_residual=structural_sets.structural_residual(exact,
                                                                struct),
        spectrum_error=error)


def multi_start(target, struct, seeds, workers=None, **options):
    """ap_solve from a random start per seed on the green pool.

    Returns (best run, runs keyed by seed, errors keyed by seed).
    """
    runner = synchronization.Runner(workers_size=workers)
    runs, errors = runner.run(
        lambda seed: ap_solve(target, struct, seed=seed, **options), seeds)
    runner.stop()
    if not runs:
        raise next(iter(errors.values()))
    best = min(runs, key=lambda seed: (runs[seed].final_residual, seed))
    return runs[best], runs, errors


def mode_projection(q_hat, s):
    """|Q^T S Q|: diagonal when S shares the eigenbasis Q."""
    q_hat = np.asarray(q_hat, dtype=float)
    return np.abs(q_hat.T.dot(np.asarray(s, dtype=float)).dot(q_hat))


def write_run(directory, run, prefix=""):
    """CSV series, JSON summary and final matrix of an APRun."""
    utils.ensure_dir(directory)
    utils.write_table_csv(
        os.path.join(directory, prefix + constants.AP_SERIES_FILE),
        ["iteration", "proj_residual", "step_delta"],
        [np.arange(run.iterations), run.proj_residual, run.step_delta])
    utils.dump_json(os.path.join(directory,
                                 prefix + constants.AP_SUMMARY_FILE),
                    run.summary())
    utils.write_matrix_json(os.path.join(directory,
                                         prefix + constants.MATRIX_FILE),
                            run.final)
    return directory
