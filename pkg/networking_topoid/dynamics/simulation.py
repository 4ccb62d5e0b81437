"""
Exact discretization and noisy simulation of the differential graph model.
"""
import os

import attr
import numpy as np
import scipy.linalg
from oslo_log import log as logging

from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.common import utils
from networking_topoid.dynamics import model

LOG = logging.getLogger(__name__)

SYMMETRIC_PATH_TOL = 1e-10


def phi(values, tau):
    """(exp(lambda tau) - 1) / lambda, equal to tau at lambda = 0."""
    values = np.asarray(values, dtype=float)
    scaled = values * tau
    small = np.abs(scaled) < 1e-8
    safe = np.where(small, 1.0, values)
    return np.where(small, tau * (1.0 + 0.5 * scaled + scaled ** 2 / 6.0),
                    np.expm1(scaled) / safe)


def _is_symmetric(matrix):
    scale = max(1.0, float(np.max(np.abs(matrix)))) if matrix.size else 1.0
    return utils.asymmetry(matrix) <= SYMMETRIC_PATH_TOL * scale


def transition(generator, tau):
    """Return (exp(F tau), integral_0^tau exp(F t) dt) for a generator F.

    Symmetric generators are evaluated spectrally; others through the
    block-triangular exponential of [[F, I], [0, 0]].
    """
    generator = np.asarray(generator, dtype=float)
    n = generator.shape[0]
    if _is_symmetric(generator):
        values, basis = np.linalg.eigh(utils.symmetrize(generator))
        a = (basis * np.exp(values * tau)).dot(basis.T)
        integral = (basis * phi(values, tau)).dot(basis.T)
        return utils.symmetrize(a), utils.symmetrize(integral)
    block = np.zeros((2 * n, 2 * n))
    block[:n, :n] = generator
    block[:n, n:] = np.eye(n)
    exponential = scipy.linalg.expm(block * tau)
    return exponential[:n, :n], exponential[:n, n:]


def discretize(cm, tau):
    """StateSpace sampled from a ContinuousModel with period tau."""
    if not tau > 0:
        raise exceptions.InvalidInput(name="tau",
                                      reason="must be positive, got "
                                             "{}".format(tau))
    a, integral = transition(cm.fx_of_Sx, tau)
    return model.StateSpace(A=a, B=integral.dot(cm.fu_of_Su), C=cm.C,
                            D=cm.D, tau=tau)


def gaussian_input(n, q, seed):
    """q x n i.i.d. standard normal input samples."""
    if n < 1 or q < 1:
        raise exceptions.InvalidInput(name="gaussian input",
                                      reason="n and q must be >= 1")
    return utils.rng(seed).standard_normal((q, n))


def simulate(ss, x0=None, inputs=None, noise_state_var=0.0,
             noise_obs_var=0.0, seed=None, keep_states=True):
    """Run x(k+1) = A x + B u + w, y = C x + D u + v over the inputs.

    w(k) and v(k) are zero-mean Gaussian with the given variances, drawn
    from one generator seeded with `seed` (state noise first).
    """
    if noise_state_var < 0 or noise_obs_var < 0:
        raise exceptions.InvalidInput(name="noise variance",
                                      reason="must be >= 0")
    inputs = utils.as_matrix(inputs, "inputs")
    if inputs.shape[1] != ss.n_inputs:
        raise exceptions.ShapeMismatch(name="inputs",
                                       expected=("Q", ss.n_inputs),
                                       actual=inputs.shape)
    x = np.zeros(ss.n) if x0 is None else np.array(x0, dtype=float)
    if x.shape != (ss.n,):
        raise exceptions.ShapeMismatch(name="x0", expected=(ss.n,),
                                       actual=x.shape)
    if not np.all(np.isfinite(x)):
        raise exceptions.InvalidInput(name="x0", reason="NaN or Inf entries")

    q = inputs.shape[0]
    generator = utils.rng(seed)
    w = np.sqrt(noise_state_var) * generator.standard_normal((q, ss.n))
    v = np.sqrt(noise_obs_var) * generator.standard_normal(
        (q, ss.n_outputs))

    outputs = np.empty((q, ss.n_outputs))
    states = np.empty((q + 1, ss.n)) if keep_states else None
    for k in range(q):
        if keep_states:
            states[k] = x
        outputs[k] = ss.C.dot(x) + ss.D.dot(inputs[k]) + v[k]
        x = ss.A.dot(x) + ss.B.dot(inputs[k]) + w[k]
        norm = np.linalg.norm(x)
        if not norm <= constants.STATE_OVERFLOW:
            raise exceptions.StateOverflow(norm=norm,
                                           limit=constants.STATE_OVERFLOW,
                                           step=k + 1)
    if keep_states:
        states[q] = x
    LOG.debug("Simulated {} steps of a {}-state system".format(q, ss.n))
    return model.Trajectory(inputs=inputs, outputs=outputs, tau=ss.tau,
                            states=states, noise_state_var=noise_state_var,
                            noise_obs_var=noise_obs_var, seed=seed)


def observability_matrix(a, c, alpha):
    """Stack [C; C A; ...; C A^(alpha-1)]."""
    blocks = [np.asarray(c, dtype=float)]
    for _ in range(alpha - 1):
        blocks.append(blocks[-1].dot(a))
    return np.vstack(blocks)


@attr.s(frozen=True)
class Prop1Report(object):
    """Outcome of the principal-logarithm preconditions on eig(S_x)."""

    satisfied = attr.ib()
    violations = attr.ib(factory=list)

    def __bool__(self):
        return self.satisfied

    __nonzero__ = __bool__


def check_prop1(fx_scalar, eigenvalues, tol=1e-12):
    """Check exp(f(z)) off the closed negative real axis and f(z) finite.

    `fx_scalar` is any callable on a scalar; complex values are allowed so
    that disallowed maps can be reported.
    """
    violations = []
    for z in np.asarray(eigenvalues, dtype=float).ravel():
        value = complex(fx_scalar(z))
        if not (np.isfinite(value.real) and np.isfinite(value.imag)):
            violations.append({"eigenvalue": float(z),
                               "reason": "f(z) is not finite"})
            continue
        image = np.exp(value)
        if image.real <= 0 and abs(image.imag) <= tol * max(1.0, abs(image)):
            violations.append({"eigenvalue": float(z),
                               "reason": "exp(f(z)) = {} lies on the "
                                         "closed negative real axis".format(
                                             image)})
    if violations:
        LOG.warning("Principal logarithm preconditions fail on {} "
                    "eigenvalues".format(len(violations)))
    return Prop1Report(satisfied=not violations, violations=violations)


def write_trajectory(directory, traj, prefix=""):
    """Write the CSV (k, u_1..u_N, y_1..y_L) and its JSON sidecar."""
    utils.ensure_dir(directory)
    header = (["k"] +
              ["u_{}".format(i + 1) for i in range(traj.n_inputs)] +
              ["y_{}".format(i + 1) for i in range(traj.n_outputs)])
    columns = ([np.arange(traj.q)] + list(traj.inputs.T) +
               list(traj.outputs.T))
    csv_path = os.path.join(directory, prefix + constants.TRAJECTORY_FILE)
    utils.write_table_csv(csv_path, header, columns)
    utils.dump_json(os.path.join(directory,
                                 prefix + constants.TRAJECTORY_SIDECAR),
                    traj.sidecar())
    return csv_path


def read_trajectory(directory, prefix=""):
    sidecar = utils.load_json(os.path.join(
        directory, prefix + constants.TRAJECTORY_SIDECAR))
    header, table = utils.read_table_csv(
        os.path.join(directory, prefix + constants.TRAJECTORY_FILE))
    p = sidecar["n_inputs"]
    if len(header) != 1 + p + sidecar["n_outputs"]:
        raise exceptions.ShapeMismatch(
            name="trajectory CSV",
            expected=1 + p + sidecar["n_outputs"], actual=len(header))
    return model.Trajectory(inputs=table[:, 1:1 + p],
                            outputs=table[:, 1 + p:],
                            tau=sidecar["tau"],
                            noise_state_var=sidecar["noise_state_var"],
                            noise_obs_var=sidecar["noise_obs_var"],
                            seed=sidecar.get("seed"))
