"""
Frobenius projections onto the structural sets of graph shifts.

The Laplacian relaxation {symmetric, zero row sums, off-diagonal <= 0} is
handled by Dykstra's alternating projections. Every few sweeps the sign
pattern of the iterate is taken as an active-set guess and the projection
is solved exactly in edge weights w_e = -X_ij >= 0, where

    || sum_e w_e b_e b_e^T - S ||_F^2

has Gram matrix G_ef = (b_e^T b_f)^2 and linear term
S_ii + S_jj - 2 S_ij. A guess that satisfies the optimality conditions
ends the loop with the exact projection.

With a consistency constraint the projection is solved directly. The
constraint rows K w = f are replaced by K w = K w0, w0 the nonnegative
weights that fit them best, so the set is never empty. The rows are
eliminated with a null-space basis and the remaining inequality least
squares is solved as a least-distance problem by NNLS.
"""
import numpy as np
import scipy.linalg
import scipy.optimize
from oslo_log import log as logging

from networking_topoid.common import config
from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.common import utils

LOG = logging.getLogger(__name__)

POLISH_EVERY = 25
KKT_TOL = 1e-10
# relative misfit of the consistency rows reported as inconsistent
AFFINE_TOL = 1e-6
# numerical rank of the consistency rows in edge weights
RANK_RCOND = 1e-10
NNLS_ITERATIONS = 50

_EDGE_BASES = {}


class _EdgeBasis(object):
    """Edge parametrisation of n x n Laplacians."""

    def __init__(self, n):
        self.n = n
        self.rows, self.cols = np.triu_indices(n, k=1)
        count = self.rows.size
        self.incidence = np.zeros((n, count))
        self.incidence[self.rows, np.arange(count)] = 1.0
        self.incidence[self.cols, np.arange(count)] = -1.0
        self.gram = self.incidence.T.dot(self.incidence) ** 2
        self._vectorized = None

    @property
    def vectorized(self):
        """Columns vec(b_e b_e^T)."""
        if self._vectorized is None:
            outer = (self.incidence[:, None, :] *
                     self.incidence[None, :, :])
            self._vectorized = outer.reshape(self.n * self.n, -1)
        return self._vectorized

    def linear_term(self, s):
        return (s[self.rows, self.rows] + s[self.cols, self.cols] -
                2.0 * s[self.rows, self.cols])

    def weights_of(self, x):
        return -x[self.rows, self.cols]

    def laplacian(self, weights):
        return utils.symmetrize((self.incidence * weights).dot(
            self.incidence.T))


def edge_basis(n):
    if n not in _EDGE_BASES:
        _EDGE_BASES[n] = _EdgeBasis(n)
    return _EDGE_BASES[n]


def _centering(x):
    x = utils.symmetrize(x)
    x = x - x.mean(axis=0, keepdims=True)
    return x - x.mean(axis=1, keepdims=True)


def _clamp_off_diagonal(x):
    result = np.minimum(x, 0.0)
    np.fill_diagonal(result, np.diag(x))
    return result


def _certify(basis, b, free, tol):
    """Exact solution on the free set if it meets the KKT conditions."""
    gram = basis.gram
    weights = np.zeros(b.size)
    if free.any():
        try:
            weights[free] = scipy.linalg.solve(
                gram[np.ix_(free, free)], b[free], assume_a="pos")
        except np.linalg.LinAlgError:
            return None
    gradient = gram.dot(weights) - b
    if np.any(weights[free] < -tol) or np.any(gradient[~free] < -tol):
        return None
    return np.clip(weights, 0.0, None)


def _principal_pivoting(gram, b):
    """Block principal pivoting for min 1/2 w^T G w - b^T w, w >= 0."""
    count = b.size
    free = np.zeros(count, dtype=bool)
    backup = 3
    best = count + 1
    while True:
        weights = np.zeros(count)
        if free.any():
            weights[free] = scipy.linalg.solve(gram[np.ix_(free, free)],
                                               b[free], assume_a="pos")
        gradient = gram.dot(weights) - b
        infeasible = (free & (weights < -KKT_TOL)) | (
            ~free & (gradient < -KKT_TOL))
        violations = int(infeasible.sum())
        if not violations:
            return np.clip(weights, 0.0, None)
        if violations < best:
            best = violations
            backup = 3
            free ^= infeasible
        elif backup > 0:
            backup -= 1
            free ^= infeasible
        else:
            last = np.flatnonzero(infeasible)[-1]
            free[last] = not free[last]


def _free_guess(basis, x, scale):
    return basis.weights_of(x) > 1e-12 * scale


def _nnls(matrix, rhs):
    try:
        return scipy.optimize.nnls(
            matrix, rhs, maxiter=NNLS_ITERATIONS * matrix.shape[1])
    except RuntimeError:
        raise exceptions.ProjectionNotConverged(
            name=constants.SET_LAPLACIAN_CVX,
            sweeps=NNLS_ITERATIONS * matrix.shape[1], residual=np.nan)


def _feasible_anchor(k, f):
    """Nonnegative weights w0 closest to K w = f.

    K w0 is unique, so {w >= 0 : K w = K w0} does not depend on the
    matrix being projected.
    """
    anchor, misfit = _nnls(k, f)
    if misfit > AFFINE_TOL * max(1.0, np.linalg.norm(f)):
        LOG.warning("Consistency rows are not met by any Laplacian, "
                    "misfit %.3e; projecting onto the closest set", misfit)
    return anchor


def _constrained_weights(basis, s, constraint):
    """argmin ||sum_e w_e b_e b_e^T - S|| over w >= 0, K w = K w0."""
    design = basis.vectorized
    k = constraint.E.dot(design)
    anchor = _feasible_anchor(k, constraint.f)
    null = scipy.linalg.null_space(k, rcond=RANK_RCOND)
    if null.shape[1] == 0:
        return anchor
    # min ||R z - p||, anchor + Z z >= 0 with M Z = Q R
    q, r = scipy.linalg.qr(design.dot(null), mode="economic")
    proj = q.T.dot(s.ravel() - design.dot(anchor))
    scale = np.linalg.norm(proj)
    if scale == 0.0:
        return anchor
    g = scipy.linalg.solve_triangular(r, null.T, trans="T").T
    h = (-anchor - g.dot(proj)) / scale
    stacked = np.vstack([g.T, h[None, :]])
    unit = np.zeros(stacked.shape[0])
    unit[-1] = 1.0
    dual, _ = _nnls(stacked, unit)
    gap = stacked.dot(dual) - unit
    if gap[-1] > -KKT_TOL:
        # z = 0 satisfies the bounds, so this is rounding
        return anchor
    y = scale * (-gap[:-1] / gap[-1])
    z = scipy.linalg.solve_triangular(r, y + proj)
    return np.clip(anchor + null.dot(z), 0.0, None)


def project_laplacian(s, constraint=None, tol=None, max_sweeps=None):
    """Projection onto the Laplacian relaxation, optionally intersected
    with an affine consistency constraint.
    """
    tol = config.option("RECONSTRUCTION", "dykstra_tolerance", tol)
    max_sweeps = config.option("RECONSTRUCTION", "dykstra_max_sweeps",
                               max_sweeps)
    s = utils.symmetrize(s)
    n = s.shape[0]
    basis = edge_basis(n)
    if constraint is not None:
        return basis.laplacian(_constrained_weights(basis, s, constraint))
    b = basis.linear_term(s)
    scale = max(1.0, float(np.max(np.abs(s))))
    kkt_tol = KKT_TOL * scale

    x = _centering(s)
    weights = _certify(basis, b, _free_guess(basis, x, scale), kkt_tol)
    if weights is not None:
        return basis.laplacian(weights)

    projections = [_clamp_off_diagonal, _centering]
    increments = [np.zeros_like(s) for _ in projections]
    x = s
    for sweep in range(1, max_sweeps + 1):
        previous = x
        for k, project in enumerate(projections):
            y = x + increments[k]
            x = project(y)
            increments[k] = y - x
        change = np.linalg.norm(x - previous)
        if sweep % POLISH_EVERY == 0 or change <= tol:
            weights = _certify(basis, b, _free_guess(basis, x, scale),
                               kkt_tol)
            if weights is not None:
                LOG.debug("Laplacian projection certified after %s sweeps",
                          sweep)
                return basis.laplacian(weights)
        if change <= tol:
            LOG.debug("Dykstra converged after %s sweeps", sweep)
            return utils.symmetrize(x)
    LOG.debug("Dykstra budget spent, solving by principal pivoting")
    return basis.laplacian(_principal_pivoting(basis.gram, b))


def project_nonnegative(s):
    return np.clip(utils.symmetrize(s), 0.0, None)


def project_adjacency(s):
    result = project_nonnegative(s)
    np.fill_diagonal(result, 0.0)
    return result


def project_S(s, struct, tol=None, max_sweeps=None):
    """Frobenius projection onto a StructuralSet."""
    s = utils.as_matrix(s, "S", square=True)
    if struct.kind == constants.SET_NONNEGATIVE:
        return project_nonnegative(s)
    if struct.kind == constants.SET_ADJACENCY_SYM:
        return project_adjacency(s)
    if struct.kind == constants.SET_CUSTOM:
        return utils.symmetrize(struct.projector(s))
    return project_laplacian(s, struct.constraint, tol, max_sweeps)


def structural_residual(s, struct, tol=None, max_sweeps=None):
    """||S - P_S(S)||_F."""
    return float(np.linalg.norm(s - project_S(s, struct, tol, max_sweeps)))
