"""
Minimum-weight rectangular assignment.

Rows (targets) are matched injectively to columns (candidates). The solver
is Kuhn-Munkres with row and column potentials on the cost padded to a
square with zero-cost dummy rows; among optimal assignments the
lexicographically smallest is returned.
"""
import numpy as np
import scipy.sparse
from oslo_log import log as logging
from scipy.sparse import csgraph

from networking_topoid.common import exceptions
from networking_topoid.common import utils

LOG = logging.getLogger(__name__)

TIGHT_TOL = 1e-9


def _check_cost(cost):
    cost = np.atleast_2d(np.asarray(cost, dtype=float))
    if cost.ndim != 2:
        raise exceptions.ShapeMismatch(name="cost", expected="m x n",
                                       actual=cost.shape)
    if cost.shape[0] > cost.shape[1]:
        raise exceptions.ShapeMismatch(name="cost", expected="m <= n",
                                       actual=cost.shape)
    if not np.all(np.isfinite(cost)):
        raise exceptions.InvalidInput(name="cost", reason="NaN or Inf entries")
    return cost


def _hungarian(cost):
    """Square Kuhn-Munkres. Returns (column of each row, u, v)."""
    n = cost.shape[0]
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    owner = np.zeros(n + 1, dtype=int)
    way = np.zeros(n + 1, dtype=int)
    for i in range(1, n + 1):
        owner[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = owner[j0]
            free = ~used[1:]
            reduced = cost[i0 - 1] - u[i0] - v[1:]
            better = free & (reduced < minv[1:])
            minv[1:][better] = reduced[better]
            way[1:][better] = j0
            candidates = np.where(free, minv[1:], np.inf)
            j1 = int(np.argmin(candidates)) + 1
            delta = candidates[j1 - 1]
            u[owner[used]] += delta
            v[used] -= delta
            minv[1:][free] -= delta
            j0 = j1
            if owner[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            owner[j0] = owner[j1]
            j0 = j1
    columns = np.empty(n, dtype=int)
    for j in range(1, n + 1):
        columns[owner[j] - 1] = j - 1
    return columns, u[1:], v[1:]


def _completes(tight, rows, taken):
    """True if `rows` can be matched into tight columns not in `taken`."""
    if not rows:
        return True
    open_columns = [j for j in range(tight.shape[1]) if j not in taken]
    sub = tight[np.ix_(rows, open_columns)]
    matched = csgraph.maximum_bipartite_matching(
        scipy.sparse.csr_matrix(sub), perm_type="column")
    return bool(np.all(matched >= 0))


def _lexicographic(tight, m):
    n = tight.shape[0]
    assignment = {}
    taken = set()
    for i in range(m):
        candidates = [j for j in np.flatnonzero(tight[i]).tolist()
                      if j not in taken]
        rest = [r for r in range(n) if r != i and r not in assignment]
        for j in candidates:
            if (len(candidates) == 1 or
                    _completes(tight, rest, taken | {j})):
                assignment[i] = j
                taken.add(j)
                break
    return assignment


def solve_assignment(cost):
    """Optimal injective row -> column map for an m x n cost, m <= n.

    Returns (assignment, total_cost) with assignment a dict.
    """
    cost = _check_cost(cost)
    m, n = cost.shape
    if m == 0:
        return {}, 0.0
    square = np.zeros((n, n))
    square[:m] = cost
    columns, u, v = _hungarian(square)
    reduced = square - u[:, None] - v[None, :]
    scale = max(1.0, float(np.max(np.abs(square))))
    tight = reduced <= TIGHT_TOL * scale
    assignment = _lexicographic(tight, m)
    if len(assignment) != m:
        # rounding left the tight graph without a completion
        assignment = {i: int(columns[i]) for i in range(m)}
    total = float(sum(cost[i, j] for i, j in assignment.items()))
    return assignment, total


def solve_ordered(cost):
    """Optimal assignment with increasing columns, by dynamic programming.

    best[i][j] is the cost of placing the first i rows among the first j
    columns.

    Returns (assignment, total_cost).
    """
    cost = _check_cost(cost)
    m, n = cost.shape
    best = np.full((m + 1, n + 1), np.inf)
    best[0, :] = 0.0
    for i in range(1, m + 1):
        for j in range(i, n + 1):
            best[i, j] = min(best[i, j - 1],
                             best[i - 1, j - 1] + cost[i - 1, j - 1])
    assignment = {}
    j = n
    for i in range(m, 0, -1):
        while best[i, j] == best[i, j - 1] and j > i:
            j -= 1
        assignment[i - 1] = j - 1
        j -= 1
    return assignment, float(best[m, n])


def eigenvalue_cost(values, targets, epsilon=0.0, rho=np.inf):
    """cost[i][j] = squared distance from values[j] to targets[i] +- eps.

    With a finite rho the band is cut to [-rho, rho] and the squared
    distance of values[j] to [-rho, rho], paid by an unmatched value, is
    subtracted.
    """
    values = np.asarray(values, dtype=float)[None, :]
    targets = np.asarray(targets, dtype=float)[:, None]
    low = np.maximum(targets - epsilon, -rho)
    high = np.minimum(targets + epsilon, rho)
    cost = (values - np.clip(values, low, high)) ** 2
    if np.isfinite(rho):
        cost = cost - (values - np.clip(values, -rho, rho)) ** 2
    return np.clip(cost, 0.0, None)


def match_eigenvalues(values, targets, epsilon=0.0, rho=np.inf):
    """Positions of `values` (non-increasing) matched to sorted `targets`.

    The assignment is expected to preserve order; when it does not, the
    ordered-subset dynamic program is used instead.

    Returns (positions, total_cost) with positions[i] the index matched to
    targets[i].
    """
    cost = eigenvalue_cost(values, targets, epsilon, rho)
    assignment, total = solve_assignment(cost)
    positions = [assignment[i] for i in range(cost.shape[0])]
    if np.any(np.diff(positions) <= 0):
        LOG.debug("Assignment crosses eigenvalue order, solving the "
                  "ordered subset problem")
        assignment, total = solve_ordered(cost)
        positions = [assignment[i] for i in range(cost.shape[0])]
    return positions, total


def dump_cost(path, cost):
    """Write a cost matrix as CSV for debugging."""
    LOG.debug("Dumping {} assignment cost to {}".format(
        np.shape(cost), path))
    return utils.write_matrix_csv(path, np.atleast_2d(cost))
