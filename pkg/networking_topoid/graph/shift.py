"""
Graph shift operators - symmetric matrix representations of undirected
graphs and the spectral utilities built on them.
"""
from enum import Enum

import attr
import networkx as nx
import numpy as np
from oslo_log import log as logging

from networking_topoid.common import config
from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.common import utils

LOG = logging.getLogger(__name__)


class Family(Enum):
    """ Structural families of a graph shift operator """
    ADJACENCY = constants.FAMILY_ADJACENCY
    LAPLACIAN = constants.FAMILY_LAPLACIAN
    NORMALIZED_LAPLACIAN = constants.FAMILY_NORMALIZED_LAPLACIAN
    NONNEGATIVE = constants.FAMILY_NONNEGATIVE
    GENERIC = constants.FAMILY_GENERIC


def _symmetric_matrix(value):
    return utils.frozen(utils.as_matrix(value, "graph shift", square=True))


def check_symmetric(matrix, name, tol=None):
    """Raise NotSymmetric unless |m - m^T| is within tolerance."""
    tol = config.option("GRAPH", "symmetry_tolerance", tol)
    scale = max(1.0, float(np.max(np.abs(matrix)))) if matrix.size else 1.0
    gap = utils.asymmetry(matrix)
    if gap > tol * scale:
        raise exceptions.NotSymmetric(name=name, asymmetry=gap)


def _family_violation(matrix, family):
    off = matrix - np.diag(np.diag(matrix))
    if family is Family.ADJACENCY:
        if np.any(np.diag(matrix) != 0):
            return "nonzero diagonal"
        if np.any(matrix < 0):
            return "negative entries"
    elif family is Family.LAPLACIAN:
        if np.any(np.abs(matrix.sum(axis=1)) > constants.ROW_SUM_TOL):
            return "row sums are not zero"
        if np.any(off > 0):
            return "positive off-diagonal entries"
    elif family is Family.NORMALIZED_LAPLACIAN:
        if np.any(np.abs(np.diag(matrix) - 1.0) > constants.DIAGONAL_TOL):
            return "diagonal is not unitary"
    elif family is Family.NONNEGATIVE:
        if np.any(matrix < 0):
            return "negative entries"
    return None


@attr.s(frozen=True, eq=False)
class GraphShift(object):
    """Symmetric N x N shift operator plus its declared family."""

    matrix = attr.ib(converter=_symmetric_matrix)
    family = attr.ib(default=Family.GENERIC, converter=Family)

    @matrix.validator
    def _check_matrix(self, attribute, value):
        check_symmetric(value, "graph shift")

    def __attrs_post_init__(self):
        reason = _family_violation(self.matrix, self.family)
        if reason:
            raise exceptions.FamilyMismatch(actual="matrix",
                                            expected=self.family.value,
                                            reason=reason)

    @property
    def n(self):
        return self.matrix.shape[0]


@attr.s(frozen=True, eq=False)
class Spectrum(object):
    """Eigenvalues sorted non-increasing with an aligned orthogonal basis."""

    values = attr.ib(converter=utils.frozen)
    basis = attr.ib(converter=utils.frozen)

    @values.validator
    def _check_values(self, attribute, value):
        if value.ndim != 1:
            raise exceptions.ShapeMismatch(name="eigenvalues",
                                           expected="vector",
                                           actual=value.shape)
        if np.any(np.diff(value) > 0):
            raise exceptions.InvalidInput(name="eigenvalues",
                                          reason="not sorted non-increasing")

    @basis.validator
    def _check_basis(self, attribute, value):
        n = self.values.shape[0]
        if value.shape != (n, n):
            raise exceptions.ShapeMismatch(name="eigenbasis",
                                           expected=(n, n),
                                           actual=value.shape)
        gap = np.linalg.norm(value.T.dot(value) - np.eye(n))
        if gap > constants.ORTHOGONALITY_TOL * max(1, n):
            raise exceptions.InvalidInput(name="eigenbasis",
                                          reason="not orthogonal")

    @property
    def n(self):
        return self.values.shape[0]

    def compose(self, values=None):
        """Q diag(values) Q^T, with the own eigenvalues by default."""
        values = self.values if values is None else np.asarray(values)
        return utils.symmetrize((self.basis * values).dot(self.basis.T))


def matrix_of(value):
    if isinstance(value, GraphShift):
        return value.matrix
    return utils.as_matrix(value, "matrix", square=True)


def tie_blocks(values, tol=None):
    """Index ranges [start, stop) of eigenvalues equal within tolerance."""
    tol = config.option("GRAPH", "eigen_tie_tolerance", tol)
    blocks = []
    start = 0
    scale = max(1.0, float(np.max(np.abs(values)))) if len(values) else 1.0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i - 1] - values[i] > tol * scale:
            blocks.append((start, i))
            start = i
    return blocks


def _canonical_basis(values, basis):
    basis = basis.copy()
    for j in range(basis.shape[1]):
        column = basis[:, j]
        significant = np.flatnonzero(np.abs(column) > 1e-12)
        if significant.size and column[significant[0]] < 0:
            basis[:, j] = -column
    for start, stop in tie_blocks(values):
        if stop - start < 2:
            continue
        order = sorted(range(start, stop),
                       key=lambda j: tuple(np.round(-basis[:, j], 12)))
        basis[:, start:stop] = basis[:, order]
    return basis


def eig_sym(m):
    """Spectrum of a symmetric matrix, eigenvalues non-increasing.

    Eigenvectors are sign-normalised (first significant entry positive) and
    ordered lexicographically inside blocks of repeated eigenvalues.
    """
    matrix = matrix_of(m)
    check_symmetric(matrix, "eig_sym input")
    values, basis = np.linalg.eigh(utils.symmetrize(matrix))
    values = values[::-1]
    basis = basis[:, ::-1]
    return Spectrum(values=values, basis=_canonical_basis(values, basis))


def eigenvalues(m):
    """Non-increasing eigenvalues of a symmetric matrix."""
    matrix = matrix_of(m)
    check_symmetric(matrix, "eigenvalues input")
    return np.linalg.eigvalsh(utils.symmetrize(matrix))[::-1]


def to_laplacian(g):
    """Combinatorial Laplacian diag(A 1) - A of an adjacency shift."""
    if g.family is not Family.ADJACENCY:
        raise exceptions.FamilyMismatch(actual=g.family.value,
                                        expected=Family.ADJACENCY.value,
                                        reason="a Laplacian needs an "
                                               "adjacency matrix")
    a = g.matrix
    return GraphShift(matrix=np.diag(a.sum(axis=1)) - a,
                      family=Family.LAPLACIAN)


def normalized_laplacian(g):
    """I - D^(-1/2) A D^(-1/2) of an adjacency shift without isolated nodes.
    """
    if g.family is not Family.ADJACENCY:
        raise exceptions.FamilyMismatch(actual=g.family.value,
                                        expected=Family.ADJACENCY.value,
                                        reason="a Laplacian needs an "
                                               "adjacency matrix")
    degrees = g.matrix.sum(axis=1)
    if np.any(degrees <= 0):
        raise exceptions.FamilyMismatch(
            actual=g.family.value,
            expected=Family.NORMALIZED_LAPLACIAN.value,
            reason="isolated nodes {}".format(
                np.flatnonzero(degrees <= 0).tolist()))
    scale = 1.0 / np.sqrt(degrees)
    matrix = np.eye(g.n) - scale[:, None] * g.matrix * scale[None, :]
    return GraphShift(matrix=utils.symmetrize(matrix),
                      family=Family.NORMALIZED_LAPLACIAN)


def char_poly(m):
    """Monic characteristic polynomial, highest degree first.

    Faddeev-LeVerrier recurrence; coefficients are rounded to integers when
    the matrix is integer valued.
    """
    matrix = matrix_of(m)
    n = matrix.shape[0]
    coefficients = np.zeros(n + 1)
    coefficients[0] = 1.0
    eye = np.eye(n)
    accumulator = np.zeros((n, n))
    for k in range(1, n + 1):
        accumulator = matrix.dot(accumulator) + coefficients[k - 1] * eye
        coefficients[k] = -np.trace(matrix.dot(accumulator)) / k
    if np.all(matrix == np.round(matrix)):
        coefficients = np.round(coefficients)
    return coefficients + 0.0


def is_cospectral(g1, g2, tol=1e-9):
    """True iff the sorted spectra agree entrywise within tol."""
    m1 = matrix_of(g1)
    m2 = matrix_of(g2)
    if m1.shape != m2.shape:
        raise exceptions.ShapeMismatch(name="cospectral pair",
                                       expected=m1.shape, actual=m2.shape)
    return bool(np.all(np.abs(eigenvalues(m1) - eigenvalues(m2)) <= tol))


def permute(g, perm):
    """P S P^T for the permutation mapping node i to perm[i]."""
    perm = np.asarray(perm, dtype=int)
    if sorted(perm.tolist()) != list(range(g.n)):
        raise exceptions.InvalidInput(name="permutation",
                                      reason="not a permutation of "
                                             "{} nodes".format(g.n))
    inverse = np.argsort(perm)
    return GraphShift(matrix=g.matrix[np.ix_(inverse, inverse)],
                      family=g.family)


def random_permutation(n, seed):
    return utils.rng(seed).permutation(n)


def edges(g, threshold=0.0):
    """Undirected edges (i < j) whose off-diagonal weight magnitude is at
    least `threshold` and nonzero.
    """
    matrix = matrix_of(g)
    weights = np.abs(np.triu(matrix, k=1))
    rows, cols = np.nonzero((weights >= threshold) & (weights > 0))
    return set(zip(rows.tolist(), cols.tolist()))


def threshold(g, limit):
    """Copy of the matrix with off-diagonal |w| < limit set to zero."""
    matrix = np.array(matrix_of(g))
    small = np.abs(matrix) < limit
    np.fill_diagonal(small, False)
    matrix[small] = 0.0
    return matrix


def to_networkx(g, limit=0.0):
    graph = nx.Graph()
    graph.add_nodes_from(range(matrix_of(g).shape[0]))
    graph.add_edges_from(edges(g, limit))
    return graph


def is_connected(g, limit=0.0):
    """Connectivity of the graph formed by edges of weight >= limit."""
    graph = to_networkx(g, limit)
    return graph.number_of_nodes() > 0 and nx.is_connected(graph)


def from_edges(n, pairs, family=Family.ADJACENCY):
    """Unweighted adjacency (or Laplacian) shift from undirected pairs."""
    matrix = np.zeros((n, n))
    for u, v in pairs:
        if u == v:
            raise exceptions.InvalidInput(name="edge list",
                                          reason="self-loop at {}".format(u))
        if not (0 <= u < n and 0 <= v < n):
            raise exceptions.InvalidInput(
                name="edge list",
                reason="edge ({}, {}) outside {} nodes".format(u, v, n))
        matrix[u, v] = matrix[v, u] = 1.0
    adjacency = GraphShift(matrix=matrix, family=Family.ADJACENCY)
    if Family(family) is Family.LAPLACIAN:
        return to_laplacian(adjacency)
    return adjacency
