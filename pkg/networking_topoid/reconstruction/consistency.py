"""
Realization consistency between a candidate graph shift S and an identified
transformed system (A_T, B_T, C_T).

With S_T the state shift read off A_T, a similarity T has to satisfy

    [C_T; C_T S_T] T = [C; C S]
    B_T T^T = T B_T^T            (symmetric input matrix)

Both are linear in (vec S, vec T). Eliminating T leaves an affine set
{S : E vec(S) = f} that can be intersected with a structural set.
"""
import attr
import numpy as np
import scipy.linalg
from oslo_log import log as logging

from networking_topoid.common import exceptions
from networking_topoid.common import utils
from networking_topoid.dynamics import scalar_maps
from networking_topoid.identification import spectral

LOG = logging.getLogger(__name__)


def _vec(matrix):
    return np.asarray(matrix, dtype=float).ravel(order="F")


def _unvec(vector, n):
    return np.asarray(vector).reshape((n, n), order="F")


def commutation(n):
    """K with K vec(X) = vec(X^T) for n x n X."""
    k = np.zeros((n * n, n * n))
    rows, cols = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    k[(cols * n + rows).ravel(), (rows * n + cols).ravel()] = 1.0
    return k


@attr.s(frozen=True, eq=False)
class ConsistencyData(object):
    """Known output map C and the identified transformed system."""

    C = attr.ib(converter=lambda v: utils.frozen(np.atleast_2d(v)))
    C_T = attr.ib(converter=lambda v: utils.frozen(np.atleast_2d(v)))
    A_T = attr.ib(converter=utils.frozen)
    B_T = attr.ib(default=None)
    tau = attr.ib(default=1.0, converter=float)
    fx_map = attr.ib(default=scalar_maps.NEG_IDENTITY,
                     converter=scalar_maps.get)
    S_T = attr.ib(init=False)

    def __attrs_post_init__(self):
        n = self.A_T.shape[0]
        if self.A_T.shape != (n, n):
            raise exceptions.ShapeMismatch(name="A_T", expected=(n, n),
                                           actual=self.A_T.shape)
        for name, value in (("C", self.C), ("C_T", self.C_T)):
            if value.shape[1] != n:
                raise exceptions.ShapeMismatch(name=name, expected=("L", n),
                                               actual=value.shape)
        if self.B_T is not None:
            b_t = utils.frozen(self.B_T)
            if b_t.shape != (n, n):
                raise exceptions.ShapeMismatch(
                    name="B_T", expected=(n, n), actual=b_t.shape)
            object.__setattr__(self, "B_T", b_t)
        s_t = self.fx_map.inverse_matrix(
            spectral.principal_log(self.A_T) / self.tau)
        object.__setattr__(self, "S_T", utils.frozen(s_t))

    @property
    def n(self):
        return self.A_T.shape[0]


@attr.s(frozen=True, eq=False)
class AffineConstraint(object):
    """{S : E vec(S) = f} with vec column-major."""

    E = attr.ib()
    f = attr.ib()

    def violation(self, x):
        return float(np.linalg.norm(self.E.dot(_vec(x)) - self.f))


@attr.s(frozen=True, eq=False)
class ConsistencyReport(object):
    T = attr.ib()
    residual = attr.ib()
    input_residual = attr.ib(default=None)
    underdetermined = attr.ib(default=False)

    def to_dict(self):
        return {
            "T": utils.array_document(self.T),
            "residual": float(self.residual),
            "input_residual": (None if self.input_residual is None
                               else float(self.input_residual)),
            "underdetermined": bool(self.underdetermined),
        }


def _system(cons, input_symmetry):
    """(G_t, G_s, h) with G_t vec(T) + G_s vec(S) = h."""
    n = cons.n
    eye = np.eye(n)
    observed = cons.C.shape[0] * n
    g_t = [np.kron(eye, cons.C_T), np.kron(eye, cons.C_T.dot(cons.S_T))]
    g_s = [np.zeros((observed, n * n)), -np.kron(eye, cons.C)]
    h = [_vec(cons.C), np.zeros(observed)]
    if input_symmetry:
        g_t.append(np.kron(eye, cons.B_T).dot(commutation(n)) -
                   np.kron(cons.B_T, eye))
        g_s.append(np.zeros((n * n, n * n)))
        h.append(np.zeros(n * n))
    return np.vstack(g_t), np.vstack(g_s), np.concatenate(h)


def _input_symmetry(cons, enabled):
    if enabled is None:
        return cons.B_T is not None
    if enabled and cons.B_T is None:
        raise exceptions.InvalidInput(name="consistency data",
                                      reason="input symmetry needs B_T")
    return enabled


def affine_constraint(cons, input_symmetry=None):
    """Eliminate T: E = N^T G_s, f = N^T h with N spanning null(G_t^T).

    Returns None when any S admits a consistent T.
    """
    g_t, g_s, h = _system(cons, _input_symmetry(cons, input_symmetry))
    left = scipy.linalg.null_space(g_t.T)
    if left.shape[1] == 0:
        LOG.info("Consistency relations leave the graph shift free")
        return None
    e = left.T.dot(g_s)
    f = left.T.dot(h)
    LOG.debug("Consistency constraint with {} rows".format(e.shape[0]))
    return AffineConstraint(E=e, f=f)


def check_consistency(s_candidate, cons, input_symmetry=None):
    """Least-squares T for a candidate S and the residuals of both
    relations.
    """
    s_candidate = utils.as_matrix(s_candidate, "S", square=True,
                                  shape=(cons.n, cons.n))
    n = cons.n
    symmetric_input = _input_symmetry(cons, input_symmetry)
    g_t, g_s, h = _system(cons, symmetric_input)
    solution, _, rank, _ = scipy.linalg.lstsq(g_t, h - g_s.dot(
        _vec(s_candidate)))
    t = _unvec(solution, n)
    lhs = np.vstack([cons.C_T, cons.C_T.dot(cons.S_T)]).dot(t)
    rhs = np.vstack([cons.C, cons.C.dot(s_candidate)])
    residual = np.linalg.norm(lhs - rhs)
    input_residual = None
    if cons.B_T is not None:
        input_residual = np.linalg.norm(cons.B_T.dot(t.T) -
                                        t.dot(cons.B_T.T))
    underdetermined = bool(rank < n * n)
    if underdetermined:
        LOG.info("Similarity T is not unique: rank {} of {}".format(
            rank, n * n))
    return ConsistencyReport(T=t, residual=residual,
                             input_residual=input_residual,
                             underdetermined=underdetermined)
