"""
First-order differential graph model and its sampled counterparts.

    dx/dt = f_x(S_x) x + f_u(S_u) u
    x(k+1) = A x(k) + B u(k) + w(k)
    y(k)   = C x(k) + D u(k) + v(k)
"""
import attr
import numpy as np

from networking_topoid.common import exceptions
from networking_topoid.common import utils
from networking_topoid.dynamics import scalar_maps

GENERATOR_SYMMETRY_TOL = 1e-10


def _matrix(name):
    def convert(value):
        return utils.frozen(utils.as_matrix(value, name))
    return convert


def _positive(instance, attribute, value):
    if not value > 0:
        raise exceptions.InvalidInput(name=attribute.name,
                                      reason="must be positive, got "
                                             "{}".format(value))


def _non_negative(instance, attribute, value):
    if value < 0:
        raise exceptions.InvalidInput(name=attribute.name,
                                      reason="variance must be >= 0, got "
                                             "{}".format(value))


def _output_map(n, c=None, d=None, p=None):
    c = np.eye(n) if c is None else c
    p = n if p is None else p
    d = np.zeros((np.shape(c)[0], p)) if d is None else d
    return c, d


@attr.s(frozen=True, eq=False)
class ContinuousModel(object):
    """Evaluated transition matrices f_x(S_x), f_u(S_u) with output map."""

    fx_of_Sx = attr.ib(converter=_matrix("f_x(S_x)"))
    fu_of_Su = attr.ib(converter=_matrix("f_u(S_u)"))
    C = attr.ib(converter=_matrix("C"))
    D = attr.ib(converter=_matrix("D"))
    fx_scalar = attr.ib(default=scalar_maps.NEG_IDENTITY,
                        converter=scalar_maps.get)
    fu_scalar = attr.ib(default=scalar_maps.NEG_IDENTITY,
                        converter=scalar_maps.get)

    def __attrs_post_init__(self):
        n = self.n
        if self.fx_of_Sx.shape != (n, n):
            raise exceptions.ShapeMismatch(name="f_x(S_x)",
                                           expected="square",
                                           actual=self.fx_of_Sx.shape)
        gap = utils.asymmetry(self.fx_of_Sx)
        if gap > GENERATOR_SYMMETRY_TOL * max(
                1.0, float(np.max(np.abs(self.fx_of_Sx)))):
            raise exceptions.NotSymmetric(name="f_x(S_x)", asymmetry=gap)
        if self.fu_of_Su.shape[0] != n:
            raise exceptions.ShapeMismatch(name="f_u(S_u)",
                                           expected=(n, "p"),
                                           actual=self.fu_of_Su.shape)
        if self.C.shape[1] != n:
            raise exceptions.ShapeMismatch(name="C", expected=("L", n),
                                           actual=self.C.shape)
        if self.D.shape != (self.C.shape[0], self.fu_of_Su.shape[1]):
            raise exceptions.ShapeMismatch(
                name="D", expected=(self.C.shape[0], self.fu_of_Su.shape[1]),
                actual=self.D.shape)

    @property
    def n(self):
        return self.fx_of_Sx.shape[0]

    @classmethod
    def from_graphs(cls, s_x, s_u, fx_scalar=scalar_maps.NEG_IDENTITY,
                    fu_scalar=scalar_maps.NEG_IDENTITY, C=None, D=None):
        """Evaluate the scalar maps on the state and input graph shifts."""
        s_x = getattr(s_x, "matrix", s_x)
        s_u = getattr(s_u, "matrix", s_u)
        fx = scalar_maps.get(fx_scalar)
        fu = scalar_maps.get(fu_scalar)
        n = np.shape(s_x)[0]
        C, D = _output_map(n, C, D, np.shape(s_u)[1])
        return cls(fx_of_Sx=fx.apply_matrix(s_x),
                   fu_of_Su=fu.apply_matrix(s_u), C=C, D=D, fx_scalar=fx,
                   fu_scalar=fu)


@attr.s(frozen=True, eq=False)
class StateSpace(object):
    """Discrete-time quadruple (A, B, C, D) sampled with period tau."""

    A = attr.ib(converter=_matrix("A"))
    B = attr.ib(converter=_matrix("B"))
    C = attr.ib(converter=_matrix("C"))
    D = attr.ib(converter=_matrix("D"))
    tau = attr.ib(converter=float, validator=_positive)

    def __attrs_post_init__(self):
        n = self.n
        if self.A.shape != (n, n):
            raise exceptions.ShapeMismatch(name="A", expected=(n, n),
                                           actual=self.A.shape)
        if self.B.shape[0] != n:
            raise exceptions.ShapeMismatch(name="B", expected=(n, "p"),
                                           actual=self.B.shape)
        if self.C.shape[1] != n:
            raise exceptions.ShapeMismatch(name="C", expected=("L", n),
                                           actual=self.C.shape)
        if self.D.shape != (self.C.shape[0], self.B.shape[1]):
            raise exceptions.ShapeMismatch(
                name="D", expected=(self.C.shape[0], self.B.shape[1]),
                actual=self.D.shape)

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def n_inputs(self):
        return self.B.shape[1]

    @property
    def n_outputs(self):
        return self.C.shape[0]


@attr.s(frozen=True, eq=False)
class Trajectory(object):
    """Time-indexed records u(k), y(k) for k < Q and optionally x(k), k <= Q.

    Rows are time samples.
    """

    inputs = attr.ib(converter=_matrix("inputs"))
    outputs = attr.ib(converter=_matrix("outputs"))
    tau = attr.ib(converter=float, validator=_positive)
    states = attr.ib(default=None)
    noise_state_var = attr.ib(default=0.0, converter=float,
                              validator=_non_negative)
    noise_obs_var = attr.ib(default=0.0, converter=float,
                            validator=_non_negative)
    seed = attr.ib(default=None)

    def __attrs_post_init__(self):
        if self.inputs.shape[0] != self.outputs.shape[0]:
            raise exceptions.ShapeMismatch(name="trajectory outputs",
                                           expected=self.inputs.shape[0],
                                           actual=self.outputs.shape[0])
        if self.states is not None:
            states = utils.frozen(utils.as_matrix(self.states, "states"))
            if states.shape[0] != self.q + 1:
                raise exceptions.ShapeMismatch(name="trajectory states",
                                               expected=self.q + 1,
                                               actual=states.shape[0])
            object.__setattr__(self, "states", states)

    @property
    def q(self):
        return self.inputs.shape[0]

    @property
    def n_inputs(self):
        return self.inputs.shape[1]

    @property
    def n_outputs(self):
        return self.outputs.shape[1]

    def sidecar(self):
        return {
            "tau": self.tau,
            "noise_state_var": self.noise_state_var,
            "noise_obs_var": self.noise_obs_var,
            "seed": self.seed,
            "n_inputs": self.n_inputs,
            "n_outputs": self.n_outputs,
        }
