"""
Spectral targets and structural sets of the graph construction problem.
"""
import attr
import numpy as np

from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.common import utils
from networking_topoid.reconstruction import consistency as consistency_mod

STRUCTURAL_KINDS = (constants.SET_LAPLACIAN_CVX, constants.SET_NONNEGATIVE,
                    constants.SET_ADJACENCY_SYM, constants.SET_CUSTOM)


def _optional_vector(value):
    if value is None:
        return None
    return utils.frozen(np.atleast_1d(np.asarray(value, dtype=float)))


def _non_increasing(instance, attribute, value):
    if value is not None and np.any(np.diff(value) > 0):
        raise exceptions.InvalidInput(name=attribute.name,
                                      reason="not sorted non-increasing")


@attr.s(frozen=True, eq=False)
class SpectralTarget(object):
    """Full (lambda_o) or partial (lambda_m of a size-n graph) spectrum.

    `epsilon` widens every target eigenvalue to an interval, `rho` caps the
    free eigenvalues of a partial target and `lower`/`upper` give per-entry
    deviation bounds on a full target.
    """

    lambda_o = attr.ib(default=None, converter=_optional_vector,
                       validator=_non_increasing)
    lambda_m = attr.ib(default=None, converter=_optional_vector,
                       validator=_non_increasing)
    size = attr.ib(default=None)
    epsilon = attr.ib(default=0.0, converter=float)
    rho = attr.ib(default=np.inf, converter=float)
    lower = attr.ib(default=None, converter=_optional_vector)
    upper = attr.ib(default=None, converter=_optional_vector)

    def __attrs_post_init__(self):
        if (self.lambda_o is None) == (self.lambda_m is None):
            raise exceptions.InvalidConfig(
                field="target", reason="give exactly one of lambda_o and "
                                       "lambda_m")
        if self.epsilon < 0:
            raise exceptions.InvalidConfig(field="epsilon",
                                           reason="must be >= 0")
        if self.lambda_m is not None:
            if self.size is None or self.lambda_m.size > self.size:
                raise exceptions.ShapeMismatch(
                    name="partial target", expected="m <= size",
                    actual=(self.lambda_m.size, self.size))
            if (self.lambda_m.size and
                    self.rho < np.max(np.abs(self.lambda_m))):
                raise exceptions.InvalidConfig(
                    field="rho", reason="smaller than a known eigenvalue")
        elif self.size is not None and self.size != self.lambda_o.size:
            raise exceptions.ShapeMismatch(name="target size",
                                           expected=self.lambda_o.size,
                                           actual=self.size)
        if (self.lower is None) != (self.upper is None):
            raise exceptions.InvalidBounds(reason="give both lower and upper")
        if self.lower is not None:
            if self.lambda_o is None:
                raise exceptions.InvalidBounds(
                    reason="bounds need a full target spectrum")
            if self.lower.shape != self.lambda_o.shape or \
                    self.upper.shape != self.lambda_o.shape:
                raise exceptions.InvalidBounds(
                    reason="bounds must have one entry per eigenvalue")
            if np.any(self.lower > self.upper):
                raise exceptions.InvalidBounds(reason="lower exceeds upper")

    @property
    def n(self):
        return self.lambda_o.size if self.lambda_o is not None else self.size

    @property
    def values(self):
        return self.lambda_o if self.lambda_o is not None else self.lambda_m

    @property
    def kind(self):
        if self.lower is not None:
            return constants.SPECTRAL_M_AB
        if self.lambda_m is not None:
            return constants.SPECTRAL_M_EPS_M
        if self.epsilon > 0:
            return constants.SPECTRAL_M_EPS
        return constants.SPECTRAL_M

    def to_dict(self):
        def listed(vector):
            return None if vector is None else [float(v) for v in vector]
        return {
            "lambda_o": listed(self.lambda_o),
            "lambda_m": listed(self.lambda_m),
            "size": self.size,
            "epsilon": self.epsilon,
            "rho": None if np.isinf(self.rho) else self.rho,
            "lower": listed(self.lower),
            "upper": listed(self.upper),
        }

    @classmethod
    def from_dict(cls, document):
        rho = document.get("rho")
        return cls(lambda_o=document.get("lambda_o"),
                   lambda_m=document.get("lambda_m"),
                   size=document.get("size"),
                   epsilon=document.get("epsilon", 0.0),
                   rho=np.inf if rho is None else rho,
                   lower=document.get("lower"),
                   upper=document.get("upper"))


@attr.s(frozen=True, eq=False)
class StructuralSet(object):
    """Closed convex set of graph shifts, optionally intersected with the
    realization consistency relations.

    `projector` is required for the custom kind and must return the
    Frobenius projection of its argument.
    """

    kind = attr.ib(default=constants.SET_LAPLACIAN_CVX)
    consistency = attr.ib(default=None)
    projector = attr.ib(default=None)
    input_symmetry = attr.ib(default=None)
    constraint = attr.ib(init=False, default=None)

    @kind.validator
    def _check_kind(self, attribute, value):
        if value not in STRUCTURAL_KINDS:
            raise exceptions.InvalidConfig(
                field="set_kind",
                reason="'{}' not in {}".format(value,
                                               ", ".join(STRUCTURAL_KINDS)))

    def __attrs_post_init__(self):
        if self.kind == constants.SET_CUSTOM and self.projector is None:
            raise exceptions.InvalidConfig(field="projector",
                                           reason="custom sets need one")
        if self.consistency is not None:
            if self.kind != constants.SET_LAPLACIAN_CVX:
                raise exceptions.InvalidConfig(
                    field="consistency",
                    reason="only supported with {}".format(
                        constants.SET_LAPLACIAN_CVX))
            object.__setattr__(self, "constraint",
                               consistency_mod.affine_constraint(
                                   self.consistency, self.input_symmetry))
