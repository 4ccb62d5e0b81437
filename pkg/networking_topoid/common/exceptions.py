"""
Exceptions - errors raised by the topology identification pipeline.

Every exception carries a `msg_fmt` formatted with the keyword arguments
given on construction and an `exit_code` used by the command line.
"""
from oslo_log import log as logging

from networking_topoid._i18n import _
from networking_topoid.common import constants

LOG = logging.getLogger(__name__)


class TopoidException(Exception):
    """Base exception. Subclasses define `msg_fmt` and `exit_code`."""

    msg_fmt = _("An unknown exception occurred.")
    exit_code = constants.EXIT_FAILURE

    def __init__(self, **kwargs):
        self.kwargs = kwargs
        try:
            self.msg = self.msg_fmt % kwargs
        except (KeyError, TypeError, ValueError):
            LOG.warning("Unable to format '{}' with {}".format(
                self.__class__.__name__, kwargs))
            self.msg = self.msg_fmt
        super(TopoidException, self).__init__(self.msg)

    def __str__(self):
        return self.msg


class ValidationError(TopoidException):
    msg_fmt = _("Invalid argument: %(reason)s")
    exit_code = constants.EXIT_VALIDATION


class NumericalError(TopoidException):
    msg_fmt = _("Numerical failure: %(reason)s")
    exit_code = constants.EXIT_NUMERICAL


class ShapeMismatch(ValidationError):
    msg_fmt = _("Shape mismatch for %(name)s: expected %(expected)s, "
                "got %(actual)s")


class NotSymmetric(ValidationError):
    msg_fmt = _("Matrix %(name)s is not symmetric "
                "(max asymmetry %(asymmetry)g)")


class FamilyMismatch(ValidationError):
    msg_fmt = _("Graph shift family '%(actual)s' does not satisfy "
                "'%(expected)s': %(reason)s")


class InfeasibleDegree(ValidationError):
    msg_fmt = _("No simple %(d)s-regular graph on %(n)s nodes: %(reason)s")


class InvalidBounds(ValidationError):
    msg_fmt = _("Invalid spectral bounds: %(reason)s")


class DepthTooSmall(ValidationError):
    msg_fmt = _("Block depth %(alpha)s must exceed the state dimension "
                "%(n_states)s for the extended observability matrix")


class TrajectoryTooShort(ValidationError):
    msg_fmt = _("Trajectory of length %(q)s is too short, at least "
                "%(required)s samples are required")


class InvalidInput(ValidationError):
    msg_fmt = _("Invalid values in %(name)s: %(reason)s")


class InvalidConfig(ValidationError):
    msg_fmt = _("Invalid configuration field '%(field)s': %(reason)s")


class UnknownScalarMap(ValidationError):
    msg_fmt = _("Unknown scalar map '%(name)s'. Supported: %(supported)s")


class NonBijectiveMap(ValidationError):
    msg_fmt = _("Scalar map '%(name)s' is not bijective: %(reason)s")


class InsufficientData(ValidationError):
    msg_fmt = _("Insufficient data: %(reason)s")


class GeneratorExhausted(NumericalError):
    msg_fmt = _("Random %(d)s-regular generation on %(n)s nodes failed "
                "after %(retries)s retries")


class StateOverflow(NumericalError):
    msg_fmt = _("State norm %(norm)g exceeded %(limit)g at step %(step)s")


class InsufficientExcitation(NumericalError):
    msg_fmt = _("Inputs not sufficiently exciting: observed rank %(rank)s "
                "of %(required)s")


class RankDeficient(NumericalError):
    msg_fmt = _("Rank deficiency in %(name)s: %(reason)s")


class LogarithmUndefined(NumericalError):
    msg_fmt = _("Principal logarithm undefined: eigenvalue %(eigenvalue)s "
                "%(reason)s")


class ProjectionNotConverged(NumericalError):
    msg_fmt = _("Projection onto %(name)s did not converge in %(sweeps)s "
                "sweeps, last change %(residual)g")


class MonotonicityViolation(NumericalError):
    msg_fmt = _("Projection residual increased by %(increase)g at "
                "iteration %(iteration)s")
