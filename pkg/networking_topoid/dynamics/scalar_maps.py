"""
Named scalar maps f_s linking a graph spectrum to the spectrum of the
evaluated matrix function f(S) = Q f_s(Lambda) Q^T.
"""
import attr
import numpy as np

from networking_topoid.common import exceptions

NEG_IDENTITY = "neg_identity"
IDENTITY = "identity"
AFFINE = "affine"
NEG_SHIFTED = "neg_shifted"

SUPPORTED = (NEG_IDENTITY, IDENTITY, AFFINE, NEG_SHIFTED)


@attr.s(frozen=True)
class ScalarMap(object):
    """Affine scalar map z -> a*z + b under a descriptive name."""

    name = attr.ib()
    a = attr.ib(default=1.0, converter=float)
    b = attr.ib(default=0.0, converter=float)

    def __call__(self, z):
        return self.a * np.asarray(z, dtype=float) + self.b

    @property
    def bijective(self):
        return self.a != 0.0

    def inverse(self, w):
        if not self.bijective:
            raise exceptions.NonBijectiveMap(name=self.name,
                                             reason="slope is zero")
        return (np.asarray(w, dtype=float) - self.b) / self.a

    def apply_matrix(self, s):
        """f(S) for a square matrix S."""
        s = np.asarray(s, dtype=float)
        return self.a * s + self.b * np.eye(s.shape[0])

    def inverse_matrix(self, m):
        if not self.bijective:
            raise exceptions.NonBijectiveMap(name=self.name,
                                             reason="slope is zero")
        m = np.asarray(m, dtype=float)
        return (m - self.b * np.eye(m.shape[0])) / self.a

    def to_dict(self):
        return {"name": self.name, "a": self.a, "b": self.b}


def get(descriptor, **params):
    """Build a ScalarMap from a name, a dict descriptor or a ScalarMap."""
    if isinstance(descriptor, ScalarMap):
        return descriptor
    if isinstance(descriptor, dict):
        params = dict(descriptor)
        descriptor = params.pop("name", None)
    if not isinstance(descriptor, str):
        raise exceptions.UnknownScalarMap(name=descriptor,
                                          supported=", ".join(SUPPORTED))
    if descriptor == NEG_IDENTITY:
        return ScalarMap(NEG_IDENTITY, a=-1.0, b=0.0)
    if descriptor == IDENTITY:
        return ScalarMap(IDENTITY, a=1.0, b=0.0)
    if descriptor == NEG_SHIFTED:
        return ScalarMap(NEG_SHIFTED, a=-1.0, b=-1.0)
    if descriptor == AFFINE:
        try:
            return ScalarMap(AFFINE, a=params["a"], b=params.get("b", 0.0))
        except KeyError:
            raise exceptions.InvalidConfig(field="affine.a",
                                           reason="slope is required")
    raise exceptions.UnknownScalarMap(name=descriptor,
                                      supported=", ".join(SUPPORTED))
