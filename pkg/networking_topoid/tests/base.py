import fixtures
import numpy as np
import testtools
from oslo_config import cfg
from oslo_config import fixture as config_fixture

from networking_topoid.common import config  # noqa


class TopoidTestCase(testtools.TestCase):
    """Test case with an isolated configuration and output root."""

    def setUp(self):
        super(TopoidTestCase, self).setUp()
        self.conf = self.useFixture(config_fixture.Config(cfg.CONF))
        self.output_root = self.useFixture(fixtures.TempDir()).path
        self.conf.config(output_dir=self.output_root, group="EXPERIMENT")
        self.conf.config(workers=2, group="EXPERIMENT")

    def assertAllClose(self, actual, expected, rtol=1e-7, atol=1e-9):
        np.testing.assert_allclose(np.asarray(actual, dtype=float),
                                   np.asarray(expected, dtype=float),
                                   rtol=rtol, atol=atol)

    def assertMatrixClose(self, actual, expected, tol):
        gap = np.linalg.norm(np.asarray(actual) - np.asarray(expected))
        self.assertLessEqual(gap, tol * max(1.0, np.linalg.norm(expected)))
