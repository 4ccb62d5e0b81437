import ddt
import numpy as np

from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.dynamics import model
from networking_topoid.dynamics import scalar_maps
from networking_topoid.dynamics import simulation
from networking_topoid.graph import generators
from networking_topoid.graph import shift
from networking_topoid.identification import hankel
from networking_topoid.identification import subspace
from networking_topoid.tests import base

N = 6


def _system(tau=0.1, seed=0):
    state = shift.to_laplacian(generators.random_regular(N, 3, seed))
    inputs = shift.to_laplacian(generators.random_regular(N, 3, seed + 1))
    cm = model.ContinuousModel.from_graphs(
        state, inputs, fx_scalar=scalar_maps.NEG_IDENTITY,
        fu_scalar=scalar_maps.NEG_SHIFTED)
    return simulation.discretize(cm, tau)


def _trajectory(ss, q=400, seed=1, scale=1.0, **noise):
    inputs = scale * simulation.gaussian_input(ss.n_inputs, q, seed)
    return simulation.simulate(ss, inputs=inputs, seed=seed + 100,
                               keep_states=False, **noise)


class HankelTest(base.TopoidTestCase):

    def test_block_hankel_layout(self):
        samples = np.arange(5.0)[:, None]
        self.assertAllClose([[0, 1, 2, 3], [1, 2, 3, 4]],
                            hankel.block_hankel(samples, 2))

    def test_block_hankel_column_range(self):
        samples = np.arange(12.0).reshape(6, 2)
        full = hankel.block_hankel(samples, 3)
        self.assertAllClose(full[:, 1:3],
                            hankel.block_hankel(samples, 3, 1, 3))

    def test_data_equation(self):
        ss = _system()
        traj = simulation.simulate(
            ss, inputs=simulation.gaussian_input(N, 40, 3))
        h = hankel.build_hankel(traj, 8, N)
        o = simulation.observability_matrix(ss.A, ss.C, 8)
        x = traj.states[:h.T].T
        self.assertEqual(N * 8, h.Y.shape[0])
        # inputs move Y outside the span of O only through the Toeplitz part
        toeplitz = np.zeros((8 * N, 8 * N))
        for i in range(8):
            for j in range(i):
                block = ss.C.dot(np.linalg.matrix_power(ss.A, i - j - 1))
                toeplitz[i * N:(i + 1) * N, j * N:(j + 1) * N] = \
                    block.dot(ss.B)
        self.assertMatrixClose(h.Y, o.dot(x) + toeplitz.dot(h.U), 1e-10)

    def test_depth_checks(self):
        self.assertRaises(exceptions.DepthTooSmall, hankel.check_depth,
                          N, N, 100)
        self.assertRaises(exceptions.TrajectoryTooShort, hankel.check_depth,
                          N + 2, N, 10)

    def test_split_past_future(self):
        ss = _system()
        traj = simulation.simulate(
            ss, inputs=simulation.gaussian_input(N, 40, 3))
        h = hankel.build_hankel(traj, 8, N)
        y1, u1, y2, u2 = h.split(3)
        self.assertEqual((3 * N, h.T), y1.shape)
        self.assertEqual((5 * N, h.T), u2.shape)
        self.assertAllClose(np.vstack([y1, y2]), h.Y)
        self.assertAllClose(u1, hankel.block_hankel(traj.inputs, 3)[:, :h.T])


@ddt.ddt
class IdentifyTest(base.TopoidTestCase):

    def test_plain_noise_free(self):
        ss = _system()
        estimate = subspace.identify(_trajectory(ss), N + 2, N)
        self.assertMatrixClose(estimate.A_hat, ss.A, 1e-8)
        self.assertMatrixClose(estimate.B_hat, ss.B, 1e-7)
        self.assertAllClose(estimate.x0_hat, np.zeros(N), atol=1e-7)
        self.assertFalse(estimate.non_unique)
        self.assertEqual(N, estimate.n_states)

    def test_iv_noise_free(self):
        ss = _system()
        estimate = subspace.identify(_trajectory(ss, q=1000), 16, N,
                                     method=constants.METHOD_IV, beta=8,
                                     estimate_input=False)
        self.assertMatrixClose(estimate.A_hat, ss.A, 1e-6)
        self.assertIsNone(estimate.B_hat)
        self.assertEqual(8, estimate.diagnostics["gamma"])

    def test_observability_span(self):
        ss = _system()
        estimate = subspace.identify(_trajectory(ss), N + 2, N,
                                     estimate_input=False)
        truth = simulation.observability_matrix(ss.A, ss.C, N + 2)
        angles = subspace.principal_angles(estimate.W, truth)
        self.assertLess(np.max(angles), 1e-8)

    def test_zero_inputs_are_not_exciting(self):
        ss = _system()
        traj = _trajectory(ss, scale=0.0)
        self.assertRaises(exceptions.InsufficientExcitation,
                          subspace.identify, traj, N + 2, N)

    def test_depth_must_exceed_states(self):
        ss = _system()
        self.assertRaises(exceptions.DepthTooSmall, subspace.identify,
                          _trajectory(ss), N, N)

    def test_unknown_method(self):
        ss = _system()
        self.assertRaises(exceptions.InvalidConfig, subspace.identify,
                          _trajectory(ss), N + 2, N, method="n4sid")

    def test_output_map_shape(self):
        ss = _system()
        self.assertRaises(exceptions.ShapeMismatch, subspace.identify,
                          _trajectory(ss), N + 2, N, C=np.eye(N - 1))

    def test_iv_rejects_short_future(self):
        ss = _system()
        self.assertRaises(exceptions.DepthTooSmall, subspace.iv_subspace,
                          _trajectory(ss), 10, N, beta=5)

    def test_iv_noise_shrinks_angle(self):
        ss = _system()
        truth = simulation.observability_matrix(ss.A, ss.C, 8)
        angles = []
        for q in (300, 30000):
            traj = _trajectory(ss, q=q, noise_state_var=1e-2,
                               noise_obs_var=1e-2)
            estimate = subspace.iv_subspace(traj, 16, N, beta=8)
            angles.append(np.max(subspace.principal_angles(estimate.W,
                                                           truth)))
        self.assertLess(angles[1], angles[0])


class EstimateTest(base.TopoidTestCase):

    def test_estimate_T_full_rank(self):
        w = np.linalg.qr(np.random.RandomState(0).randn(12, 3))[0]
        t_hat, non_unique = subspace.estimate_T(w, np.eye(3))
        self.assertFalse(non_unique)
        self.assertMatrixClose(w[:3].dot(t_hat), np.eye(3), 1e-10)

    def test_estimate_T_partial_output_keeps_C(self):
        w = np.linalg.qr(np.random.RandomState(1).randn(12, 4))[0]
        c = np.eye(4)[0::2]
        t_hat, non_unique = subspace.estimate_T(w, c)
        self.assertTrue(non_unique)
        self.assertMatrixClose(w[:2].dot(t_hat), c, 1e-10)
        self.assertGreater(abs(np.linalg.det(t_hat)), 1e-8)

    def test_rejects_non_orthonormal_basis(self):
        self.assertRaises(exceptions.InvalidInput,
                          subspace.SubspaceEstimate,
                          W=2.0 * np.eye(3), singular_values=[3, 2, 1])

    def test_rejects_unsorted_singular_values(self):
        self.assertRaises(exceptions.InvalidInput,
                          subspace.SubspaceEstimate,
                          W=np.eye(3), singular_values=[1, 2, 3])

    def test_document(self):
        ss = _system()
        estimate = subspace.identify(_trajectory(ss), N + 2, N)
        loaded = subspace.SubspaceEstimate.from_dict(estimate.to_dict())
        self.assertAllClose(estimate.A_hat, loaded.A_hat, atol=0)
        self.assertEqual(estimate.diagnostics["method"],
                         loaded.diagnostics["method"])

    def test_automatic_order(self):
        self.assertEqual(3, subspace.automatic_order(
            [10.0, 9.0, 8.0, 1e-3, 1e-4]))
