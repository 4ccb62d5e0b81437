import ddt
import numpy as np
import scipy.integrate
import scipy.linalg

from networking_topoid.common import exceptions
from networking_topoid.dynamics import model
from networking_topoid.dynamics import scalar_maps
from networking_topoid.dynamics import simulation
from networking_topoid.graph import generators
from networking_topoid.graph import shift
from networking_topoid.tests import base


def _diffusion(n=8, d=3, seed=0, fu=scalar_maps.NEG_SHIFTED):
    state = shift.to_laplacian(generators.random_regular(n, d, seed))
    inputs = shift.to_laplacian(generators.random_regular(n, d, seed + 1))
    return model.ContinuousModel.from_graphs(
        state, inputs, fx_scalar=scalar_maps.NEG_IDENTITY, fu_scalar=fu)


@ddt.ddt
class ScalarMapTest(base.TopoidTestCase):

    @ddt.data(scalar_maps.NEG_IDENTITY, scalar_maps.IDENTITY,
              scalar_maps.NEG_SHIFTED,
              {"name": scalar_maps.AFFINE, "a": 2.0, "b": -3.0})
    def test_inverse(self, descriptor):
        scalar_map = scalar_maps.get(descriptor)
        values = np.linspace(-2.0, 5.0, 7)
        self.assertAllClose(values, scalar_map.inverse(scalar_map(values)))
        s = generators.path_graph(4).matrix
        self.assertAllClose(s, scalar_map.inverse_matrix(
            scalar_map.apply_matrix(s)))

    def test_neg_shifted(self):
        s = np.diag([1.0, 2.0])
        self.assertAllClose(-(s + np.eye(2)),
                            scalar_maps.get(scalar_maps.NEG_SHIFTED)
                            .apply_matrix(s))

    def test_unknown_map(self):
        self.assertRaises(exceptions.UnknownScalarMap, scalar_maps.get,
                          "square")

    def test_affine_needs_slope(self):
        self.assertRaises(exceptions.InvalidConfig, scalar_maps.get,
                          scalar_maps.AFFINE)

    def test_constant_map_is_not_bijective(self):
        scalar_map = scalar_maps.get(scalar_maps.AFFINE, a=0.0, b=1.0)
        self.assertFalse(scalar_map.bijective)
        self.assertRaises(exceptions.NonBijectiveMap, scalar_map.inverse,
                          1.0)


@ddt.ddt
class DiscretizeTest(base.TopoidTestCase):

    @ddt.data(1e-3, 1e-2, 0.5)
    def test_matches_expm(self, tau):
        cm = _diffusion()
        ss = simulation.discretize(cm, tau)
        self.assertMatrixClose(ss.A, scipy.linalg.expm(cm.fx_of_Sx * tau),
                               1e-10)

    def test_integral_matches_quadrature(self):
        cm = _diffusion(n=6)
        tau = 0.3
        _, integral = simulation.transition(cm.fx_of_Sx, tau)
        expected, _ = scipy.integrate.quad_vec(
            lambda t: scipy.linalg.expm(cm.fx_of_Sx * t), 0.0, tau)
        self.assertMatrixClose(integral, expected, 1e-8)

    def test_non_symmetric_generator(self):
        f = np.array([[-1.0, 0.5], [0.0, -2.0]])
        a, integral = simulation.transition(f, 0.1)
        self.assertMatrixClose(a, scipy.linalg.expm(0.1 * f), 1e-12)
        # F integral = A - I
        self.assertMatrixClose(f.dot(integral), a - np.eye(2), 1e-12)

    def test_phi_at_zero(self):
        self.assertAllClose([0.25], simulation.phi([0.0], 0.25))

    def test_rejects_non_positive_tau(self):
        self.assertRaises(exceptions.InvalidInput, simulation.discretize,
                          _diffusion(), 0.0)

    def test_rejects_non_symmetric_state_generator(self):
        self.assertRaises(exceptions.NotSymmetric, model.ContinuousModel,
                          fx_of_Sx=[[-1.0, 1.0], [0.0, -1.0]],
                          fu_of_Su=np.eye(2), C=np.eye(2),
                          D=np.zeros((2, 2)))


class SimulateTest(base.TopoidTestCase):

    def test_noise_free_recursion(self):
        ss = simulation.discretize(_diffusion(n=6), 0.1)
        inputs = simulation.gaussian_input(6, 20, seed=1)
        traj = simulation.simulate(ss, inputs=inputs, seed=2)
        x = np.zeros(6)
        for k in range(20):
            self.assertAllClose(traj.states[k], x, atol=1e-12)
            self.assertAllClose(traj.outputs[k], ss.C.dot(x), atol=1e-12)
            x = ss.A.dot(x) + ss.B.dot(inputs[k])
        self.assertAllClose(traj.states[20], x, atol=1e-12)

    def test_seeded_noise_is_reproducible(self):
        ss = simulation.discretize(_diffusion(n=6), 0.1)
        inputs = simulation.gaussian_input(6, 50, seed=1)
        first = simulation.simulate(ss, inputs=inputs, noise_state_var=0.1,
                                    noise_obs_var=0.1, seed=3)
        second = simulation.simulate(ss, inputs=inputs, noise_state_var=0.1,
                                     noise_obs_var=0.1, seed=3)
        self.assertAllClose(first.outputs, second.outputs, atol=0)

    def test_overflow(self):
        ss = model.StateSpace(A=2.0 * np.eye(2), B=np.eye(2), C=np.eye(2),
                              D=np.zeros((2, 2)), tau=1.0)
        self.assertRaises(exceptions.StateOverflow, simulation.simulate,
                          ss, inputs=np.ones((100, 2)))

    def test_rejects_negative_variance(self):
        ss = simulation.discretize(_diffusion(n=6), 0.1)
        self.assertRaises(exceptions.InvalidInput, simulation.simulate, ss,
                          inputs=np.zeros((3, 6)), noise_state_var=-1.0)

    def test_input_shape(self):
        ss = simulation.discretize(_diffusion(n=6), 0.1)
        self.assertRaises(exceptions.ShapeMismatch, simulation.simulate, ss,
                          inputs=np.zeros((3, 4)))

    def test_trajectory_files(self):
        ss = simulation.discretize(_diffusion(n=4), 0.1)
        traj = simulation.simulate(
            ss, inputs=simulation.gaussian_input(4, 30, seed=5),
            noise_obs_var=0.01, seed=6, keep_states=False)
        simulation.write_trajectory(self.output_root, traj)
        loaded = simulation.read_trajectory(self.output_root)
        self.assertAllClose(traj.inputs, loaded.inputs, atol=0)
        self.assertAllClose(traj.outputs, loaded.outputs, atol=0)
        self.assertEqual(0.01, loaded.noise_obs_var)
        self.assertEqual(6, loaded.seed)

    def test_observability_matrix(self):
        a = np.array([[0.5, 1.0], [0.0, 0.25]])
        c = np.array([[1.0, 0.0]])
        o = simulation.observability_matrix(a, c, 3)
        self.assertAllClose(np.vstack([c, c.dot(a), c.dot(a).dot(a)]), o)


class Prop1Test(base.TopoidTestCase):

    def test_laplacian_with_negative_identity(self):
        values = shift.eigenvalues(shift.to_laplacian(
            generators.random_regular(10, 3, seed=1)))
        report = simulation.check_prop1(
            scalar_maps.get(scalar_maps.NEG_IDENTITY), values)
        self.assertTrue(report)
        self.assertEqual([], report.violations)

    def test_reports_negative_real_axis(self):
        report = simulation.check_prop1(lambda z: 1j * np.pi * z, [1.0, 2.0])
        self.assertFalse(report)
        self.assertEqual([1.0], [v["eigenvalue"] for v in report.violations])
