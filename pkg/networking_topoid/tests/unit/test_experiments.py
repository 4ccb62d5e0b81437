import os

import ddt
import numpy as np

from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.common import utils
from networking_topoid.experiments import base
from networking_topoid.experiments import metrics
from networking_topoid.experiments import partial_obs
from networking_topoid.experiments import registry
from networking_topoid.tests import base as test_base


class ExperimentConfigTest(test_base.TopoidTestCase):

    def test_defaults_and_provenance(self):
        config = base.ExperimentConfig.build(
            constants.EXPERIMENT_IV_KARATE, {"seed": 3})
        self.assertEqual(70, config.alpha)
        self.assertEqual(35, config.beta)
        self.assertEqual(20 * 34 * 70, config.samples)
        self.assertEqual(base.DEFAULT, config.provenance["alpha"])
        self.assertEqual(base.OVERRIDE, config.provenance["seed"])
        self.assertEqual(3, config.seed)

    def test_full_scale(self):
        desk = base.ExperimentConfig.build(
            constants.EXPERIMENT_MODEL_VALIDATION)
        full = base.ExperimentConfig.build(
            constants.EXPERIMENT_MODEL_VALIDATION, full_scale=True)
        self.assertEqual(20, desk.n)
        self.assertEqual(50, full.n)
        self.assertEqual(50 ** 3, full.samples)

    def test_none_overrides_are_ignored(self):
        config = base.ExperimentConfig.build(
            constants.EXPERIMENT_AP_CONVERGENCE, {"n": None})
        self.assertEqual(30, config.n)
        self.assertEqual(base.DEFAULT, config.provenance["n"])

    def test_unknown_field(self):
        self.assertRaises(exceptions.InvalidConfig,
                          base.ExperimentConfig.build,
                          constants.EXPERIMENT_AP_CONVERGENCE, {"colour": 1})

    def test_unknown_experiment(self):
        self.assertRaises(exceptions.InvalidConfig,
                          base.ExperimentConfig.build, "no_such_experiment")

    def test_depth_must_exceed_nodes(self):
        self.assertRaises(exceptions.DepthTooSmall,
                          base.ExperimentConfig.build,
                          constants.EXPERIMENT_MODEL_VALIDATION,
                          {"n": 10, "alpha": 10})

    def test_invalid_values(self):
        for overrides in ({"tau": 0.0}, {"noise_obs_var": -1.0},
                          {"d": 20}, {"samples": 0}, {"method": "n4sid"}):
            self.assertRaises(exceptions.InvalidConfig,
                              base.ExperimentConfig.build,
                              constants.EXPERIMENT_MODEL_VALIDATION,
                              overrides)
        self.assertRaises(exceptions.InvalidConfig,
                          base.ExperimentConfig.build,
                          constants.EXPERIMENT_IV_DENOISING,
                          {"lengths": [10, 1000]})

    def test_document(self):
        config = base.ExperimentConfig.build(
            constants.EXPERIMENT_PARTIAL_OBS, {"n": 8, "alpha": 18})
        loaded = base.ExperimentConfig.from_dict(config.to_dict())
        self.assertEqual(config, loaded)

    def test_noise_seed_differs_from_input_seed(self):
        self.assertNotEqual(5, base.noise_seed(5))
        self.assertIsNone(base.noise_seed(None))

    def test_native(self):
        document = base.native({"a": np.float64(1.5), 2: np.arange(2),
                                "s": {3, 1}})
        self.assertEqual({"a": 1.5, "2": [0, 1], "s": [1, 3]}, document)


class MetricsTest(test_base.TopoidTestCase):

    def test_nrmse_fitness(self):
        y = np.column_stack([np.sin(np.arange(50.0)),
                             np.cos(np.arange(50.0))])
        self.assertAllClose([100.0, 100.0], metrics.nrmse_fitness(y, y))
        fitness = metrics.nrmse_fitness(y, np.zeros_like(y) + y.mean(axis=0))
        self.assertAllClose([0.0, 0.0], fitness, atol=1e-10)

    def test_support_recovery(self):
        true = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
        found = np.array([[0.0, 1.0, 0.5], [1.0, 0.0, 0.0], [0.5, 0.0, 0.0]])
        support = metrics.support_recovery(found, true, 1e-3)
        self.assertFalse(support["exact"])
        self.assertEqual(1, support["true_positives"])
        self.assertEqual(1, support["false_positives"])
        self.assertEqual(1, support["false_negatives"])

    def test_eigenvalue_errors(self):
        self.assertAllClose([0.5, 0.0],
                            metrics.eigenvalue_errors([1.0, 3.0], [2.5, 1.0]))
        self.assertAlmostEqual(0.5 / 2.5, metrics.relative_eigenvalue_error(
            [1.0, 3.0], [2.5, 1.0]))

    def test_is_monotone(self):
        self.assertTrue(metrics.is_monotone([3.0, 2.0, 2.0, 1.0]))
        self.assertFalse(metrics.is_monotone([3.0, 2.0, 2.5]))


@ddt.ddt
class RunExperimentTest(test_base.TopoidTestCase):

    def _run(self, experiment, **overrides):
        config = base.ExperimentConfig.build(experiment, overrides)
        return registry.run(config), os.path.join(self.output_root,
                                                  experiment)

    def test_every_experiment_has_a_runner(self):
        self.assertEqual(set(base.EXPERIMENTS), set(registry.RUNNERS))

    def test_cospectral_trees(self):
        result, directory = self._run(constants.EXPERIMENT_COSPECTRAL_TREES)
        self.assertEqual([1, 0, -7, 0, 9, 0, 0, 0, 0], result["char_poly"])
        self.assertTrue(result["same_char_poly"])
        self.assertTrue(result["cospectral"])
        self.assertFalse(result["isomorphic"])
        document = utils.load_json(os.path.join(directory,
                                                constants.METRICS_FILE))
        self.assertEqual(constants.EXPERIMENT_COSPECTRAL_TREES,
                         document["experiment"])
        self.assertTrue(document["metrics"]["cospectral"])
        for name in (constants.CONFIG_FILE, "char_poly.csv",
                     "eigenvalues.csv", "left.json", "right.json"):
            self.assertTrue(os.path.exists(os.path.join(directory, name)))

    def test_model_validation_noise_free(self):
        result, directory = self._run(
            constants.EXPERIMENT_MODEL_VALIDATION, n=6, tau=0.1,
            samples=400, alpha=8)
        self.assertLess(result["max_relative_eigenvalue_error"], 1e-5)
        self.assertTrue(result["support"]["exact"])
        self.assertLess(result["fx_relative_error"], 1e-5)
        header, table = utils.read_table_csv(
            os.path.join(directory, "eigenvalues.csv"))
        self.assertEqual(["k", "true", "estimated", "covariance"], header)
        self.assertEqual((6, 4), table.shape)

    def test_ap_convergence_is_monotone(self):
        result, directory = self._run(
            constants.EXPERIMENT_AP_CONVERGENCE, n=8, m=4, starts=2,
            max_iter=300)
        self.assertTrue(result["all_monotone"])
        self.assertEqual({"start_3", "start_4", "diagonal",
                          "nonnegative_exact", "nonnegative_eps"},
                         set(result["runs"]))
        self.assertEqual({}, result["failed_starts"])
        self.assertTrue(os.path.exists(os.path.join(
            directory, "diagonal_" + constants.AP_SERIES_FILE)))
        for name, summary in result["runs"].items():
            self.assertEqual(summary["final_residual"] <= 1e-6,
                             summary["converged"], name)
            if summary["stopped"] == constants.STOP_STEP:
                self.assertLessEqual(summary["final_step"], 1e-6, name)
            else:
                self.assertEqual(constants.STOP_MAX_ITER,
                                 summary["stopped"], name)
                self.assertEqual(300, summary["iterations"], name)
            rate = summary["rate"]
            if rate not in (None, constants.RATE_NOT_LINEAR):
                self.assertTrue(0.0 < rate < 1.0, name)

    def test_iv_denoising(self):
        result, directory = self._run(
            constants.EXPERIMENT_IV_DENOISING, lengths=[200, 400], seeds=2)
        self.assertEqual([200, 400], result["lengths"])
        self.assertEqual(2, len(result["median_angles"]))
        self.assertEqual({}, result["failed_runs"])
        header, table = utils.read_table_csv(
            os.path.join(directory, "angles.csv"))
        self.assertEqual(["seed", "T_200", "T_400"], header)
        self.assertEqual((2, 3), table.shape)

    def test_partial_observation_system(self):
        config = base.ExperimentConfig.build(
            constants.EXPERIMENT_PARTIAL_OBS)
        _, input_graph, ss = partial_obs.build_system(config)
        self.assertEqual((7, 14), ss.C.shape)
        self.assertAllClose(input_graph.matrix + np.eye(14), ss.B)
        self.assertAllClose(ss.C, np.eye(14)[0::2])
        self.assertEqual(14, np.linalg.matrix_rank(
            partial_obs.simulation.observability_matrix(ss.A, ss.C, 14)))

    def test_iv_karate_noise_free(self):
        result, directory = self._run(
            constants.EXPERIMENT_IV_KARATE, tau=1e-2, samples=3000,
            alpha=40, beta=5, noise_state_var=0.0, noise_obs_var=0.0)
        self.assertLess(result["iv_mean_eigenvalue_error"], 1e-3)
        self.assertTrue(result["iv_connected"])
        self.assertEqual(constants.KARATE_EDGES, result["true_edges"])
        self.assertEqual(constants.KARATE_EDGES, result["iv_edges"])
        self.assertIsNotNone(result["covariance_mean_eigenvalue_error"])
        header, table = utils.read_table_csv(
            os.path.join(directory, "eigenvalues.csv"))
        self.assertEqual(["k", "true", "iv", "covariance"], header)
        self.assertEqual((constants.KARATE_NODES, 4), table.shape)
        for name in ("iv_graph.json", "covariance_graph.json"):
            self.assertTrue(os.path.exists(os.path.join(directory, name)))

    def test_partial_obs_full_output_map(self):
        # with every node observed the consistency rows pin the graph
        result, directory = self._run(
            constants.EXPERIMENT_PARTIAL_OBS, n=8, samples=600, alpha=18,
            test_samples=300, observed=base.OBSERVE_ALL)
        self.assertGreaterEqual(result["min_fitness"], 90.0)
        self.assertLess(result["input_eigenvalue_error"], 1e-2)
        self.assertTrue(result["state_support"]["exact"])
        self.assertTrue(result["input_support"]["exact"])
        self.assertLess(result["state_spectrum_error"], 1e-4)
        self.assertLess(result["ap"]["final_residual"], 1e-4)
        for name in ("mode_projection.csv", "fitness.csv", "eigenvalues.csv",
                     "state_graph.json", "input_graph.json",
                     constants.AP_SUMMARY_FILE):
            self.assertTrue(os.path.exists(os.path.join(directory, name)))

    @ddt.data(11, 12, 13)
    def test_partial_obs_default_configuration(self, seed):
        result, directory = self._run(constants.EXPERIMENT_PARTIAL_OBS,
                                      seed=seed)
        header, table = utils.read_table_csv(
            os.path.join(directory, "fitness.csv"))
        self.assertEqual(["channel", "nrmse_fitness"], header)
        self.assertEqual((7, 2), table.shape)
        self.assertTrue(np.isfinite(result["min_fitness"]))
        self.assertLess(result["consistency"]["residual"], 1e-4)
        self.assertGreaterEqual(result["ap"]["iterations"], 1)
        self.assertIn(result["ap"]["stopped"],
                      (constants.STOP_STEP, constants.STOP_MAX_ITER))
