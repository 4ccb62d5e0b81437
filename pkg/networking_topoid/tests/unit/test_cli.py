import argparse
import os

import fixtures
import numpy as np

from networking_topoid.cmd import topoid
from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.common import utils
from networking_topoid.graph import generators
from networking_topoid.graph import io as graph_io
from networking_topoid.graph import shift
from networking_topoid.identification import spectral
from networking_topoid.reconstruction import target
from networking_topoid.tests import base


class TopoidCommandTest(base.TopoidTestCase):

    def _main(self, *argv):
        return topoid.main(list(argv) + ["--output-dir", self.output_root])

    def test_experiment(self):
        self.assertEqual(constants.EXIT_OK,
                         self._main("experiment", "cospectral_trees"))
        self.assertTrue(os.path.exists(os.path.join(
            self.output_root, "cospectral_trees", constants.METRICS_FILE)))

    def test_experiment_flags_are_recorded(self):
        self.assertEqual(constants.EXIT_OK, self._main(
            "experiment", "iv_denoising", "--lengths", "200", "300",
            "--seeds", "1"))
        document = utils.load_json(os.path.join(
            self.output_root, "iv_denoising", constants.CONFIG_FILE))
        self.assertEqual([200, 300], document["config"]["lengths"])
        self.assertEqual("override", document["provenance"]["seeds"])
        self.assertEqual("default", document["provenance"]["alpha"])

    def test_validation_error_exit_code(self):
        self.assertEqual(constants.EXIT_VALIDATION, self._main(
            "experiment", "model_validation", "--nodes", "6", "--alpha",
            "4"))

    def test_config_json_overrides(self):
        path = os.path.join(self.output_root, "overrides.json")
        utils.dump_json(path, {"experiment": "ignored", "n": 6,
                               "alpha": 5})
        self.assertEqual(constants.EXIT_VALIDATION, self._main(
            "experiment", "model_validation", "--config-json", path))

    def test_config_json_help_names_the_reserved_flags(self):
        self.useFixture(fixtures.EnvironmentVariable("COLUMNS", "400"))
        subparsers = argparse.ArgumentParser().add_subparsers()
        topoid.add_command_parsers(subparsers)
        text = subparsers.choices["experiment"].format_help()
        self.assertIn("--config-json", text)
        self.assertIn("--config-file", text)

    def test_simulate_then_identify(self):
        self.assertEqual(constants.EXIT_OK, self._main(
            "simulate", "--nodes", "6", "--degree", "3", "--tau", "0.1",
            "--samples", "400", "--seed", "2"))
        simulated = os.path.join(self.output_root, "simulate")
        for name in (constants.TRAJECTORY_FILE, constants.TRAJECTORY_SIDECAR,
                     "state_graph.json", "input_graph.json"):
            self.assertTrue(os.path.exists(os.path.join(simulated, name)))

        self.assertEqual(constants.EXIT_OK, self._main(
            "identify", "--trajectory-dir", simulated))
        estimate = spectral.ContinuousEstimate.from_dict(utils.load_json(
            os.path.join(self.output_root, "identify",
                         constants.CONTINUOUS_FILE)))
        state_graph = graph_io.read_json(os.path.join(simulated,
                                                      "state_graph.json"))
        self.assertAllClose(np.sort(estimate.lambda_x)[::-1],
                            shift.eigenvalues(state_graph), atol=1e-6)

    def test_reconstruct(self):
        values = shift.eigenvalues(shift.to_laplacian(
            generators.random_regular(8, 3, seed=1)))
        path = os.path.join(self.output_root, "target.json")
        utils.dump_json(path, [float(v) for v in values])
        self.assertEqual(constants.EXIT_OK, self._main(
            "reconstruct", "--target", path, "--known", "4", "--starts", "2",
            "--max-iter", "30"))
        directory = os.path.join(self.output_root, "reconstruct")
        for name in (constants.AP_SERIES_FILE, constants.AP_SUMMARY_FILE,
                     "structural.json", "spectral.json"):
            self.assertTrue(os.path.exists(os.path.join(directory, name)))

    def test_missing_trajectory_fails(self):
        self.assertEqual(constants.EXIT_FAILURE, self._main(
            "identify", "--trajectory-dir",
            os.path.join(self.output_root, "nowhere")))


class LoadTargetTest(base.TopoidTestCase):

    def _write(self, document):
        path = os.path.join(self.output_root, "target.json")
        utils.dump_json(path, document)
        return path

    def test_eigenvalue_list(self):
        loaded = topoid.load_target(self._write([1.0, 3.0, 2.0]))
        self.assertEqual(constants.SPECTRAL_M, loaded.kind)
        self.assertAllClose([3.0, 2.0, 1.0], loaded.lambda_o)

    def test_partial_with_epsilon(self):
        loaded = topoid.load_target(self._write([1.0, 3.0, 2.0]), known=2,
                                    epsilon=0.1, rho=4.0)
        self.assertEqual(constants.SPECTRAL_M_EPS_M, loaded.kind)
        self.assertAllClose([3.0, 2.0], loaded.lambda_m)
        self.assertEqual(3, loaded.n)
        self.assertEqual(4.0, loaded.rho)

    def test_continuous_estimate(self):
        loaded = topoid.load_target(self._write({"lambda_x": [0.0, 2.0]}))
        self.assertAllClose([2.0, 0.0], loaded.lambda_o)

    def test_spectral_target_document(self):
        document = target.SpectralTarget(lambda_m=[2.0], size=3).to_dict()
        loaded = topoid.load_target(self._write(document))
        self.assertEqual(3, loaded.n)

    def test_document_without_eigenvalues(self):
        self.assertRaises(exceptions.InvalidInput, topoid.load_target,
                          self._write({"values": [1.0]}))
