import itertools

import ddt
import numpy as np
import scipy.optimize

from networking_topoid.common import exceptions
from networking_topoid.reconstruction import matching
from networking_topoid.tests import base


def _brute_force(cost):
    m, n = cost.shape
    return min(sum(cost[i, j] for i, j in enumerate(columns))
               for columns in itertools.permutations(range(n), m))


def _brute_force_ordered(cost):
    m, n = cost.shape
    return min(sum(cost[i, j] for i, j in enumerate(columns))
               for columns in itertools.combinations(range(n), m))


@ddt.ddt
class SolveAssignmentTest(base.TopoidTestCase):

    @ddt.data(*range(30))
    def test_matches_scipy(self, seed):
        generator = np.random.RandomState(seed)
        m = 1 + seed % 6
        n = m + seed % 3
        cost = generator.rand(m, n)
        assignment, total = matching.solve_assignment(cost)
        rows, cols = scipy.optimize.linear_sum_assignment(cost)
        self.assertAlmostEqual(cost[rows, cols].sum(), total, places=10)
        self.assertEqual(dict(zip(rows.tolist(), cols.tolist())), assignment)

    @ddt.data(*range(10))
    def test_matches_brute_force(self, seed):
        generator = np.random.RandomState(100 + seed)
        m = 1 + seed % 4
        n = m + 2
        # integer costs produce many ties
        cost = generator.randint(0, 4, size=(m, n)).astype(float)
        assignment, total = matching.solve_assignment(cost)
        self.assertAlmostEqual(_brute_force(cost), total, places=12)
        self.assertEqual(m, len(set(assignment.values())))

    def test_lexicographic_tie_break(self):
        assignment, total = matching.solve_assignment(np.zeros((3, 3)))
        self.assertEqual({0: 0, 1: 1, 2: 2}, assignment)
        self.assertEqual(0.0, total)
        assignment, _ = matching.solve_assignment(
            [[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
        self.assertEqual({0: 2, 1: 0}, assignment)

    def test_empty(self):
        self.assertEqual(({}, 0.0),
                         matching.solve_assignment(np.zeros((0, 3))))

    def test_more_rows_than_columns(self):
        self.assertRaises(exceptions.ShapeMismatch,
                          matching.solve_assignment, np.zeros((3, 2)))

    def test_rejects_nan(self):
        cost = np.zeros((2, 2))
        cost[0, 1] = np.nan
        self.assertRaises(exceptions.InvalidInput,
                          matching.solve_assignment, cost)


@ddt.ddt
class SolveOrderedTest(base.TopoidTestCase):

    @ddt.data(*range(15))
    def test_matches_increasing_subsets(self, seed):
        generator = np.random.RandomState(200 + seed)
        m = 1 + seed % 3
        n = m + seed % 5
        cost = generator.rand(m, n)
        assignment, total = matching.solve_ordered(cost)
        self.assertAlmostEqual(_brute_force_ordered(cost), total, places=12)
        positions = [assignment[i] for i in range(m)]
        self.assertEqual(sorted(positions), positions)
        self.assertEqual(m, len(set(positions)))
        self.assertAlmostEqual(total, sum(cost[i, j] for i, j in
                                          assignment.items()), places=12)


class MatchEigenvaluesTest(base.TopoidTestCase):

    def test_exact_targets(self):
        positions, total = matching.match_eigenvalues([5.0, 3.0, 1.0, -1.0],
                                                      [3.0, -1.0])
        self.assertEqual([1, 3], positions)
        self.assertEqual(0.0, total)

    def test_epsilon_band_is_free(self):
        cost = matching.eigenvalue_cost([1.0, 2.0], [1.05], epsilon=0.1)
        self.assertAllClose([[0.0, 0.85 ** 2]], cost)

    def test_cost_with_spectral_cap(self):
        # unmatched 10.0 pays 81 for clipping to rho = 1
        cost = matching.eigenvalue_cost([10.0, 0.5], [0.8], rho=1.0)
        self.assertAllClose([[84.64 - 81.0, 0.09]], cost)
        positions, _ = matching.match_eigenvalues([10.0, 0.5], [0.8],
                                                  rho=1.0)
        self.assertEqual([1], positions)

    def test_positions_keep_order(self):
        values = np.linspace(4.0, -4.0, 9)
        targets = [3.9, 0.2, -2.1]
        positions, total = matching.match_eigenvalues(values, targets)
        self.assertEqual([0, 4, 6], positions)
        self.assertAlmostEqual(0.01 + 0.04 + 0.01, total, places=12)

    def test_dump_cost(self):
        path = self.output_root + "/cost.csv"
        matching.dump_cost(path, [[1.0, 2.0]])
        with open(path) as handle:
            self.assertIn("2", handle.read())
