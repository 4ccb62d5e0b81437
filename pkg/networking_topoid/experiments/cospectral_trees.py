"""
The pair of bundled 8-node trees: same adjacency spectrum, different graphs.
"""
import networkx as nx
import numpy as np
from oslo_log import log as logging

from networking_topoid.experiments import base
from networking_topoid.graph import generators
from networking_topoid.graph import shift

LOG = logging.getLogger(__name__)


def run_cospectral_trees(config):
    report = base.Report(config)
    left, right = generators.cospectral_trees()
    left_poly = shift.char_poly(left)
    right_poly = shift.char_poly(right)
    n = left.n
    report.table("char_poly.csv", ["degree", "left", "right"],
                 [np.arange(n, -1, -1), left_poly, right_poly])
    report.table("eigenvalues.csv", ["k", "left", "right"],
                 [np.arange(n), shift.eigenvalues(left),
                  shift.eigenvalues(right)])
    report.matrix("left.json", left.matrix, left.family.value)
    report.matrix("right.json", right.matrix, right.family.value)
    isomorphic = nx.is_isomorphic(shift.to_networkx(left),
                                  shift.to_networkx(right))
    report.add(
        char_poly=[int(c) for c in left_poly],
        same_char_poly=bool(np.array_equal(left_poly, right_poly)),
        cospectral=shift.is_cospectral(left, right),
        isomorphic=bool(isomorphic),
        laplacian_cospectral=shift.is_cospectral(shift.to_laplacian(left),
                                                 shift.to_laplacian(right)))
    LOG.info("Trees cospectral: {}, isomorphic: {}".format(
        report.metrics["cospectral"], isomorphic))
    return report.close()
