"""
Graph generators and the graphs bundled with the package.
"""
import os

import networkx as nx
import numpy as np
from oslo_log import log as logging

from networking_topoid.common import config
from networking_topoid.common import constants
from networking_topoid.common import exceptions
from networking_topoid.common import utils
from networking_topoid.graph import io as graph_io
from networking_topoid.graph import shift

LOG = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")

SEED_BOUND = 2 ** 31 - 1


def random_regular(n, d, seed, retries=None):
    """Simple d-regular adjacency on n nodes from networkx's pairing model.

    Every attempt draws its own seed from `seed`; attempts networkx rejects
    are repeated up to `retries` times.
    """
    retries = config.option("GRAPH", "regular_retry_budget", retries)
    if n < 1 or d < 0:
        raise exceptions.InfeasibleDegree(n=n, d=d,
                                          reason="n >= 1 and d >= 0 needed")
    if (n * d) % 2:
        raise exceptions.InfeasibleDegree(n=n, d=d, reason="n*d is odd")
    if d >= n:
        raise exceptions.InfeasibleDegree(n=n, d=d, reason="d must be < n")
    generator = utils.rng(seed)
    for attempt in range(1, retries + 1):
        try:
            graph = nx.random_regular_graph(
                d, n, seed=int(generator.integers(SEED_BOUND)))
        except nx.NetworkXError as e:
            LOG.debug("Regular graph attempt {} failed: {}".format(attempt,
                                                                  e))
            continue
        LOG.debug("Generated {}-regular graph on {} nodes after {} "
                  "attempts".format(d, n, attempt))
        return shift.from_edges(n, sorted(graph.edges()))
    raise exceptions.GeneratorExhausted(n=n, d=d, retries=retries)


def path_graph(n):
    return shift.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n):
    return shift.from_edges(n, [(i, j) for i in range(n)
                                for j in range(i + 1, n)])


def empty_graph(n):
    return shift.GraphShift(matrix=np.zeros((n, n)),
                            family=shift.Family.ADJACENCY)


def karate_club():
    """Zachary's karate club: 34 members, 78 undirected ties."""
    graph = graph_io.read_edgelist(
        os.path.join(DATA_DIR, constants.KARATE_EDGELIST),
        n=constants.KARATE_NODES)
    return graph


def cospectral_trees():
    """The two non-isomorphic 8-node trees sharing t^8 - 7t^6 + 9t^4."""
    document = utils.load_json(
        os.path.join(DATA_DIR, constants.COSPECTRAL_TREES))
    return tuple(shift.from_edges(document[side]["n"],
                                  [tuple(e) for e in document[side]["edges"]])
                 for side in ("left", "right"))
