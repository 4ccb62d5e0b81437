"""
Edge-list and matrix interchange for graph shift operators.

Edge lists hold one "u v" pair per line with 0-based node indices; text after
'#' is a comment. Matrices use the JSON container {"n", "family", "data"} or
a CSV of rows.
"""
from oslo_log import log as logging

from networking_topoid.common import exceptions
from networking_topoid.common import utils
from networking_topoid.graph import shift

LOG = logging.getLogger(__name__)


def parse_edgelist(lines):
    pairs = []
    for number, line in enumerate(lines, start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        fields = content.split()
        if len(fields) != 2:
            raise exceptions.InvalidInput(
                name="edge list",
                reason="line {}: expected 'u v', got '{}'".format(
                    number, content))
        try:
            pairs.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise exceptions.InvalidInput(
                name="edge list",
                reason="line {}: non-integer node '{}'".format(
                    number, content))
    return pairs


def read_edgelist(path, n=None):
    """Unweighted adjacency shift from an edge-list file.

    The node count defaults to one more than the largest index.
    """
    with open(path) as fd:
        pairs = parse_edgelist(fd)
    if n is None:
        n = 1 + max([max(p) for p in pairs]) if pairs else 0
    LOG.debug("Read {} edges on {} nodes from {}".format(len(pairs), n, path))
    return shift.from_edges(n, pairs)


def write_edgelist(path, g, threshold=0.0):
    with open(path, "w") as fd:
        fd.write("# {} nodes\n".format(shift.matrix_of(g).shape[0]))
        for u, v in sorted(shift.edges(g, threshold)):
            fd.write("{} {}\n".format(u, v))
    return path


def write_json(path, g):
    return utils.write_matrix_json(path, g.matrix, g.family.value)


def read_json(path):
    matrix, family = utils.read_matrix_json(path)
    return shift.GraphShift(matrix=matrix, family=family)


def write_csv(path, g):
    return utils.write_matrix_csv(path, g.matrix)


def read_csv(path, family=shift.Family.GENERIC):
    return shift.GraphShift(matrix=utils.read_matrix_csv(path), family=family)
