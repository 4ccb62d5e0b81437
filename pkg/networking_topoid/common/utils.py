"""
Utilities shared by the graph, identification and reconstruction packages:
matrix interchange files, seeded generators and output directories.
"""
import os

import numpy as np
from oslo_log import log as logging
from oslo_serialization import jsonutils
from oslo_utils import fileutils

from networking_topoid.common import config
from networking_topoid.common import constants
from networking_topoid.common import exceptions

LOG = logging.getLogger(__name__)


def rng(seed):
    """Return a numpy Generator for the seed (None means fresh entropy)."""
    return np.random.default_rng(seed)


def as_matrix(value, name, square=False, shape=None):
    """Convert to a finite float matrix, validating its shape."""
    matrix = np.array(value, dtype=float)
    if matrix.ndim != 2:
        raise exceptions.ShapeMismatch(name=name, expected="2-d array",
                                       actual=matrix.shape)
    if square and matrix.shape[0] != matrix.shape[1]:
        raise exceptions.ShapeMismatch(name=name, expected="square",
                                       actual=matrix.shape)
    if shape is not None and matrix.shape != tuple(shape):
        raise exceptions.ShapeMismatch(name=name, expected=tuple(shape),
                                       actual=matrix.shape)
    if not np.all(np.isfinite(matrix)):
        raise exceptions.InvalidInput(name=name, reason="NaN or Inf entries")
    return matrix


def frozen(array):
    """Copy an array and mark it read-only."""
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


def asymmetry(matrix):
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix - matrix.T)))


def symmetrize(matrix):
    return 0.5 * (matrix + matrix.T)


def ensure_dir(path):
    fileutils.ensure_tree(path)
    return path


def dump_json(path, document):
    with open(path, "w") as fd:
        fd.write(jsonutils.dumps(document, sort_keys=True, indent=2))
        fd.write("\n")
    LOG.debug("Wrote {}".format(path))
    return path


def load_json(path):
    with open(path) as fd:
        return jsonutils.loads(fd.read())


def matrix_document(matrix, family=constants.FAMILY_GENERIC):
    """JSON container {"n", "family", "data"} with row-major data."""
    matrix = np.asarray(matrix, dtype=float)
    return {
        "n": int(matrix.shape[0]),
        "family": family,
        "data": [float(v) for v in matrix.ravel()],
    }


def matrix_from_document(document):
    try:
        n = int(document["n"])
        data = np.array(document["data"], dtype=float)
    except (KeyError, TypeError, ValueError) as err:
        raise exceptions.InvalidInput(name="matrix document",
                                      reason=str(err))
    if data.size != n * n:
        raise exceptions.ShapeMismatch(name="matrix document",
                                       expected=n * n, actual=data.size)
    return (data.reshape(n, n),
            document.get("family", constants.FAMILY_GENERIC))


def array_document(array):
    """{"shape", "data"} with row-major data; None stays None."""
    if array is None:
        return None
    array = np.asarray(array, dtype=float)
    return {"shape": list(array.shape),
            "data": [float(v) for v in array.ravel()]}


def array_from_document(document):
    if document is None:
        return None
    return np.array(document["data"], dtype=float).reshape(
        document["shape"])


def write_matrix_json(path, matrix, family=constants.FAMILY_GENERIC):
    return dump_json(path, matrix_document(matrix, family))


def read_matrix_json(path):
    return matrix_from_document(load_json(path))


def write_matrix_csv(path, matrix):
    np.savetxt(path, np.atleast_2d(matrix), delimiter=",",
               fmt=constants.CSV_FORMAT)
    return path


def read_matrix_csv(path):
    return np.atleast_2d(np.loadtxt(path, delimiter=",", dtype=float))


def write_table_csv(path, header, columns):
    """Write equally long columns under a header row."""
    table = np.column_stack([np.asarray(c, dtype=float) for c in columns])
    np.savetxt(path, table, delimiter=",", fmt=constants.CSV_FORMAT,
               header=",".join(header), comments="")
    return path


def read_table_csv(path):
    with open(path) as fd:
        header = fd.readline().strip().split(",")
    table = np.loadtxt(path, delimiter=",", skiprows=1, dtype=float,
                       ndmin=2)
    return header, table


def output_root(path=None):
    return os.path.abspath(config.option("EXPERIMENT", "output_dir", path))
