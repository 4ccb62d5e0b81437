"""
Synchronization - fan-out of independent numerical jobs over a green pool
"""
import eventlet
from oslo_log import log as logging

from networking_topoid.common import config

LOG = logging.getLogger(__name__)

MESSAGE = "Job for key='{}' {}"


class Runner(object):
    """ Synchronization.Runner.class runs one job per key on a GreenPool.

    Results are collected into dictionaries keyed by the job key, so the
    aggregation does not depend on the completion order.

    Keyword arguments:
    workers_size -- number of green threads (EXPERIMENT.workers if None)
    """

    def __init__(self, workers_size=None):
        self._size = config.option("EXPERIMENT", "workers", workers_size)
        self._workers = eventlet.GreenPool(size=self._size)

    @property
    def size(self):
        return self._size

    def _execute(self, fn, key):
        LOG.debug(MESSAGE.format(key, "started"))
        try:
            return key, fn(key), None
        except Exception as err:
            LOG.error(MESSAGE.format(key, "failed: {}".format(err)))
            return key, None, err

    def run(self, fn, keys):
        """ Run `fn(key)` for every key

        Returns a pair (results, errors) of dictionaries keyed by key.
        A key appears in exactly one of them.
        """
        results = {}
        errors = {}
        keys = list(keys)
        jobs = [self._workers.spawn(self._execute, fn, k) for k in keys]
        for job in jobs:
            key, result, err = job.wait()
            if err is None:
                results[key] = result
            else:
                errors[key] = err
        LOG.info("Completed {} jobs, {} failed".format(len(keys),
                                                       len(errors)))
        return results, errors

    def stop(self):
        """ Gracefully terminates the runner instance """
        self._workers.waitall()
