'''
    Locking helper functions for long scans.
'''

from twisted.python.lockfile import FilesystemLock
import os
import time

from .exceptions import WorkbenchException

import logging
logger = logging.getLogger('psworkbench')


def break_lock(config):
    fname = config.get("Execution", "pidfile")
    try:
        os.remove(fname)
        logger.info("Lock file at {0} removed.".format(fname))
    except FileNotFoundError:
        logger.info("No lock file found at {0}.".format(fname))


def lock_age(config):
    '''
    Seconds since the lock file was created, or None without a lock.
    '''
    fname = config.get("Execution", "pidfile")
    try:
        return time.time() - os.lstat(fname).st_mtime
    except FileNotFoundError:
        return None


class ScriptLock():
    '''
    Context manager giving one scan exclusive use of the machine.
    '''
    config = None
    flock = None

    def __init__(self, config):
        self.config = config

    def __enter__(self):
        fname = self.config.get("Execution", "pidfile")
        self.flock = FilesystemLock(fname)
        logger.debug("Obtaining script lock")
        if not self.flock.lock():
            age = lock_age(self.config)
            timeout = self.config.getint("Execution", "timeout")
            if age is not None and age > timeout:
                logger.warning(
                    "Lock at {0} is {1:.0f} seconds old, consider 'psworkbench unlock'.".format(fname, age))
            raise WorkbenchException(
                "Another exclusive run holds the lock at {0}.".format(fname))
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        logger.debug("Releasing script lock")
        try:
            self.flock.unlock()
        except OSError:
            # broken with 'psworkbench unlock' while we were running
            logger.warning("Lock file {0} vanished before release.".format(self.flock.name))
