""" Stateful analysis entities (verifier, Gaussian sweep, Monte Carlo runner) inherit
from this class for their logging setup """
import logging


class AnalysisClient:
    def __init__(self, verbose=False, use_logger=True, name='ANALYSIS'):
        self.verbose = verbose
        self.name = name
        if use_logger:
            self.set_logger()

    def debug(self, msg):
        self.logger.debug(msg, extra=self.prefix)

    def info(self, msg):
        self.logger.info(msg, extra=self.prefix)

    def error(self, msg):
        self.logger.error(msg, extra=self.prefix)

    def set_logger(self, prefix=None):
        """ Build a named logger writing '<prefix> - <message>' lines. Handlers from a previous
        call are dropped so repeated construction does not duplicate output.
        Args:
        - prefix (str) - prefix shown on each line; defaults to the entity name
        """
        self.prefix = {'prefix': prefix if prefix else self.name}
        self.logger = logging.getLogger(self.name)
        self.logger.setLevel(logging.DEBUG if self.verbose else logging.INFO)
        self.logger.propagate = False
        for h in list(self.logger.handlers):
            self.logger.removeHandler(h)
        handler = logging.StreamHandler()
        formatter = logging.Formatter('%(prefix)s - %(message)s')
        handler.setFormatter(formatter)
        self.logger.addHandler(handler)
