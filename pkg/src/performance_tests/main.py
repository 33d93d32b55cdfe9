# Module to run the acceptance-scale property suites for the deterministic model, the
# Gaussian model and the game simulator, and record timings and failures per suite

from src.lib.gauss_regions import log_grid
from src.lib.verify import Verifier, corner_channels, summary_frame
import logging
import os


class TestDriver:
    def __init__(self, verbose=False):
        self.prefix = {'prefix': 'TestDriver'}
        self.set_logger()
        self.verifier = Verifier(verbose=verbose)

    def set_logger(self):
        self.logger = logging.getLogger(__name__)
        for h in list(self.logger.handlers):
            self.logger.removeHandler(h)
        handler = logging.StreamHandler()
        handler.setLevel(logging.INFO)
        formatter = logging.Formatter('%(prefix)s - %(message)s')
        handler.setFormatter(formatter)
        self.logger.addHandler(handler)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

    def debug(self, msg):
        self.logger.debug(msg, extra=self.prefix)

    def info(self, msg):
        self.logger.info(msg, extra=self.prefix)

    def run_deterministic_tests(self):
        """ Single-point and regime checks live in the unit tests; these are the exhaustive
        enumerations over every channel with small gains """
        return [
            self.verifier.witness_coverage(max_n=4),
            self.verifier.free_rates(max_n=6),
            self.verifier.efficiency(max_n=5),
            self.verifier.treat_as_noise(max_n=6),
        ]

    def run_game_tests(self):
        return [
            self.verifier.in_class_game(max_q=4),
            self.verifier.uncoded_floor(max_q=4),
            self.verifier.monte_carlo_jam(trials=10000, seed=0),
        ]

    def run_gaussian_tests(self):
        snrs, inrs = log_grid(1, 1e4, 10), log_grid(0.1, 1e4, 10)
        # sandwich needs 100 channels with the corner inside C_HK
        channels = list(corner_channels(log_grid(1, 1e4, 20), log_grid(0.1, 1e4, 20)))[:100]
        return [
            self.verifier.gauss_identities(count=10000, seed=0),
            self.verifier.treat_as_noise_hk(snrs, inrs),
            self.verifier.sandwich(channels, resolution=16),
            self.verifier.strong_equality(count=100, seed=0, resolution=256),
        ]

    def write_summary(self, results, filename='acceptance.csv'):
        __location__ = os.path.realpath(os.path.join(os.getcwd(), os.path.dirname(__file__)))
        folder = os.path.join(__location__, 'test_results')
        try:
            os.mkdir(folder)
        except FileExistsError:
            pass
        path = os.path.join(folder, filename)
        summary_frame(results).to_csv(path, index=False)
        self.info(f'Wrote summary of {len(results)} suites to {path}')
        return path


if __name__ == "__main__":

    test_driver = TestDriver()
    test_driver.debug("Running deterministic suites...")
    results = test_driver.run_deterministic_tests()
    test_driver.debug("Running game suites...")
    results += test_driver.run_game_tests()
    test_driver.debug("Running Gaussian suites...")
    results += test_driver.run_gaussian_tests()

    test_driver.write_summary(results)
    test_driver.verifier.check_success_rate(results)
