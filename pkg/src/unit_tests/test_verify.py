import unittest
from src.lib.gauss_regions import symmetric_gauss
from src.lib.rate_split import DetRateSplit
from src.lib.verify import Verifier, corner_channels, summary_frame
from src.unit_tests import *


class TestVerifier(unittest.TestCase):
    verifier = Verifier()

    def test_corner_channels(self):
        channels = list(corner_channels([100, 1e4], [0.5, 10, 50]))
        pairs = [(ch.snr1, ch.inr12) for ch in channels]
        assert (1e4, 10) not in pairs
        assert (100, 10) in pairs and (1e4, 0.5) in pairs
        assert all(ch.snr1 == ch.snr2 and ch.inr12 == ch.inr21 for ch in channels)

    def test_small_suites(self):
        results = [self.verifier.witness_coverage(max_n=2),
                   self.verifier.in_class_game(max_q=2),
                   self.verifier.sandwich([symmetric_gauss(100, 10), symmetric_gauss(100, 0.5)],
                                          resolution=4)]
        assert all(r['failures'] == 0 for r in results)
        assert results[2]['cases'] == 2
        assert self.verifier.check_success_rate(results)
        frame = summary_frame(results)
        assert list(frame.columns) == ['suite', 'cases', 'failures', 'seconds']
        assert list(frame['suite']) == ['witness_coverage', 'in_class_game', 'sandwich']

    def test_monte_carlo_jam(self):
        result = self.verifier.monte_carlo_jam(trials=2000, seed=0)
        assert result['cases'] == 1 and result['failures'] == 0

    def test_raising_case_counts_as_failure(self):
        def bad_split():
            DetRateSplit(-1, 0, 0, 0, 0, 0)

        def zero_division():
            return 1 / 0

        verifier = Verifier()
        result = verifier._suite('raising', [('negative', bad_split), ('zero', zero_division),
                                             ('fine', lambda: True)])
        assert result['cases'] == 3 and result['failures'] == 2
        assert result['comments'] == ['negative', 'zero']

    def test_strong_equality(self):
        result = self.verifier.strong_equality(count=3, seed=1, resolution=32)
        assert result['cases'] == 3 and result['failures'] == 0
