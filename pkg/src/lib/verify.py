""" Exhaustive property suites over families of channels. Each suite returns a result dict
{'suite', 'cases', 'failures', 'seconds', 'comments'}; `run` collects them in a pandas frame. """
import itertools
import math
import time

import numpy as np
import pandas as pd

from .analysis_client import AnalysisClient
from .det_hk import interference_free_rates, ne_witness
from .det_regions import (DetChannel, box_bounds, capacity_region, efficiency_report, ne_region,
                          symmetric_channel)
from .errors import ICNashError
from .gauss_regions import (GaussChannel, classify, gauss_interference_free_rates,
                            gauss_witness, hk_membership, lower_bounds, power_split,
                            strong_ne_region, theorem2_regions, upper_bounds)
from .regions import contains
from .simulator import (DEFAULT_EPS, CodebookSpec, LevelStrategy, all_strategies,
                        best_deviation, evaluate_pair, monte_carlo_ber, witness_to_strategies)

SUMMARY_COLUMNS = ['suite', 'cases', 'failures', 'seconds']


def det_channels(max_n):
    for gains in itertools.product(range(max_n + 1), repeat=4):
        yield DetChannel(*gains)


def integer_points(region, ch):
    for r1 in range(ch.n11 + 1):
        for r2 in range(ch.n22 + 1):
            if contains(region, (r1, r2)):
                yield (r1, r2)


def integer_vertices(region):
    return [v for v in region.vertices if v[0].denominator == 1 and v[1].denominator == 1]


def corner_channels(snrs, inrs):
    """ Symmetric channels whose treat-as-noise corner is in C_HK: weak (INR <= 1), strong
    (INR >= SNR) or SNR <= INR(1 + INR). """
    for snr in snrs:
        for inr in inrs:
            if inr <= 1 or inr >= snr or snr <= inr * (1 + inr):
                yield GaussChannel(snr, snr, inr, inr)


class Verifier(AnalysisClient):
    def __init__(self, verbose=False, eps=DEFAULT_EPS):
        super().__init__(verbose=verbose, name='VERIFY')
        self.eps = eps
        self.successes = 0
        self.failures = 0
        self.comments = []

    def _suite(self, name, cases):
        """ Run (label, check) pairs; a check fails by returning False or raising. """
        start = time.perf_counter()
        count, failed, comments = 0, 0, []
        for label, check in cases:
            count += 1
            try:
                ok = check()
            except ICNashError as e:
                ok = False
                self.error(f'{name}: {label} raised {e.code}: {e}')
            except (ValueError, ArithmeticError) as e:
                ok = False
                self.error(f'{name}: {label} raised {type(e).__name__}: {e}')
            if not ok:
                failed += 1
                comments.append(str(label))
                self.debug(f'{name}: {label} failed')
        seconds = time.perf_counter() - start
        self.successes += count - failed
        self.failures += failed
        self.info(f'{name}: {count - failed}/{count} passed in {seconds:.2f}s')
        return {'suite': name, 'cases': count, 'failures': failed, 'seconds': seconds,
                'comments': comments}

    def witness_coverage(self, max_n=4):
        """ Every integer point of C intersected with B gets a saturated certificate whose
        totals are at least the treat-as-noise floor. """
        def cases():
            for ch in det_channels(max_n):
                box = box_bounds(ch)
                for point in integer_points(ne_region(ch), ch):
                    def check(ch=ch, point=point, box=box):
                        cert = ne_witness(ch, point)
                        totals = cert.split.totals()
                        return (all(cert.saturated) and tuple(totals) == point
                                and totals[0] >= box.l1 and totals[1] >= box.l2)
                    yield (ch.as_tuple(), point), check
        return self._suite('witness_coverage', cases())

    def free_rates(self, max_n=6):
        def cases():
            for ch in det_channels(max_n):
                def check(ch=ch):
                    free, box = interference_free_rates(ch), box_bounds(ch)
                    return free.a1 + free.b1 == box.l1 and free.a2 + free.b2 == box.l2
                yield ch.as_tuple(), check
        return self._suite('interference_free_rates', cases())

    def efficiency(self, max_n=5):
        def cases():
            for ch in det_channels(max_n):
                def check(ch=ch):
                    report = efficiency_report(ch)
                    return report.sum_c == report.sum_ne and len(report.efficient_ne) > 0
                yield ch.as_tuple(), check
        return self._suite('efficiency', cases())

    def treat_as_noise(self, max_n=6):
        def cases():
            for ch in det_channels(max_n):
                def check(ch=ch):
                    box = box_bounds(ch)
                    return (contains(capacity_region(ch), (box.l1, box.l2))
                            and box.l1 <= box.u1 <= ch.n11 and box.l2 <= box.u2 <= ch.n22)
                yield ch.as_tuple(), check
        return self._suite('treat_as_noise', cases())

    def in_class_game(self, max_q=4):
        """ At every integer corner of C intersected with B, the witness strategies leave no
        in-class deviation above U_i. """
        def cases():
            for ch in det_channels(max_q):
                box = box_bounds(ch)
                for corner in integer_vertices(ne_region(ch)):
                    def check(ch=ch, corner=corner, box=box):
                        s1, s2 = witness_to_strategies(ch, ne_witness(ch, corner))
                        return (best_deviation(ch, s2, 1, self.eps)[1] <= box.u1
                                and best_deviation(ch, s1, 2, self.eps)[1] <= box.u2)
                    yield (ch.as_tuple(), corner), check
        return self._suite('in_class_game', cases())

    def uncoded_floor(self, max_q=4):
        """ Data on the top L_i levels earns exactly L_i with zero error against every
        opponent strategy. """
        def cases():
            for ch in det_channels(max_q):
                box = box_bounds(ch)
                floors = {1: LevelStrategy.uncoded(ch.q, box.l1),
                          2: LevelStrategy.uncoded(ch.q, box.l2)}
                def check(ch=ch, box=box, floors=floors):
                    for other in all_strategies(ch.q):
                        first = evaluate_pair(ch, floors[1], other, self.eps).user1
                        second = evaluate_pair(ch, other, floors[2], self.eps).user2
                        if first.payoff != box.l1 or first.avg_ber != 0:
                            return False
                        if second.payoff != box.l2 or second.avg_ber != 0:
                            return False
                    return True
                yield ch.as_tuple(), check
        return self._suite('uncoded_floor', cases())

    def gauss_identities(self, count=10000, seed=0):
        """ a_i + b_i = L_i and L_i <= U_i <= log(1 + SNR_i) on a log-uniform grid. """
        rng = np.random.default_rng(seed)
        snrs = 10 ** rng.uniform(0, 4, size=(count, 2))
        inrs = 10 ** rng.uniform(-1, 4, size=(count, 2))

        def cases():
            for k in range(count):
                ch = GaussChannel(snrs[k, 0], snrs[k, 1], inrs[k, 0], inrs[k, 1])
                def check(ch=ch):
                    a1, b1, a2, b2 = gauss_interference_free_rates(ch, power_split(ch))
                    l1, l2 = lower_bounds(ch)
                    u1, u2, _ = upper_bounds(ch)
                    return (abs(a1 + b1 - l1) <= 1e-9 and abs(a2 + b2 - l2) <= 1e-9
                            and l1 <= u1 + 1e-12 and l2 <= u2 + 1e-12
                            and u1 <= math.log2(1 + ch.snr1) + 1e-12
                            and u2 <= math.log2(1 + ch.snr2) + 1e-12)
                yield ch, check
        return self._suite('gauss_identities', cases())

    def treat_as_noise_hk(self, snrs, inrs):
        def cases():
            for ch in corner_channels(snrs, inrs):
                def check(ch=ch):
                    return hk_membership(ch, lower_bounds(ch)).member
                yield ch, check
        return self._suite('treat_as_noise_hk', cases())

    def sandwich(self, channels, resolution=16):
        def cases():
            for ch in channels:
                def check(ch=ch):
                    result = theorem2_regions(ch, resolution)
                    box = result.box
                    inside = all(box.l1 <= r1 <= box.u1 and box.l2 <= r2 <= box.u2
                                 for r1, r2 in result.inner)
                    gap = box.u1 - box.u1m <= 1 + 1e-12 and box.u2 - box.u2m <= 1 + 1e-12
                    corner = result.inner and abs(result.inner[0][0] - box.l1) <= 1e-12
                    return inside and gap and bool(corner)
                yield ch, check
        return self._suite('sandwich', cases())

    def strong_equality(self, count=100, seed=0, resolution=256, tol=1e-6, hk_stride=4,
                        witness_stride=16):
        """ On strong channels C_NE = C_HK intersected with B. Every boundary sample lies in
        the closed-form region and the point just above it does not; every `hk_stride`-th
        sample is also a C_HK member while the point above is outside C_HK or B, and every
        `witness_stride`-th sample gets an all-common saturated witness. """
        rng = np.random.default_rng(seed)
        step = 4 * tol

        def cases():
            for _ in range(count):
                snr1, snr2 = 10 ** rng.uniform(0, 3, size=2)
                ch = GaussChannel(snr1, snr2, snr1 * 10 ** rng.uniform(0, 1),
                                  snr2 * 10 ** rng.uniform(0, 1))
                def check(ch=ch):
                    if classify(ch) != 'strong':
                        return False
                    result = theorem2_regions(ch, resolution)
                    box = result.box
                    region = strong_ne_region(ch, box)
                    boundary = result.exact_boundary
                    if len(boundary) == 0 or abs(boundary[0][0] - box.l1) > tol:
                        return False
                    ps = power_split(ch)
                    for k, (r1, r2) in enumerate(boundary):
                        if not contains(region, (r1, r2), tol=tol):
                            return False
                        if contains(region, (r1, r2 + step), tol=tol):
                            return False
                        if k % hk_stride == 0:
                            if not hk_membership(ch, (r1, r2), tol=tol, ps=ps).member:
                                return False
                            above = r2 + step
                            if (above <= box.u2
                                    and hk_membership(ch, (r1, above), tol=tol, ps=ps).member):
                                return False
                        if k % witness_stride == 0:
                            split = gauss_witness(ch, (r1, r2), tol=tol).certificate.split
                            if split.r1p > tol or split.r2p > tol:
                                return False
                    return True
                yield ch, check
        return self._suite('strong_equality', cases())

    def monte_carlo_jam(self, trials=10000, seed=0):
        """ A data level fully jammed by fresh opponent randomness decodes at BER near 1/2, and
        the estimate is identical across repeated runs. """
        ch = symmetric_channel(1, 1)
        jammed = CodebookSpec(1, 1, ('data',), seed=seed)
        jammer = CodebookSpec(1, 0, ('random',), seed=seed + 1)

        def cases():
            def check():
                first = monte_carlo_ber(ch, jammed, jammer, trials, seed)
                second = monte_carlo_ber(ch, jammed, jammer, trials, seed)
                return 0.4 < first[0] < 0.6 and first == second
            yield (trials, seed), check
        return self._suite('monte_carlo_jam', cases())

    def check_success_rate(self, results):
        cases = sum(r['cases'] for r in results)
        failures = sum(r['failures'] for r in results)
        rate = round(100.0 * (cases - failures) / cases, 3) if cases else 100.0
        self.info(f'Out of {cases} total cases, {cases - failures} passed ({rate}% success rate)')
        return failures == 0

    def run(self, max_n=4):
        """ The deterministic suites behind det-verify. """
        results = [self.witness_coverage(max_n), self.free_rates(max_n),
                   self.efficiency(max_n), self.treat_as_noise(max_n)]
        self.check_success_rate(results)
        return summary_frame(results)


def summary_frame(results):
    return pd.DataFrame([[r[c] for c in SUMMARY_COLUMNS] for r in results],
                        columns=SUMMARY_COLUMNS)
