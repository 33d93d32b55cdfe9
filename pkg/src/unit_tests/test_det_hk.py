""" Unit tests for the deterministic Han-Kobayashi split machinery and equilibrium witnesses """
import itertools
import unittest
from dataclasses import replace
from fractions import Fraction
from src.lib.det_hk import (DetRateSplit, deviation_rate_bound, find_feasible_split,
                            fully_utilize_transform, interference_free_rates, is_self_saturated,
                            mac_bounds, mac_slacks, ne_witness, other_common_decodable,
                            saturate_random_rates)
from src.lib.det_regions import DetChannel, box_bounds, ne_region, symmetric_channel
from src.lib.errors import (InfeasibleInput, InfeasibleSplit, NoSplit, NotInNERegion,
                            PreconditionViolated)
from src.lib.regions import contains
from src.unit_tests import *


class TestDetHK(unittest.TestCase):
    ch = DetChannel(3, 2, 1, 4)

    def test_mac_bounds(self):
        bounds = mac_bounds(self.ch)
        assert bounds[1].as_tuple() == (3, 2, 2, 3)
        assert bounds[2].as_tuple() == (4, 2, 2, 4)

    def test_mac_slacks(self):
        s = DetRateSplit(1, 0, 0, 2, 0, 1)
        assert mac_slacks(self.ch, s, 1) == (0, 0, 2, 2)
        assert mac_slacks(self.ch, s, 2) == (0, 0, 1, 1)
        with self.assertRaises(ValueError):
            mac_slacks(self.ch, s, 3)

    def test_split_rejects_negative_rates(self):
        with self.assertRaises(ValueError):
            DetRateSplit(-1, 0, 0, 0, 0, 0)

    def test_is_self_saturated(self):
        s = DetRateSplit(1, 0, 0, 2, 0, 1)
        rx1 = is_self_saturated(self.ch, s, 1)
        assert rx1.saturated and rx1.tight == (1, 2)
        assert is_self_saturated(self.ch, s, 2).saturated
        # constraint 3 tight alone leaves room to move private rate into common rate
        loose = DetRateSplit(0, 0, 1, 0, 0, 0)
        assert not is_self_saturated(symmetric_channel(3, 2), loose, 1).saturated
        with self.assertRaises(InfeasibleSplit):
            is_self_saturated(self.ch, DetRateSplit(0, 0, 1, 2, 0, 1), 1)

    def test_interference_free_rates(self):
        free = interference_free_rates(self.ch)
        assert (free.a1, free.b1, free.a2, free.b2) == (0, 1, 1, 2)
        for gains in itertools.product(range(5), repeat=4):
            ch = DetChannel(*gains)
            free, box = interference_free_rates(ch), box_bounds(ch)
            assert free.a1 + free.b1 == box.l1, gains
            assert free.a2 + free.b2 == box.l2, gains

    def test_find_feasible_split(self):
        assert find_feasible_split(self.ch, (1, 3)) == DetRateSplit(1, 0, 0, 2, 0, 1)
        assert find_feasible_split(symmetric_channel(3, 2), (1, 1)) == DetRateSplit(1, 0, 0, 1, 0, 0)
        assert find_feasible_split(symmetric_channel(4, 3), (3, 2)) == DetRateSplit(2, 0, 1, 1, 0, 1)
        assert find_feasible_split(DetChannel(3, 0, 0, 4), (3, 4)) == DetRateSplit(0, 0, 3, 0, 0, 4)
        with self.assertRaises(NoSplit):
            find_feasible_split(self.ch, (4, 0))
        with self.assertRaises(NoSplit):
            find_feasible_split(symmetric_channel(3, 2), (3, 3))

    def test_fully_utilize_transform(self):
        ch = symmetric_channel(3, 2)
        s = fully_utilize_transform(ch, DetRateSplit(0, 0, 1, 0, 0, 1))
        assert s == DetRateSplit(1, 0, 0, 1, 0, 0)
        # already fully utilizing: unchanged
        s = DetRateSplit(1, 0, 0, 2, 0, 1)
        assert fully_utilize_transform(self.ch, s) == s

    def test_fully_utilize_rejects_bad_input(self):
        with self.assertRaises(InfeasibleInput):
            fully_utilize_transform(self.ch, DetRateSplit(0, 0, 1, 2, 0, 1))
        with self.assertRaises(InfeasibleInput):
            fully_utilize_transform(self.ch, DetRateSplit(1, 1, 0, 2, 0, 1))
        with self.assertRaises(InfeasibleInput):
            fully_utilize_transform(symmetric_channel(3, 2), DetRateSplit(0, 0, 0, 1, 0, 0))

    def test_saturate_random_rates(self):
        ch = symmetric_channel(3, 2)
        s = saturate_random_rates(ch, DetRateSplit(1, 0, 0, 1, 0, 0))
        assert s == DetRateSplit(1, 1, 0, 1, 1, 0)
        assert is_self_saturated(ch, s, 1).saturated
        assert is_self_saturated(ch, s, 2).saturated
        with self.assertRaises(PreconditionViolated):
            saturate_random_rates(ch, DetRateSplit(0, 0, 1, 0, 0, 1))

    def test_deviation_rate_bound(self):
        s = DetRateSplit(1, 0, 0, 2, 0, 1)
        assert deviation_rate_bound(self.ch, s, 1) == 1
        assert deviation_rate_bound(self.ch, s, 2) == 3
        s = DetRateSplit(1, 1, 0, 1, 1, 0)
        assert deviation_rate_bound(symmetric_channel(3, 2), s, 1) == 1

    def test_other_common_decodable(self):
        s = DetRateSplit(1, 0, 0, 2, 0, 1)
        assert not other_common_decodable(self.ch, s, 1)
        assert not other_common_decodable(self.ch, s, 2)
        assert other_common_decodable(symmetric_channel(3, 2), DetRateSplit(1, 0, 0, 1, 0, 0), 1)

    def test_ne_witness(self):
        cert = ne_witness(self.ch, (1, 3))
        assert cert.split == DetRateSplit(1, 0, 0, 2, 0, 1)
        assert cert.saturated == (True, True)
        assert cert.deviation_bound == (1, 3)
        cert = ne_witness(symmetric_channel(3, 2), ('1', '1'))
        assert cert.split == DetRateSplit(1, 1, 0, 1, 1, 0)
        with self.assertRaises(NotInNERegion):
            ne_witness(self.ch, (2, 3))

    def test_witness_coverage(self):
        for gains in itertools.product(range(4), repeat=4):
            ch = DetChannel(*gains)
            box, region = box_bounds(ch), ne_region(ch)
            for point in itertools.product(range(ch.n11 + 1), range(ch.n22 + 1)):
                if not contains(region, point):
                    continue
                cert = ne_witness(ch, point)
                assert cert.saturated == (True, True), (gains, point)
                assert cert.split.totals() == point, (gains, point)
                assert cert.split.total(1) >= box.l1 and cert.split.total(2) >= box.l2

    def test_saturation_matches_reallocation_search(self):
        def grows(ch, s, i):
            # some extra delta on r_ic or r_ip, on a 1/8 grid, still fits at receiver i
            for k in range(1, 9):
                d = Fraction(k, 8)
                for name in (f'r{i}c', f'r{i}p'):
                    grown = replace(s, **{name: getattr(s, name) + d})
                    if min(mac_slacks(ch, grown, i)) >= 0:
                        return True
            return False

        checked = 0
        for gains in itertools.product(range(3), repeat=4):
            ch = DetChannel(*gains)
            for i in (1, 2):
                j = 3 - i
                for rates in itertools.product(range(3), repeat=4):
                    s = DetRateSplit(**dict(zip((f'r{i}c', f'r{i}p', f'r{j}c', f'r{j}r'),
                                                rates)))
                    if min(mac_slacks(ch, s, i)) < 0:
                        continue
                    checked += 1
                    assert is_self_saturated(ch, s, i).saturated == (not grows(ch, s, i)), \
                        (gains, i, s)
        assert checked > 500
