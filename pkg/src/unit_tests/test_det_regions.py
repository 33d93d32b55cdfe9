""" Unit tests for the deterministic capacity region, box and equilibrium region """
import itertools
import unittest
from fractions import Fraction
from src.lib.det_regions import (Box, DetChannel, SymmetricRegime, box_as_region, box_bounds,
                                 capacity_region, efficiency_report, ne_region, symmetric_channel,
                                 symmetric_rate_point, symmetric_regime, symmetric_sweep)
from src.lib.errors import InvalidChannel
from src.lib.regions import contains
from src.unit_tests import *


class TestDetRegions(unittest.TestCase):

    def test_channel_validation(self):
        with self.assertRaises(InvalidChannel):
            DetChannel(-1, 0, 0, 0)
        with self.assertRaises(InvalidChannel):
            DetChannel(1.5, 0, 0, 0)
        with self.assertRaises(InvalidChannel):
            DetChannel(True, 0, 0, 0)
        ch = DetChannel(3, 2, 1, 4)
        assert ch.q == 4
        assert ch.cross(1) == 2 and ch.leak(1) == 1
        assert ch.cross(2) == 1 and ch.leak(2) == 2

    def test_asymmetric_single_point(self):
        ch = DetChannel(3, 2, 1, 4)
        assert box_bounds(ch) == Box(l1=1, u1=1, l2=3, u2=3)
        assert ne_region(ch).vertices == ((1, 3),)
        assert contains(capacity_region(ch), (1, 3))

    def test_single_point_regime(self):
        ch = symmetric_channel(4, 1)
        assert box_bounds(ch) == Box(3, 3, 3, 3)
        assert ne_region(ch).vertices == ((3, 3),)
        report = efficiency_report(ch)
        assert report.sum_c == report.sum_ne == 6

    def test_box_interior_regime(self):
        ch = symmetric_channel(5, 3)
        assert box_bounds(ch) == Box(2, 3, 2, 3)
        assert set(ne_region(ch).vertices) == {(2, 2), (3, 2), (3, 3), (2, 3)}
        report = efficiency_report(ch)
        assert report.sum_c == 6 and report.sum_ne == 6
        assert report.efficient_ne == ((3, 3),)
        assert not report.face_in_ne

    def test_simplex_cut_regime(self):
        ch = symmetric_channel(4, 3)
        assert capacity_region(ch).vertices == ((0, 0), (4, 0), (3, 2), (2, 3), (0, 4))
        assert ne_region(ch).vertices == ((1, 1), (3, 1), (3, 2), (2, 3), (1, 3))
        assert efficiency_report(ch).face_in_ne

    def test_capacity_inside_box(self):
        ch = symmetric_channel(2, 3)
        assert box_bounds(ch) == Box(0, 2, 0, 2)
        capacity = capacity_region(ch)
        assert capacity.vertices == ((0, 0), (2, 0), (2, 1), (1, 2), (0, 2))
        assert set(ne_region(ch).vertices) == set(capacity.vertices)

    def test_capacity_equals_box(self):
        ch = symmetric_channel(1, 2)
        assert box_bounds(ch) == Box(0, 1, 0, 1)
        assert set(capacity_region(ch).vertices) == {(0, 0), (1, 0), (1, 1), (0, 1)}

    def test_symmetric_regime(self):
        expected = {
            (4, 0): SymmetricRegime.NO_INTERFERENCE,
            (4, 1): SymmetricRegime.SINGLE_POINT,
            (4, 2): SymmetricRegime.BOUNDARY_HALF,
            (5, 3): SymmetricRegime.BOX_INTERIOR,
            (3, 2): SymmetricRegime.BOUNDARY_TWO_THIRDS,
            (4, 3): SymmetricRegime.SIMPLEX_CUT,
            (3, 3): SymmetricRegime.BOUNDARY_ONE,
            (2, 3): SymmetricRegime.CAPACITY_EQUALS_NE_COVER,
            (1, 2): SymmetricRegime.CAPACITY_EQUALS_BOX,
            (1, 5): SymmetricRegime.CAPACITY_EQUALS_BOX,
        }
        for (n, m), regime in expected.items():
            assert symmetric_regime(n, m) is regime, (n, m)
        with self.assertRaises(InvalidChannel):
            symmetric_regime(0, 1)
        with self.assertRaises(InvalidChannel):
            symmetric_regime(3, -1)

    def test_symmetric_sweep(self):
        rows = symmetric_sweep(6)
        assert len(rows) == 7
        assert [r['m'] for r in rows] == list(range(7))
        assert rows[3]['alpha'] == Fraction(1, 2)
        assert rows[3]['regime'] == 'Boundary_1/2'
        assert all(r['sum_C'] == r['sum_NE'] for r in rows)
        assert len(symmetric_sweep(4, m_max=8)) == 9

    def test_symmetric_rate_point(self):
        assert symmetric_rate_point(symmetric_channel(4, 3)) == Fraction(5, 2)
        assert symmetric_rate_point(symmetric_channel(4, 1)) == 3

    def test_treat_as_noise_corner_in_capacity(self):
        for gains in itertools.product(range(4), repeat=4):
            ch = DetChannel(*gains)
            box = box_bounds(ch)
            assert contains(capacity_region(ch), (box.l1, box.l2)), gains
            assert box.l1 <= box.u1 <= ch.n11, gains
            assert box.l2 <= box.u2 <= ch.n22, gains

    def test_equilibrium_region_is_efficient(self):
        for gains in itertools.product(range(4), repeat=4):
            report = efficiency_report(DetChannel(*gains))
            assert report.sum_c == report.sum_ne, gains
            assert len(report.efficient_ne) > 0, gains

    def test_symmetric_family(self):
        for n in range(1, 13):
            for m in range(0, 3 * n + 1):
                ch = symmetric_channel(n, m)
                alpha = Fraction(m, n)
                capacity, box = capacity_region(ch), box_bounds(ch)
                ne = ne_region(ch)
                for v in ne.vertices:
                    assert contains(capacity, v), (n, m, v)
                    assert contains(box_as_region(box), v), (n, m, v)
                t = symmetric_rate_point(ch)
                assert contains(ne, (t, t)), (n, m)
                report = efficiency_report(ch)
                if alpha >= Fraction(2, 3):
                    assert report.face_in_ne, (n, m)
                if Fraction(1, 2) < alpha < Fraction(2, 3):
                    assert report.efficient_ne == ((box.u1, box.u2),), (n, m)
                if alpha >= 2:
                    assert set(capacity.vertices) == set(box_as_region(box).vertices), (n, m)
