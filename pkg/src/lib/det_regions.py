""" Capacity region, box of individually rational rates, and Nash equilibrium region of the
two-user linear deterministic interference channel. Everything here is exact integer /
rational arithmetic. """
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import InvalidChannel
from .regions import (HalfPlane, box_region, contains, intersect, max_weighted_sum,
                      region_from_constraints)


def pos(x):
    return x if x > 0 else 0


@dataclass(frozen=True)
class DetChannel:
    """ Gains n_ij are the number of levels of transmitter j seen at receiver i. """
    n11: int
    n12: int
    n21: int
    n22: int

    def __post_init__(self):
        for name in ('n11', 'n12', 'n21', 'n22'):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise InvalidChannel(f'{name} must be a nonnegative integer, got {value!r}')

    @property
    def q(self):
        return max(self.n11, self.n12, self.n21, self.n22)

    def gain(self, rx, tx):
        return getattr(self, f'n{rx}{tx}')

    def direct(self, i):
        return self.gain(i, i)

    def cross(self, i):
        """ n_ij: interference seen at receiver i """
        return self.gain(i, 3 - i)

    def leak(self, i):
        """ n_ji: how much of transmitter i reaches the other receiver """
        return self.gain(3 - i, i)

    def as_tuple(self):
        return (self.n11, self.n12, self.n21, self.n22)


def symmetric_channel(n, m):
    return DetChannel(n, m, m, n)


@dataclass(frozen=True)
class Box:
    l1: int
    u1: int
    l2: int
    u2: int

    def lower(self, i):
        return self.l1 if i == 1 else self.l2

    def upper(self, i):
        return self.u1 if i == 1 else self.u2


class SymmetricRegime(Enum):
    NO_INTERFERENCE = 'NoInterference'
    SINGLE_POINT = 'SinglePoint'
    BOUNDARY_HALF = 'Boundary_1/2'
    BOX_INTERIOR = 'BoxInterior'
    BOUNDARY_TWO_THIRDS = 'Boundary_2/3'
    SIMPLEX_CUT = 'SimplexCut'
    BOUNDARY_ONE = 'Boundary_1'
    CAPACITY_EQUALS_NE_COVER = 'CapacityEqualsNE_Cover'
    CAPACITY_EQUALS_BOX = 'CapacityEqualsBox'


@dataclass(frozen=True)
class EfficiencyReport:
    sum_c: Fraction
    sum_ne: Fraction
    efficient_ne: tuple
    face_in_ne: bool


def capacity_region(ch):
    """ The seven capacity inequalities plus nonnegativity. """
    n11, n12, n21, n22 = ch.as_tuple()
    private1, private2 = pos(n11 - n12), pos(n22 - n21)
    return region_from_constraints([
        HalfPlane(1, 0, n11),
        HalfPlane(0, 1, n22),
        HalfPlane(1, 1, private1 + max(n22, n12)),
        HalfPlane(1, 1, private2 + max(n11, n21)),
        HalfPlane(1, 1, max(n21, private1) + max(n12, private2)),
        HalfPlane(2, 1, max(n11, n21) + private1 + max(n12, private2)),
        HalfPlane(1, 2, max(n22, n12) + private2 + max(n21, private1)),
    ])


def _upper(ch, i):
    n_ii, n_ij = ch.direct(i), ch.cross(i)
    l_j = pos(ch.direct(3 - i) - ch.cross(3 - i))
    if n_ij <= n_ii:
        return n_ii - min(l_j, n_ij)
    return min(pos(n_ij - l_j), n_ii)


def box_bounds(ch):
    return Box(l1=pos(ch.n11 - ch.n12), u1=_upper(ch, 1),
               l2=pos(ch.n22 - ch.n21), u2=_upper(ch, 2))


def box_as_region(box):
    return box_region(box.l1, box.u1, box.l2, box.u2)


def ne_region(ch):
    return intersect(capacity_region(ch), box_as_region(box_bounds(ch)))


def symmetric_regime(n, m):
    if n < 1:
        raise InvalidChannel(f'n must be positive, got {n}')
    if m < 0:
        raise InvalidChannel(f'm must be nonnegative, got {m}')
    alpha = Fraction(m, n)
    if alpha == 0:
        return SymmetricRegime.NO_INTERFERENCE
    if alpha < Fraction(1, 2):
        return SymmetricRegime.SINGLE_POINT
    if alpha == Fraction(1, 2):
        return SymmetricRegime.BOUNDARY_HALF
    if alpha < Fraction(2, 3):
        return SymmetricRegime.BOX_INTERIOR
    if alpha == Fraction(2, 3):
        return SymmetricRegime.BOUNDARY_TWO_THIRDS
    if alpha < 1:
        return SymmetricRegime.SIMPLEX_CUT
    if alpha == 1:
        return SymmetricRegime.BOUNDARY_ONE
    if alpha < 2:
        return SymmetricRegime.CAPACITY_EQUALS_NE_COVER
    return SymmetricRegime.CAPACITY_EQUALS_BOX


def efficiency_report(ch):
    """ Max sum rate over C and over C_NE, the NE vertices attaining C's optimum, and whether
    C's whole max-sum face lies inside C_NE. """
    capacity = capacity_region(ch)
    ne = ne_region(ch)
    sum_c, face = max_weighted_sum(capacity, 1, 1)
    sum_ne, ne_best = max_weighted_sum(ne, 1, 1)
    efficient = ne_best if sum_ne == sum_c else ()
    face_in_ne = all(contains(ne, v) for v in face)
    return EfficiencyReport(sum_c=sum_c, sum_ne=sum_ne, efficient_ne=efficient,
                            face_in_ne=face_in_ne)


def symmetric_rate_point(ch):
    """ Largest t with (t, t) in the capacity region. """
    region = capacity_region(ch)
    return min(h.c / (h.a1 + h.a2) for h in region.constraints if h.a1 + h.a2 > 0)


def sweep_row(n, m):
    """ One symmetric-channel row: n, m, alpha, regime, l, u, sum_C, sum_NE """
    ch = symmetric_channel(n, m)
    box = box_bounds(ch)
    report = efficiency_report(ch)
    return {
        'n': n, 'm': m, 'alpha': Fraction(m, n),
        'regime': symmetric_regime(n, m).value,
        'l': box.l1, 'u': box.u1,
        'sum_C': report.sum_c, 'sum_NE': report.sum_ne,
    }


def symmetric_sweep(n, m_max=None):
    m_max = n if m_max is None else m_max
    return [sweep_row(n, m) for m in range(0, m_max + 1)]
