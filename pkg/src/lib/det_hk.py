""" Han-Kobayashi machinery for the linear deterministic channel: modified MAC regions,
self-saturation certificates and the witness pipeline that constructs an equilibrium split
for every point of C intersected with B. """
from dataclasses import dataclass

from . import rate_split
from .det_regions import ne_region, pos
from .errors import NotInNERegion
from .rate_split import DetRateSplit, MacBounds
from .regions import contains, to_rational


@dataclass(frozen=True)
class InterferenceFreeRates:
    a1: int
    b1: int
    a2: int
    b2: int

    def pair(self, i):
        return (self.a1, self.b1) if i == 1 else (self.a2, self.b2)

    def as_dict(self):
        return {1: self.pair(1), 2: self.pair(2)}


def _check_receiver(receiver):
    if receiver not in (1, 2):
        raise ValueError(f'receiver must be 1 or 2, got {receiver}')


def mac_bounds(ch):
    bounds = {}
    for i in (1, 2):
        n_ii, n_ij, n_ji = ch.direct(i), ch.cross(i), ch.leak(i)
        bounds[i] = MacBounds(total=max(n_ii, n_ij),
                              cross=max(n_ij, pos(n_ii - n_ji)),
                              private=pos(n_ii - n_ji),
                              direct=n_ii)
    return bounds


def interference_free_rates(ch):
    values = {}
    for i in (1, 2):
        n_ii, n_ij, n_ji = ch.direct(i), ch.cross(i), ch.leak(i)
        values[f'a{i}'] = pos(n_ii - n_ji - n_ij)
        values[f'b{i}'] = pos(n_ii - max(n_ii - n_ji, n_ij))
    return InterferenceFreeRates(**values)


def mac_slacks(ch, s, receiver):
    _check_receiver(receiver)
    return rate_split.mac_slacks(mac_bounds(ch)[receiver], s, receiver)


def is_self_saturated(ch, s, receiver):
    _check_receiver(receiver)
    return rate_split.saturation(mac_bounds(ch)[receiver], s, receiver)


def find_feasible_split(ch, target):
    r1, r2 = target
    return rate_split.find_feasible_split(mac_bounds(ch), (to_rational(r1), to_rational(r2)))


def fully_utilize_transform(ch, s):
    return rate_split.fully_utilize(mac_bounds(ch), interference_free_rates(ch).as_dict(), s)


def saturate_random_rates(ch, s):
    return rate_split.saturate_random(mac_bounds(ch), interference_free_rates(ch).as_dict(), s)


def deviation_rate_bound(ch, s, receiver):
    """ Largest rate user i can decode at its own receiver while user j's common and random
    load stays fixed, from the two-user MAC at receiver i. """
    _check_receiver(receiver)
    i, j = receiver, 3 - receiver
    load = s.common(j) + s.random(j)
    return pos(min(ch.direct(i), max(ch.direct(i), ch.cross(i)) - load))


def other_common_decodable(ch, s, receiver):
    """ r_jc + r_jr < n_ij: receiver i can decode user j's common and random messages. """
    _check_receiver(receiver)
    j = 3 - receiver
    return s.common(j) + s.random(j) < ch.cross(receiver)


def ne_witness(ch, target):
    """ feasible split -> fully-utilize transform -> random-rate saturation """
    r1, r2 = to_rational(target[0]), to_rational(target[1])
    if not contains(ne_region(ch), (r1, r2)):
        raise NotInNERegion(f'({r1}, {r2}) is not in the Nash equilibrium region of {ch}')
    split = find_feasible_split(ch, (r1, r2))
    split = fully_utilize_transform(ch, split)
    split = saturate_random_rates(ch, split)
    return rate_split.certificate(
        mac_bounds(ch), split,
        deviation_bound=tuple(deviation_rate_bound(ch, split, i) for i in (1, 2)))


__all__ = ['DetRateSplit', 'InterferenceFreeRates', 'mac_bounds', 'interference_free_rates',
           'mac_slacks', 'is_self_saturated', 'find_feasible_split', 'fully_utilize_transform',
           'saturate_random_rates', 'deviation_rate_bound', 'other_common_decodable',
           'ne_witness']
