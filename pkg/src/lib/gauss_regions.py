""" Gaussian interference channel: the box of individually rational rates and its shrunken
version B-, the noise-level power split, the Gaussian modified MAC regions, membership in the
Han-Kobayashi region C_HK, the inner/outer sandwich of the Nash equilibrium region, and the
map to the deterministic model.

All logs are base 2 and rates are in bits/symbol. INR_ij is the interference-to-noise ratio
at receiver i caused by transmitter j.
"""
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from . import rate_split
from .analysis_client import AnalysisClient
from .det_regions import DetChannel
from .errors import EmptyInner, InvalidChannel, NoSplit, NotInInnerRegion
from .rate_split import DetRateSplit, MacBounds
from .regions import (HalfPlane, box_region, intersect, max_second_coordinate,
                      region_from_constraints)

SLACK_TOL = 1e-9
BISECTION_TOL = 1e-6


def pos(x):
    return x if x > 0 else 0.0


@dataclass(frozen=True)
class GaussChannel:
    snr1: float
    snr2: float
    inr12: float
    inr21: float

    def __post_init__(self):
        for name in ('snr1', 'snr2', 'inr12', 'inr21'):
            value = getattr(self, name)
            if not value > 0 or math.isinf(value):
                raise InvalidChannel(f'{name} must be a positive finite ratio, got {value!r}')
            object.__setattr__(self, name, float(value))

    def snr(self, i):
        return self.snr1 if i == 1 else self.snr2

    def inr(self, i):
        """ INR_ij, interference seen at receiver i """
        return self.inr12 if i == 1 else self.inr21

    def leak(self, i):
        """ INR_ji, how strongly transmitter i hits the other receiver """
        return self.inr(3 - i)


def symmetric_gauss(snr, inr):
    return GaussChannel(snr, snr, inr, inr)


@dataclass(frozen=True)
class GaussBox:
    l1: float
    u1: float
    l2: float
    u2: float
    u1m: float
    u2m: float

    def lower(self, i):
        return self.l1 if i == 1 else self.l2

    def upper(self, i):
        return self.u1 if i == 1 else self.u2

    def upper_shrunk(self, i):
        return self.u1m if i == 1 else self.u2m


@dataclass(frozen=True)
class UserPowerSplit:
    p_priv_fraction: float
    inr_p: float
    snr_p: float


@dataclass(frozen=True)
class PowerSplit:
    user1: UserPowerSplit
    user2: UserPowerSplit

    def user(self, i):
        return self.user1 if i == 1 else self.user2


@dataclass(frozen=True)
class GaussRateSplit(DetRateSplit):
    """ Adds the private-random rates r_is. """
    r1s: float = 0.0
    r2s: float = 0.0

    def private_random(self, i):
        return getattr(self, f'r{i}s')

    def components(self):
        return {f'r{i}{k}': getattr(self, f'r{i}{k}') for i in (1, 2) for k in 'crps'}


@dataclass(frozen=True)
class HKMembership:
    member: bool
    witness: object = None


@dataclass(frozen=True)
class SandwichRegions:
    box: GaussBox
    inner: tuple
    exact_boundary: tuple = ()


@dataclass(frozen=True)
class GaussWitness:
    certificate: rate_split.SaturationCertificate
    power_split: PowerSplit
    decodable: tuple


def lower_bounds(ch):
    """ Treat-as-noise rates. """
    return tuple(math.log2(1 + ch.snr(i) / (1 + ch.inr(i))) for i in (1, 2))


def sigma_v2(ch, i):
    j = 3 - i
    return max(ch.inr(j) / ch.snr(j), 1 / ch.inr(i))


def _upper(ch, i):
    j = 3 - i
    point_to_point = math.log2(1 + ch.snr(i))
    if sigma_v2(ch, i) > 1:
        return point_to_point
    m = max(ch.inr(j), ch.snr(j) / ch.inr(i))
    bound = (math.log2(1 + ch.snr(i) + ch.inr(i))
             - math.log2(1 + pos(ch.snr(j) - m) / (1 + ch.inr(j) + m)))
    return min(bound, point_to_point)


def upper_bounds(ch):
    return _upper(ch, 1), _upper(ch, 2), (sigma_v2(ch, 1), sigma_v2(ch, 2))


def gauss_box(ch):
    l1, l2 = lower_bounds(ch)
    u1, u2, _ = upper_bounds(ch)
    return GaussBox(l1=l1, u1=u1, l2=l2, u2=u2, u1m=max(u1 - 1, l1), u2m=max(u2 - 1, l2))


def power_split(ch):
    """ Private power is set so the other receiver sees it at (or below) the noise level;
    a user whose cross link is at least as strong as the other's direct link sends no
    private message. """
    users = []
    for i in (1, 2):
        j = 3 - i
        leak = ch.leak(i)
        if leak < ch.snr(j):
            inr_p = min(1.0, leak)
            fraction = inr_p / leak
        else:
            inr_p, fraction = 0.0, 0.0
        users.append(UserPowerSplit(p_priv_fraction=fraction, inr_p=inr_p,
                                    snr_p=ch.snr(i) * fraction))
    return PowerSplit(*users)


def gauss_mac_bounds(ch, ps):
    bounds = {}
    for i in (1, 2):
        snr, inr = ch.snr(i), ch.inr(i)
        snr_p = ps.user(i).snr_p
        inr_p = ps.user(3 - i).inr_p
        bounds[i] = MacBounds(
            total=math.log2(1 + (snr + inr - inr_p) / (inr_p + 1)),
            cross=math.log2(1 + (snr_p + inr - inr_p) / (inr_p + 1)),
            private=math.log2(1 + snr_p / (inr_p + 1)),
            direct=math.log2(1 + snr / (inr_p + 1)),
        )
    return bounds


def gauss_interference_free_rates(ch, ps):
    values = []
    for i in (1, 2):
        snr, inr, snr_p = ch.snr(i), ch.inr(i), ps.user(i).snr_p
        values.append(math.log2(1 + snr_p / (1 + inr)))
        values.append(math.log2(1 + (snr - snr_p) / (1 + snr_p + inr)))
    return tuple(values)


def _free(ch, ps):
    a1, b1, a2, b2 = gauss_interference_free_rates(ch, ps)
    return {1: (a1, b1), 2: (a2, b2)}


def gauss_mac_slacks(ch, ps, s, receiver):
    if receiver not in (1, 2):
        raise ValueError(f'receiver must be 1 or 2, got {receiver}')
    return rate_split.mac_slacks(gauss_mac_bounds(ch, ps)[receiver], s, receiver)


def gauss_other_common_decodable(ch, ps, s, receiver, tol=SLACK_TOL):
    """ r_jc + r_jr strictly below what receiver i can resolve of user j's common layer, by
    more than tol; a load on the boundary within tol reports False. """
    j = 3 - receiver
    inr, inr_p = ch.inr(receiver), ps.user(j).inr_p
    return s.common(j) + s.random(j) < math.log2(1 + (inr - inr_p) / (1 + inr_p)) - tol


def hk_membership(ch, target, tol=SLACK_TOL, ps=None):
    """ Is there a zero-random split with these totals inside both Gaussian modified MAC
    regions (within tol)? Returns the lexicographically smallest (r1p, r2p) witness. """
    ps = power_split(ch) if ps is None else ps
    try:
        split = rate_split.find_feasible_split(
            gauss_mac_bounds(ch, ps), (float(target[0]), float(target[1])), tol=tol,
            exact=False, split_type=GaussRateSplit)
    except NoSplit:
        return HKMembership(member=False)
    return HKMembership(member=True, witness=split)


def classify(ch, very_weak=None):
    """ 'strong' when both cross links are at least the other direct link, 'very_weak' per the
    supplied predicate (default: INR_ij <= sqrt(SNR_i)/2 on both links, a heuristic), else
    'mixed'. """
    if ch.inr21 >= ch.snr2 and ch.inr12 >= ch.snr1:
        return 'strong'
    predicate = very_weak if very_weak is not None else default_very_weak
    return 'very_weak' if predicate(ch) else 'mixed'


def default_very_weak(ch):
    return all(ch.inr(i) <= math.sqrt(ch.snr(i)) / 2 for i in (1, 2))


def _max_second_rate(member, r1, lo, hi, bisection_tol):
    if member(r1, hi):
        return hi
    while hi - lo > bisection_tol:
        mid = (lo + hi) / 2
        if member(r1, mid):
            lo = mid
        else:
            hi = mid
    return lo


def _boundary(ch, ps, r1_lo, r1_hi, r2_lo, r2_hi, resolution, tol, bisection_tol):
    def member(r1, r2):
        return hk_membership(ch, (r1, r2), tol=tol, ps=ps).member

    samples = []
    for r1 in np.linspace(r1_lo, r1_hi, resolution):
        r1 = float(r1)
        if not member(r1, r2_lo):
            break
        samples.append((r1, _max_second_rate(member, r1, r2_lo, r2_hi, bisection_tol)))
    return tuple(samples)


def _closed_form_boundary(region, r1_lo, r1_hi, r2_lo, resolution, tol):
    samples = []
    for r1 in np.linspace(r1_lo, r1_hi, resolution):
        top = max_second_coordinate(region, r1, tol)
        if top is None:
            break
        samples.append((float(r1), max(top, r2_lo)))
    return tuple(samples)


def strong_ne_region(ch, box=None):
    """ C_HK intersected with the box B on a strong channel, where it equals C_NE. """
    box = gauss_box(ch) if box is None else box
    return intersect(strong_region(ch), box_region(box.l1, box.u1, box.l2, box.u2))


def theorem2_regions(ch, resolution=32, tol=SLACK_TOL, bisection_tol=BISECTION_TOL):
    """ Inner boundary of C_HK within B- sampled over R1 in [L1, U1-]; the outer object is the
    box B alone (a relaxation of C intersected with B). For strong channels the boundary of
    C_HK within the full box B is reported as `exact_boundary`; both boundaries are then read
    off the closed-form all-common region instead of bisected. """
    if resolution < 2:
        raise ValueError('resolution must be at least 2')
    box = gauss_box(ch)
    ps = power_split(ch)
    if not hk_membership(ch, (box.l1, box.l2), tol=tol, ps=ps).member:
        raise EmptyInner(f'treat-as-noise corner ({box.l1:.10g}, {box.l2:.10g}) is outside C_HK')
    if classify(ch) != 'strong':
        inner = _boundary(ch, ps, box.l1, box.u1m, box.l2, box.u2m, resolution, tol,
                          bisection_tol)
        return SandwichRegions(box=box, inner=inner)
    # zero private power: C_HK is the closed-form all-common region
    shrunk = intersect(strong_region(ch), box_region(box.l1, box.u1m, box.l2, box.u2m))
    inner = _closed_form_boundary(shrunk, box.l1, box.u1m, box.l2, resolution, tol)
    exact = _closed_form_boundary(strong_ne_region(ch, box), box.l1, box.u1, box.l2,
                                  resolution, tol)
    return SandwichRegions(box=box, inner=inner, exact_boundary=exact)


def strong_region(ch):
    """ Closed-form all-common Han-Kobayashi region (zero private power for both users). """
    return region_from_constraints([
        HalfPlane(1, 1, math.log2(1 + ch.snr1 + ch.inr12)),
        HalfPlane(1, 1, math.log2(1 + ch.snr2 + ch.inr21)),
        HalfPlane(0, 1, math.log2(1 + ch.inr12)),
        HalfPlane(1, 0, math.log2(1 + ch.inr21)),
        HalfPlane(1, 0, math.log2(1 + ch.snr1)),
        HalfPlane(0, 1, math.log2(1 + ch.snr2)),
    ])


def gauss_witness(ch, target, tol=SLACK_TOL):
    """ feasible split -> fully-utilize transform -> random common saturation, then the
    private-random rates r_is = (log(1 + INR^p) - r_ip - tol/2)^+. Targets must lie in B-
    (in B for strong channels, where C_NE equals C_HK within B). """
    r1, r2 = float(target[0]), float(target[1])
    box = gauss_box(ch)
    strong = classify(ch) == 'strong'
    for i, r in ((1, r1), (2, r2)):
        top = box.upper(i) if strong else box.upper_shrunk(i)
        if r < box.lower(i) - tol or r > top + tol:
            raise NotInInnerRegion(f'rate {r:.10g} of user {i} is outside '
                                   f'[{box.lower(i):.10g}, {top:.10g}]')
    ps = power_split(ch)
    membership = hk_membership(ch, (r1, r2), tol=tol, ps=ps)
    if not membership.member:
        raise NotInInnerRegion(f'({r1:.10g}, {r2:.10g}) is not in C_HK')
    bounds = gauss_mac_bounds(ch, ps)
    free = _free(ch, ps)
    split = rate_split.fully_utilize(bounds, free, membership.witness, tol)
    split = rate_split.saturate_random(bounds, free, split, tol)
    private_random = {
        f'r{i}s': pos(math.log2(1 + ps.user(i).inr_p) - split.private(i) - tol / 2)
        for i in (1, 2)}
    split = GaussRateSplit(**{**split.components(), **private_random})
    cert = rate_split.certificate(bounds, split, tol)
    decodable = tuple(gauss_other_common_decodable(ch, ps, split, i, tol) for i in (1, 2))
    return GaussWitness(certificate=cert, power_split=ps, decodable=decodable)


def to_deterministic(ch):
    def levels(x):
        return int(math.floor(math.log2(x))) if x >= 1 else 0
    return DetChannel(levels(ch.snr1), levels(ch.inr12), levels(ch.inr21), levels(ch.snr2))


class GaussianSweep(AnalysisClient):
    """ Bounds over a grid of symmetric channels, one row per (snr, inr). """

    def __init__(self, very_weak=None, verbose=False):
        super().__init__(verbose=verbose, name='GAUSS-SWEEP')
        self.very_weak = very_weak

    def row(self, snr, inr):
        ch = symmetric_gauss(snr, inr)
        box = gauss_box(ch)
        return {'snr': float(snr), 'inr': float(inr), 'L': box.l1, 'U': box.u1,
                'Um': box.u1m, 'class': classify(ch, self.very_weak)}

    def run(self, snrs, inrs):
        rows = []
        for snr in snrs:
            for inr in inrs:
                rows.append(self.row(snr, inr))
        self.debug(f'swept {len(rows)} symmetric channels')
        return pd.DataFrame(rows, columns=['snr', 'inr', 'L', 'U', 'Um', 'class'])


def log_grid(lo, hi, count):
    return np.geomspace(lo, hi, count)
