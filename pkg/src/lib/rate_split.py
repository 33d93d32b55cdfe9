""" Han-Kobayashi rate-split engine shared by the deterministic and Gaussian models.

Both models use the same modified multiple-access region at receiver i (j is the other user):

    1. r_ic + r_ip + r_jc + r_jr <= total_i
    2.        r_ip + r_jc + r_jr <= cross_i
    3.        r_ip               <= private_i
    4. r_ic + r_ip               <= direct_i

Only the right-hand sides differ between models, so everything here takes a `MacBounds` per
receiver, the interference-free rates (a_i, b_i) per user and a tolerance. With Fraction
inputs and tol=0 every step is exact.
"""
from dataclasses import dataclass, replace

from .errors import InfeasibleInput, InfeasibleSplit, NoSplit, PreconditionViolated
from .regions import HalfPlane, region_from_constraints

MAX_TRANSFORM_ROUNDS = 64


@dataclass(frozen=True)
class MacBounds:
    total: object
    cross: object
    private: object
    direct: object

    def as_tuple(self):
        return (self.total, self.cross, self.private, self.direct)


@dataclass(frozen=True)
class DetRateSplit:
    """ Common, common-random and private rates per user (bits/symbol). """
    r1c: object = 0
    r1r: object = 0
    r1p: object = 0
    r2c: object = 0
    r2r: object = 0
    r2p: object = 0

    def __post_init__(self):
        for name, value in self.components().items():
            if value < 0:
                raise ValueError(f'{name} must be nonnegative, got {value}')

    def components(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}

    def common(self, i):
        return getattr(self, f'r{i}c')

    def random(self, i):
        return getattr(self, f'r{i}r')

    def private(self, i):
        return getattr(self, f'r{i}p')

    def total(self, i):
        return self.common(i) + self.private(i)

    def totals(self):
        return (self.total(1), self.total(2))


@dataclass(frozen=True)
class ReceiverSaturation:
    receiver: int
    slacks: tuple
    tight: tuple
    saturated: bool


@dataclass(frozen=True)
class SaturationCertificate:
    split: DetRateSplit
    tight: dict
    saturated: tuple
    deviation_bound: tuple = ()


def mac_slacks(bounds, s, receiver):
    """ RHS minus LHS for the four constraints at `receiver`; `bounds` is that receiver's
    MacBounds. """
    i, j = receiver, 3 - receiver
    seen = s.common(j) + s.random(j)
    return (
        bounds.total - (s.common(i) + s.private(i) + seen),
        bounds.cross - (s.private(i) + seen),
        bounds.private - s.private(i),
        bounds.direct - (s.common(i) + s.private(i)),
    )


def saturation(bounds, s, receiver, tol=0):
    """ Saturated iff constraint 1 or 4 has no slack: those are the only ones that bound
    r_ic + r_ip, while constraints 2 and 3 let mass move from r_ip to r_ic. """
    slacks = mac_slacks(bounds, s, receiver)
    if any(v < -tol for v in slacks):
        raise InfeasibleSplit(f'split infeasible at receiver {receiver}: slacks {slacks}')
    tight = tuple(k + 1 for k, v in enumerate(slacks) if v <= tol)
    return ReceiverSaturation(receiver=receiver, slacks=slacks, tight=tight,
                              saturated=(1 in tight or 4 in tight))


def feasible(bounds, s, tol=0):
    return all(v >= -tol for i in (1, 2) for v in mac_slacks(bounds[i], s, i))


def find_feasible_split(bounds, target, tol=0, exact=True, split_type=DetRateSplit):
    """ Zero-random split with the target totals that is feasible at both receivers.

    With the totals fixed, the free variables are (r1p, r2p) and every constraint is a
    half-plane in them, so the search is a polygon vertex scan. The lexicographically
    smallest vertex is returned.
    """
    r1, r2 = target
    if r1 > bounds[1].direct + tol or r2 > bounds[2].direct + tol:
        raise NoSplit(f'target ({r1}, {r2}) exceeds a direct-link bound')
    b1, b2 = bounds[1], bounds[2]
    # half the tolerance leaves room for the 2**-40 rounding of float bounds
    relax = tol / 2
    polygon = region_from_constraints([
        HalfPlane(0, -1, b1.total - r1 - r2 + relax),
        HalfPlane(1, -1, b1.cross - r2 + relax),
        HalfPlane(1, 0, b1.private + relax),
        HalfPlane(-1, 0, b2.total - r1 - r2 + relax),
        HalfPlane(-1, 1, b2.cross - r1 + relax),
        HalfPlane(0, 1, b2.private + relax),
        HalfPlane(1, 0, r1),
        HalfPlane(0, 1, r2),
    ])
    if polygon.empty:
        raise NoSplit(f'no rate split reaches ({r1}, {r2})')
    x, y = min(polygon.vertices)
    if not exact:
        x, y = float(x), float(y)
        return split_type(r1c=max(r1 - x, 0.0), r1p=x, r2c=max(r2 - y, 0.0), r2p=y)
    return split_type(r1c=r1 - x, r1p=x, r2c=r2 - y, r2p=y)


def _move(s, i, common=0, private=0):
    return replace(s, **{f'r{i}c': s.common(i) + common, f'r{i}p': s.private(i) + private})


def _clamp(x):
    return x if x > 0 else 0 * x


def fully_utilize(bounds, free, s, tol=0):
    """ Reallocate between common and private rates, keeping user totals, until
    r_ip >= a_i and r_ic >= b_i for both users.

    Step 1 raises r_ip toward a_i at the expense of r_ic (limited by constraints 2 and 3 at
    receiver i). Step 2 raises r_ic toward b_i at the expense of r_ip (limited by constraints
    1 and 2 at receiver j); whatever is left blocked is moved by the four-way exchange
    (r_ic + d, r_ip - d, r_jp - d, r_jc + d), which leaves both constraint-2 sums unchanged
    and costs d on constraint 1 at both receivers.
    """
    if any(s.random(i) != 0 for i in (1, 2)):
        raise InfeasibleInput('fully-utilize transform expects zero random rates')
    if not feasible(bounds, s, tol):
        raise InfeasibleInput(f'split {s} is not feasible at both receivers')
    for i in (1, 2):
        a, b = free[i]
        if s.total(i) < a + b - tol:
            raise InfeasibleInput(f'user {i} total {s.total(i)} is below its floor {a + b}')

    for _ in range(MAX_TRANSFORM_ROUNDS):
        moved = False
        for i in (1, 2):
            a, _b = free[i]
            short = a - s.private(i)
            if short > tol:
                slack = mac_slacks(bounds[i], s, i)
                d = _clamp(min(short, slack[1], slack[2], s.common(i)))
                if d > 0:
                    s = _move(s, i, common=-d, private=d)
                    moved = True
        for i in (1, 2):
            j = 3 - i
            a_i, b_i = free[i]
            a_j, _b_j = free[j]
            need = b_i - s.common(i)
            if need <= tol:
                continue
            slack_j = mac_slacks(bounds[j], s, j)
            d = _clamp(min(need, slack_j[0], slack_j[1], s.private(i) - a_i))
            if d > 0:
                s = _move(s, i, common=d, private=-d)
                need -= d
                moved = True
            if need > tol:
                slack_i = mac_slacks(bounds[i], s, i)
                slack_j = mac_slacks(bounds[j], s, j)
                d = _clamp(min(need, s.private(i) - a_i, s.private(j) - a_j,
                               slack_i[0], slack_j[0]))
                if d > 0:
                    s = _move(_move(s, i, common=d, private=-d), j, common=d, private=-d)
                    moved = True
        if not moved:
            break

    for i in (1, 2):
        a, b = free[i]
        if s.private(i) < a - tol or s.common(i) < b - tol:
            raise InfeasibleInput(f'could not reach interference-free levels for user {i}: {s}')
    return s


def saturate_random(bounds, free, s, tol=0):
    """ Raise r_jr by the constraint-1 slack at receiver i (capped by constraint 2 there)
    unless constraint 4 is already tight at receiver i. """
    for i in (1, 2):
        a, b = free[i]
        if s.private(i) < a - tol or s.common(i) < b - tol:
            raise PreconditionViolated(
                f'user {i} does not fully utilize its interference-free levels: {s}')
    for i in (1, 2):
        j = 3 - i
        slack = mac_slacks(bounds[i], s, i)
        if slack[3] <= tol:
            continue
        d = _clamp(min(slack[0], slack[1]))
        if d > 0:
            s = replace(s, **{f'r{j}r': s.random(j) + d})
    return s


def certificate(bounds, s, tol=0, deviation_bound=()):
    entries = {i: saturation(bounds[i], s, i, tol) for i in (1, 2)}
    return SaturationCertificate(
        split=s,
        tight={i: entries[i].tight for i in (1, 2)},
        saturated=(entries[1].saturated, entries[2].saturated),
        deviation_bound=deviation_bound,
    )
