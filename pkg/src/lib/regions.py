""" Exact two-dimensional convex region arithmetic.

A region is held as a list of half-planes a1*x + a2*y <= c together with its enumerated
vertices. Coefficients are `fractions.Fraction`, so vertex enumeration and membership are
exact; floating point inputs are snapped to a 2**-40 grid by `to_rational` before they get
here. Regions are assumed bounded, which holds for every rate region built in this package
(each carries per-user upper bounds).

The two coordinates are usually the user rates (R1, R2), but the split search in
`rate_split` reuses the same machinery over the private rates (r1p, r2p).
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations

from .errors import EmptyRegion

RATIONAL_STEP = Fraction(1, 2 ** 40)


def to_rational(value):
    """ Convert an int, Fraction, 'p/q' string or float to a Fraction. Floats are rounded to
    the nearest multiple of 2**-40. """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(round(float(value) * 2 ** 40), 2 ** 40)


@dataclass(frozen=True)
class HalfPlane:
    """ a1*R1 + a2*R2 <= c """
    a1: Fraction
    a2: Fraction
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'a1', to_rational(self.a1))
        object.__setattr__(self, 'a2', to_rational(self.a2))
        object.__setattr__(self, 'c', to_rational(self.c))
        if self.a1 == 0 and self.a2 == 0:
            raise ValueError('half-plane needs a nonzero coefficient')

    def value(self, x, y):
        return self.a1 * x + self.a2 * y

    def slack(self, x, y):
        return self.c - self.value(x, y)


@dataclass(frozen=True)
class RatePair:
    r1: object
    r2: object

    def __post_init__(self):
        if self.r1 < 0 or self.r2 < 0:
            raise ValueError(f'rates must be nonnegative, got ({self.r1}, {self.r2})')

    def __iter__(self):
        return iter((self.r1, self.r2))


@dataclass(frozen=True)
class RateRegion:
    constraints: tuple
    vertices: tuple
    empty: bool

    def __len__(self):
        return len(self.vertices)


NONNEGATIVE = (HalfPlane(-1, 0, 0), HalfPlane(0, -1, 0))


def _intersection(h, g):
    det = h.a1 * g.a2 - h.a2 * g.a1
    if det == 0:
        return None
    x = (h.c * g.a2 - h.a2 * g.c) / det
    y = (h.a1 * g.c - h.c * g.a1) / det
    return (x, y)


def _feasible(constraints, point):
    x, y = point
    return all(h.value(x, y) <= h.c for h in constraints)


def _counterclockwise(points):
    """ Order the vertices of a convex polygon counterclockwise, starting from the
    lexicographically smallest one. """
    if len(points) <= 2:
        return sorted(points)
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)

    def half(p):
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if dy > 0 or (dy == 0 and dx > 0) else 1

    def compare(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return hp - hq
        cross = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx)
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    ordered = sorted(points, key=cmp_to_key(compare))
    start = ordered.index(min(ordered))
    return ordered[start:] + ordered[:start]


def region_from_constraints(constraints):
    """ Build a region from half-planes. Nonnegativity of both coordinates is added when the
    caller did not supply it. Vertices come from all pairwise intersections that satisfy
    every constraint; redundant constraints stay in the list but contribute no vertex. """
    constraints = tuple(constraints)
    for h in NONNEGATIVE:
        if h not in constraints:
            constraints = constraints + (h,)
    found = set()
    for h, g in combinations(constraints, 2):
        p = _intersection(h, g)
        if p is not None and _feasible(constraints, p):
            found.add(p)
    vertices = tuple(_counterclockwise(list(found)))
    return RateRegion(constraints=constraints, vertices=vertices, empty=not vertices)


def box_region(l1, u1, l2, u2):
    return region_from_constraints([
        HalfPlane(1, 0, u1), HalfPlane(-1, 0, -to_rational(l1)),
        HalfPlane(0, 1, u2), HalfPlane(0, -1, -to_rational(l2)),
    ])


def intersect(a, b):
    return region_from_constraints(a.constraints + b.constraints)


def contains(region, p, tol=0):
    """ True iff the point satisfies every constraint within tol (boundary inclusive). """
    if tol < 0:
        raise ValueError('tol must be nonnegative')
    x, y = p
    if tol == 0:
        x, y = to_rational(x), to_rational(y)
    return all(h.value(x, y) <= h.c + tol for h in region.constraints)


def max_weighted_sum(region, w1, w2):
    """ Maximum of w1*R1 + w2*R2 over the region, and every vertex attaining it. """
    if region.empty:
        raise EmptyRegion('cannot maximise over an empty region')
    w1, w2 = to_rational(w1), to_rational(w2)
    if w1 < 0 or w2 < 0 or (w1 == 0 and w2 == 0):
        raise ValueError('weights must be nonnegative and not both zero')
    values = [w1 * x + w2 * y for x, y in region.vertices]
    best = max(values)
    return best, tuple(v for v, val in zip(region.vertices, values) if val == best)


def max_second_coordinate(region, x, tol=0):
    """ Largest y with (x, y) in the region within tol, in floats, or None when the vertical
    line at x misses the region. """
    x = float(x)
    hi, lo = float('inf'), float('-inf')
    for h in region.constraints:
        a1, a2, c = float(h.a1), float(h.a2), float(h.c)
        if a2 > 0:
            hi = min(hi, (c - a1 * x) / a2)
        elif a2 < 0:
            lo = max(lo, (c - a1 * x) / a2)
        elif a1 * x > c + tol:
            return None
    if hi < lo - tol:
        return None
    return hi
