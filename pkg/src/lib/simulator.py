""" Desk-scale model of the epsilon-game on the linear deterministic channel.

Exact tier: single-symbol level strategies (each of the q levels carries a data bit, a common
random bit or nothing). A receiver knows both strategies' structure and its own transmitter's
random bits; a data bit is decoded with zero error iff it is a GF(2)-linear function of the
received vector, otherwise its error probability is exactly 1/2.

Monte Carlo tier: random codebooks over N symbols with bitwise MAP decoding by exhaustive
codebook scan.

Equilibrium checks are within the level-strategy class only.
"""
import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .analysis_client import AnalysisClient
from .errors import DimensionMismatch, InvalidChannel, NonIntegerSplit, PreconditionViolated, TooLarge

DEFAULT_EPS = 1e-3
MAX_LEVELS = 12
MAX_BLOCKLENGTH = 8
MAX_MESSAGE_BITS = 6
MAX_DECODER_TABLE = 2 ** 16


class Level(Enum):
    DATA = 'data'
    RANDOM = 'random'
    ZERO = 'zero'


@dataclass(frozen=True)
class LevelStrategy:
    """ One action per transmit level, most significant first. """
    levels: tuple

    def __post_init__(self):
        try:
            object.__setattr__(self, 'levels', tuple(Level(l) if not isinstance(l, Level) else l
                                                     for l in self.levels))
        except ValueError as e:
            raise InvalidChannel(f'unknown level action: {e}')

    @classmethod
    def parse(cls, names):
        if isinstance(names, str):
            names = [n for n in names.split(',') if n.strip()]
        return cls(tuple(str(n).strip().lower() for n in names))

    @classmethod
    def uncoded(cls, q, count):
        """ Data on the top `count` levels. """
        return cls(tuple(Level.DATA if t < count else Level.ZERO for t in range(q)))

    @property
    def rate(self):
        return sum(1 for l in self.levels if l is Level.DATA)

    def indices(self, level):
        return [t for t, l in enumerate(self.levels) if l is level]

    def names(self):
        return [l.value for l in self.levels]


@dataclass(frozen=True)
class UserOutcome:
    ber: tuple
    avg_ber: Fraction
    rate: int
    payoff: int


@dataclass(frozen=True)
class GameOutcome:
    user1: UserOutcome
    user2: UserOutcome

    def user(self, i):
        return self.user1 if i == 1 else self.user2

    @property
    def payoffs(self):
        return (self.user1.payoff, self.user2.payoff)


@dataclass(frozen=True)
class ClassNEResult:
    ne: bool
    outcome: GameOutcome
    deviations: dict


@dataclass(frozen=True)
class CodebookSpec:
    blocklength: int
    message_bits: int
    levels: tuple
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.blocklength <= MAX_BLOCKLENGTH:
            raise TooLarge(f'blocklength must be in 1..{MAX_BLOCKLENGTH}, got {self.blocklength}')
        if not 0 <= self.message_bits <= MAX_MESSAGE_BITS:
            raise TooLarge(f'message bits must be in 0..{MAX_MESSAGE_BITS}, '
                           f'got {self.message_bits}')
        object.__setattr__(self, 'levels', LevelStrategy(self.levels).levels)

    @property
    def strategy(self):
        return LevelStrategy(self.levels)


def shift_down(x, k):
    """ Apply S^k along the last axis: entries move k places toward the least significant end
    and the bottom k fall off. """
    x = np.asarray(x, dtype=np.uint8)
    q = x.shape[-1]
    y = np.zeros_like(x)
    if k < q:
        y[..., k:] = x[..., :q - k]
    return y


def transmit(ch, x1, x2):
    """ y_i = S^(q - n_i1) x1 + S^(q - n_i2) x2 over GF(2). """
    q = ch.q
    x1 = np.asarray(x1, dtype=np.uint8)
    x2 = np.asarray(x2, dtype=np.uint8)
    if x1.shape[-1] != q or x2.shape[-1] != q:
        raise DimensionMismatch(f'input vectors must have length q={q}, '
                                f'got {x1.shape[-1]} and {x2.shape[-1]}')
    y1 = shift_down(x1, q - ch.n11) ^ shift_down(x2, q - ch.n12)
    y2 = shift_down(x1, q - ch.n21) ^ shift_down(x2, q - ch.n22)
    return y1, y2


def gf2_row_reduce(matrix):
    """ Reduced row echelon form over GF(2). """
    m = np.array(matrix, dtype=np.uint8) % 2
    rows, cols = m.shape
    pivot_row = 0
    for col in range(cols):
        if pivot_row >= rows:
            break
        candidates = [r for r in range(pivot_row, rows) if m[r, col] == 1]
        if not candidates:
            continue
        curr = candidates[0]
        m[[pivot_row, curr]] = m[[curr, pivot_row]]
        for r in range(rows):
            if r != pivot_row and m[r, col] == 1:
                m[r] ^= m[pivot_row]
        pivot_row += 1
    return m[:pivot_row]


def _check_strategies(ch, *strategies):
    for s in strategies:
        if len(s.levels) != ch.q:
            raise DimensionMismatch(f'strategy has {len(s.levels)} levels, channel has q={ch.q}')


def _user_outcome(ch, user, own, other, eps):
    """ Exact per-bit BER of `user`'s data bits at its own receiver. """
    q = ch.q
    i, j = user, 3 - user
    own_shift = q - ch.direct(i)
    other_shift = q - ch.cross(i)
    data = own.indices(Level.DATA)
    unknown = other.indices(Level.DATA) + other.indices(Level.RANDOM)
    if not data:
        return UserOutcome(ber=(), avg_ber=Fraction(0), rate=0, payoff=0)
    observation = np.zeros((q, len(data) + len(unknown)), dtype=np.uint8)
    for col, t in enumerate(data):
        if t + own_shift < q:
            observation[t + own_shift, col] = 1
    for col, t in enumerate(unknown, start=len(data)):
        if t + other_shift < q:
            observation[t + other_shift, col] = 1
    reduced = gf2_row_reduce(observation)
    weights = reduced.sum(axis=1)
    ber = []
    for k in range(len(data)):
        recoverable = any(weights[r] == 1 and reduced[r, k] == 1 for r in range(len(reduced)))
        ber.append(Fraction(0) if recoverable else Fraction(1, 2))
    avg = sum(ber, Fraction(0)) / len(ber)
    rate = len(data)
    return UserOutcome(ber=tuple(ber), avg_ber=avg, rate=rate,
                       payoff=rate if avg <= eps else 0)


def evaluate_pair(ch, s1, s2, eps=DEFAULT_EPS):
    if not 0 <= eps < 0.5:
        raise ValueError(f'eps must be in [0, 1/2), got {eps}')
    _check_strategies(ch, s1, s2)
    return GameOutcome(user1=_user_outcome(ch, 1, s1, s2, eps),
                       user2=_user_outcome(ch, 2, s2, s1, eps))


def all_strategies(q):
    if q > MAX_LEVELS:
        raise TooLarge(f'3^{q} strategies exceeds the enumeration limit (q <= {MAX_LEVELS})')
    for levels in itertools.product(list(Level), repeat=q):
        yield LevelStrategy(levels)


def best_deviation(ch, fixed, deviator, eps=DEFAULT_EPS):
    """ Best payoff the deviator can reach against `fixed` over all 3^q level strategies.
    Ties keep the first strategy in enumeration order. """
    if deviator not in (1, 2):
        raise ValueError(f'deviator must be 1 or 2, got {deviator}')
    _check_strategies(ch, fixed)
    best, best_payoff = None, -1
    for candidate in all_strategies(ch.q):
        payoff = _user_outcome(ch, deviator, candidate, fixed, eps).payoff
        if payoff > best_payoff:
            best, best_payoff = candidate, payoff
    return best, best_payoff


def is_class_ne(ch, s1, s2, eps=DEFAULT_EPS, eta=0):
    outcome = evaluate_pair(ch, s1, s2, eps)
    deviations = {1: best_deviation(ch, s2, 1, eps), 2: best_deviation(ch, s1, 2, eps)}
    ne = all(deviations[i][1] <= outcome.user(i).payoff + eta for i in (1, 2))
    return ClassNEResult(ne=ne, outcome=outcome, deviations=deviations)


def _as_int(value):
    if Fraction(value).denominator != 1:
        raise NonIntegerSplit(f'split component {value} is not an integer')
    return int(value)


def witness_to_strategies(ch, cert):
    """ Data on the top r_ic common levels (the ones the other receiver sees), Random on the
    next r_ir common levels, Data on the top r_ip private levels, Zero elsewhere. """
    split = cert.split
    strategies = []
    for i in (1, 2):
        rc, rr, rp = (_as_int(split.common(i)), _as_int(split.random(i)),
                      _as_int(split.private(i)))
        common_levels = ch.leak(i)
        private_levels = max(ch.direct(i) - common_levels, 0)
        if rc + rr > common_levels or rp > private_levels:
            raise PreconditionViolated(f'split for user {i} does not fit its level map')
        levels = [Level.ZERO] * ch.q
        for t in range(rc):
            levels[t] = Level.DATA
        for t in range(rc, rc + rr):
            levels[t] = Level.RANDOM
        for t in range(common_levels, common_levels + rp):
            levels[t] = Level.DATA
        strategies.append(LevelStrategy(tuple(levels)))
    return tuple(strategies)


def _unpack(values, width):
    values = np.asarray(values, dtype=np.int64)
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    return ((values[:, None] >> shifts) & 1).astype(np.uint8)


def build_codebook(spec, q):
    """ 2^bits codewords of shape (N, q). Data levels carry the codeword; codewords are distinct
    whenever the N * (#data levels) pattern space allows it. """
    if len(spec.levels) != q:
        raise DimensionMismatch(f'codebook has {len(spec.levels)} levels, channel has q={q}')
    rng = np.random.default_rng(spec.seed)
    data = spec.strategy.indices(Level.DATA)
    count = 2 ** spec.message_bits
    width = spec.blocklength * len(data)
    codebook = np.zeros((count, spec.blocklength, q), dtype=np.uint8)
    if not data:
        return codebook
    if width <= 20 and 2 ** width >= count:
        patterns = _unpack(rng.choice(2 ** width, size=count, replace=False), width)
    else:
        patterns = rng.integers(0, 2, size=(count, width), dtype=np.uint8)
    codebook[:, :, data] = patterns.reshape(count, spec.blocklength, len(data))
    return codebook


def _random_patterns(spec, q):
    """ Every common-random fill of the codebook's random levels, shape (2^(N*r), N, q). """
    rand = spec.strategy.indices(Level.RANDOM)
    width = spec.blocklength * len(rand)
    if width > 16:
        raise TooLarge(f'{width} common-random bits per block is too many to enumerate')
    patterns = np.zeros((2 ** width, spec.blocklength, q), dtype=np.uint8)
    if rand:
        bits = _unpack(np.arange(2 ** width), width)
        patterns[:, :, rand] = bits.reshape(-1, spec.blocklength, len(rand))
    return patterns


class MonteCarloRunner(AnalysisClient):
    """ Empirical BER of two codebooks over the deterministic channel. Each trial draws its
    messages and random bits from a Philox stream seeded by (seed, trial index), so the result
    only depends on (seed, trials). """

    def __init__(self, ch, spec1, spec2, verbose=False):
        super().__init__(verbose=verbose, name='MONTECARLO')
        self.ch = ch
        self.specs = {1: spec1, 2: spec2}
        if spec1.blocklength != spec2.blocklength:
            raise DimensionMismatch('both users must share one blocklength')
        self.blocklength = spec1.blocklength
        self.codebooks = {i: build_codebook(self.specs[i], ch.q) for i in (1, 2)}
        self.tables = {i: self._decoder_table(i) for i in (1, 2)}

    def _shifts(self, i):
        q = self.ch.q
        return q - self.ch.direct(i), q - self.ch.cross(i)

    def _decoder_table(self, i):
        """ Received block for every (own message, opponent codeword + random fill), with the
        receiver's own random bits already removed. """
        j = 3 - i
        if self.specs[i].message_bits == 0:
            return None
        own_shift, other_shift = self._shifts(i)
        fills = _random_patterns(self.specs[j], self.ch.q)
        size = len(self.codebooks[i]) * len(self.codebooks[j]) * len(fills)
        if size > MAX_DECODER_TABLE:
            raise TooLarge(f'decoder table for user {i} has {size} entries '
                           f'(limit {MAX_DECODER_TABLE})')
        own = shift_down(self.codebooks[i], own_shift)
        opponent = self.codebooks[j][:, None] ^ fills[None]
        opponent = shift_down(opponent.reshape(-1, self.blocklength, self.ch.q), other_shift)
        return own[:, None] ^ opponent[None]

    def _draw(self, rng, i):
        spec = self.specs[i]
        message = int(rng.integers(0, 2 ** spec.message_bits))
        fill = np.zeros((self.blocklength, self.ch.q), dtype=np.uint8)
        rand = spec.strategy.indices(Level.RANDOM)
        if rand:
            fill[:, rand] = rng.integers(0, 2, size=(self.blocklength, len(rand)), dtype=np.uint8)
        return message, fill

    def _decode(self, i, received):
        """ Bitwise MAP under a uniform prior; ties decode to 0. """
        bits = self.specs[i].message_bits
        matches = np.all(self.tables[i] == received, axis=(2, 3)).sum(axis=1)
        decoded = 0
        for b in range(bits):
            mask = (np.arange(len(matches)) >> (bits - 1 - b)) & 1
            if matches[mask == 1].sum() > matches[mask == 0].sum():
                decoded |= 1 << (bits - 1 - b)
        return decoded

    def run(self, trials, seed):
        if trials < 1:
            raise ValueError('trials must be at least 1')
        errors = {1: 0, 2: 0}
        for trial in range(trials):
            rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))
            draws = {i: self._draw(rng, i) for i in (1, 2)}
            x = {i: self.codebooks[i][draws[i][0]] ^ draws[i][1] for i in (1, 2)}
            y = transmit(self.ch, x[1], x[2])
            for i in (1, 2):
                bits = self.specs[i].message_bits
                if bits == 0:
                    continue
                own_shift, _ = self._shifts(i)
                received = y[i - 1] ^ shift_down(draws[i][1], own_shift)
                wrong = self._decode(i, received) ^ draws[i][0]
                errors[i] += bin(wrong).count('1')
        ber = tuple(errors[i] / (trials * self.specs[i].message_bits)
                    if self.specs[i].message_bits else 0.0 for i in (1, 2))
        self.debug(f'{trials} trials, seed {seed}: BER {ber}')
        return ber


def monte_carlo_ber(ch, spec1, spec2, trials, seed, verbose=False):
    if seed < 0:
        raise ValueError('seed must be nonnegative')
    return MonteCarloRunner(ch, spec1, spec2, verbose=verbose).run(trials, seed)
