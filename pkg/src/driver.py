""" Command-line driver. Run from the repository root:

    python3 -m src.driver <subcommand> [options]

Every subcommand writes one artifact (JSON by default, CSV with --format csv) to stdout or
--output. Logs go to stderr. Exit status: 0 on success, 1 on a domain error (with a JSON error
object on stderr), 2 on a usage error.
"""
import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass

import pandas as pd

from src.lib import codec
from src.lib.det_hk import interference_free_rates, ne_witness, other_common_decodable
from src.lib.det_regions import (DetChannel, box_bounds, capacity_region, efficiency_report,
                                 ne_region, symmetric_rate_point, symmetric_sweep)
from src.lib.errors import ICNashError
from src.lib.gauss_regions import (SLACK_TOL, GaussChannel, GaussianSweep, classify, gauss_box,
                                   gauss_witness, log_grid, power_split, sigma_v2,
                                   theorem2_regions)
from src.lib.regions import to_rational
from src.lib.simulator import (DEFAULT_EPS, CodebookSpec, LevelStrategy, best_deviation,
                               evaluate_pair, is_class_ne, monte_carlo_ber,
                               witness_to_strategies)
from src.lib.verify import Verifier

SEED_ENV = 'IC_NASH_SEED'


@dataclass
class Artifact:
    """ `payload` is rendered as JSON; `frame` (when given) as CSV, otherwise the payload is
    flattened into a single CSV row. """
    payload: object
    frame: pd.DataFrame = None
    failed: bool = False


def rate_arg(text):
    try:
        value = to_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f'not a rate: {text!r}')
    if value < 0:
        raise argparse.ArgumentTypeError(f'rates must be nonnegative, got {text}')
    return value


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'not an integer: {text!r}')
    if value < 1:
        raise argparse.ArgumentTypeError(f'must be at least 1, got {value}')
    return value


def det_channel(args):
    return DetChannel(args.n11, args.n12, args.n21, args.n22)


def gauss_channel(args):
    return GaussChannel(args.snr1, args.snr2, args.inr12, args.inr21)


def load_strategy(levels, path, flag):
    if levels and path:
        raise argparse.ArgumentTypeError(f'use either --levels{flag} or --strategy{flag}')
    if path:
        with open(path) as f:
            return LevelStrategy.parse(json.load(f)['levels'])
    if levels:
        return LevelStrategy.parse(levels)
    raise argparse.ArgumentTypeError(f'one of --levels{flag} or --strategy{flag} is required')


def strategies(args):
    ch = det_channel(args)
    if args.witness:
        return ch, witness_to_strategies(ch, ne_witness(ch, args.witness))
    return ch, (load_strategy(args.levels1, args.strategy1, 1),
                load_strategy(args.levels2, args.strategy2, 2))


def det_region(args):
    region = capacity_region(det_channel(args))
    return Artifact(codec.region_to_dict(region), codec.region_to_frame(region))


def det_box(args):
    ch = det_channel(args)
    box = box_bounds(ch)
    free = interference_free_rates(ch)
    payload = codec.box_to_dict(box)
    payload['interference_free'] = {k: codec.rational(v) for k, v in
                                    (('a1', free.a1), ('b1', free.b1),
                                     ('a2', free.a2), ('b2', free.b2))}
    return Artifact(payload)


def det_ne(args):
    ch = det_channel(args)
    region = ne_region(ch)
    payload = codec.region_to_dict(region)
    if not region.empty:
        report = efficiency_report(ch)
        payload['efficiency'] = {
            'sum_C': codec.rational(report.sum_c),
            'sum_NE': codec.rational(report.sum_ne),
            'efficient_ne': [[codec.rational(x), codec.rational(y)]
                             for x, y in report.efficient_ne],
            'face_in_ne': report.face_in_ne,
        }
        payload['symmetric_rate'] = codec.rational(symmetric_rate_point(ch))
    return Artifact(payload, codec.region_to_frame(region))


def det_witness(args):
    ch = det_channel(args)
    cert = ne_witness(ch, (args.r1, args.r2))
    payload = codec.certificate_to_dict(cert)
    payload['other_common_decodable'] = [other_common_decodable(ch, cert.split, i)
                                         for i in (1, 2)]
    frame = pd.DataFrame([{k: float(v) for k, v in cert.split.components().items()}])
    return Artifact(payload, frame)


def det_sweep(args):
    rows = symmetric_sweep(args.n, args.m_max)
    columns = ['n', 'm', 'alpha', 'regime', 'l', 'u', 'sum_C', 'sum_NE']
    return Artifact(codec.rows_to_records(rows), codec.rows_to_frame(rows, columns))


def det_verify(args):
    verifier = Verifier(verbose=args.verbose)
    frame = verifier.run(args.max_n)
    failed = int(frame['failures'].sum()) > 0
    return Artifact({'suites': codec.frame_to_records(frame), 'passed': not failed},
                    frame, failed=failed)


def gauss_bounds(args):
    if args.sweep:
        sweep = GaussianSweep(verbose=args.verbose)
        frame = sweep.run(log_grid(args.snr_min, args.snr_max, args.points),
                          log_grid(args.inr_min, args.inr_max, args.points))
        return Artifact(codec.frame_to_records(frame), frame)
    ch = gauss_channel(args)
    sigma = (sigma_v2(ch, 1), sigma_v2(ch, 2))
    return Artifact(codec.gauss_bounds_to_dict(gauss_box(ch), sigma, power_split(ch),
                                               classify(ch)))


def gauss_region(args):
    ch = gauss_channel(args)
    result = theorem2_regions(ch, resolution=args.resolution)
    sigma = (sigma_v2(ch, 1), sigma_v2(ch, 2))
    frame = pd.DataFrame(list(result.inner), columns=['r1', 'r2'])
    return Artifact(codec.sandwich_to_dict(result, sigma, power_split(ch), classify(ch)), frame)


def gauss_witness_cmd(args):
    ch = gauss_channel(args)
    witness = gauss_witness(ch, (args.r1, args.r2), tol=args.tol)
    frame = pd.DataFrame([{k: float(v) for k, v in
                           witness.certificate.split.components().items()}])
    return Artifact(codec.gauss_witness_to_dict(witness), frame)


def outcome_frame(outcome):
    return pd.DataFrame([{'user': i, 'rate': outcome.user(i).rate,
                          'avg_ber': float(outcome.user(i).avg_ber),
                          'payoff': outcome.user(i).payoff} for i in (1, 2)])


def sim_play(args):
    ch, (s1, s2) = strategies(args)
    outcome = evaluate_pair(ch, s1, s2, args.eps)
    payload = {'strategies': [codec.strategy_to_dict(s1), codec.strategy_to_dict(s2)]}
    payload.update(codec.outcome_to_dict(outcome))
    return Artifact(payload, outcome_frame(outcome))


def sim_deviate(args):
    ch, (s1, s2) = strategies(args)
    if args.deviator:
        fixed = s2 if args.deviator == 1 else s1
        best, payoff = best_deviation(ch, fixed, args.deviator, args.eps)
        payload = {'deviator': args.deviator, 'strategy': codec.strategy_to_dict(best),
                   'payoff': payoff, 'scope': codec.CLASS_SCOPE}
        return Artifact(payload)
    result = is_class_ne(ch, s1, s2, args.eps, args.eta)
    payload = {'strategies': [codec.strategy_to_dict(s1), codec.strategy_to_dict(s2)]}
    payload.update(codec.outcome_to_dict(result.outcome, result))
    return Artifact(payload, outcome_frame(result.outcome))


def sim_mc(args):
    ch = det_channel(args)
    spec1 = CodebookSpec(args.blocklength, args.bits1, LevelStrategy.parse(args.levels1).levels,
                         seed=args.seed)
    spec2 = CodebookSpec(args.blocklength, args.bits2, LevelStrategy.parse(args.levels2).levels,
                         seed=args.seed + 1)
    ber = monte_carlo_ber(ch, spec1, spec2, args.trials, args.seed, verbose=args.verbose)
    payload = {'ber': [codec.real(b) for b in ber], 'trials': args.trials, 'seed': args.seed,
               'blocklength': args.blocklength, 'message_bits': [args.bits1, args.bits2]}
    return Artifact(payload, pd.DataFrame([{'user': i, 'ber': ber[i - 1]} for i in (1, 2)]))


def default_seed():
    value = os.environ.get(SEED_ENV, '0')
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f'{SEED_ENV} must be an integer, got {value!r}')


def add_det_channel(parser):
    for name in ('n11', 'n12', 'n21', 'n22'):
        parser.add_argument(f'--{name}', type=int, required=True,
                            help=f'deterministic gain {name} (levels of tx {name[2]} at rx {name[1]})')


def add_gauss_channel(parser, required=True):
    for name in ('snr1', 'snr2', 'inr12', 'inr21'):
        parser.add_argument(f'--{name}', type=float, required=required,
                            help=f'{name.upper()} as a linear power ratio')


def add_strategies(parser):
    for i in (1, 2):
        parser.add_argument(f'--levels{i}', type=str,
                            help=f'user {i} level actions, most significant first, '
                                 'e.g. data,random,zero')
        parser.add_argument(f'--strategy{i}', type=str,
                            help=f'JSON file {{"levels": [...]}} with user {i} level actions')
    parser.add_argument('--witness', type=rate_arg, nargs=2, metavar=('R1', 'R2'),
                        help='play the level strategies of the equilibrium witness at (R1, R2)')
    parser.add_argument('--eps', type=float, default=DEFAULT_EPS,
                        help=f'error threshold of the game (default {DEFAULT_EPS})')


# one line per subcommand: the result it computes or checks, shown by --help and the listing
DESCRIPTIONS = {
    'det-region': 'Capacity region C of the linear deterministic channel: the seven rate '
                  'inequalities and their vertices.',
    'det-box': 'Box B of individually rational rates: the treat-as-noise floor L_i and the '
               'saturation ceiling U_i that no unilateral deviation can beat.',
    'det-ne': 'Nash equilibrium region C_NE = C intersected with B, with the efficiency '
              'report of its max-sum face.',
    'det-witness': 'Achievability of C_NE = C intersected with B: a self-saturated randomized '
                   'Han-Kobayashi rate split for (R1, R2).',
    'det-sweep': 'Symmetric sweep over alpha = m/n: the five-regime classification of C, B '
                 'and C_NE.',
    'det-verify': 'Exhaustive checks of C_NE = C intersected with B: witness coverage, '
                  'a_i + b_i = L_i, the treat-as-noise corner and efficiency.',
    'gauss-bounds': 'Gaussian box B and shrunken box B-: treat-as-noise floor L_i, closed-form '
                    'saturation ceiling U_i, power split and channel class.',
    'gauss-region': 'Gaussian sandwich: C_HK within B- is inside C_NE, which is inside C '
                    'within B; inner boundary samples and the outer box B.',
    'gauss-witness': 'Gaussian randomized Han-Kobayashi witness: saturated rate split with '
                     'private-random rates for (R1, R2) in C_HK within B-.',
    'sim-play': 'Exact payoffs of a level-strategy pair in the epsilon-game; uncoded data on '
                'the top L_i levels always earns the floor L_i.',
    'sim-deviate': 'Exhaustive in-class deviation search against the ceiling U_i; equilibrium '
                   'within the level-strategy class only.',
    'sim-mc': 'Monte Carlo BER of random codebooks with bitwise MAP decoding (randomized '
              'Han-Kobayashi scheme at desk scale).',
}


def add_command(sub, name, common):
    return sub.add_parser(name, parents=[common], help=DESCRIPTIONS[name],
                          description=DESCRIPTIONS[name])


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='store_true', help='increase output verbosity')
    common.add_argument('--format', choices=['json', 'csv'], default='json',
                        help='artifact format (default json)')
    common.add_argument('-o', '--output', type=str,
                        help='file to write the artifact to; stdout if not given')

    parser = argparse.ArgumentParser(
        prog='python3 -m src.driver',
        description='Nash equilibrium regions of the two-user interference channel')
    sub = parser.add_subparsers(dest='command', metavar='subcommand')
    sub.required = True

    p = add_command(sub, 'det-region', common)
    add_det_channel(p)
    p.set_defaults(handler=det_region)

    p = add_command(sub, 'det-box', common)
    add_det_channel(p)
    p.set_defaults(handler=det_box)

    p = add_command(sub, 'det-ne', common)
    add_det_channel(p)
    p.set_defaults(handler=det_ne)

    p = add_command(sub, 'det-witness', common)
    add_det_channel(p)
    p.add_argument('--r1', type=rate_arg, required=True, help='user 1 rate, e.g. 1 or 3/2')
    p.add_argument('--r2', type=rate_arg, required=True, help='user 2 rate')
    p.set_defaults(handler=det_witness)

    p = add_command(sub, 'det-sweep', common)
    p.add_argument('--n', type=positive_int, required=True, help='direct gain n')
    p.add_argument('--m-max', type=int, help='largest cross gain m (default n)')
    p.set_defaults(handler=det_sweep)

    p = add_command(sub, 'det-verify', common)
    p.add_argument('--max-n', type=int, default=4, help='largest gain enumerated (default 4)')
    p.set_defaults(handler=det_verify)

    p = add_command(sub, 'gauss-bounds', common)
    add_gauss_channel(p, required=False)
    p.add_argument('--sweep', action='store_true',
                   help='sweep symmetric channels over a log grid instead of one channel')
    p.add_argument('--snr-min', type=float, default=1.0)
    p.add_argument('--snr-max', type=float, default=1e4)
    p.add_argument('--inr-min', type=float, default=0.1)
    p.add_argument('--inr-max', type=float, default=1e4)
    p.add_argument('--points', type=positive_int, default=9, help='grid points per axis')
    p.set_defaults(handler=gauss_bounds)

    p = add_command(sub, 'gauss-region', common)
    add_gauss_channel(p)
    p.add_argument('--resolution', type=int, default=32, help='boundary samples (default 32)')
    p.set_defaults(handler=gauss_region)

    p = add_command(sub, 'gauss-witness', common)
    add_gauss_channel(p)
    p.add_argument('--r1', type=float, required=True)
    p.add_argument('--r2', type=float, required=True)
    p.add_argument('--tol', type=float, default=SLACK_TOL,
                   help=f'slack tolerance in bits (default {SLACK_TOL})')
    p.set_defaults(handler=gauss_witness_cmd)

    p = add_command(sub, 'sim-play', common)
    add_det_channel(p)
    add_strategies(p)
    p.set_defaults(handler=sim_play)

    p = add_command(sub, 'sim-deviate', common)
    add_det_channel(p)
    add_strategies(p)
    p.add_argument('--deviator', type=int, choices=[1, 2],
                   help='search one user only; both users and the NE check if omitted')
    p.add_argument('--eta', type=float, default=0.0, help='deviation gain tolerance')
    p.set_defaults(handler=sim_deviate)

    p = add_command(sub, 'sim-mc', common)
    add_det_channel(p)
    p.add_argument('--levels1', type=str, required=True)
    p.add_argument('--levels2', type=str, required=True)
    p.add_argument('--bits1', type=int, default=1, help='user 1 message bits per block')
    p.add_argument('--bits2', type=int, default=0, help='user 2 message bits per block')
    p.add_argument('--blocklength', type=int, default=1)
    p.add_argument('--trials', type=positive_int, default=10000)
    p.add_argument('--seed', type=int,
                   help=f'random seed (default ${SEED_ENV} or 0); codebooks use seed and seed + 1')
    p.set_defaults(handler=sim_mc)
    return parser


def set_logger(verbose=False):
    """ Driver logger on stderr, prefixed like every other entity's. """
    logger = logging.getLogger('driver')
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(prefix)s - %(message)s'))
    logger.addHandler(handler)
    logger.propagate = False
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
    return logging.LoggerAdapter(logger, {'prefix': 'DRIVER'})


def render(artifact, fmt):
    if fmt == 'json':
        return codec.to_json(artifact.payload)
    frame = artifact.frame
    if frame is None:
        frame = pd.json_normalize(artifact.payload)
    return codec.frame_to_csv(frame)


def check_args(parser, args):
    if args.command == 'gauss-bounds' and not args.sweep:
        missing = [f'--{n}' for n in ('snr1', 'snr2', 'inr12', 'inr21')
                   if getattr(args, n) is None]
        if missing:
            parser.error(f'the following arguments are required: {", ".join(missing)}')
    if args.command == 'sim-mc' and args.seed is None:
        try:
            args.seed = default_seed()
        except argparse.ArgumentTypeError as e:
            parser.error(str(e))


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        check_args(parser, args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    logger = set_logger(args.verbose)
    logger.debug(f'Running {args.command}')
    try:
        artifact = args.handler(args)
    except argparse.ArgumentTypeError as e:
        try:
            parser.error(str(e))
        except SystemExit as exit_:
            return exit_.code
    except ICNashError as e:
        logger.debug(f'{args.command} failed: {e}')
        sys.stderr.write(json.dumps(e.to_dict()) + '\n')
        return 1
    except (OSError, ValueError, KeyError) as e:
        sys.stderr.write(json.dumps({'error': 'BadInput', 'message': str(e)}) + '\n')
        return 1

    text = render(artifact, args.format)
    if args.output:
        with open(args.output, 'w', newline='') as f:
            f.write(text)
        logger.info(f'Wrote {args.format} artifact to {args.output}')
    else:
        sys.stdout.write(text)
    if artifact.failed:
        logger.error(f'{args.command}: some checks failed')
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(run())
