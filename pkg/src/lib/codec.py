""" JSON and CSV rendering for every value the driver emits. Exact rationals are written as
"p/q" strings in JSON and as decimals in CSV; floats keep 10 significant digits. Key order is
fixed so identical invocations produce identical bytes. """
import io
import json
from fractions import Fraction

import pandas as pd

FLOAT_FORMAT = '%.10g'
CLASS_SCOPE = 'level-strategy class only'


def rational(x):
    return str(Fraction(x))


def real(x):
    return float(FLOAT_FORMAT % float(x))


def region_to_dict(region):
    return {
        'constraints': [{'a1': rational(h.a1), 'a2': rational(h.a2), 'c': rational(h.c)}
                        for h in region.constraints],
        'vertices': [[rational(x), rational(y)] for x, y in region.vertices],
        'empty': region.empty,
    }


def region_to_frame(region):
    return pd.DataFrame([[float(x), float(y)] for x, y in region.vertices], columns=['r1', 'r2'])


def box_to_dict(box):
    return {'box': {'l1': rational(box.l1), 'u1': rational(box.u1),
                    'l2': rational(box.l2), 'u2': rational(box.u2)}}


def split_to_dict(split, exact=True):
    render = rational if exact else real
    return {k: render(v) for k, v in split.components().items()}


def certificate_to_dict(cert, exact=True):
    out = {
        'split': split_to_dict(cert.split, exact),
        'tight': {f'rx{i}': list(cert.tight[i]) for i in (1, 2)},
        'saturated': list(cert.saturated),
    }
    if cert.deviation_bound:
        out['deviation_bound'] = [rational(v) for v in cert.deviation_bound]
    return out


def gauss_box_to_dict(box):
    return {'l1': real(box.l1), 'u1': real(box.u1), 'u1m': real(box.u1m),
            'l2': real(box.l2), 'u2': real(box.u2), 'u2m': real(box.u2m)}


def power_split_to_dict(ps):
    return {f'user{i}': {'p_priv_fraction': real(ps.user(i).p_priv_fraction),
                         'inr_p': real(ps.user(i).inr_p),
                         'snr_p': real(ps.user(i).snr_p)} for i in (1, 2)}


def gauss_bounds_to_dict(box, sigma, ps, regime):
    return {
        'box': gauss_box_to_dict(box),
        'sigma_v2': [real(s) for s in sigma],
        'power_split': power_split_to_dict(ps),
        'class': regime,
    }


def sandwich_to_dict(result, sigma, ps, regime):
    out = gauss_bounds_to_dict(result.box, sigma, ps, regime)
    out['outer'] = 'box B (relaxation of C intersected with B)'
    out['inner_boundary'] = [[real(r1), real(r2)] for r1, r2 in result.inner]
    if result.exact_boundary:
        out['exact_boundary'] = [[real(r1), real(r2)] for r1, r2 in result.exact_boundary]
    return out


def gauss_witness_to_dict(witness):
    out = certificate_to_dict(witness.certificate, exact=False)
    out['power_split'] = power_split_to_dict(witness.power_split)
    out['other_common_decodable'] = list(witness.decodable)
    return out


def strategy_to_dict(strategy):
    return {'levels': strategy.names()}


def outcome_to_dict(outcome, ne=None):
    out = {
        'payoffs': [outcome.user1.payoff, outcome.user2.payoff],
        'avg_ber': [rational(outcome.user1.avg_ber), rational(outcome.user2.avg_ber)],
        'ber': [[rational(b) for b in outcome.user(i).ber] for i in (1, 2)],
    }
    if ne is not None:
        out['ne_within_class'] = ne.ne
        out['best_deviation'] = {
            f'user{i}': {'strategy': strategy_to_dict(ne.deviations[i][0]),
                         'payoff': ne.deviations[i][1]} for i in (1, 2)}
    out['scope'] = CLASS_SCOPE
    return out


def frame_to_csv(frame):
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    return buffer.getvalue()


def rows_to_frame(rows, columns):
    """ Rows of dicts to a frame; rationals become decimals. """
    def cell(v):
        return float(v) if isinstance(v, Fraction) else v
    return pd.DataFrame([[cell(r[c]) for c in columns] for r in rows], columns=columns)


def to_json(obj):
    return json.dumps(obj, indent=2) + '\n'


def native(value):
    """ One JSON-safe scalar: rationals as "p/q", numpy scalars unwrapped, floats rounded. """
    if isinstance(value, Fraction):
        return rational(value)
    if hasattr(value, 'item'):
        value = value.item()
    if isinstance(value, float):
        return real(value)
    return value


def rows_to_records(rows):
    return [{k: native(v) for k, v in row.items()} for row in rows]


def frame_to_records(frame):
    return [{c: native(v) for c, v in zip(frame.columns, row)}
            for row in frame.itertuples(index=False)]
