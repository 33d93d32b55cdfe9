""" Unit tests for the command-line driver: artifacts, exit codes and error reporting """
import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest import mock
from src.driver import DESCRIPTIONS, run
from src.unit_tests import *

DET = ['--n11', '3', '--n12', '2', '--n21', '1', '--n22', '4']
SYM32 = ['--n11', '3', '--n12', '2', '--n21', '2', '--n22', '3']
GAUSS = ['--snr1', '100', '--snr2', '100', '--inr12', '10', '--inr21', '10']


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestDriver(unittest.TestCase):

    def test_det_ne_single_vertex(self):
        code, out, _ = invoke('det-ne', *DET, '--format', 'json')
        assert code == 0
        artifact = json.loads(out)
        assert artifact['vertices'] == [['1', '3']]
        assert artifact['efficiency']['efficient_ne'] == [['1', '3']]

    def test_det_box(self):
        code, out, _ = invoke('det-box', *DET)
        assert code == 0
        artifact = json.loads(out)
        assert artifact['box'] == {'l1': '1', 'u1': '1', 'l2': '3', 'u2': '3'}
        assert artifact['interference_free'] == {'a1': '0', 'b1': '1', 'a2': '1', 'b2': '2'}

    def test_det_sweep_csv(self):
        code, out, _ = invoke('det-sweep', '--n', '6', '--format', 'csv')
        assert code == 0
        lines = out.strip().split('\n')
        assert lines[0] == 'n,m,alpha,regime,l,u,sum_C,sum_NE'
        assert len(lines) == 8
        assert lines[4].split(',')[3] == 'Boundary_1/2'

    def test_det_witness(self):
        code, out, _ = invoke('det-witness', *SYM32, '--r1', '1', '--r2', '1')
        assert code == 0
        artifact = json.loads(out)
        assert artifact['split'] == {'r1c': '1', 'r1r': '1', 'r1p': '0',
                                     'r2c': '1', 'r2r': '1', 'r2p': '0'}
        assert artifact['saturated'] == [True, True]

    def test_domain_error(self):
        code, out, err = invoke('det-witness', *DET, '--r1', '2', '--r2', '3')
        assert code == 1
        assert out == ''
        assert json.loads(err.strip().split('\n')[-1])['error'] == 'NotInNERegion'

    def test_invalid_channel(self):
        code, _, err = invoke('det-region', '--n11', '-1', '--n12', '0', '--n21', '0',
                              '--n22', '0')
        assert code == 1
        assert json.loads(err.strip().split('\n')[-1])['error'] == 'InvalidChannel'

    def test_usage_errors(self):
        code, _, err = invoke('det-ne', *DET, '--bogus', '1')
        assert code == 2
        assert '--bogus' in err
        code, _, err = invoke('gauss-bounds', '--snr1', '100')
        assert code == 2
        assert '--inr12' in err
        code, _, _ = invoke('det-witness', *DET, '--r1', 'abc', '--r2', '1')
        assert code == 2
        code, _, _ = invoke('sim-play', *DET)
        assert code == 2
        code, _, _ = invoke()
        assert code == 2

    def test_gauss_bounds(self):
        code, out, _ = invoke('gauss-bounds', *GAUSS)
        assert code == 0
        artifact = json.loads(out)
        self.assertAlmostEqual(artifact['box']['l1'], 3.3349, places=3)
        self.assertAlmostEqual(artifact['box']['u1'], 4.3923, places=3)
        assert artifact['class'] == 'mixed'
        assert artifact['power_split']['user1']['inr_p'] == 1.0

    def test_gauss_sweep(self):
        code, out, _ = invoke('gauss-bounds', '--sweep', '--points', '3', '--format', 'csv')
        assert code == 0
        lines = out.strip().split('\n')
        assert lines[0] == 'snr,inr,L,U,Um,class'
        assert len(lines) == 10

    def test_gauss_region_and_witness(self):
        code, out, _ = invoke('gauss-region', *GAUSS, '--resolution', '4')
        assert code == 0
        assert len(json.loads(out)['inner_boundary']) > 0
        code, out, _ = invoke('gauss-witness', *GAUSS, '--r1', '3.35', '--r2', '3.35')
        assert code == 0
        assert json.loads(out)['saturated'] == [True, True]
        code, _, err = invoke('gauss-region', '--snr1', '10000', '--snr2', '10000',
                              '--inr12', '10', '--inr21', '10')
        assert code == 1
        assert 'EmptyInner' in err

    def test_sim_play_and_deviate(self):
        code, out, _ = invoke('sim-play', *DET, '--levels1', 'data,zero,zero,zero',
                              '--levels2', 'data,data,data,zero')
        assert code == 0
        artifact = json.loads(out)
        assert artifact['payoffs'] == [1, 3]
        assert artifact['avg_ber'] == ['0', '0']
        code, out, _ = invoke('sim-deviate', *SYM32, '--witness', '1', '1')
        assert code == 0
        artifact = json.loads(out)
        assert artifact['ne_within_class'] is True
        assert artifact['best_deviation']['user1']['payoff'] == 1
        code, out, _ = invoke('sim-deviate', *DET, '--levels1', 'zero,zero,zero,zero',
                              '--levels2', 'zero,zero,zero,zero', '--deviator', '2')
        assert code == 0
        assert json.loads(out)['payoff'] == 4

    def test_strategy_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'user1.json')
            with open(path, 'w') as f:
                json.dump({'levels': ['data', 'zero', 'zero', 'zero']}, f)
            code, out, _ = invoke('sim-play', *DET, '--strategy1', path,
                                  '--levels2', 'data,data,data,zero')
            assert code == 0
            assert json.loads(out)['payoffs'] == [1, 3]

    def test_sim_mc_seed(self):
        args = ['sim-mc', '--n11', '1', '--n12', '1', '--n21', '1', '--n22', '1',
                '--levels1', 'data', '--levels2', 'random', '--trials', '2000']
        with mock.patch.dict(os.environ):
            os.environ.pop('IC_NASH_SEED', None)
            code, first, _ = invoke(*args)
        assert code == 0
        assert json.loads(first)['seed'] == 0
        with mock.patch.dict(os.environ, {'IC_NASH_SEED': '11'}):
            code, env_run, _ = invoke(*args)
        assert json.loads(env_run)['seed'] == 11
        code, explicit, _ = invoke(*args, '--seed', '11')
        assert explicit == env_run
        ber = json.loads(first)['ber'][0]
        assert 0.4 < ber < 0.6

    def test_output_file_and_determinism(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'region.csv')
            code, out, _ = invoke('det-region', *SYM32, '--format', 'csv', '--output', path)
            assert code == 0 and out == ''
            with open(path) as f:
                written = f.read()
        assert written.startswith('r1,r2\n')
        code, again, _ = invoke('det-region', *SYM32, '--format', 'csv')
        assert again == written

    def test_det_verify_small(self):
        code, out, _ = invoke('det-verify', '--max-n', '2')
        assert code == 0
        artifact = json.loads(out)
        assert artifact['passed'] is True
        assert [s['suite'] for s in artifact['suites']] == [
            'witness_coverage', 'interference_free_rates', 'efficiency', 'treat_as_noise']

    def test_subcommand_help_names_result(self):
        assert len(DESCRIPTIONS) == 12
        code, listing, _ = invoke('--help')
        assert code == 0
        for name, description in DESCRIPTIONS.items():
            assert name in listing
            code, out, _ = invoke(name, '--help')
            assert code == 0, name
            # argparse rewraps the text, possibly at hyphens
            assert ''.join(description.split()) in ''.join(out.split()), name
