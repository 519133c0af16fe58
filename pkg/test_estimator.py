#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# Copyright 2026 The jamdof Authors
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may
# not use this file except in compliance with the License. You may obtain
# a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
# WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
# License for the specific language governing permissions and limitations
# under the License.

# Monte-Carlo estimator and verdict tests

import math

import numpy as np
import pytest

from errors import ArgumentError, StarvationError
from Jammer import JammerDistribution
import DofRegion
import Estimator as est

STANDARD = JammerDistribution.two_user(0.3, 0.3, 0.3, 0.1)


def test_single_trial_has_no_stderr():
    params = est.default_params('PP', STANDARD, n=1000)
    emp = est.estimate('PP', STANDARD, params, 1, 7, threads=1)
    assert emp.trials == 1
    assert emp.stderr == (0.0, 0.0)
    assert emp.sum_stderr == 0.0


def test_estimate_reproducible():
    params = est.default_params('PD', STANDARD, n=2000)
    a = est.estimate('PD', STANDARD, params, 4, 99, threads=1)
    b = est.estimate('PD', STANDARD, params, 4, 99, threads=1)
    assert a == b
    assert a.mean == pytest.approx((0.6, 0.6), abs=0.03)
    assert a.sum_mean == pytest.approx(sum(a.mean))


def test_estimate_independent_of_workers():
    params = est.default_params('NP', STANDARD, n=500)
    serial = est.estimate('NP', STANDARD, params, 4, 5, threads=1)
    pooled = est.estimate('NP', STANDARD, params, 4, 5, threads=2)
    assert serial == pooled


def test_trial_seeds_differ():
    a = est.trial_seed(5, 0).generate_state(4)
    b = est.trial_seed(5, 1).generate_state(4)
    assert a.tolist() != b.tolist()
    assert est.trial_seed(5, 1).generate_state(4).tolist() == b.tolist()


def test_starvation_names_trial():
    with pytest.raises(StarvationError) as info:
        est.estimate('PD', JammerDistribution.point_mass(2, '11'), {'budgets': (1, 0)}, 3, 0, threads=1)
    assert info.value.trial == 0
    assert '(trial 0)' in str(info.value)


@pytest.mark.parametrize('trials', [0, -2, 1.5])
def test_bad_trials(trials):
    with pytest.raises(ArgumentError):
        est.estimate('PP', STANDARD, {'budgets': (1, 1)}, trials, 0)


@pytest.mark.parametrize('point,verdict', [
    ((0.3, 0.3), est.INSIDE),
    ((0.0, 0.0), est.INSIDE),
    ((0.6, 0.6), est.ON_BOUNDARY),
    ((0.62, 0.59), est.ON_BOUNDARY),
    ((0.7, 0.6), est.OUTSIDE),
    ((-0.1, 0.2), est.OUTSIDE),
])
def test_check_against_region(point, verdict):
    region = DofRegion.region_for('PP', STANDARD)
    assert est.check_against_region(point, region) == verdict


def test_check_against_region_dimension():
    with pytest.raises(ArgumentError):
        est.check_against_region((0.1, 0.1, 0.1), DofRegion.region_for('DD', STANDARD))


def test_check_empirical_dof():
    emp = est.EmpiricalDof('DD', (0.41, 0.4), (0.001, 0.001), 20, 10000.0, 0.81, 0.002)
    assert est.check_against_region(emp, DofRegion.region_for('DD', STANDARD)) == est.ON_BOUNDARY
    assert est.check_against_sum(emp, 0.8) == est.ON_BOUNDARY
    assert est.check_against_sum(emp, 1.0) == est.INSIDE
    assert est.check_against_sum(emp, 0.7) == est.OUTSIDE


def test_empirical_dof_needs_a_trial():
    with pytest.raises(ArgumentError):
        est.EmpiricalDof('PP', (0.6, 0.6), (0.0, 0.0), 0, 0.0)


def test_record():
    emp = est.EmpiricalDof('PP', (0.6, 0.6), (0.0, 0.0), 1, 10000.0, 1.2, 0.0)
    rec = emp.to_record(STANDARD, {'budgets': (6000, 6000), 'trace': True}, {'PP': est.ON_BOUNDARY})
    assert rec['dist']['01'] == 0.3
    assert rec['params'] == {'budgets': [6000, 6000]}
    assert rec['verdicts'] == {'PP': 'on-boundary-within-tol'}


def test_default_params():
    assert est.default_params('PP', STANDARD)['budgets'] == (6000, 6000)
    dd = est.default_params('DD', STANDARD)
    assert dd['budgets'] == (4000, 4000)
    assert dd['eta'] == pytest.approx(0.5, abs=1e-4)
    dn = est.default_params('DN', JammerDistribution.two_user(0.64, 0.16, 0.16, 0.04))
    assert dn['n'] == 2857
    dp_k = est.default_params('DP-K', JammerDistribution.uniform(3))
    assert abs(dp_k['budget'] - 3598) <= 2
    assert est.default_params('NN', STANDARD)['share'] == (0.5, 0.5)
    with pytest.raises(ArgumentError):
        est.default_params('XX', STANDARD)


def test_target_points():
    assert est.target_point('DP', STANDARD, {'mode': 'user1-priority'}) == pytest.approx((0.6, 0.3))
    assert est.target_point('NP', STANDARD, {'policy': 'tdma-2'}) == pytest.approx((0.0, 0.6))
    assert est.target_point('DD', STANDARD, {'budgets': (4000, 4000)}) == pytest.approx((0.4, 0.4))
    skewed = JammerDistribution.two_user(0.09, 0.81, 0.01, 0.09)
    assert est.target_point('DN', skewed) == pytest.approx((0.9, 0.0))
    assert sum(est.target_point('DD-K', JammerDistribution.uniform(3))) == pytest.approx(9 / 11.0)


def test_estimate_meets_target():
    params = est.default_params('ND', STANDARD, n=5000)
    emp = est.estimate('ND', STANDARD, params, 3, 1, threads=1)
    target = est.target_point('ND', STANDARD, params)
    assert emp.mean == pytest.approx(target, abs=0.03)


def test_stderr_shrinks_as_root_trials():
    # stderr·sqrt(trials) estimates the per-trial spread, so it holds steady
    params = est.default_params('PP', STANDARD, n=200)
    spread = {}
    for trials in (10, 40, 160):
        seeds = range(320 // trials)
        values = [s * math.sqrt(trials)
                  for seed in seeds
                  for s in est.estimate('PP', STANDARD, params, trials, seed, threads=1).stderr]
        spread[trials] = np.mean(values)
    assert spread[160] > 0
    for trials in (10, 40):
        assert spread[trials] == pytest.approx(spread[160], rel=0.2)


def test_threads_respect_env_cap(monkeypatch):
    def no_pool(*args, **kwargs):
        raise AssertionError('JAMDOF_THREADS=1 must keep trials in-process')
    monkeypatch.setenv('JAMDOF_THREADS', '1')
    monkeypatch.setattr(est, 'Pool', no_pool)
    params = est.default_params('PP', STANDARD, n=200)
    emp = est.estimate('PP', STANDARD, params, 3, 4, threads=4)
    assert emp.trials == 3


class _Recorder(object):
    def __init__(self):
        self.warnings = []

    def warning(self, fmt, *args):
        self.warnings.append(fmt % args)

    def __getattr__(self, name):
        return lambda *args, **kwargs: None


def test_default_budgets_all_zero_warns(monkeypatch):
    rec = _Recorder()
    monkeypatch.setattr(est, 'logger', rec)
    jammed = JammerDistribution.point_mass(2, '11')
    for config in ('PP', 'PD'):
        assert est.default_params(config, jammed)['budgets'] == (0, 0)
    assert len(rec.warnings) == 2
    assert rec.warnings[0].startswith('[EST] PP: every default budget rounds to 0')
    est.default_params('PP', STANDARD)
    est.default_params('DP', STANDARD)
    assert len(rec.warnings) == 2


if __name__ == '__main__':
    pytest.main([__file__])
