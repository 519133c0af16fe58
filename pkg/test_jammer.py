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

# Jammer state and distribution tests

import math

import numpy as np
import pytest

from errors import ArgumentError, DistributionError
from Jammer import (JammerDistribution, JammerState, bitstring, class_probability,
                    is_symmetric, joint_probability, lambda_eta, load_dist, marginal,
                    mask_of, parse_dist, sample_sequence, state_table)

STANDARD = JammerDistribution.two_user(0.3, 0.3, 0.3, 0.1)


def test_bitstring_mapping():
    # "01": receiver 1 clean, receiver 2 jammed
    assert mask_of('01') == 2
    assert mask_of('10') == 1
    assert bitstring(2, 2) == '01'
    assert JammerState.from_bitstring('011').jammed(2)
    assert not JammerState.from_bitstring('011').jammed(0)
    assert JammerState(5, 3).ones_count == 2


def test_state_out_of_range():
    with pytest.raises(ArgumentError):
        JammerState(4, 2)


@pytest.mark.parametrize('dist,k,expected', [
    (JammerDistribution.uniform(2), 1, 0.5),
    (JammerDistribution.uniform(3), 2, 0.5),
    (STANDARD, 1, 0.6),
    (JammerDistribution.two_user(0.3, 0.4, 0.2, 0.1), 0, 0.7),
])
def test_marginal(dist, k, expected):
    assert marginal(dist, k) == pytest.approx(expected, abs=1e-12)


def test_marginal_three_users_by_definition():
    dist = JammerDistribution.symmetric([0.1, 0.3, 0.45, 0.15])
    expected = sum(dist.joint(s) for s in ('000', '001', '010', '011'))
    assert dist.marginal(0) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize('k', [-1, 2, 2.0])
def test_marginal_bad_index(k):
    with pytest.raises(ArgumentError):
        STANDARD.marginal(k)


@pytest.mark.parametrize('dist,j,expected', [
    (JammerDistribution.uniform(3), 1, 3 / 8.0),
    (JammerDistribution.point_mass(2, '00'), 0, 1.0),
    (JammerDistribution.uniform(4), 2, 6 / 16.0),
])
def test_class_probability(dist, j, expected):
    assert class_probability(dist, j) == pytest.approx(expected, abs=1e-12)
    assert math.fsum(dist.class_probabilities) == pytest.approx(1.0, abs=1e-12)


def test_class_probability_out_of_range():
    with pytest.raises(ArgumentError):
        STANDARD.class_probability(3)


@pytest.mark.parametrize('dist,expected', [
    (JammerDistribution.uniform(3), 0.5),
    (JammerDistribution.point_mass(4, '0000'), 1.0),
    (STANDARD, 0.6),
])
def test_lambda_eta(dist, expected):
    assert lambda_eta(dist) == pytest.approx(expected, abs=1e-12)


def test_lambda_eta_equals_marginals_when_symmetric():
    rng = np.random.default_rng(7)
    for K in (2, 3, 5):
        eta = rng.dirichlet(np.ones(K + 1))
        dist = JammerDistribution.symmetric(eta)
        for k in range(K):
            assert dist.marginal(k) == pytest.approx(dist.lambda_eta(), abs=1e-12)


@pytest.mark.parametrize('dist,expected', [
    (STANDARD, True),
    (JammerDistribution.two_user(0.3, 0.4, 0.2, 0.1), False),
    (JammerDistribution.uniform(3), True),
])
def test_is_symmetric(dist, expected):
    assert is_symmetric(dist) is expected


@pytest.mark.parametrize('probs', [
    (0.5, 0.5, 0.1, -0.1),
    (0.3, 0.3, 0.3, 0.2),
    (0.25, 0.25, float('nan'), 0.5),
])
def test_invalid_distribution_refused(probs):
    with pytest.raises(DistributionError):
        JammerDistribution(2, probs)


def test_no_silent_renormalisation():
    with pytest.raises(DistributionError):
        JammerDistribution(1, (0.5, 0.5 + 1e-9))


def test_sample_point_mass():
    seq = sample_sequence(JammerDistribution.point_mass(2, '00'), 5, seed=1)
    assert len(seq) == 5
    assert [s.bits for s in seq] == ['00'] * 5


def test_sample_deterministic():
    a = sample_sequence(STANDARD, 1000, seed=42)
    b = sample_sequence(STANDARD, 1000, seed=42)
    assert np.array_equal(a.masks, b.masks)
    c = sample_sequence(STANDARD, 1000, seed=43)
    assert not np.array_equal(a.masks, c.masks)


def test_sample_frequencies():
    seq = sample_sequence(JammerDistribution.uniform(2), 10 ** 6, seed=42)
    freqs = seq.frequencies()
    assert np.all(np.abs(freqs - 0.25) < 0.002)


def test_sample_needs_positive_length():
    with pytest.raises(ArgumentError):
        sample_sequence(STANDARD, 0, seed=1)


def test_state_table():
    rows = state_table(2)
    assert rows == [(0, '00', []), (1, '10', [1]), (2, '01', [2]), (3, '11', [1, 2])]


def test_parse_inline():
    dist = parse_dist('00:0.3,01:0.3,10:0.3,11:0.1')
    assert dist.probs == STANDARD.probs
    assert joint_probability(dist, '01') == pytest.approx(0.3)


def test_parse_lines_fractions_and_comments():
    text = 'K: 2\n# no jamming most of the time\n00: 1/2\n01: 1/4\n10: 1/4\n'
    dist = parse_dist(text)
    assert dist.joint('11') == 0.0
    assert dist.marginal(0) == pytest.approx(0.75)


def test_parse_symmetric_shorthand():
    dist = parse_dist('symmetric: [0.125, 0.375, 0.375, 0.125]')
    assert dist.num_receivers == 3
    assert dist.joint('010') == pytest.approx(0.125)
    assert dist.is_symmetric()


@pytest.mark.parametrize('text', [
    '00:0.5,00:0.5',
    '00:0.5,1:0.5',
    'K:3\n00:1',
    '00:abc',
    'symmetric: [0.5, 0.5]\n0:0.5',
    '00 0.5',
])
def test_parse_errors(text):
    with pytest.raises(DistributionError):
        parse_dist(text)


def test_load_from_file(tmp_path):
    path = tmp_path / 'standard.dist'
    path.write_text('00: 0.3\n01: 0.3\n10: 0.3\n11: 0.1\n')
    assert load_dist('@%s' % path).probs == STANDARD.probs
    with pytest.raises(DistributionError):
        load_dist('@%s' % (tmp_path / 'missing'))


if __name__ == '__main__':
    pytest.main([__file__])
