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

# Complex baseband channels, zero-forcing and pre-log estimation at finite SNR

import math
from dataclasses import dataclass, field, replace
from typing import Tuple

import numpy as np
from scipy import stats

from config import *
from errors import ArgumentError, NumericError
from Jammer import JammerState, sample_sequence
from Logger import logger

SLOPE_CONFIGS = ('PP', 'PN', 'NN')


@dataclass(frozen=True, eq=False)
class ChannelRealization(object):
    """One slot: rows H[k], G[k] are receiver k's channels from the
    transmitter and from the jammer; the jammer sends along ``jam_dir``."""
    H: np.ndarray = field(repr=False)
    G: np.ndarray = field(repr=False)
    jam_dir: np.ndarray = field(repr=False)
    power: float
    noise_var: float = 1.0
    redraws: int = 0

    @property
    def num_receivers(self):
        return self.H.shape[0]


@dataclass(frozen=True, eq=False)
class Precoder(object):
    B: np.ndarray

    def cross_talk(self, H):
        """Largest relative |H_j B_k|, j != k."""
        g = np.abs(H @ self.B)
        scale = np.outer(np.linalg.norm(H, axis=1), np.linalg.norm(self.B, axis=0))
        off = ~np.eye(g.shape[0], dtype=bool)
        return float((g / scale)[off].max()) if off.any() else 0.0


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _crandn(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)


def draw_channel(K, power, seed):
    if not isinstance(K, (int, np.integer)) or K < 1:
        raise ArgumentError('K must be >= 1, got %r' % (K,))
    if not power > 0:
        raise ArgumentError('power must be > 0, got %r' % (power,))
    rng = _rng(seed)
    for redraws in range(MAX_REDRAWS + 1):
        H = _crandn(rng, K, K)
        if np.linalg.cond(H) <= COND_LIMIT:
            break
    else:
        raise NumericError('no channel with condition number <= %g after %d redraws'
                           % (COND_LIMIT, MAX_REDRAWS))
    if redraws:
        logger.debug('[BB] channel redrawn %d times', redraws)
    G = _crandn(rng, K, K)
    j = _crandn(rng, K)
    return ChannelRealization(H, G, j / np.linalg.norm(j), float(power), 1.0, redraws)


def zero_forcing(H):
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    K = H.shape[0]
    if H.shape != (K, K):
        raise ArgumentError('zero forcing needs a square channel, got %s' % (H.shape,))
    if np.linalg.matrix_rank(H) < K:
        raise NumericError('channel matrix is rank deficient')
    B = np.linalg.pinv(H)
    return Precoder(B / np.linalg.norm(B, axis=0, keepdims=True))


def single_antenna(K):
    """Every stream leaves from antenna 1; what a transmitter without CSIT can do."""
    B = np.zeros((K, K), dtype=complex)
    B[0, :] = 1.0
    return Precoder(B)


def _jammed(state, k):
    if isinstance(state, JammerState):
        return state.jammed(k)
    return bool((int(state) >> k) & 1)


def slot_rate(ch, prec, state, served):
    """Per-receiver log2(1 + SINR) with jamming treated as Gaussian noise."""
    K = ch.num_receivers
    served = sorted(set(int(k) for k in served))
    rates = np.zeros(K)
    if not served:
        return rates
    p = ch.power / len(served)
    for k in served:
        gains = p * np.abs(ch.H[k] @ prec.B[:, served]) ** 2
        signal = gains[served.index(k)]
        interference = gains.sum() - signal
        jam = ch.power * abs(ch.G[k] @ ch.jam_dir) ** 2 if _jammed(state, k) else 0.0
        rates[k] = math.log2(1 + signal / (ch.noise_var + interference + jam))
    return rates


@dataclass(frozen=True)
class SlopeFit(object):
    config: str
    snr_db: Tuple[float, ...]
    mean_rates: Tuple[Tuple[float, ...], ...]
    slopes: Tuple[float, ...]
    r2: Tuple[float, ...]
    redraws: int = 0

    def rows(self):
        K = len(self.slopes)
        header = (['snr_db'] + ['rate_%d' % (k + 1) for k in range(K)]
                  + ['slope_%d' % (k + 1) for k in range(K)]
                  + ['r2_%d' % (k + 1) for k in range(K)])
        out = [header]
        for snr, rates in zip(self.snr_db, self.mean_rates):
            out.append([snr] + list(rates) + list(self.slopes) + list(self.r2))
        return out


def parse_grid(text):
    """``a:b:step`` in dB, both ends included, or a comma list."""
    try:
        if ':' in text:
            a, b, step = [float(x) for x in text.split(':')]
            if step <= 0:
                raise ValueError
            return list(np.arange(a, b + step / 2.0, step))
        return [float(x) for x in text.split(',') if x.strip()]
    except ValueError:
        raise ArgumentError('bad SNR grid %r' % (text,))


def _check_grid(snr_grid_db):
    grid = np.asarray(snr_grid_db, dtype=float)
    if grid.ndim != 1 or len(grid) < SNR_MIN_POINTS:
        raise ArgumentError('SNR grid needs at least %d points' % SNR_MIN_POINTS)
    if np.any(np.diff(grid) <= 0):
        raise ArgumentError('SNR grid must be strictly ascending')
    if grid[-1] - grid[0] < SNR_MIN_SPAN_DB - 1e-9:
        raise ArgumentError('SNR grid spans %.1f dB, need %.1f'
                            % (grid[-1] - grid[0], SNR_MIN_SPAN_DB))
    return grid


def _time_share_schedule(share, n):
    """Deterministic slot owners with long-run fractions ``share``."""
    acc = np.zeros(len(share))
    owners = []
    for _ in range(n):
        acc += share
        k = int(np.argmax(acc))
        acc[k] -= 1.0
        owners.append(k)
    return owners


def estimate_slope(config, dist, snr_grid_db, slots_per_point, seed, share=None):
    """Fit mean rate against log2(P) for the physical PP, PN or NN scheme.

    Every SNR point sees the same jammer states and channel draws, so
    the fit measures the pre-log and not sampling noise between points.
    """
    config = config.upper()
    if config not in SLOPE_CONFIGS:
        raise ArgumentError('slope estimation supports %s, not %r'
                            % (', '.join(SLOPE_CONFIGS), config))
    grid = _check_grid(snr_grid_db)
    if slots_per_point < 1:
        raise ArgumentError('slots_per_point must be >= 1')
    K = dist.num_receivers
    if config == 'NN':
        share = np.asarray(share if share is not None else [1.0 / K] * K, dtype=float)
        if len(share) != K or np.any(share < 0) or abs(share.sum() - 1) > 1e-9:
            raise ArgumentError('share needs %d nonnegative fractions summing to 1' % K)
        owners = _time_share_schedule(share, slots_per_point)
    state_seed, channel_seed = np.random.SeedSequence(seed).spawn(2)
    masks = sample_sequence(dist, slots_per_point, state_seed).masks.tolist()
    rng = np.random.default_rng(channel_seed)
    powers = 10.0 ** (grid / 10.0)
    totals = np.zeros((len(grid), K))
    redraws = 0
    fixed = single_antenna(K)
    for t, mask in enumerate(masks):
        ch = draw_channel(K, 1.0, rng)
        redraws += ch.redraws
        if config == 'NN':
            prec, served = fixed, [owners[t]]
        else:
            prec = zero_forcing(ch.H)
            if config == 'PP':
                served = [k for k in range(K) if not (mask >> k) & 1]
            else:
                served = range(K)
        for i, p in enumerate(powers):
            totals[i] += slot_rate(replace(ch, power=p), prec, mask, served)
    means = totals / slots_per_point
    x = grid / 10.0 * math.log2(10.0)
    slopes, r2 = [], []
    for k in range(K):
        fit = stats.linregress(x, means[:, k])
        slopes.append(float(fit.slope))
        r2.append(float(fit.rvalue ** 2))
    logger.info('[BB] %s slopes %s over %g..%g dB (%d slots/point)',
                config, ['%.3f' % s for s in slopes], grid[0], grid[-1], slots_per_point)
    return SlopeFit(config, tuple(float(g) for g in grid),
                    tuple(tuple(float(r) for r in row) for row in means),
                    tuple(slopes), tuple(r2), redraws)
