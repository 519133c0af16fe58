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

# Jammer states, i.i.d. jammer-state distributions and state sampling

import ast
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple

import numpy as np

from config import *
from errors import ArgumentError, DistributionError
from Logger import logger


def bitstring(mask, num_receivers):
    """Character i is receiver i+1's jam flag, i.e. bit i of ``mask``."""
    return ''.join('1' if (mask >> i) & 1 else '0' for i in range(num_receivers))


def mask_of(bits):
    if not bits or any(c not in '01' for c in bits):
        raise DistributionError('bad jammer state %r' % (bits,))
    return sum(1 << i for i, c in enumerate(bits) if c == '1')


def ones_count(mask):
    return bin(mask).count('1')


@dataclass(frozen=True)
class JammerState(object):
    mask: int
    num_receivers: int

    def __post_init__(self):
        if self.num_receivers < 1 or not 0 <= self.mask < (1 << self.num_receivers):
            raise ArgumentError('mask %r out of range for K=%r' % (self.mask, self.num_receivers))

    @classmethod
    def from_bitstring(cls, bits):
        return cls(mask_of(bits), len(bits))

    def jammed(self, k):
        return bool((self.mask >> k) & 1)

    @property
    def ones_count(self):
        return ones_count(self.mask)

    @property
    def bits(self):
        return bitstring(self.mask, self.num_receivers)

    def __str__(self):
        return self.bits


@dataclass(frozen=True)
class JammerDistribution(object):
    """Probability of each of the 2^K jammer states.

    ``probs`` is indexed by mask, so for K=2 the order is
    (00, 10, 01, 11) in bitstring notation. Use :meth:`two_user` to pass
    probabilities in bitstring order instead.
    """
    num_receivers: int
    probs: Tuple[float, ...]

    def __post_init__(self):
        K = self.num_receivers
        if not isinstance(K, int) or K < 1:
            raise DistributionError('num_receivers must be a positive integer, got %r' % (K,))
        probs = tuple(float(p) for p in self.probs)
        object.__setattr__(self, 'probs', probs)
        if len(probs) != 1 << K:
            raise DistributionError('expected %d probabilities for K=%d, got %d'
                                    % (1 << K, K, len(probs)))
        for m, p in enumerate(probs):
            if not math.isfinite(p) or p < 0:
                raise DistributionError('probability of state %s is %r'
                                        % (bitstring(m, K), p))
        total = math.fsum(probs)
        if abs(total - 1.0) > PROB_TOL:
            # no silent renormalisation
            raise DistributionError('probabilities sum to %.15g, not 1' % total)

    @classmethod
    def from_mapping(cls, mapping, num_receivers=None):
        """Build from ``{'01': 0.3, ...}``; absent states get probability 0."""
        if not mapping:
            raise DistributionError('empty jammer distribution')
        lengths = set(len(k) for k in mapping)
        if len(lengths) != 1:
            raise DistributionError('state strings of mixed length: %s' % sorted(mapping))
        K = lengths.pop()
        if num_receivers is not None and num_receivers != K:
            raise DistributionError('K=%d declared but states have %d bits' % (num_receivers, K))
        probs = [0.0] * (1 << K)
        for bits, p in mapping.items():
            probs[mask_of(bits)] = float(p)
        return cls(K, tuple(probs))

    @classmethod
    def two_user(cls, l00, l01, l10, l11):
        return cls.from_mapping({'00': l00, '01': l01, '10': l10, '11': l11})

    @classmethod
    def symmetric(cls, eta):
        """Expand class probabilities (η_0..η_K) evenly over each class."""
        eta = [float(e) for e in eta]
        K = len(eta) - 1
        if K < 1:
            raise DistributionError('symmetric shorthand needs at least [eta_0, eta_1]')
        probs = tuple(eta[ones_count(m)] / math.comb(K, ones_count(m)) for m in range(1 << K))
        return cls(K, probs)

    @classmethod
    def uniform(cls, num_receivers):
        n = 1 << num_receivers
        return cls(num_receivers, (1.0 / n,) * n)

    @classmethod
    def point_mass(cls, num_receivers, state):
        mask = mask_of(state) if isinstance(state, str) else int(state)
        probs = [0.0] * (1 << num_receivers)
        probs[mask] = 1.0
        return cls(num_receivers, tuple(probs))

    def _check_receiver(self, k):
        if not isinstance(k, (int, np.integer)) or not 0 <= k < self.num_receivers:
            raise ArgumentError('receiver index %r out of range [0, %d)' % (k, self.num_receivers))

    def marginal(self, k):
        """λ_k: probability receiver k (0-based) is not jammed."""
        self._check_receiver(k)
        return math.fsum(p for m, p in enumerate(self.probs) if not (m >> k) & 1)

    @property
    def marginals(self):
        return tuple(self.marginal(k) for k in range(self.num_receivers))

    def class_probability(self, j):
        """η_j: probability exactly j receivers are jammed."""
        if not isinstance(j, (int, np.integer)) or not 0 <= j <= self.num_receivers:
            raise ArgumentError('jammed count %r out of range [0, %d]' % (j, self.num_receivers))
        return math.fsum(p for m, p in enumerate(self.probs) if ones_count(m) == j)

    @property
    def class_probabilities(self):
        return tuple(self.class_probability(j) for j in range(self.num_receivers + 1))

    def lambda_eta(self):
        K = self.num_receivers
        return math.fsum((K - j) / K * eta for j, eta in enumerate(self.class_probabilities))

    def is_symmetric(self):
        by_class = {}
        for m, p in enumerate(self.probs):
            by_class.setdefault(ones_count(m), []).append(p)
        return all(max(ps) - min(ps) <= PROB_TOL for ps in by_class.values())

    def joint(self, bits):
        """λ_s for the state written as a bitstring, e.g. ``joint('01')``."""
        if len(bits) != self.num_receivers:
            raise ArgumentError('state %r is not %d bits' % (bits, self.num_receivers))
        return self.probs[mask_of(bits)]

    def to_mapping(self):
        return dict((bitstring(m, self.num_receivers), p) for m, p in enumerate(self.probs))

    def __str__(self):
        return ','.join('%s:%r' % (bitstring(m, self.num_receivers), p)
                        for m, p in sorted(enumerate(self.probs),
                                           key=lambda mp: bitstring(mp[0], self.num_receivers)))


# functional forms

def marginal(dist, k):
    return dist.marginal(k)


def class_probability(dist, j):
    return dist.class_probability(j)


def lambda_eta(dist):
    return dist.lambda_eta()


def is_symmetric(dist):
    return dist.is_symmetric()


def joint_probability(dist, bits):
    return dist.joint(bits)


@dataclass(frozen=True, eq=False)
class StateSequence(object):
    masks: np.ndarray = field(repr=False)
    seed: object
    num_receivers: int

    def __len__(self):
        return len(self.masks)

    def __getitem__(self, i):
        return JammerState(int(self.masks[i]), self.num_receivers)

    def __iter__(self):
        for m in self.masks.tolist():
            yield JammerState(m, self.num_receivers)

    @property
    def states(self):
        return list(self)

    def frequencies(self):
        counts = np.bincount(self.masks, minlength=1 << self.num_receivers)
        return counts / float(len(self.masks))


def _generator(seed):
    return np.random.default_rng(seed)


def sample_sequence(dist, n, seed):
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ArgumentError('sequence length must be >= 1, got %r' % (n,))
    rng = _generator(seed)
    masks = rng.choice(1 << dist.num_receivers, size=int(n), p=np.asarray(dist.probs))
    return StateSequence(masks.astype(np.int64), seed, dist.num_receivers)


def iter_states(dist, seed, chunk=STATE_CHUNK):
    """Unbounded i.i.d. stream of state masks, drawn ``chunk`` at a time."""
    rng = _generator(seed)
    p = np.asarray(dist.probs)
    n_states = 1 << dist.num_receivers
    while True:
        for m in rng.choice(n_states, size=chunk, p=p).tolist():
            yield m


def state_table(num_receivers):
    """Rows of (mask, bitstring, jammed receivers 1-based) for the CLI."""
    rows = []
    for m in range(1 << num_receivers):
        jammed = [k + 1 for k in range(num_receivers) if (m >> k) & 1]
        rows.append((m, bitstring(m, num_receivers), jammed))
    return rows


_SYMMETRIC = re.compile(r'^\s*symmetric\s*:\s*(\[.*\])\s*$', re.S)


def _number(text, key):
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise DistributionError('bad probability %r for %s' % (text, key))


def parse_dist(text):
    """Parse ``00: 0.3`` lines / ``00:0.3,01:0.3`` / ``symmetric: [...]``."""
    lines = [ln.split('#', 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    declared_k = None
    sym = None
    entries = []
    for ln in lines:
        match = _SYMMETRIC.match(ln)
        if match:
            try:
                sym = ast.literal_eval(match.group(1))
            except (ValueError, SyntaxError):
                raise DistributionError('bad symmetric shorthand %r' % ln)
            continue
        entries.extend(e for e in ln.split(',') if e.strip())
    mapping = {}
    for entry in entries:
        if ':' not in entry:
            raise DistributionError('expected state:probability, got %r' % entry.strip())
        key, value = [s.strip() for s in entry.split(':', 1)]
        if key.upper() == 'K':
            try:
                declared_k = int(value)
            except ValueError:
                raise DistributionError('bad K %r' % value)
            continue
        if key in mapping:
            raise DistributionError('state %s given twice' % key)
        mask_of(key)
        mapping[key] = _number(value, key)
    if sym is not None:
        if mapping:
            raise DistributionError('symmetric shorthand cannot be mixed with explicit states')
        dist = JammerDistribution.symmetric(sym)
        if declared_k is not None and declared_k != dist.num_receivers:
            raise DistributionError('K=%d declared but %d class probabilities given'
                                    % (declared_k, len(sym)))
    else:
        dist = JammerDistribution.from_mapping(mapping, declared_k)
    logger.debug('[JC] parsed K=%d distribution %s', dist.num_receivers, dist)
    return dist


def load_dist(source):
    """``@path`` reads a distribution file, anything else is inline text."""
    if source.startswith('@'):
        try:
            with open(source[1:]) as f:
                return parse_dist(f.read())
        except (IOError, OSError) as e:
            raise DistributionError('cannot read %s: %s' % (source[1:], e))
    return parse_dist(source)
