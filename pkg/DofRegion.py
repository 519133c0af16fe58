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

# Closed-form DoF regions and K-user sum-DoF quantities

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from typing import Tuple

import numpy as np

from config import *
from errors import (ArgumentError, DegenerateMarginalError, PreconditionError,
                    UnsupportedDimensionError)
from Jammer import JammerDistribution
from Logger import logger

TWO_USER_CONFIGS = ('PP', 'PD', 'PN', 'DP', 'DD', 'DN', 'NP', 'ND', 'NN')

# (a, b): region of a is a subset of region of b for every distribution
ASSERTED_INCLUSIONS = (
    ('PN', 'PD'), ('PD', 'PP'), ('PP', 'PN'),
    ('NN', 'DN'), ('DN', 'DD'), ('DD', 'DP'), ('DP', 'PP'),
    ('NN', 'ND'), ('ND', 'NP'), ('ND', 'DD'),
    ('NN', 'NP'), ('NP', 'DP'),
)


@dataclass(frozen=True)
class HalfSpace(object):
    """sum_k coeffs[k] * d_k <= bound"""
    coeffs: Tuple[float, ...]
    bound: float

    def __post_init__(self):
        coeffs = tuple(float(a) for a in self.coeffs)
        object.__setattr__(self, 'coeffs', coeffs)
        object.__setattr__(self, 'bound', float(self.bound))
        if not any(coeffs):
            raise ArgumentError('halfspace needs a nonzero coefficient')

    def value(self, point):
        return math.fsum(a * d for a, d in zip(self.coeffs, point))

    def slack(self, point):
        return self.bound - self.value(point)

    def distance(self, point):
        """Signed Euclidean distance to the boundary, positive inside."""
        return self.slack(point) / math.sqrt(math.fsum(a * a for a in self.coeffs))

    def to_dict(self):
        return {'coeffs': list(self.coeffs), 'bound': self.bound}


class DofRegion(object):
    """Bounded polytope {d >= 0 : every halfspace holds}.

    Vertices are enumerated on demand, in two dimensions only.
    """

    def __init__(self, dim, halfspaces, name=''):
        self.dim = dim
        self.halfspaces = tuple(halfspaces)
        self.name = name
        for h in self.halfspaces:
            if len(h.coeffs) != dim:
                raise ArgumentError('%d-dim halfspace in a %d-dim region' % (len(h.coeffs), dim))
        for k in range(dim):
            if not any(h.coeffs[k] > 0 and min(h.coeffs) >= 0 for h in self.halfspaces):
                raise ArgumentError('region %s is unbounded along d_%d' % (name, k + 1))
        self.kind = self._classify()

    def _classify(self):
        if len(self.halfspaces) == 1:
            return 'simplex'
        axis = [sum(1 for a in h.coeffs if a != 0) == 1 for h in self.halfspaces]
        if all(axis):
            return 'box'
        return 'polytope'

    def contains(self, point, slack=GEOM_TOL):
        if len(point) != self.dim:
            raise ArgumentError('point has %d coordinates, region has dim %d' % (len(point), self.dim))
        if any(d < -slack for d in point):
            return False
        return all(h.slack(point) >= -slack for h in self.halfspaces)

    @cached_property
    def vertices(self):
        if self.dim != 2:
            raise UnsupportedDimensionError('vertex enumeration needs dim 2, region %s has %d'
                                            % (self.name, self.dim))
        lines = [(h.coeffs, h.bound) for h in self.halfspaces]
        lines += [((1.0, 0.0), 0.0), ((0.0, 1.0), 0.0)]
        found = []
        for (a, b), (c, d) in combinations(lines, 2):
            m = np.array([a, c])
            det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
            if abs(det) < 1e-15:
                continue
            x, y = np.linalg.solve(m, np.array([b, d]))
            pt = tuple(0.0 if abs(v) < GEOM_TOL else float(v) for v in (x, y))
            if not self.contains(pt):
                continue
            if any(abs(pt[0] - q[0]) <= GEOM_TOL and abs(pt[1] - q[1]) <= GEOM_TOL for q in found):
                continue
            found.append(pt)
        cx = sum(p[0] for p in found) / len(found)
        cy = sum(p[1] for p in found) / len(found)
        found.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
        start = min(range(len(found)), key=lambda i: found[i][0] + found[i][1])
        return tuple(found[start:] + found[:start])

    def to_dict(self, with_vertices=True):
        out = {'name': self.name, 'dim': self.dim, 'kind': self.kind,
               'halfspaces': [h.to_dict() for h in self.halfspaces]}
        if with_vertices and self.dim == 2:
            out['vertices'] = [list(v) for v in self.vertices]
        return out

    def __repr__(self):
        return '<DofRegion %s dim=%d %d halfspaces>' % (self.name, self.dim, len(self.halfspaces))


def contains(region, point, slack=GEOM_TOL):
    return region.contains(point, slack)


def vertices_2d(region):
    return list(region.vertices)


def is_subset(a, b):
    if a.dim != 2 or b.dim != 2:
        raise UnsupportedDimensionError('subset test needs two 2-dim regions')
    return all(b.contains(v) for v in a.vertices)


def max_weighted_sum(region, weights):
    if len(weights) != region.dim:
        raise ArgumentError('%d weights for a %d-dim region' % (len(weights), region.dim))
    if region.dim == 2:
        return max(w[0] * weights[0] + w[1] * weights[1] for w in region.vertices)
    if region.kind == 'box':
        total = 0.0
        for h in region.halfspaces:
            k = next(i for i, a in enumerate(h.coeffs) if a != 0)
            total += max(0.0, weights[k]) * h.bound / h.coeffs[k]
        return total
    if region.kind == 'simplex':
        h = region.halfspaces[0]
        return max([0.0] + [w * h.bound / a for w, a in zip(weights, h.coeffs) if a > 0])
    raise UnsupportedDimensionError('no closed-form maximum for a %d-dim %s region'
                                    % (region.dim, region.kind))


def sum_dof(region):
    return max_weighted_sum(region, (1.0,) * region.dim)


def time_share(p, q, alpha):
    """alpha of the time at p, the rest at q."""
    if not 0.0 <= alpha <= 1.0:
        raise ArgumentError('time-share fraction %r outside [0, 1]' % (alpha,))
    return tuple(alpha * a + (1.0 - alpha) * b for a, b in zip(p, q))


# ---- 2-user constructors

def _two_user(dist, what):
    if dist.num_receivers != 2:
        raise UnsupportedDimensionError('%s is a 2-user region, got K=%d' % (what, dist.num_receivers))
    return dist.marginals


def _nonzero(lams):
    for k, lam in enumerate(lams):
        if lam <= 0.0:
            raise DegenerateMarginalError(k)


def _phi(dist):
    """λ_00 + λ_01 + λ_10: probability at least one receiver is clean."""
    return math.fsum((dist.joint('00'), dist.joint('01'), dist.joint('10')))


def region_perfect_csit(dist):
    K = dist.num_receivers
    hs = []
    for k, lam in enumerate(dist.marginals):
        coeffs = [0.0] * K
        coeffs[k] = 1.0
        hs.append(HalfSpace(tuple(coeffs), lam))
    return DofRegion(K, hs, 'PP')


def region_dp(dist):
    l1, l2 = _two_user(dist, 'DP')
    return DofRegion(2, [
        HalfSpace((1, 0), l1),
        HalfSpace((0, 1), l2),
        HalfSpace((2, 1), 2 * l1 + dist.joint('10')),
        HalfSpace((1, 2), 2 * l2 + dist.joint('01')),
    ], 'DP')


def region_dd(dist):
    l1, l2 = _two_user(dist, 'DD')
    _nonzero((l1, l2))
    s = l1 + l2
    return DofRegion(2, [
        HalfSpace((1.0 / l1, 1.0 / s), 1),
        HalfSpace((1.0 / s, 1.0 / l2), 1),
    ], 'DD')


def region_np(dist):
    l1, l2 = _two_user(dist, 'NP')
    return DofRegion(2, [
        HalfSpace((1, 0), l1),
        HalfSpace((0, 1), l2),
        HalfSpace((1, 1), _phi(dist)),
    ], 'NP')


def region_nn(dist):
    lams = dist.marginals
    _nonzero(lams)
    return DofRegion(len(lams), [HalfSpace(tuple(1.0 / lam for lam in lams), 1)], 'NN')


def dn_branch_value(dist):
    l1, l2 = _two_user(dist, 'DN')
    _nonzero((l1, l2))
    return abs(l1 - l2) / (l1 * l2)


def dn_branch_holds(dist):
    """True when the modified-MAT scheme beats time sharing (equality included)."""
    return dn_branch_value(dist) <= 1.0


def region_dn_inner(dist):
    l1, l2 = _two_user(dist, 'DN')
    _nonzero((l1, l2))
    if not dn_branch_holds(dist):
        logger.debug('[RG] DN branch test %.4g > 1, using NN simplex', dn_branch_value(dist))
        region = region_nn(dist)
        region.name = 'DN'
        return region
    c2 = (2 * max(1.0, l1 / l2) - 1) / (1 + l2)
    c1 = (2 * max(1.0, l2 / l1) - 1) / (1 + l1)
    return DofRegion(2, [
        HalfSpace((1, c2), l1),
        HalfSpace((c1, 1), l2),
    ], 'DN')


def region_nd_inner(dist):
    l1, l2 = _two_user(dist, 'ND')
    _nonzero((l1, l2))
    phi = _phi(dist)
    return DofRegion(2, [
        HalfSpace((1.0 / l1, 1.0 / phi), 1),
        HalfSpace((1.0 / phi, 1.0 / l2), 1),
    ], 'ND')


def region_mat(K):
    if not isinstance(K, int) or K < 1:
        raise ArgumentError('MAT region needs K >= 1, got %r' % (K,))
    if K > MAT_MAX_USERS:
        raise UnsupportedDimensionError('MAT region enumerates K! facets; K=%d > %d'
                                        % (K, MAT_MAX_USERS))
    hs = []
    for perm in permutations(range(K)):
        coeffs = [0.0] * K
        for pos, k in enumerate(perm):
            coeffs[k] = float(Fraction(1, pos + 1))
        hs.append(HalfSpace(tuple(coeffs), 1))
    return DofRegion(K, hs, 'MAT')


_CONSTRUCTORS = {
    'PP': region_perfect_csit, 'PD': region_perfect_csit, 'PN': region_perfect_csit,
    'DP': region_dp, 'DD': region_dd, 'DN': region_dn_inner,
    'NP': region_np, 'ND': region_nd_inner, 'NN': region_nn,
}


def region_for(config, dist):
    """Closed-form region (or inner bound) for a CSIT/JSIT configuration name."""
    config = config.upper()
    if config == 'MAT':
        return region_mat(dist.num_receivers)
    try:
        build = _CONSTRUCTORS[config]
    except KeyError:
        raise ArgumentError('unknown configuration %r' % (config,))
    region = build(dist)
    region.name = config
    return region


# ---- closed-form points

def dd_corner(dist):
    l1, l2 = _two_user(dist, 'DD')
    _nonzero((l1, l2))
    s = l1 + l2
    return (l1 / (s / l1 - l2 / s), l2 / (s / l2 - l1 / s))


def nd_corner(dist):
    region = region_nd_inner(dist)
    (a, b), (c, d) = [h.coeffs for h in region.halfspaces]
    det = a * d - b * c
    if abs(det) < 1e-12:
        # both constraints are the same line; take its equal-split point
        t = 1.0 / (a + b)
        return (t, t)
    return ((d - b) / det, (a - c) / det)


def dn_scheme_point(dist):
    """(1+λ_k)/(1+2 max(1/λ_1, 1/λ_2)) reached by the modified-MAT scheme."""
    l1, l2 = _two_user(dist, 'DN')
    _nonzero((l1, l2))
    denom = 1 + 2 * max(1.0 / l1, 1.0 / l2)
    return ((1 + l1) / denom, (1 + l2) / denom)


def dp_corners(dist):
    """(λ1, λ10), MAT corner, (λ01, λ2)."""
    l1, l2 = _two_user(dist, 'DP')
    l00 = dist.joint('00')
    return ((l1, dist.joint('10')),
            (2 * l00 / 3 + dist.joint('01'), 2 * l00 / 3 + dist.joint('10')),
            (dist.joint('01'), l2))


def np_corners(dist):
    l1, l2 = _two_user(dist, 'NP')
    return ((l1, dist.joint('10')), (dist.joint('01'), l2))


def dof_loss(config, dist):
    """Sum-DoF lost against perfect CSIT for a configuration."""
    return sum_dof(region_perfect_csit(dist)) - sum_dof(region_for(config, dist))


# ---- K-user scalars

def harmonic(K):
    return sum(Fraction(1, i) for i in range(1, K + 1))


def dof_mat(K):
    if not isinstance(K, int) or K < 1:
        raise ArgumentError('dof_mat needs K >= 1, got %r' % (K,))
    return float(K / harmonic(K))


def _mat_or_zero(K):
    return dof_mat(K) if K > 0 else 0.0


def _classes(source):
    """Class probabilities from a symmetric dist, or an explicit η vector."""
    if isinstance(source, JammerDistribution):
        if not source.is_symmetric():
            raise PreconditionError('K-user sum DoF needs a permutation-symmetric distribution')
        return source.class_probabilities
    eta = tuple(float(e) for e in source)
    if len(eta) < 2 or any(e < 0 for e in eta) or abs(math.fsum(eta) - 1.0) > PROB_TOL:
        raise ArgumentError('class probabilities must be >= 0 and sum to 1')
    return eta


def _lambda_eta(eta):
    K = len(eta) - 1
    return math.fsum((K - j) / K * e for j, e in enumerate(eta))


def sum_dof_dp_k(source):
    eta = _classes(source)
    K = len(eta) - 1
    return math.fsum(e * _mat_or_zero(K - j) for j, e in enumerate(eta))


def sum_dof_dd_k(source):
    eta = _classes(source)
    return _lambda_eta(eta) * dof_mat(len(eta) - 1)


def sum_dof_nn_k(dist):
    return max(dist.marginals)


def dof_recursion_table(source, K=None):
    """DoF_j for j = 1..K by the backward recursion; index 0 is DoF_1."""
    eta = _classes(source)
    if K is None:
        K = len(eta) - 1
    elif K != len(eta) - 1:
        raise ArgumentError('K=%d but the distribution has %d receivers' % (K, len(eta) - 1))
    lam = _lambda_eta(eta)
    if lam == 0.0:
        return [0.0] * K
    table = [0.0] * (K + 2)
    for j in range(K, 0, -1):
        c = math.comb(K, j)
        denom = c / lam
        if j < K:
            denom += j * math.comb(K, j + 1) / table[j + 1]
        table[j] = (K - j + 1) * c / denom
    return table[1:K + 1]


def dof_recursion_dd(source, K=None):
    return dof_recursion_table(source, K)[0]


def uniform_classes(K):
    """η_j = C(K,j)/2^K, every state equally likely."""
    return tuple(math.comb(K, j) / 2.0 ** K for j in range(K + 1))


def gap_bounds(K):
    if not isinstance(K, int) or K < 1:
        raise ArgumentError('gap bounds need K >= 1, got %r' % (K,))
    H = float(harmonic(K))
    first = (K - 1) / (4 * H * H)
    second = K / (2 * H) - K * (1 - 2.0 ** -K) / (H * H)
    return first, second


def gap_check(K):
    """Actual (DP-DD, MAT-DP) gaps under uniform jamming next to their bounds."""
    eta = uniform_classes(K)
    dp, dd = sum_dof_dp_k(eta), sum_dof_dd_k(eta)
    first, second = gap_bounds(K)
    return {'K': K, 'dof_mat': dof_mat(K), 'dof_dp': dp, 'dof_dd': dd,
            'gap_dp_dd': dp - dd, 'bound_dp_dd': first,
            'gap_mat_dp': dof_mat(K) - dp, 'bound_mat_dp': second}
