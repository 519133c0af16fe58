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

# Monte-Carlo trials over the schemes and verdicts against the regions

import math
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Tuple

import numpy as np

from config import *
from errors import ArgumentError, StarvationError
import DofRegion
import SchemeSim
from Logger import logger

INSIDE = 'inside'
ON_BOUNDARY = 'on-boundary-within-tol'
OUTSIDE = 'outside'


@dataclass(frozen=True)
class EmpiricalDof(object):
    config: str
    mean: Tuple[float, ...]
    stderr: Tuple[float, ...]
    trials: int
    slots_mean: float
    sum_mean: float = 0.0
    sum_stderr: float = 0.0

    def __post_init__(self):
        if self.trials < 1:
            raise ArgumentError('an estimate needs at least one trial')

    @property
    def dim(self):
        return len(self.mean)

    def to_record(self, dist=None, params=None, verdicts=None):
        rec = {'config': self.config,
               'trials': self.trials,
               'mean': list(self.mean),
               'stderr': list(self.stderr),
               'sum_mean': self.sum_mean,
               'sum_stderr': self.sum_stderr,
               'slots_mean': self.slots_mean}
        if dist is not None:
            rec['dist'] = dist.to_mapping()
        if params is not None:
            rec['params'] = dict((k, list(v) if isinstance(v, tuple) else v)
                                 for k, v in params.items() if k != 'trace')
        if verdicts is not None:
            rec['verdicts'] = verdicts
        return rec


def trial_seed(base_seed, i):
    """Seed of trial i; independent of how trials are spread over workers."""
    return np.random.SeedSequence(base_seed, spawn_key=(i,))


def _run_trial(job):
    config, dist, params, seed, i = job
    try:
        run = SchemeSim.run_scheme(config, dist, params, seed)
    except StarvationError as e:
        e.trial = i
        raise
    return run.dof(), run.slots_used


def estimate(config, dist, params, trials, base_seed, threads=None):
    if not isinstance(trials, (int, np.integer)) or trials < 1:
        raise ArgumentError('trials must be >= 1, got %r' % (trials,))
    params = dict(params or {})
    params.pop('trace', None)
    jobs = [(config, dist, params, trial_seed(base_seed, i), i) for i in range(trials)]
    cap = thread_cap()
    workers = min(trials, min(threads, cap) if threads else cap)
    logger.info('[EST] %s: %d trials on %d worker(s), seed %s', config, trials, workers, base_seed)
    if workers <= 1:
        results = [_run_trial(job) for job in jobs]
    else:
        with Pool(workers) as pool:
            results = pool.map(_run_trial, jobs)
    dofs = np.array([r[0] for r in results], dtype=float)
    slots = np.array([r[1] for r in results], dtype=float)
    sums = dofs.sum(axis=1)
    if trials > 1:
        stderr = dofs.std(axis=0, ddof=1) / math.sqrt(trials)
        sum_stderr = float(sums.std(ddof=1) / math.sqrt(trials))
    else:
        stderr = np.zeros(dofs.shape[1])
        sum_stderr = 0.0
    emp = EmpiricalDof(config.upper(), tuple(float(x) for x in dofs.mean(axis=0)),
                       tuple(float(x) for x in stderr), int(trials),
                       float(slots.mean()), float(sums.mean()), sum_stderr)
    logger.debug('[EST] %s mean %s stderr %s', config, emp.mean, emp.stderr)
    return emp


def _point(emp):
    return tuple(emp.mean) if isinstance(emp, EmpiricalDof) else tuple(float(x) for x in emp)


def check_against_region(emp, region, tol=DEFAULT_TOL):
    point = _point(emp)
    if len(point) != region.dim:
        raise ArgumentError('%d-dim estimate against a %d-dim region' % (len(point), region.dim))
    if any(d < -tol for d in point):
        return OUTSIDE
    gap = min(h.distance(point) for h in region.halfspaces)
    if gap < -tol:
        return OUTSIDE
    if gap <= tol:
        return ON_BOUNDARY
    return INSIDE


def check_against_sum(emp, target, tol=DEFAULT_TOL):
    """Verdict for a scalar sum-DoF target, e.g. the K-user bounds."""
    total = emp.sum_mean if isinstance(emp, EmpiricalDof) else math.fsum(_point(emp))
    diff = total - target
    if diff > tol:
        return OUTSIDE
    if diff >= -tol:
        return ON_BOUNDARY
    return INSIDE


# ---- analytic targets

def _dd_point(dist, budgets):
    l1, l2 = dist.marginals
    n1, n2 = budgets
    s = l1 + l2
    slots = (n1 + n2) / s + max(l2 * n1 / (l1 * s), l1 * n2 / (l2 * s))
    return (n1 / slots, n2 / slots) if slots else (0.0, 0.0)


def _nd_point(dist, budgets):
    l1, l2 = dist.marginals
    n1, n2 = budgets
    phi = DofRegion._phi(dist)
    l10, l01 = dist.joint('10'), dist.joint('01')
    slots = (n1 + n2) / phi + max(l10 * n1 / (l1 * phi), l01 * n2 / (l2 * phi))
    return (n1 / slots, n2 / slots) if slots else (0.0, 0.0)


def _np_point(dist, policy):
    c1, c2 = DofRegion.np_corners(dist)
    l1, l2 = dist.marginals
    if policy.startswith('time-share:'):
        return DofRegion.time_share(c1, c2, float(policy.split(':', 1)[1]))
    return {'corner-1': c1, 'corner-2': c2,
            'tdma-1': (l1, 0.0), 'tdma-2': (0.0, l2)}[policy]


def target_point(config, dist, params=None):
    """Point the scheme approaches as its blocks grow."""
    p = dict(params or {})
    c = config.upper()
    K = dist.num_receivers
    if c in ('PP', 'PD', 'PN'):
        return dist.marginals
    if c == 'DP':
        corners = DofRegion.dp_corners(dist)
        return corners[{'user1-priority': 0, 'mat-corner': 1,
                        'user2-priority': 2}[p.get('mode') or 'mat-corner']]
    if c == 'NP':
        return _np_point(dist, p.get('policy') or 'corner-1')
    if c == 'DD':
        if 'budgets' in p:
            return _dd_point(dist, p['budgets'])
        return DofRegion.dd_corner(dist)
    if c == 'ND':
        if 'budgets' in p:
            return _nd_point(dist, p['budgets'])
        return DofRegion.nd_corner(dist)
    if c == 'DN':
        if DofRegion.dn_branch_holds(dist):
            return DofRegion.dn_scheme_point(dist)
        share = SchemeSim.dn_fallback_share(dist)
        return tuple(lam * w for lam, w in zip(dist.marginals, share))
    if c == 'NN':
        share = p.get('share') or (1.0 / K,) * K
        return tuple(lam * w for lam, w in zip(dist.marginals, share))
    if c == 'DD-K':
        return (DofRegion.sum_dof_dd_k(dist) / K,) * K
    if c == 'DP-K':
        return (DofRegion.sum_dof_dp_k(dist) / K,) * K
    raise ArgumentError('unknown configuration %r' % (config,))


def _sized(config, params, n):
    if not any(params['budgets']):
        logger.warning('[EST] %s: every default budget rounds to 0 at n=%s, the run sends nothing',
                       config, n)
    return params


def default_params(config, dist, n=DEFAULT_SLOTS, mode=None, policy=None, share=None, eta=None):
    """Scheme parameters sized so one run lasts about ``n`` slots."""
    c = config.upper()
    K = dist.num_receivers
    if c in ('PP', 'PD'):
        return _sized(c, {'budgets': tuple(int(round(lam * n)) for lam in dist.marginals)}, n)
    if c == 'PN':
        return {'n': int(n)}
    if c == 'DP':
        p = {'mode': mode or 'mat-corner'}
        p['budgets'] = tuple(int(round(d * n)) for d in target_point(c, dist, p))
        return _sized(c, p, n)
    if c == 'NP':
        p = {'policy': policy or 'corner-1'}
        p['budgets'] = tuple(int(round(d * n)) for d in target_point(c, dist, p))
        return _sized(c, p, n)
    if c in ('DD', 'ND'):
        if eta is None:
            eta = SchemeSim.optimal_split(c, dist)
        corner = DofRegion.dd_corner(dist) if c == 'DD' else DofRegion.nd_corner(dist)
        total = int(round(sum(corner) * n))
        return {'budgets': SchemeSim.budgets_for_split(total, eta), 'eta': eta}
    if c == 'DN':
        l1, l2 = dist.marginals
        DofRegion._nonzero((l1, l2))
        return {'n': int(round(n / (1 + 2 * max(1.0 / l1, 1.0 / l2))))}
    if c == 'NN':
        return {'n': int(n), 'share': tuple(share) if share else (1.0 / K,) * K}
    if c in ('DD-K', 'DP-K'):
        return {'budget': int(round(target_point(c, dist)[0] * n))}
    raise ArgumentError('unknown configuration %r' % (config,))
