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

# Slot-by-slot transmission schemes at linear-combination accounting level

import math
from collections import deque
from itertools import combinations

import numpy as np
from scipy.optimize import minimize_scalar

from config import *
from errors import (ArgumentError, DegenerateMarginalError, PreconditionError,
                    StarvationError)
import DofRegion
from Jammer import bitstring, iter_states, ones_count
from Ledger import ReceiverLedger, SchemeRun, SymbolBlock, TagSource
from Logger import logger

CONFIGS = ('PP', 'PD', 'PN', 'DP', 'DD', 'DN', 'NP', 'ND', 'NN', 'DP-K', 'DD-K')
DP_MODES = ('mat-corner', 'user1-priority', 'user2-priority')
NP_POLICIES = ('corner-1', 'corner-2', 'tdma-1', 'tdma-2', 'time-share:<alpha>')


def _clean(mask, k):
    return not (mask >> k) & 1


class _Clock(object):
    """Draws one jammer state per slot, counts it and enforces the slot cap."""

    def __init__(self, run, dist, seed, cap, trace=False):
        self.run = run
        self.K = dist.num_receivers
        self.cap = cap
        self.t = 0
        self.mask = 0
        self.stage = None
        self.starved = lambda: 0
        self._states = iter_states(dist, seed)
        if trace:
            run.trace = []

    def tick(self, stage):
        if self.t >= self.cap:
            k = self.starved()
            raise StarvationError(k, self.t, 'receiver %d starved: %s ran past %d slots'
                                  % (k + 1, self.run.config, self.cap))
        self.mask = next(self._states)
        self.t += 1
        self.stage = stage
        self.run.state_slots[self.mask] += 1
        self.run.stage_slots[stage] = self.run.stage_slots.get(stage, 0) + 1
        return self.mask

    def deliver(self, count=1):
        self.run.state_delivered[self.mask] += count

    def log(self, action, receiver=None, tag=None):
        if self.run.trace is not None:
            self.run.trace.append((self.t, bitstring(self.mask, self.K), self.stage, action,
                                   None if receiver is None else receiver + 1, tag))


def _require_users(dist, K, config):
    if dist.num_receivers != K:
        raise PreconditionError('%s scheme needs K=%d, got K=%d' % (config, K, dist.num_receivers))


def _budgets(budgets, K):
    try:
        out = tuple(int(b) for b in budgets)
    except (TypeError, ValueError):
        raise ArgumentError('budgets must be integers, got %r' % (budgets,))
    if len(out) != K or any(b < 0 for b in out):
        raise ArgumentError('need %d nonnegative budgets, got %r' % (K, budgets))
    return out


def _nonnegative_int(value, what):
    if not isinstance(value, (int, np.integer)) or value < 0:
        raise ArgumentError('%s must be a nonnegative integer, got %r' % (what, value))
    return int(value)


def _slot_cap(budgets, lams, max_slots):
    for k, (b, lam) in enumerate(zip(budgets, lams)):
        if b > 0 and lam <= 0:
            raise StarvationError(k, 0, 'receiver %d has %d symbols queued but is always jammed'
                                  % (k + 1, b))
    if max_slots is not None:
        return int(max_slots)
    # serving receivers one after another bounds every scheme's duration
    expected = sum(b / lam for b, lam in zip(budgets, lams) if b > 0)
    return int(math.ceil(MAX_SLOTS_FACTOR * max(1.0, expected)))


def _nonzero_marginals(dist):
    lams = dist.marginals
    for k, lam in enumerate(lams):
        if lam <= 0:
            raise DegenerateMarginalError(k)
    return lams


def _neediest(need):
    return max(range(len(need)), key=lambda k: need[k])


def _ledgers(blocks):
    ledgers = []
    for k, block in enumerate(blocks):
        ledger = ReceiverLedger(k)
        ledger.want(block)
        ledgers.append(ledger)
    return ledgers


def _finish(run, clock_t, ledgers):
    run.slots_used = clock_t
    run.delivered = tuple(l.delivered() for l in ledgers)
    for k, ledger in enumerate(ledgers):
        done = [ledger.decoded_at.get(key, 0) for key in ledger.blocks if ledger.decoded(key)]
        if len(done) == len(ledger.blocks):
            run.decode_slots[k] = max([s or 0 for s in done] + [0])
    logger.debug('[SIM] %s finished after %d slots, delivered %s',
                 run.config, run.slots_used, run.delivered)
    return run


# ---- perfect CSIT

def run_pp(dist, budgets, seed, max_slots=None, trace=False):
    """Zero-forcing to every unjammed receiver, one symbol each per slot."""
    _require_users(dist, 2, 'PP')
    budgets = _budgets(budgets, 2)
    run = SchemeRun('PP', 2, budgets, params={'budgets': budgets})
    clock = _Clock(run, dist, seed, _slot_cap(budgets, dist.marginals, max_slots), trace)
    blocks = [SymbolBlock(k, 'x', b, partial=True) for k, b in enumerate(budgets)]
    ledgers = _ledgers(blocks)
    tags = TagSource()
    need = list(budgets)
    clock.starved = lambda: _neediest(need)
    while any(need):
        s = clock.tick('zf')
        for k in (0, 1):
            if need[k] and _clean(s, k):
                lc = tags.lc(blocks[k])
                ledgers[k].receive(lc, clock.t)
                need[k] -= 1
                clock.deliver()
                clock.log('zf-stream', k, lc.tag)
    return _finish(run, clock.t, ledgers)


def run_pd(dist, budgets, seed, max_slots=None, trace=False):
    """Head-of-line retransmission driven by one-slot-late jammer feedback.

    The transmitter learns slot t's jammer state at t+1, so a jammed
    symbol goes out again in the next slot and a delivered one is replaced.
    """
    _require_users(dist, 2, 'PD')
    budgets = _budgets(budgets, 2)
    run = SchemeRun('PD', 2, budgets, params={'budgets': budgets})
    clock = _Clock(run, dist, seed, _slot_cap(budgets, dist.marginals, max_slots), trace)
    blocks = [SymbolBlock(k, 'x', b, partial=True) for k, b in enumerate(budgets)]
    ledgers = _ledgers(blocks)
    tags = TagSource()
    need = list(budgets)
    tries = [0, 0]
    worst = 0
    clock.starved = lambda: _neediest(need)
    while any(need):
        s = clock.tick('retransmit')
        for k in (0, 1):
            if not need[k]:
                continue
            action = 'resend' if tries[k] else 'send'
            if _clean(s, k):
                lc = tags.lc(blocks[k])
                ledgers[k].receive(lc, clock.t)
                need[k] -= 1
                tries[k] = 0
                clock.deliver()
                clock.log(action, k, lc.tag)
            else:
                tries[k] += 1
                worst = max(worst, tries[k])
                clock.log(action, k)
    run.queue_peaks['max_retries'] = worst
    return _finish(run, clock.t, ledgers)


def pn_blocks(dist, n):
    """⌈λ_k n⌉ symbols for receiver k over an n-slot horizon."""
    return tuple(int(math.ceil(lam * n - 1e-9)) for lam in dist.marginals)


def run_pn(dist, blocks, seed, max_slots=None, trace=False):
    """Each ZF stream carries fresh random LCs of its receiver's whole block."""
    _require_users(dist, 2, 'PN')
    sizes = _budgets(blocks, 2)
    run = SchemeRun('PN', 2, sizes, params={'blocks': sizes})
    clock = _Clock(run, dist, seed, _slot_cap(sizes, dist.marginals, max_slots), trace)
    blocks = [SymbolBlock(k, 'block', m) for k, m in enumerate(sizes)]
    ledgers = _ledgers(blocks)
    tags = TagSource()
    clock.starved = lambda: _neediest([l.wanted() for l in ledgers])
    while any(l.wanted() for l in ledgers):
        s = clock.tick('rlc')
        for k in (0, 1):
            if not ledgers[k].wanted():
                continue
            lc = tags.lc(blocks[k])
            if _clean(s, k):
                ledgers[k].receive(lc, clock.t)
                clock.log('rlc', k, lc.tag)
                if ledgers[k].decoded(blocks[k].key):
                    clock.deliver(sizes[k])
    return _finish(run, clock.t, ledgers)


# ---- delayed CSIT, perfect JSIT

def run_dp(dist, budgets, mode, seed, max_slots=None, trace=False):
    """Separate coding per jammer state; MAT on the slots where nobody is jammed."""
    _require_users(dist, 2, 'DP')
    if mode not in DP_MODES:
        raise ArgumentError('DP mode must be one of %s, got %r' % (', '.join(DP_MODES), mode))
    budgets = _budgets(budgets, 2)
    run = SchemeRun('DP', 2, budgets, params={'budgets': budgets, 'mode': mode})
    clock = _Clock(run, dist, seed, _slot_cap(budgets, dist.marginals, max_slots), trace)
    singles = [SymbolBlock(k, 'x', b, partial=True) for k, b in enumerate(budgets)]
    ledgers = _ledgers(singles)
    tags = TagSource()
    # neither delivered nor promised to a running MAT cycle
    free = list(budgets)
    phase = 0
    cycles = 0
    pair = None
    clock.starved = lambda: _neediest(free)

    def serve(k):
        lc = tags.lc(singles[k])
        ledgers[k].receive(lc, clock.t)
        free[k] -= 1
        clock.deliver()
        clock.log('serve', k, lc.tag)

    while any(free) or phase:
        s = clock.tick('separable')
        if s == 0:
            if mode == 'mat-corner' and (phase or (free[0] >= 2 and free[1] >= 2)):
                if phase == 0:
                    free[0] -= 2
                    free[1] -= 2
                    a = SymbolBlock(0, 'a%d' % cycles, 2)
                    b = SymbolBlock(1, 'b%d' % cycles, 2)
                    ledgers[0].want(a)
                    ledgers[1].want(b)
                    f1, f2 = tags.lc(a), tags.lc(a)
                    ledgers[0].receive(f1, clock.t)
                    ledgers[1].receive(f2, clock.t)
                    pair = [f2, None, a, b]
                    clock.log('mat-a', None, f1.tag)
                elif phase == 1:
                    g1, g2 = tags.lc(pair[3]), tags.lc(pair[3])
                    ledgers[0].receive(g1, clock.t)
                    ledgers[1].receive(g2, clock.t)
                    pair[1] = g1
                    clock.log('mat-b', None, g2.tag)
                else:
                    # F2 + G1: each side cancels what it overheard
                    ledgers[0].receive(pair[0], clock.t)
                    ledgers[1].receive(pair[1], clock.t)
                    clock.deliver(4)
                    clock.log('mat-multicast', None, pair[0].tag)
                    cycles += 1
                phase = (phase + 1) % 3
            else:
                if mode == 'user2-priority':
                    order = (1, 0)
                elif mode == 'user1-priority':
                    order = (0, 1)
                else:
                    order = (0, 1) if free[0] >= free[1] else (1, 0)
                k = next((i for i in order if free[i]), None)
                if k is not None:
                    serve(k)
        elif s == 2 and free[0]:
            serve(0)
        elif s == 1 and free[1]:
            serve(1)
        else:
            clock.log('idle')
    run.queue_peaks['mat_cycles'] = cycles
    return _finish(run, clock.t, ledgers)


# ---- delayed CSIT, delayed JSIT

def _multicast_stage(clock, ledgers, q1, q2):
    """Send L = l1*F + l2*G until both side-information queues drain.

    A receiver that hears L clean removes the other receiver's part with
    its own side information, so its queue head is replaced next slot.
    """
    while q1 or q2:
        s = clock.tick('stage3')
        action = 'combine' if (q1 and q2) else 'single'
        hit = False
        if q1 and _clean(s, 0):
            lc = q1.popleft()
            ledgers[0].receive(lc, clock.t)
            clock.deliver()
            clock.log(action, 0, lc.tag)
            hit = True
        if q2 and _clean(s, 1):
            lc = q2.popleft()
            ledgers[1].receive(lc, clock.t)
            clock.deliver()
            clock.log(action, 1, lc.tag)
            hit = True
        if not hit:
            clock.log('retransmit')


def _dd_stage(clock, tags, ledgers, block, owner, queue):
    """One DD symbol stage; LCs overheard only by the other side go to ``queue``."""
    other = 1 - owner
    got = 0
    stage = 'stage%d' % (owner + 1)
    while got < block.size:
        s = clock.tick(stage)
        own, heard = _clean(s, owner), _clean(s, other)
        if own:
            lc = tags.lc(block)
            ledgers[owner].receive(lc, clock.t)
            got += 1
            clock.deliver()
            clock.log('fresh', owner, lc.tag)
        if heard and got < block.size:
            lc = tags.lc(block)
            ledgers[other].receive(lc, clock.t)
            queue.append(lc)
            got += 1
            clock.log('overheard', other, lc.tag)
        if not own and not heard:
            clock.log('retransmit')


def run_dd(dist, budgets, seed, max_slots=None, trace=False):
    _require_users(dist, 2, 'DD')
    lams = _nonzero_marginals(dist)
    budgets = _budgets(budgets, 2)
    run = SchemeRun('DD', 2, budgets, params={'budgets': budgets})
    clock = _Clock(run, dist, seed, _slot_cap(budgets, lams, max_slots), trace)
    blocks = [SymbolBlock(0, 'a', budgets[0]), SymbolBlock(1, 'b', budgets[1])]
    ledgers = _ledgers(blocks)
    tags = TagSource()
    q1, q2 = deque(), deque()
    clock.starved = lambda: _neediest([l.wanted() for l in ledgers])
    _dd_stage(clock, tags, ledgers, blocks[0], 0, q1)
    _dd_stage(clock, tags, ledgers, blocks[1], 1, q2)
    run.queue_peaks['q1'] = len(q1)
    run.queue_peaks['q2'] = len(q2)
    _multicast_stage(clock, ledgers, q1, q2)
    return _finish(run, clock.t, ledgers)


def run_dn(dist, n, seed, max_slots=None, trace=False):
    """Modified MAT: n mixing slots, then fixed-length F and G multicasts.

    Without jammer feedback the F-type (G-type) LCs are multicast as
    fresh random combinations of all n of them for ⌈max(1/λ_1,1/λ_2)·n⌉
    slots. A receiver recovers min(received, n) dimensions from such a
    multicast; a shortfall is counted as lost symbols.
    """
    _require_users(dist, 2, 'DN')
    l1, l2 = _nonzero_marginals(dist)
    n = _nonnegative_int(n, 'n')
    sizes = (int(round((1 + l1) * n)), int(round((1 + l2) * n)))
    tau = int(math.ceil(max(1.0 / l1, 1.0 / l2) * n - 1e-9))
    run = SchemeRun('DN', 2, sizes, params={'n': n, 'tau': tau})
    if not DofRegion.dn_branch_holds(dist):
        run.notes.append('modified MAT is inferior to time sharing for this distribution')
    total = n + 2 * tau
    clock = _Clock(run, dist, seed, max_slots if max_slots is not None else total, trace)
    a = SymbolBlock(0, 'a', sizes[0], partial=True)
    b = SymbolBlock(1, 'b', sizes[1], partial=True)
    ledgers = _ledgers([a, b])
    tags = TagSource()
    mixed = [0, 0]
    for _ in range(n):
        s = clock.tick('stage1')
        for k in (0, 1):
            if _clean(s, k):
                lc = tags.lc(a, b)
                ledgers[k].receive(lc, clock.t)
                mixed[k] += 1
                clock.log('mix', k, lc.tag)
    heard = {'stage2': [0, 0], 'stage3': [0, 0]}
    for stage, action in (('stage2', 'multicast-F'), ('stage3', 'multicast-G')):
        for _ in range(tau):
            s = clock.tick(stage)
            for k in (0, 1):
                if _clean(s, k):
                    heard[stage][k] += 1
                    clock.log(action, k)
    f, g = heard['stage2'], heard['stage3']
    # receiver 1: F-combos are own LCs, G-combos unlock its mixed receptions
    rank1 = min(f[0], n) + max(0, min(mixed[0], mixed[0] + g[0] - n))
    rank2 = min(g[1], n) + max(0, min(mixed[1], mixed[1] + f[1] - n))
    ledgers[0].credit(a.key, rank1, clock.t)
    ledgers[1].credit(b.key, rank2, clock.t)
    run.queue_peaks['mixed1'] = mixed[0]
    run.queue_peaks['mixed2'] = mixed[1]
    return _finish(run, clock.t, ledgers)


def dn_fallback_share(dist):
    """Time-sharing vector that serves only the less-jammed receiver."""
    l1, l2 = dist.marginals
    return (1.0, 0.0) if l1 >= l2 else (0.0, 1.0)


def run_dn_or_fallback(dist, n, seed, max_slots=None, trace=False):
    if DofRegion.dn_branch_holds(dist):
        return run_dn(dist, n, seed, max_slots, trace)
    l1, l2 = dist.marginals
    horizon = n + 2 * int(math.ceil(max(1.0 / l1, 1.0 / l2) * n - 1e-9))
    logger.info('[SIM] DN branch test %.4g > 1, falling back to NN time sharing',
                DofRegion.dn_branch_value(dist))
    run = run_nn(dist, horizon, dn_fallback_share(dist), seed, max_slots, trace)
    run.config = 'DN'
    run.notes.append('fallback: NN time sharing')
    return run


# ---- no CSIT

def _np_rule(policy):
    """(exclusive receiver or None, corner preference for state 00 or alpha)."""
    if policy in ('corner-1', 'corner-2'):
        return None, int(policy[-1]) - 1, None
    if policy in ('tdma-1', 'tdma-2'):
        return int(policy[-1]) - 1, None, None
    if policy.startswith('time-share:'):
        try:
            alpha = float(policy.split(':', 1)[1])
        except ValueError:
            alpha = -1.0
        if not 0.0 <= alpha <= 1.0:
            raise ArgumentError('time-share fraction must lie in [0, 1]: %r' % policy)
        return None, None, alpha
    raise ArgumentError('NP policy must be one of %s, got %r' % (', '.join(NP_POLICIES), policy))


def run_np(dist, budgets, policy, seed, max_slots=None, trace=False):
    """One unjammed receiver per slot; the policy settles state 00."""
    _require_users(dist, 2, 'NP')
    exclusive, prefer, alpha = _np_rule(policy)
    budgets = _budgets(budgets, 2)
    run = SchemeRun('NP', 2, budgets, params={'budgets': budgets, 'policy': policy})
    clock = _Clock(run, dist, seed, _slot_cap(budgets, dist.marginals, max_slots), trace)
    blocks = [SymbolBlock(k, 'x', b, partial=True) for k, b in enumerate(budgets)]
    ledgers = _ledgers(blocks)
    tags = TagSource()
    free = list(budgets)
    acc = 0.0
    clock.starved = lambda: _neediest(free)
    while any(free):
        s = clock.tick('single-antenna')
        ready = [k for k in (0, 1) if free[k] and _clean(s, k)]
        k = None
        if exclusive is not None and free[exclusive]:
            k = exclusive if exclusive in ready else None
        elif len(ready) == 2:
            if alpha is not None:
                acc += alpha
                if acc >= 1.0 - 1e-12:
                    acc -= 1.0
                    k = 0
                else:
                    k = 1
            else:
                k = prefer
        elif ready:
            k = ready[0]
        if k is None:
            clock.log('idle')
            continue
        lc = tags.lc(blocks[k])
        ledgers[k].receive(lc, clock.t)
        free[k] -= 1
        clock.deliver()
        clock.log('serve', k, lc.tag)
    return _finish(run, clock.t, ledgers)


def _relay_stage(clock, tags, ledgers, block, owner, queue):
    """ND symbol stage: resend until somebody hears it clean."""
    other = 1 - owner
    sent = 0
    stage = 'stage%d' % (owner + 1)
    while sent < block.size:
        s = clock.tick(stage)
        lc = tags.lc(block)
        if _clean(s, owner):
            ledgers[owner].receive(lc, clock.t)
            clock.deliver()
            clock.log('deliver', owner, lc.tag)
            sent += 1
        elif _clean(s, other):
            ledgers[other].receive(lc, clock.t)
            queue.append(lc)
            clock.log('overheard', other, lc.tag)
            sent += 1
        else:
            clock.log('retransmit')


def run_nd(dist, budgets, seed, max_slots=None, trace=False):
    _require_users(dist, 2, 'ND')
    lams = _nonzero_marginals(dist)
    budgets = _budgets(budgets, 2)
    run = SchemeRun('ND', 2, budgets, params={'budgets': budgets})
    clock = _Clock(run, dist, seed, _slot_cap(budgets, lams, max_slots), trace)
    blocks = [SymbolBlock(0, 'a', budgets[0], partial=True),
              SymbolBlock(1, 'b', budgets[1], partial=True)]
    ledgers = _ledgers(blocks)
    tags = TagSource()
    q1, q2 = deque(), deque()
    clock.starved = lambda: _neediest([l.wanted() for l in ledgers])
    _relay_stage(clock, tags, ledgers, blocks[0], 0, q1)
    _relay_stage(clock, tags, ledgers, blocks[1], 1, q2)
    run.queue_peaks['q1'] = len(q1)
    run.queue_peaks['q2'] = len(q2)
    _multicast_stage(clock, ledgers, q1, q2)
    return _finish(run, clock.t, ledgers)


def _share(share, K):
    try:
        share = tuple(float(x) for x in share)
    except (TypeError, ValueError):
        raise ArgumentError('share must be a list of fractions, got %r' % (share,))
    if len(share) != K or any(x < 0 for x in share) or abs(math.fsum(share) - 1.0) > 1e-9:
        raise ArgumentError('share needs %d nonnegative fractions summing to 1, got %r' % (K, share))
    return share


def run_nn(dist, n, share, seed, max_slots=None, trace=False):
    """Time sharing: receiver k owns a segment and gets random LCs of its block.

    Segment k lasts until its ⌈λ_k share_k n⌉ block decodes, which takes
    share_k n slots on average.
    """
    K = dist.num_receivers
    n = _nonnegative_int(n, 'n')
    share = _share(share, K)
    lams = dist.marginals
    sizes = tuple(int(math.ceil(lam * w * n - 1e-9)) for lam, w in zip(lams, share))
    run = SchemeRun('NN', K, sizes, params={'n': n, 'share': share, 'blocks': sizes})
    clock = _Clock(run, dist, seed, _slot_cap(sizes, lams, max_slots), trace)
    blocks = [SymbolBlock(k, 'block', m) for k, m in enumerate(sizes)]
    ledgers = _ledgers(blocks)
    tags = TagSource()
    current = [0]
    clock.starved = lambda: current[0]
    for k in range(K):
        current[0] = k
        stage = 'share-%d' % (k + 1)
        while ledgers[k].wanted():
            s = clock.tick(stage)
            lc = tags.lc(blocks[k])
            if _clean(s, k):
                ledgers[k].receive(lc, clock.t)
                clock.log('rlc', k, lc.tag)
                if ledgers[k].decoded(blocks[k].key):
                    clock.deliver(sizes[k])
    return _finish(run, clock.t, ledgers)


# ---- K users

def _k_user_checks(dist, K, config):
    if K < 2:
        raise PreconditionError('%s needs K >= 2, got %d' % (config, K))
    _require_users(dist, K, config)
    if not dist.is_symmetric():
        raise PreconditionError('%s needs a permutation-symmetric jammer distribution' % config)


def _stage_receptions(rng, K, lam, needed):
    """Slots and per-receiver clean receptions until ``needed`` are logged.

    Each receiver is clean in a slot with probability ``lam``,
    independently of the others.
    """
    got = np.zeros(K, dtype=np.int64)
    if needed <= 0:
        return 0, got
    total = 0
    slots = 0
    while True:
        hits = rng.random((STATE_CHUNK, K)) < lam
        cs = np.cumsum(hits.sum(axis=1)) + total
        idx = int(np.searchsorted(cs, needed))
        if idx < len(cs):
            got += hits[:idx + 1].sum(axis=0)
            return slots + idx + 1, got
        got += hits.sum(axis=0)
        total = int(cs[-1])
        slots += len(cs)


def run_dd_k(dist, K, budget, seed, max_slots=None, trace=False):
    """K-phase retrospective scheme under symmetric jamming.

    Phase j serves every j-subset once; a stage carries (K-j+1)·m_j
    order-j LCs and ends after K·m_j clean receptions across receivers.
    Phase j leaves j·C(K,j+1)·m_j order-(j+1) LCs for phase j+1.
    A receiver resolves one own symbol per reception in a stage whose
    subset contains it, up to its budget.
    """
    _k_user_checks(dist, K, 'DD-K')
    budget = _nonnegative_int(budget, 'budget')
    lam = dist.lambda_eta()
    if lam <= 0 and budget:
        raise StarvationError(0, 0, 'every receiver is always jammed')
    run = SchemeRun('DD-K', K, (budget,) * K, params={'budget': budget})
    if trace:
        run.trace = []
    rng = np.random.default_rng(seed)
    blocks = [SymbolBlock(k, 'msg', budget, partial=True) for k in range(K)]
    ledgers = _ledgers(blocks)
    if max_slots is None and budget:
        expected = K * budget / (lam * DofRegion.dof_mat(K))
        max_slots = int(math.ceil(MAX_SLOTS_FACTOR * max(1.0, expected)))
    t = 0
    m = budget / float(K)
    pool = 0.0
    for j in range(1, K + 1):
        if j > 1:
            m = pool / ((K - j + 1) * math.comb(K, j))
        # round up so no pool mass is lost between phases
        needed = int(math.ceil(K * m - GEOM_TOL))
        stage = 'phase%d' % j
        for subset in combinations(range(K), j):
            slots, got = _stage_receptions(rng, K, lam, needed)
            t += slots
            if max_slots is not None and t > max_slots:
                raise StarvationError(subset[0], t, 'receiver %d starved in %s' % (subset[0] + 1, stage))
            run.stage_slots[stage] = run.stage_slots.get(stage, 0) + slots
            for k in subset:
                ledgers[k].credit(blocks[k].key, int(got[k]), t)
            if run.trace is not None:
                run.trace.append((t, '-', stage, 'stage', '+'.join(str(k + 1) for k in subset), needed))
        if j < K:
            pool = j * math.comb(K, j + 1) * m
            run.queue_peaks['order%d' % (j + 1)] = pool
    return _finish(run, t, ledgers)


def mat_pass(u):
    """(slots, symbols per receiver) of one whole MAT pass over u receivers."""
    f = u * DofRegion.harmonic(u)
    return f.numerator, u * f.denominator


def run_dp_k(dist, K, budget, seed, max_slots=None, trace=False):
    """Perfect JSIT: MAT over whichever receivers are unjammed this slot.

    One MAT machine runs per unjammed set and advances only on slots with
    exactly that set clean; a receiver that reaches its budget leaves and
    the machines it belonged to are dropped.
    """
    _k_user_checks(dist, K, 'DP-K')
    budget = _nonnegative_int(budget, 'budget')
    lam = dist.lambda_eta()
    budgets = (budget,) * K
    run = SchemeRun('DP-K', K, budgets, params={'budget': budget})
    rate = DofRegion.sum_dof_dp_k(dist)
    if budget and rate <= 0:
        raise StarvationError(0, 0, 'every receiver is always jammed')
    if max_slots is None:
        max_slots = int(math.ceil(MAX_SLOTS_FACTOR * max(1.0, K * budget / rate))) if budget else 1
    clock = _Clock(run, dist, seed, max_slots, trace)
    blocks = [SymbolBlock(k, 'msg', budget, partial=True) for k in range(K)]
    ledgers = _ledgers(blocks)
    passes = dict((u, mat_pass(u)) for u in range(1, K + 1))
    delivered = [0] * K
    active = (1 << K) - 1 if budget else 0
    machines = {}
    clock.starved = lambda: min(range(K), key=lambda k: delivered[k])
    while active:
        s = clock.tick('dp-k')
        group = active & ~s
        if not group:
            clock.log('idle')
            continue
        u = ones_count(group)
        run.stage_slots['mat-%d' % u] = run.stage_slots.get('mat-%d' % u, 0) + 1
        machines[group] = machines.get(group, 0) + 1
        length, per_receiver = passes[u]
        if machines[group] < length:
            clock.log('mat%d-step' % u)
            continue
        machines[group] = 0
        for k in range(K):
            if not (group >> k) & 1:
                continue
            give = min(per_receiver, budget - delivered[k])
            delivered[k] += give
            ledgers[k].credit(blocks[k].key, give, clock.t)
            clock.deliver(give)
            clock.log('mat%d-pass' % u, k)
            if delivered[k] >= budget:
                active &= ~(1 << k)
                machines = dict((g, c) for g, c in machines.items() if not (g >> k) & 1)
    return _finish(run, clock.t, ledgers)


# ---- symbol split and dispatch

def _split_cost(config, dist):
    l1, l2 = _nonzero_marginals(dist)
    if config == 'DD':
        s = l1 + l2
        return lambda eta: 1.0 / s + max(l2 * eta / (l1 * s), l1 * (1 - eta) / (l2 * s))
    phi = DofRegion._phi(dist)
    l10, l01 = dist.joint('10'), dist.joint('01')
    return lambda eta: 1.0 / phi + max(l10 * eta / (l1 * phi), l01 * (1 - eta) / (l2 * phi))


def optimal_split(config, dist):
    """η = n_1/(n_1+n_2) maximising the sum DoF of the DD or ND scheme."""
    config = config.upper()
    if config not in ('DD', 'ND'):
        raise ArgumentError('symbol split applies to DD and ND, not %r' % config)
    if config == 'ND' and dist.joint('10') == 0 and dist.joint('01') == 0:
        return 0.5
    cost = _split_cost(config, dist)
    res = minimize_scalar(cost, bounds=(0.0, 1.0), method='bounded',
                          options={'xatol': ETA_XTOL})
    logger.debug('[SIM] %s split eta=%.6f', config, res.x)
    return float(res.x)


def budgets_for_split(total, eta):
    n1 = int(round(eta * total))
    return (n1, int(total) - n1)


def run_scheme(config, dist, params, seed):
    """Run one scheme by configuration name with a parameter dict."""
    p = dict(params or {})
    c = config.upper()
    opts = {'max_slots': p.get('max_slots'), 'trace': p.get('trace', False)}
    if c in ('PP', 'PD', 'DD', 'ND'):
        fn = {'PP': run_pp, 'PD': run_pd, 'DD': run_dd, 'ND': run_nd}[c]
        return fn(dist, p['budgets'], seed, **opts)
    if c == 'PN':
        blocks = p.get('budgets') or pn_blocks(dist, p['n'])
        return run_pn(dist, blocks, seed, **opts)
    if c == 'DP':
        return run_dp(dist, p['budgets'], p.get('mode') or 'mat-corner', seed, **opts)
    if c == 'NP':
        return run_np(dist, p['budgets'], p.get('policy') or 'corner-1', seed, **opts)
    if c == 'DN':
        return run_dn_or_fallback(dist, p['n'], seed, **opts)
    if c == 'NN':
        share = p.get('share') or (1.0 / dist.num_receivers,) * dist.num_receivers
        return run_nn(dist, p['n'], share, seed, **opts)
    if c == 'DD-K':
        return run_dd_k(dist, dist.num_receivers, p['budget'], seed, **opts)
    if c == 'DP-K':
        return run_dp_k(dist, dist.num_receivers, p['budget'], seed, **opts)
    raise ArgumentError('unknown configuration %r; choose from %s' % (config, ', '.join(CONFIGS)))
