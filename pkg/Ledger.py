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

# Symbols, linear combinations and what each receiver holds

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from errors import ArgumentError

TRACE_FIELDS = ('slot', 'state', 'stage', 'action', 'receiver', 'lc-tag')


@dataclass(frozen=True)
class SymbolId(object):
    receiver: int
    index: int

    def __post_init__(self):
        if self.receiver < 0 or self.index < 0:
            raise ArgumentError('bad symbol id (%r, %r)' % (self.receiver, self.index))


@dataclass(frozen=True)
class SymbolBlock(object):
    """``size`` consecutive symbols of one receiver's message.

    A coded block decodes all at once when it holds ``size`` independent
    LCs. A partial block counts every independent LC as one recovered
    symbol: uncoded streams, or a rank that is only partly filled at the
    end of a fixed schedule.
    """
    receiver: int
    label: str
    size: int
    first: int = 0
    partial: bool = False

    @property
    def key(self):
        return (self.receiver, self.label)

    def members(self):
        return frozenset(SymbolId(self.receiver, self.first + i) for i in range(self.size))


@dataclass(frozen=True)
class LinearCombination(object):
    blocks: Tuple[SymbolBlock, ...]
    tag: int

    def __post_init__(self):
        if not self.blocks:
            raise ArgumentError('linear combination over no symbols')

    @property
    def receivers(self):
        return frozenset(b.receiver for b in self.blocks)

    @property
    def order(self):
        return len(self.receivers)

    @property
    def members(self):
        out = set()
        for b in self.blocks:
            out |= b.members()
        return frozenset(out)


class TagSource(object):
    """Hands out the unique tags that stand in for LC independence."""

    def __init__(self):
        self._next = itertools.count()

    def lc(self, *blocks):
        return LinearCombination(tuple(blocks), next(self._next))


class ReceiverLedger(object):

    def __init__(self, receiver):
        self.receiver = receiver
        self.blocks = {}
        self.rank = {}
        self.held = []
        self.side_info = []
        self.mixed = []
        self.decoded_at = {}
        self._tags = set()

    def want(self, block):
        if block.receiver != self.receiver:
            raise ArgumentError('receiver %d cannot want a block of receiver %d'
                                % (self.receiver, block.receiver))
        self.blocks[block.key] = block
        self.rank[block.key] = 0

    def wanted(self, key=None):
        """Independent LCs still missing, for one block or all of them."""
        if key is not None:
            return self.blocks[key].size - self.rank[key]
        return sum(b.size - self.rank[k] for k, b in self.blocks.items())

    def receive(self, lc, slot=None):
        """Take a jam-free LC; True when it raised the rank of an own block.

        LCs that mix several receivers' symbols wait in ``mixed`` until the
        scheme resolves them; LCs for other receivers become side info.
        """
        if lc.tag in self._tags:
            return False
        self._tags.add(lc.tag)
        if self.receiver not in lc.receivers:
            self.side_info.append(lc)
            return False
        if lc.order > 1:
            self.mixed.append(lc)
            return False
        block = lc.blocks[0]
        key = block.key
        if key not in self.blocks:
            self.want(block)
        if self.rank[key] >= block.size:
            return False
        self.rank[key] += 1
        self.held.append(lc)
        if self.rank[key] == block.size:
            self.decoded_at[key] = slot
        return True

    def credit(self, key, count, slot=None):
        """Bulk rank update for schemes that count dimensions directly."""
        block = self.blocks[key]
        self.rank[key] = min(block.size, self.rank[key] + max(0, int(count)))
        if self.rank[key] == block.size and key not in self.decoded_at:
            self.decoded_at[key] = slot

    def decoded(self, key):
        return self.rank[key] >= self.blocks[key].size

    def delivered(self):
        total = 0
        for key, block in self.blocks.items():
            if block.partial:
                total += self.rank[key]
            elif self.rank[key] >= block.size:
                total += block.size
        return total


@dataclass
class SchemeRun(object):
    config: str
    num_receivers: int
    budget: Tuple[int, ...]
    slots_used: int = 0
    delivered: Tuple[int, ...] = ()
    trace: Optional[List[tuple]] = None
    stage_slots: Dict[str, int] = field(default_factory=dict)
    state_slots: List[int] = field(default_factory=list)
    state_delivered: List[int] = field(default_factory=list)
    decode_slots: List[Optional[int]] = field(default_factory=list)
    queue_peaks: Dict[str, float] = field(default_factory=dict)
    params: Dict[str, object] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        n_states = 1 << self.num_receivers
        if not self.state_slots:
            self.state_slots = [0] * n_states
        if not self.state_delivered:
            self.state_delivered = [0] * n_states
        if not self.decode_slots:
            self.decode_slots = [None] * self.num_receivers
        if not self.delivered:
            self.delivered = (0,) * self.num_receivers

    def dof(self):
        if self.slots_used == 0:
            return (0.0,) * self.num_receivers
        return tuple(d / float(self.slots_used) for d in self.delivered)

    def sum_dof(self):
        return sum(self.dof())

    def state_dof(self, mask):
        """Symbols delivered per slot spent in one jammer state."""
        slots = self.state_slots[mask]
        return self.state_delivered[mask] / float(slots) if slots else 0.0


def format_trace(run):
    lines = [','.join(TRACE_FIELDS)]
    for rec in run.trace or ():
        lines.append(','.join('-' if v is None else str(v) for v in rec))
    return '\n'.join(lines) + '\n'
