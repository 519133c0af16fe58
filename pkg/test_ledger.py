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

# LC bookkeeping tests

import pytest

from errors import ArgumentError
from Ledger import (ReceiverLedger, SchemeRun, SymbolBlock, SymbolId, TagSource,
                    format_trace)


def test_symbol_block_members():
    block = SymbolBlock(1, 'b', 3, first=2)
    assert block.members() == frozenset([SymbolId(1, 2), SymbolId(1, 3), SymbolId(1, 4)])
    with pytest.raises(ArgumentError):
        SymbolId(-1, 0)


def test_lc_order():
    tags = TagSource()
    a, b = SymbolBlock(0, 'a', 2), SymbolBlock(1, 'b', 2)
    single = tags.lc(a)
    mixed = tags.lc(a, b)
    assert single.order == 1
    assert mixed.order == 2
    assert mixed.tag != single.tag
    assert len(mixed.members) == 4


def test_block_decodes_at_size():
    tags = TagSource()
    block = SymbolBlock(0, 'a', 3)
    ledger = ReceiverLedger(0)
    ledger.want(block)
    for slot in (1, 2):
        assert ledger.receive(tags.lc(block), slot)
    assert not ledger.decoded(block.key)
    assert ledger.delivered() == 0
    assert ledger.receive(tags.lc(block), 7)
    assert ledger.decoded(block.key)
    assert ledger.decoded_at[block.key] == 7
    assert ledger.delivered() == 3
    # rank never exceeds the block size
    assert not ledger.receive(tags.lc(block), 8)
    assert ledger.rank[block.key] == 3


def test_duplicate_tag_is_not_independent():
    tags = TagSource()
    block = SymbolBlock(0, 'a', 2)
    ledger = ReceiverLedger(0)
    ledger.want(block)
    lc = tags.lc(block)
    assert ledger.receive(lc)
    assert not ledger.receive(lc)
    assert ledger.wanted() == 1


def test_side_info_and_mixed():
    tags = TagSource()
    a, b = SymbolBlock(0, 'a', 2), SymbolBlock(1, 'b', 2)
    ledger = ReceiverLedger(0)
    ledger.want(a)
    assert not ledger.receive(tags.lc(b))
    assert not ledger.receive(tags.lc(a, b))
    assert len(ledger.side_info) == 1
    assert len(ledger.mixed) == 1
    assert ledger.wanted(a.key) == 2


def test_partial_block_counts_rank():
    ledger = ReceiverLedger(1)
    block = SymbolBlock(1, 'x', 10, partial=True)
    ledger.want(block)
    ledger.credit(block.key, 4, slot=3)
    assert ledger.delivered() == 4
    ledger.credit(block.key, 40, slot=9)
    assert ledger.delivered() == 10
    assert ledger.decoded_at[block.key] == 9


def test_want_other_receiver():
    with pytest.raises(ArgumentError):
        ReceiverLedger(0).want(SymbolBlock(1, 'b', 1))


def test_scheme_run_dof():
    run = SchemeRun('PP', 2, (6, 3))
    assert run.dof() == (0.0, 0.0)
    run.slots_used = 10
    run.delivered = (6, 3)
    run.state_slots[0] = 4
    run.state_delivered[0] = 8
    assert run.dof() == pytest.approx((0.6, 0.3))
    assert run.sum_dof() == pytest.approx(0.9)
    assert run.state_dof(0) == pytest.approx(2.0)
    assert run.state_dof(3) == 0.0


def test_format_trace():
    run = SchemeRun('PD', 2, (1, 0))
    run.trace = [(1, '01', 'retransmit', 'send', 1, 0), (2, '11', 'retransmit', 'idle', None, None)]
    text = format_trace(run)
    assert text.splitlines() == ['slot,state,stage,action,receiver,lc-tag',
                                 '1,01,retransmit,send,1,0',
                                 '2,11,retransmit,idle,-,-']


if __name__ == '__main__':
    pytest.main([__file__])
