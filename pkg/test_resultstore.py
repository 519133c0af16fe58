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

# ResultStore against an in-memory collection

from types import SimpleNamespace

import numpy as np
import pytest

import ResultStore as ResultStore_module
from ResultStore import ResultStore


class _Inserted(object):
    def __init__(self, inserted_id):
        self.inserted_id = inserted_id


class _Cursor(object):
    def __init__(self, docs):
        self.docs = docs

    def sort(self, key, direction):
        self.docs = sorted(self.docs, key=lambda d: d[key], reverse=direction < 0)
        return self

    def limit(self, n):
        self.docs = self.docs[:n]
        return self

    def __iter__(self):
        return iter(self.docs)


class FakeCollection(object):
    def __init__(self):
        self.docs = []

    def insert_one(self, doc):
        doc = dict(doc, _id=len(self.docs))
        self.docs.append(doc)
        return _Inserted(doc['_id'])

    def find(self, query, projection):
        hits = [d for d in self.docs if all(d.get(k) == v for k, v in query.items())]
        hidden = [k for k, show in projection.items() if not show]
        return _Cursor([dict((k, v) for k, v in d.items() if k not in hidden) for d in hits])


@pytest.fixture
def store():
    return ResultStore(collection=FakeCollection())


def test_insert_plain_types(store):
    inserted = store.insert_result({'config': 'DD', 'mean': (0.4, 0.4),
                                    'trials': np.int64(20).item()})
    assert inserted == 0
    doc = store.coll.docs[0]
    assert doc['mean'] == [0.4, 0.4]
    assert 'created' in doc


def test_find_newest_first(store, monkeypatch):
    clock = iter([100.0, 200.0, 300.0])
    monkeypatch.setattr(ResultStore_module, 'time', SimpleNamespace(time=lambda: next(clock)))
    store.insert_result({'config': 'DD', 'n': 1})
    store.insert_result({'config': 'PP', 'n': 2})
    store.insert_result({'config': 'DD', 'n': 3})
    assert [d['n'] for d in store.find_results()] == [3, 2, 1]
    assert [d['n'] for d in store.find_results('dd')] == [3, 1]
    assert store.find_results(limit=1)[0]['n'] == 3
    assert '_id' not in store.latest('pp')
    assert store.latest('NN') is None


def test_close_without_client(store):
    store.close()


if __name__ == '__main__':
    pytest.main([__file__])
