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

# Optional MongoDB sink for estimator records

import time

try:
    import ujson as json
except ImportError:
    import json

from pymongo import DESCENDING, MongoClient

from config import *
from Logger import logger


def dumps(record):
    return json.dumps(record)


class ResultStore(object):
    """EmpiricalDof records, one document each, newest first on read."""

    def __init__(self, uri=None, collection=None):
        if collection is not None:
            # 测试时注入的集合对象
            self.client = None
            self.coll = collection
            return
        uri = uri or mongo_uri()
        if uri:
            self.client = MongoClient(uri)
        else:
            self.client = MongoClient(MONGO_HOST, MONGO_PORT)
        self.coll = self.client[MONGO_DB][MONGO_COLLECTION]
        logger.debug('[DB] using %s.%s', MONGO_DB, MONGO_COLLECTION)

    def insert_result(self, record):
        # 经 JSON 往返一次，去掉 tuple 与 numpy 标量
        doc = json.loads(dumps(record))
        doc['created'] = time.time()
        inserted = self.coll.insert_one(doc).inserted_id
        logger.info('[DB] stored %s result %s', doc.get('config'), inserted)
        return inserted

    def find_results(self, config=None, limit=0):
        query = {} if config is None else {'config': config.upper()}
        cursor = self.coll.find(query, {'_id': False}).sort('created', DESCENDING)
        if limit:
            cursor = cursor.limit(limit)
        return list(cursor)

    def latest(self, config):
        found = self.find_results(config, limit=1)
        return found[0] if found else None

    def close(self):
        if self.client is not None:
            self.client.close()
