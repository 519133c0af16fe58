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

import io

import pytest

from Logger import Logging


@pytest.fixture
def piped():
    lines = []
    log = Logging(io.StringIO())
    log.logpipe(lines.append)
    return log, lines


def test_levels(piped):
    log, lines = piped
    log.basicConfig(level='WARNING')
    log.info('[SIM] %d slots', 10)
    log.debug('[SIM] hidden')
    log.warning('[EST] %s', 'odd')
    assert len(lines) == 1
    assert lines[0].startswith('WARN ')
    assert lines[0].rstrip().endswith('[EST] odd')


def test_debug_comes_back(piped):
    log, lines = piped
    log.basicConfig(level='INFO')
    log.debug('[BB] one')
    log.basicConfig(level=Logging.DEBUG)
    log.debug('[BB] two')
    assert [l.rstrip().split('] ', 1)[1] for l in lines] == ['[BB] two']


def test_bad_format_still_logs(piped):
    log, lines = piped
    log.error('[CLI] %d', 'x')
    assert "[CLI] %d ('x',)" in lines[0]


def test_logfile(tmp_path, piped):
    log, lines = piped
    path = tmp_path / 'run.log'
    log.setlogfile(str(path))
    log.info('[DB] stored')
    log.basicConfig(level='DEBUG')
    log.debug('[DB] not mirrored')
    log.logfile.close()
    text = path.read_text()
    assert '[DB] stored' in text
    assert 'not mirrored' not in text


if __name__ == '__main__':
    pytest.main([__file__])
