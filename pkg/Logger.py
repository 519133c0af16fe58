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

# A leveled stderr logger shared by every jamdof module

import os
import sys
import traceback
from datetime import datetime


class Logging(object):
    CRITICAL = 5
    FATAL = CRITICAL
    ERROR = 4
    WARNING = 3
    WARN = WARNING
    INFO = 2
    DEBUG = 1
    NOTSET = 0

    _NAMES = {
        'CRITICAL': CRITICAL, 'ERROR': ERROR, 'WARNING': WARNING,
        'WARN': WARNING, 'INFO': INFO, 'DEBUG': DEBUG, 'NOTSET': NOTSET,
    }

    def __init__(self, stream=None):
        self.level = self.__class__.INFO
        self._stream = stream
        self.__write = lambda x: self.stream.write(x)
        self.isatty = getattr(self.stream, 'isatty', lambda: False)()
        self.__set_error_color = lambda: None
        self.__set_warning_color = lambda: None
        self.__set_debug_color = lambda: None
        self.__reset_color = lambda: None
        if self.isatty and os.name == 'posix':
            self.__set_error_color = lambda: self.__write('\033[31m')
            self.__set_warning_color = lambda: self.__write('\033[33m')
            self.__set_debug_color = lambda: self.__write('\033[32m')
            self.__reset_color = lambda: self.__write('\033[0m')
        self.logfile = None

    def setlogfile(self, f):
        if self.logfile:
            self.logfile.close()
        self.logfile = open(f, 'a')

    def logpipe(self, to):
        """Send every formatted line to ``to`` instead of the stream."""
        self.__write = to
        self.isatty = False
        self.__set_error_color = self.__set_warning_color = lambda: None
        self.__set_debug_color = self.__reset_color = lambda: None

    @property
    def stream(self):
        return self._stream or sys.stderr

    @classmethod
    def getLogger(cls, *args, **kwargs):
        return cls(*args, **kwargs)

    def basicConfig(self, *args, **kwargs):
        level = kwargs.get('level', self.__class__.INFO)
        if isinstance(level, str):
            level = self._NAMES[level.upper()]
        self.level = int(level)
        if self.level > self.__class__.DEBUG:
            self.debug = self.dummy
        else:
            # drop the instance override so the class method is visible again
            self.__dict__.pop('debug', None)

    def log(self, level, fmt, *args, **kwargs):
        try:
            msg = fmt % args if args else fmt
        except (ValueError, TypeError):
            msg = '%s %r' % (fmt, args)
        stamp = datetime.now().strftime('%X')
        self.__write('%-5s - [%s] %s\n' % (level, stamp, msg))
        flush = getattr(self.stream, 'flush', None)
        if flush:
            flush()
        return '[%s] %-5s %s\n' % (datetime.now().strftime('%b %d %X'), level, msg)

    def _emit(self, severity, label, color, fmt, *args):
        if severity < self.level:
            return
        color()
        text = self.log(label, fmt, *args)
        self.__reset_color()
        if self.logfile and severity >= self.__class__.INFO:
            self.logfile.write(text)
            self.logfile.flush()

    def dummy(self, *args, **kwargs):
        pass

    def debug(self, fmt, *args, **kwargs):
        self._emit(self.DEBUG, 'DEBUG', self.__set_debug_color, fmt, *args)

    def info(self, fmt, *args, **kwargs):
        self._emit(self.INFO, 'INFO', lambda: None, fmt, *args)

    def warning(self, fmt, *args, **kwargs):
        self._emit(self.WARNING, 'WARN', self.__set_warning_color, fmt, *args)

    def warn(self, fmt, *args, **kwargs):
        self.warning(fmt, *args, **kwargs)

    def error(self, fmt, *args, **kwargs):
        self._emit(self.ERROR, 'ERROR', self.__set_error_color, fmt, *args)

    def exception(self, fmt, *args, **kwargs):
        self.error(fmt, *args, **kwargs)
        traceback.print_exc(file=self.stream)

    def critical(self, fmt, *args, **kwargs):
        self._emit(self.CRITICAL, 'CRITICAL', self.__set_error_color, fmt, *args)


logger = Logging.getLogger()
