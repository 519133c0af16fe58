# -*- coding: utf-8 -*-

import os

__version__ = '20261017.1'

# 概率代数容差（拒绝重新归一化）
PROB_TOL = 1e-12
# 几何容差：contains、顶点去重
GEOM_TOL = 1e-9
ZF_TOL = 1e-10
DEFAULT_TOL = 0.03
ETA_XTOL = 1e-6

MAX_SLOTS_FACTOR = 50
MAX_REDRAWS = 100
COND_LIMIT = 1e8
MAT_MAX_USERS = 6

DEFAULT_SEED = 20150528
DEFAULT_TRIALS = 20
DEFAULT_SLOTS = 10000
# 每次从 RNG 取的状态块大小
STATE_CHUNK = 4096

SNR_MIN_SPAN_DB = 30.0
SNR_MIN_POINTS = 4
DEFAULT_SNR_GRID = '30:60:5'
DEFAULT_SLOTS_PER_POINT = 2000

MONGO_HOST = "127.0.0.1"
MONGO_PORT = 27017
MONGO_DB = "jamdof"
MONGO_COLLECTION = "results"


def thread_cap():
    """Worker processes allowed for trial fan-out; JAMDOF_THREADS caps it."""
    cap = os.cpu_count() or 1
    env = os.environ.get('JAMDOF_THREADS')
    if env:
        try:
            cap = min(cap, max(1, int(env)))
        except ValueError:
            pass
    return cap


def mongo_uri():
    return os.environ.get('JAMDOF_MONGO_URI')
