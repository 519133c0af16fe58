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

# Command-line front end: region, simulate, sweep, slope, compare

import argparse
import csv
import io
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional

try:
    import ujson as json
except ImportError:
    import json

from config import *
from config import __version__
import errors
import Baseband
import DofRegion
import Estimator
import SchemeSim
from Jammer import JammerDistribution, load_dist, state_table
from Ledger import format_trace
from Logger import logger
from ResultStore import ResultStore

EXIT_OUTSIDE = 4
K_USER_CONFIGS = ('DD-K', 'DP-K')


@dataclass
class ExperimentConfig(object):
    command: str
    dist: Optional[str] = None
    config: Optional[str] = None
    budgets: Optional[str] = None
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    out: Optional[str] = None
    tol: float = DEFAULT_TOL
    extra: dict = field(default_factory=dict)

    _FIELDS = ('command', 'dist', 'config', 'budgets', 'trials', 'seed', 'out', 'tol')
    _SKIP = ('func', 'verbose', 'quiet', 'logfile')

    @classmethod
    def from_args(cls, args):
        ns = vars(args)
        known = dict((k, ns[k]) for k in cls._FIELDS if ns.get(k) is not None)
        extra = dict((k, v) for k, v in ns.items()
                     if k not in cls._FIELDS and k not in cls._SKIP and v is not None)
        return cls(extra=extra, **known)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def provenance(cfg):
    return {'tool': 'jamdof', 'version': __version__, 'config': cfg.to_dict()}


def _open_out(path):
    if path:
        return open(path, 'w', newline='')
    return None


def emit_json(doc, cfg):
    doc = dict(doc)
    doc['provenance'] = provenance(cfg)
    text = json.dumps(doc, indent=2) + '\n'
    out = _open_out(cfg.out)
    if out is None:
        sys.stdout.write(text)
    else:
        with out:
            out.write(text)


def emit_csv(rows, cfg):
    buf = io.StringIO()
    buf.write('# jamdof %s %s\n' % (__version__, cfg.to_json()))
    csv.writer(buf, lineterminator='\n').writerows(rows)
    out = _open_out(cfg.out)
    if out is None:
        sys.stdout.write(buf.getvalue())
    else:
        with out:
            out.write(buf.getvalue())


def _ints(text, what):
    try:
        return tuple(int(x) for x in text.split(',') if x.strip())
    except ValueError:
        raise errors.ArgumentError('bad %s %r' % (what, text))


def _floats(text, what):
    try:
        return tuple(float(x) for x in text.split(',') if x.strip())
    except ValueError:
        raise errors.ArgumentError('bad %s %r' % (what, text))


def _need_dist(args):
    if not args.dist:
        raise errors.ArgumentError('--dist is required for %s' % args.command)
    return load_dist(args.dist)


def independent_dist(l1, l2):
    """Two receivers jammed independently with the given marginals."""
    return JammerDistribution.two_user(l1 * l2, l1 * (1 - l2), (1 - l1) * l2,
                                       (1 - l1) * (1 - l2))


# ---- region

def cmd_region(args):
    cfg = ExperimentConfig.from_args(args)
    name = args.config.upper()
    if args.states:
        K = args.users or (load_dist(args.dist).num_receivers if args.dist else 2)
        rows = [('mask', 'state', 'jammed')]
        rows += [(m, bits, ' '.join(str(k) for k in jammed) or '-')
                 for m, bits, jammed in state_table(K)]
        emit_csv(rows, cfg)
        return 0
    if name == 'MAT':
        K = args.users or (load_dist(args.dist).num_receivers if args.dist else 2)
        region = DofRegion.region_mat(K)
        best = DofRegion.dof_mat(K)
    else:
        region = DofRegion.region_for(name, _need_dist(args))
        try:
            best = DofRegion.sum_dof(region)
        except errors.UnsupportedDimensionError:
            best = None
    logger.info('[CLI] region %s: %d halfspaces, sum DoF %s', name, len(region.halfspaces), best)
    if args.format == 'csv':
        if region.dim != 2:
            raise errors.UnsupportedDimensionError('vertex CSV needs a 2-user region')
        emit_csv([('d1', 'd2')] + [list(v) for v in region.vertices], cfg)
        return 0
    doc = region.to_dict()
    doc['sum_dof'] = best
    emit_json(doc, cfg)
    return 0


# ---- simulate

def simulate_params(args, dist):
    name = args.config.upper()
    share = _floats(args.share, 'share') if args.share else None
    params = Estimator.default_params(name, dist, n=args.n, mode=args.mode,
                                      policy=args.policy, share=share, eta=args.eta)
    if args.budgets:
        budgets = _ints(args.budgets, 'budgets')
        if name in K_USER_CONFIGS:
            params['budget'] = budgets[0]
        elif name in ('PN', 'DN', 'NN') and len(budgets) == 1:
            params['n'] = budgets[0]
        else:
            params['budgets'] = budgets
    return params


def cmd_simulate(args):
    cfg = ExperimentConfig.from_args(args)
    dist = _need_dist(args)
    name = args.config.upper()
    params = simulate_params(args, dist)
    emp = Estimator.estimate(name, dist, params, args.trials, args.seed, args.threads)
    if args.trace:
        run = SchemeSim.run_scheme(name, dist, dict(params, trace=True),
                                   Estimator.trial_seed(args.seed, 0))
        with open(args.trace, 'w') as f:
            f.write(format_trace(run))
        logger.info('[CLI] trace of trial 0 written to %s', args.trace)
    if name in K_USER_CONFIGS:
        bound = (DofRegion.sum_dof_dd_k(dist) if name == 'DD-K'
                 else DofRegion.sum_dof_dp_k(dist))
        verdict = Estimator.check_against_sum(emp, bound, args.tol)
        verdicts = {'sum': verdict, 'sum_target': bound}
    else:
        region = DofRegion.region_for(name, dist)
        verdict = Estimator.check_against_region(emp, region, args.tol)
        verdicts = {'region': verdict}
    verdicts['target'] = list(Estimator.target_point(name, dist, params))
    record = emp.to_record(dist, params, verdicts)
    uri = args.mongo or mongo_uri()
    if uri:
        store = ResultStore(uri)
        try:
            store.insert_result(record)
        finally:
            store.close()
    emit_json(record, cfg)
    if verdict == Estimator.OUTSIDE:
        logger.warning('[CLI] %s estimate %s lies outside its region', name, emp.mean)
        return EXIT_OUTSIDE
    return 0


# ---- sweep

def _parse_range(text):
    try:
        a, b = [int(x) for x in text.split(':')]
    except ValueError:
        raise errors.ArgumentError('bad range %r, expected a:b' % text)
    if a < 1 or b < a:
        raise errors.ArgumentError('bad range %r' % text)
    return a, b


def sweep_users(a, b):
    rows = [('K', 'dof_mat', 'dof_dp', 'dof_dd', 'dof_nn', 'gap_dp_dd', 'bound_dp_dd',
             'gap_mat_dp', 'bound_mat_dp')]
    ok = True
    for K in range(a, b + 1):
        g = DofRegion.gap_check(K)
        ok = ok and g['gap_dp_dd'] >= g['bound_dp_dd'] - GEOM_TOL \
            and g['gap_mat_dp'] >= g['bound_mat_dp'] - GEOM_TOL
        # uniform jamming leaves every receiver clean half the time
        rows.append((K, g['dof_mat'], g['dof_dp'], g['dof_dd'], 0.5, g['gap_dp_dd'],
                     g['bound_dp_dd'], g['gap_mat_dp'], g['bound_mat_dp']))
    return rows, ok


def sweep_dn(N):
    rows = [('lambda1', 'lambda2', 'branch_value', 'branch_holds', 'dn_sum', 'nn_sum',
             'dn_dominates')]
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            l1, l2 = i / float(N), j / float(N)
            dist = independent_dist(l1, l2)
            dn = DofRegion.region_dn_inner(dist)
            dominates = DofRegion.max_weighted_sum(dn, (1 / l1, 1 / l2)) > 1 + GEOM_TOL
            rows.append((l1, l2, DofRegion.dn_branch_value(dist),
                         int(DofRegion.dn_branch_holds(dist)), DofRegion.sum_dof(dn),
                         max(l1, l2), int(dominates)))
    return rows


def sweep_lambda(N, simulate=False, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED, n=DEFAULT_SLOTS,
                 threads=None):
    configs = ('PP', 'DP', 'DD', 'DN', 'NP', 'ND', 'NN')
    header = ['lambda'] + ['sum_%s' % c.lower() for c in configs]
    if simulate:
        header.append('sim_dd')
    rows = [header]
    for i in range(1, N + 1):
        lam = i / float(N)
        dist = independent_dist(lam, lam)
        row = [lam] + [DofRegion.sum_dof(DofRegion.region_for(c, dist)) for c in configs]
        if simulate:
            params = Estimator.default_params('DD', dist, n=n)
            row.append(Estimator.estimate('DD', dist, params, trials, seed, threads).sum_mean)
        rows.append(row)
    return rows


def cmd_sweep(args):
    cfg = ExperimentConfig.from_args(args)
    axis, _, value = args.grid.partition('=')
    axis = axis.strip()
    ok = True
    if axis == 'K':
        rows, ok = sweep_users(*_parse_range(value))
    elif axis in ('dn', 'lambda'):
        try:
            N = int(value)
        except ValueError:
            raise errors.ArgumentError('bad grid size %r' % value)
        if N < 1:
            raise errors.ArgumentError('grid size must be >= 1')
        if axis == 'dn':
            rows = sweep_dn(N)
        else:
            rows = sweep_lambda(N, args.simulate, args.trials, args.seed, args.n, args.threads)
    else:
        raise errors.ArgumentError('unknown sweep axis %r; use K=a:b, dn=N or lambda=N' % axis)
    emit_csv(rows, cfg)
    if not ok:
        logger.error('[CLI] a gap bound failed')
        return EXIT_OUTSIDE
    return 0


# ---- slope

def cmd_slope(args):
    cfg = ExperimentConfig.from_args(args)
    dist = _need_dist(args)
    share = _floats(args.share, 'share') if args.share else None
    fit = Baseband.estimate_slope(args.config, dist, Baseband.parse_grid(args.snr),
                                  args.slots, args.seed, share)
    if fit.redraws:
        logger.info('[CLI] %d channel redraws', fit.redraws)
    emit_csv(fit.rows(), cfg)
    return 0


# ---- compare

def compare_regions(names, dist):
    regions = dict((c, DofRegion.region_for(c, dist)) for c in names)
    matrix = [[''] + list(names)]
    for a in names:
        matrix.append([a] + [int(DofRegion.is_subset(regions[a], regions[b])) for b in names])
    failed = [(a, b) for a, b in DofRegion.ASSERTED_INCLUSIONS
              if a in regions and b in regions
              and not DofRegion.is_subset(regions[a], regions[b])]
    equal = [(a, b) for i, a in enumerate(names) for b in names[i + 1:]
             if DofRegion.is_subset(regions[a], regions[b])
             and DofRegion.is_subset(regions[b], regions[a])]
    return matrix, failed, equal


def same_halfspaces(r1, r2, tol=PROB_TOL):
    if len(r1.halfspaces) != len(r2.halfspaces):
        return False
    for h1, h2 in zip(r1.halfspaces, r2.halfspaces):
        if abs(h1.bound - h2.bound) > tol:
            return False
        if any(abs(a - b) > tol for a, b in zip(h1.coeffs, h2.coeffs)):
            return False
    return True


def cmd_compare(args):
    cfg = ExperimentConfig.from_args(args)
    dist = _need_dist(args)
    names = [c.strip().upper() for c in args.configs.split(',') if c.strip()]
    if len(names) < 2:
        raise errors.ArgumentError('compare needs at least two configurations')
    matrix, failed, equal = compare_regions(names, dist)
    rows = matrix + [[]] + [('equivalent', a, b) for a, b in equal]
    rows += [('violated', a, b) for a, b in failed]
    if args.dist2:
        other = load_dist(args.dist2)
        for c in ('PP', 'DD', 'NN'):
            same = same_halfspaces(DofRegion.region_for(c, dist), DofRegion.region_for(c, other))
            rows.append(('marginal-equivalent', c, int(same)))
    emit_csv(rows, cfg)
    for a, b in failed:
        logger.error('[CLI] inclusion %s <= %s does not hold', a, b)
    return EXIT_OUTSIDE if failed else 0


# ---- entry

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    common.add_argument('-q', '--quiet', action='store_true', help='warnings and errors only')
    common.add_argument('--logfile', help='also write INFO and above to this file')
    common.add_argument('--out', help='output file (default stdout)')
    common.add_argument('--seed', type=int, default=DEFAULT_SEED)
    common.add_argument('--tol', type=float, default=DEFAULT_TOL)

    parser = argparse.ArgumentParser(prog='jamdof',
                                     description='DoF of the MISO broadcast channel under jamming')
    parser.add_argument('--version', action='version', version='jamdof %s' % __version__)
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p = sub.add_parser('region', parents=[common], help='closed-form DoF region')
    p.add_argument('--config', default='DD', help='PP PD PN DP DD DN NP ND NN or MAT')
    p.add_argument('--dist', help='inline distribution or @file')
    p.add_argument('--users', type=int, help='K for MAT or --states')
    p.add_argument('--states', action='store_true', help='print the state mapping table')
    p.add_argument('--format', choices=('json', 'csv'), default='json')
    p.set_defaults(func=cmd_region)

    p = sub.add_parser('simulate', parents=[common], help='Monte-Carlo scheme simulation')
    p.add_argument('--config', required=True)
    p.add_argument('--dist', required=True)
    p.add_argument('--budgets', help='symbols per receiver, e.g. 3000,3000')
    p.add_argument('--n', type=int, default=DEFAULT_SLOTS, help='target slots per run')
    p.add_argument('--trials', type=int, default=DEFAULT_TRIALS)
    p.add_argument('--threads', type=int)
    p.add_argument('--mode', choices=SchemeSim.DP_MODES)
    p.add_argument('--policy', help='NP policy: corner-1 corner-2 tdma-1 tdma-2 time-share:A')
    p.add_argument('--share', help='NN time shares, e.g. 1,0')
    p.add_argument('--eta', type=float, help='DD/ND symbol split n1/(n1+n2)')
    p.add_argument('--trace', help='write the slot trace of trial 0 here')
    p.add_argument('--mongo', help='MongoDB URI to store the record')
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser('sweep', parents=[common], help='CSV sweeps over K or marginals')
    p.add_argument('--grid', required=True, help='K=a:b, dn=N or lambda=N')
    p.add_argument('--simulate', action='store_true', help='add simulated DD sums (lambda grid)')
    p.add_argument('--trials', type=int, default=DEFAULT_TRIALS)
    p.add_argument('--n', type=int, default=DEFAULT_SLOTS)
    p.add_argument('--threads', type=int)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser('slope', parents=[common], help='pre-log fit at finite SNR')
    p.add_argument('--config', default='PP', choices=Baseband.SLOPE_CONFIGS)
    p.add_argument('--dist', required=True)
    p.add_argument('--snr', default=DEFAULT_SNR_GRID, help='dB grid a:b:step or list')
    p.add_argument('--slots', type=int, default=DEFAULT_SLOTS_PER_POINT)
    p.add_argument('--share', help='NN time shares')
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser('compare', parents=[common], help='subset matrix between regions')
    p.add_argument('--configs', default=','.join(DofRegion.TWO_USER_CONFIGS))
    p.add_argument('--dist', required=True)
    p.add_argument('--dist2', help='second distribution for marginal equivalence')
    p.set_defaults(func=cmd_compare)
    return parser


def _setup_logging(args):
    if args.verbose:
        logger.basicConfig(level='DEBUG')
    elif args.quiet:
        logger.basicConfig(level='WARNING')
    else:
        logger.basicConfig(level='INFO')
    if args.logfile:
        logger.setlogfile(args.logfile)


def main(argv=None):
    args = build_parser().parse_args(argv)
    _setup_logging(args)
    try:
        return args.func(args)
    except errors.Error as e:
        logger.error('[CLI] %s', e)
        return e.exit_code
    except KeyboardInterrupt:
        logger.warning('[CLI] interrupted')
        return 130


if __name__ == '__main__':
    sys.exit(main())
