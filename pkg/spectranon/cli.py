#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Command line: spectranon {anonymize,theory,simulate,privacy} ...

Exit status: 0 success, 2 unreadable input or bad config, 3 too few rows,
4 repeated eigenvalues for an anonymized covariance limit, 5 every
simulation cell failed, 6 tables of different shapes.

Copyright 2026 spectranon contributors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
import argparse
import json
import logging
import os
import sys

import numpy as np

from . import __version__
from .anonymize import O_MODES, Method, anonymize, fit_spectral
from .asymptotics import (
    ESTIMATORS, GaussianSpec, assumption_gap, cov_limit_cov, efficiency_ratio,
    estimator_name, mean_limit_cov,
)
from .config import load_config, resolve_seed, spec_to_dict
from .exceptions import (
    AssumptionViolated, DimensionMismatch, SpectralAnonError, TooFewRows,
)
from .privacy import DEFAULT_DELTA, privacy_report, run_privacy_grid
from .sampling import RngStream
from .simulate import OK, ERROR, SimulationRecord, run_grid, summary_table
from .tables import (
    append_line, format_jsonl, format_table, parse_table, read_jsonl, read_table,
    write_atomic,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_TOO_FEW_ROWS = 3
EXIT_ASSUMPTION = 4
EXIT_ALL_FAILED = 5
EXIT_DIMENSION = 6


def _log_effective_config(command, config):
    logger.info("%s: effective config %s", command, json.dumps(config, sort_keys=True))


def _emit(text, path):
    """Write text to path atomically, or to stdout when path is None or '-'."""
    if path is None or path == '-':
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        write_atomic(path, text)


def cmd_anonymize(args):
    seed = resolve_seed(args.seed)
    method = Method(args.method, args.o_mode)
    _log_effective_config('anonymize', {
        'input': args.input, 'output': args.output, 'method': method.variant.lower(),
        'o_mode': method.o_mode, 'seed': seed,
    })
    X = read_table(args.input)
    model = fit_spectral(X)
    logger.info("seed %d; singular values %s", seed, json.dumps(model.singular_values.tolist()))
    A = anonymize(model, method, RngStream(seed))
    _emit(format_table(A), args.output)
    return EXIT_OK


def parse_sigma(args):
    """The covariance matrix given by --sigma, --sigma-inline or --diag."""
    if args.sigma is not None:
        return read_table(args.sigma, header=False).values
    if args.sigma_inline is not None:
        return parse_table(args.sigma_inline.replace(';', '\n'), header=False).values
    return np.diag(parse_table(args.diag, header=False).values.reshape(-1))


def cmd_theory(args):
    Sigma = parse_sigma(args)
    estimator = estimator_name(args.estimator)
    _log_effective_config('theory', {
        'sigma': Sigma.tolist(), 'estimator': estimator, 'statistic': args.statistic,
        'ratio': args.ratio, 'format': args.format,
    })
    spec = GaussianSpec.from_covariance(Sigma)
    gap = assumption_gap(Sigma)
    # reported whatever the log level
    sys.stderr.write("assumption_gap {0!r}\n".format(gap))

    if args.ratio:
        statistic, name, matrix = 'covariance', 'ratio', efficiency_ratio(spec)
    elif args.statistic == 'mean':
        limit = mean_limit_cov(spec, estimator)
        statistic, name, matrix = limit.statistic, limit.estimator, limit.matrix
    else:
        limit = cov_limit_cov(spec, estimator)
        statistic, name, matrix = limit.statistic, limit.estimator, limit.matrix

    if args.format == 'jsonl':
        text = format_jsonl([{
            'statistic': statistic, 'estimator': name, 'assumption_gap': gap,
            'matrix': [[None if np.isnan(v) else v for v in row] for row in matrix.tolist()],
        }])
    else:
        text = format_table(matrix)
    _emit(text, args.output)
    return EXIT_OK


def _checkpoint_path(output):
    return output + '.partial'


def _summary_path(args):
    if args.summary:
        return args.summary
    return os.path.splitext(args.output)[0] + '.summary.csv'


def _load_checkpoint(path, fingerprint):
    """
    Cells finished by an earlier run whose effective config equals
    fingerprint exactly.
    """
    completed = {}
    if not os.path.exists(path):
        return completed
    for line in read_jsonl(path):
        if line.get('config') != fingerprint:
            continue
        records = tuple(SimulationRecord.from_dict(r) for r in line['records'])
        if any(r.status == ERROR for r in records):
            continue
        completed[records[0].key] = records
    return completed


def cmd_simulate(args):
    spec = load_config(args.config, seed=args.seed)
    # data streams are keyed by grid position, so any config change invalidates the checkpoint
    fingerprint = json.loads(json.dumps(spec_to_dict(spec)))
    _log_effective_config('simulate', dict(fingerprint, output=args.output,
                                          parallelism=args.parallelism, resume=args.resume))
    checkpoint = _checkpoint_path(args.output)
    if args.resume:
        completed = _load_checkpoint(checkpoint, fingerprint)
        logger.info("resuming with %d finished cell(s) from %s", len(completed), checkpoint)
    else:
        completed = {}
        if os.path.exists(checkpoint):
            os.remove(checkpoint)

    def on_cell(records):
        append_line(checkpoint, json.dumps({
            'config': fingerprint,
            'records': [r.to_dict() for r in records],
        }, separators=(',', ':')))

    records = run_grid(spec, parallelism=args.parallelism, completed=completed, on_cell=on_cell)
    write_atomic(args.output, format_jsonl(r.to_dict() for r in records))
    write_atomic(_summary_path(args), summary_table(records))

    if spec.privacy is not None and spec.privacy.enabled:
        privacy_records = run_privacy_grid(spec, parallelism=args.parallelism)
        path = os.path.splitext(args.output)[0] + '.privacy.jsonl'
        write_atomic(path, format_jsonl(r.to_dict() for r in privacy_records))

    if os.path.exists(checkpoint):
        os.remove(checkpoint)

    failed = sum(1 for r in records if r.status == ERROR)
    if failed:
        logger.warning("%d of %d record(s) failed", failed, len(records))
    if not any(r.status == OK for r in records):
        logger.error("no simulation cell completed")
        return EXIT_ALL_FAILED
    return EXIT_OK


def cmd_privacy(args):
    _log_effective_config('privacy', {
        'original': args.original, 'anonymized': args.anonymized, 'delta': args.delta,
        'per_row': args.per_row, 'accelerate': args.accelerate, 'output': args.output,
    })
    orig = read_table(args.original)
    anon = read_table(args.anonymized)
    report = privacy_report(anon, orig, args.delta, accelerate=args.accelerate)
    _emit(json.dumps(report.to_dict(per_row=args.per_row), indent=2) + '\n', args.output)
    return EXIT_OK


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _seed(text):
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("must be an unsigned 64-bit integer")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog='spectranon',
        description='Spectral anonymization of numeric tables and its utility and privacy checks.',
    )
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    verbosity.add_argument('-q', '--quiet', action='store_true', help='warnings and errors only')
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    p = sub.add_parser('anonymize', help='anonymize a numeric CSV table')
    p.add_argument('input', help='CSV file with a header row')
    p.add_argument('--method', choices=['p', 'j', 'o'], type=str.lower, default='p')
    p.add_argument('--o-mode', choices=O_MODES, default='fast',
                   help='O-SA sampler: Haar matrix (literal) or sphere point (fast)')
    p.add_argument('--seed', type=_seed, default=None, help='default: drawn from OS entropy')
    p.add_argument('--output', '-o', default=None, help='default: stdout')
    p.set_defaults(func=cmd_anonymize)

    p = sub.add_parser('theory', help='closed-form limiting covariances for N(mu, Sigma)')
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument('--sigma', metavar='FILE', help='header-less CSV matrix')
    source.add_argument('--sigma-inline', metavar='ROWS', help='e.g. "2,0;0,1"')
    source.add_argument('--diag', metavar='VALUES', help='diagonal Sigma, e.g. 2,1')
    p.add_argument('--estimator', choices=[e.lower() for e in ESTIMATORS], type=str.lower,
                   default='p')
    p.add_argument('--statistic', choices=['mean', 'covariance'], default='covariance')
    p.add_argument('--ratio', action='store_true',
                   help='print the anonymized/original covariance limit ratio instead')
    p.add_argument('--format', choices=['csv', 'jsonl'], default='csv')
    p.add_argument('--output', '-o', default=None, help='default: stdout')
    p.set_defaults(func=cmd_theory)

    p = sub.add_parser('simulate', help='run a Monte Carlo grid from a YAML config')
    p.add_argument('config', help='YAML grid config, see configs/schema.yaml')
    p.add_argument('--output', '-o', required=True, help='JSON-lines record file')
    p.add_argument('--summary', default=None, help='summary CSV; default <output>.summary.csv')
    p.add_argument('--parallelism', type=_positive_int, default=1, help='worker processes')
    p.add_argument('--seed', type=_seed, default=None, help='overrides the config seed')
    p.add_argument('--resume', action='store_true',
                   help='reuse finished cells from <output>.partial')
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser('privacy', help='record-linkage distances between two tables')
    p.add_argument('original', help='original CSV')
    p.add_argument('anonymized', help='anonymized CSV')
    p.add_argument('--delta', type=_positive_float, default=DEFAULT_DELTA,
                   help='match tolerance (default 1e-6)')
    p.add_argument('--per-row', action='store_true', help='include every minimum distance')
    p.add_argument('--accelerate', action='store_true', help='k-d tree nearest neighbours')
    p.add_argument('--output', '-o', default=None, help='default: stdout')
    p.set_defaults(func=cmd_privacy)
    return parser


def exit_code(error):
    """Exit status for an error raised by a subcommand."""
    if isinstance(error, TooFewRows):
        return EXIT_TOO_FEW_ROWS
    if isinstance(error, AssumptionViolated):
        return EXIT_ASSUMPTION
    if isinstance(error, DimensionMismatch):
        return EXIT_DIMENSION
    return EXIT_INPUT


def main(argv=None):
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger('spectranon').setLevel(level)
    try:
        return args.func(args)
    except (SpectralAnonError, OSError) as e:
        logger.error("%s", e)
        return exit_code(e)


if __name__ == '__main__':
    sys.exit(main())
