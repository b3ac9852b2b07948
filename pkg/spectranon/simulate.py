#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Monte Carlo harness: the four data distributions of the utility study,
the per-replication statistics, and relative errors of their empirical
covariances against the closed-form limits.

A grid cell is (distribution, n, p, estimator). All estimators of one
(distribution, n, p) share a data cell index, so they see the same
datasets: replication m draws its data from stream (cell, m) and its
anonymization from stream (cell, m, method code).

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
import logging
import warnings
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor, as_completed
from time import perf_counter

import numpy as np
import pandas as pd
from sortedcontainers import SortedDict

from .anonymize import Method, anonymize, fit_spectral
from .asymptotics import GaussianSpec, cov_limit_cov, mean_limit_cov
from .exceptions import ConfigError, DimensionMismatch, TooFewRows, ZeroTarget
from .linalg import DataMatrix, as_array, eig_sqrt, frobenius
from .sampling import RngStream
from .tables import format_float, write_atomic

logger = logging.getLogger(__name__)

DISTRIBUTIONS = ('normal_distinct', 'normal_identity', 'poisson_distinct', 'poisson_flat')
GAUSSIAN_MEAN = 3.0
DEFAULT_O_SA_N_CAP = 400

OK = 'ok'
SKIPPED = 'skipped'
ERROR = 'error'


class DataDistribution(namedtuple('DataDistributionBase', ['kind', 'p'])):
    """
    One of the four data-generating distributions of the utility study.

        >>> d = DataDistribution('normal_distinct', 3)
        >>> d.mean
        array([3., 3., 3.])
        >>> np.diag(d.covariance)
        array([3., 2., 1.])
    """
    __slots__ = ()

    def __new__(cls, kind, p):
        if kind not in DISTRIBUTIONS:
            raise ValueError("DataDistribution: unknown kind {0!r}".format(kind))
        p = int(p)
        if p < 1:
            raise ValueError("DataDistribution: p must be >= 1")
        return super(DataDistribution, cls).__new__(cls, kind, p)

    @property
    def is_gaussian(self):
        return self.kind.startswith('normal')

    @property
    def rates(self):
        """Poisson rates (p, ..., 1) or (1, ..., 1)."""
        if self.kind == 'poisson_flat':
            return np.ones(self.p)
        return np.arange(self.p, 0, -1, dtype=float)

    @property
    def mean(self):
        if self.is_gaussian:
            return np.full(self.p, GAUSSIAN_MEAN)
        return self.rates

    @property
    def covariance(self):
        if self.kind == 'normal_identity':
            return np.eye(self.p)
        # normal_distinct uses diag(p, ..., 1); Poisson variance = rate
        return np.diag(self.rates)

    def gaussian_spec(self):
        """
        The normal distribution with the same mean and covariance, whose
        closed-form limits serve as targets for every kind.
        :rtype: GaussianSpec
        """
        return GaussianSpec(self.mean, self.covariance)


def generate(dist, n, rng):
    """
    n i.i.d. rows from dist. Gaussian rows are standard normals mapped by
    the eigen square root of the covariance and shifted by the mean;
    Poisson marginals are independent.
    :rtype: DataMatrix
    """
    if n < 1:
        raise ValueError("generate: n must be >= 1")
    gen = rng.generator
    if dist.is_gaussian:
        Z = gen.standard_normal((n, dist.p))
        values = Z.dot(eig_sqrt(dist.covariance).T) + dist.mean
    else:
        values = gen.poisson(dist.rates, size=(n, dist.p)).astype(float)
    return DataMatrix(values)


def sample_mean(X):
    """Column averages."""
    return as_array(X).mean(axis=0)


def sample_cov(X):
    """
    Sample covariance with divisor n.

        >>> sample_cov([[0.0, 0.0], [2.0, 2.0]])
        array([[1., 1.],
               [1., 1.]])

    :raises TooFewRows: if n < 2
    """
    X = as_array(X)
    n = X.shape[0]
    if n < 2:
        raise TooFewRows("sample_cov: need at least 2 rows, got {0}".format(n))
    Xc = X - X.mean(axis=0)
    S = Xc.T.dot(Xc) / n
    return 0.5 * (S + S.T)


def relative_error(empirical, target):
    """
    ||empirical - target||_F / ||target||_F.
    :raises ZeroTarget: if the target is the zero matrix
    :raises DimensionMismatch: on different shapes
    """
    empirical = as_array(empirical)
    target = as_array(target)
    if empirical.shape != target.shape:
        raise DimensionMismatch("relative_error: shapes {0} and {1} differ".format(
            empirical.shape, target.shape))
    denom = frobenius(target)
    if denom == 0:
        raise ZeroTarget("relative_error: target has zero Frobenius norm")
    return frobenius(empirical - target) / denom


def empirical_cov(stats):
    """
    Covariance across replications (rows), centered at the sample mean,
    divisor M - 1. The reduction runs in row order.
    """
    stats = np.asarray(stats, dtype=float)
    centered = stats - stats.mean(axis=0)
    return centered.T.dot(centered) / (stats.shape[0] - 1)


def estimator_label(method):
    return 'original' if method is None else method.variant


def replicate_statistics(dist, n, method, M, rng):
    """
    The M per-replication statistics sqrt(n)(mean - mu) and
    sqrt(n) vec(S - Sigma), using the distribution's true mu and Sigma.

    :param method: Method, or None for the original data
    :param rng: the data cell's RngStream; replication streams are spawned
        from it and it is not consumed
    :return: (M x p array, M x p*p array), rows in replication order
    """
    p = dist.p
    mu = dist.mean
    Sigma = dist.covariance
    root_n = np.sqrt(n)
    means = np.empty((M, p))
    covs = np.empty((M, p * p))
    for m in range(M):
        X = generate(dist, n, rng.spawn(m))
        if method is not None:
            X = anonymize(fit_spectral(X), method, rng.spawn(m, method.code))
        means[m] = root_n * (sample_mean(X) - mu)
        covs[m] = root_n * (sample_cov(X) - Sigma).reshape(-1, order='F')
    return means, covs


def variance_ratio(stats, baseline):
    """
    Per-column ratio of replication variances, stats over baseline. With
    the covariance statistics, column r + p*c is the entry (r, c).
    :rtype: numpy.ndarray
    """
    stats = np.asarray(stats, dtype=float)
    baseline = np.asarray(baseline, dtype=float)
    return stats.var(axis=0, ddof=1) / baseline.var(axis=0, ddof=1)


class SimulationRecord(namedtuple('SimulationRecordBase', [
        'distribution', 'n', 'p', 'method', 'statistic', 'relative_error',
        'replications', 'elapsed', 'status', 'message'])):
    """
    Result of one (distribution, n, p, estimator, statistic) cell.
    relative_error is None for skipped and failed cells.
    """
    __slots__ = ()

    def __new__(cls, distribution, n, p, method, statistic, relative_error,
                replications, elapsed=0.0, status=OK, message=''):
        if status == OK:
            relative_error = float(relative_error)
            if not np.isfinite(relative_error) or relative_error < 0:
                raise ValueError("SimulationRecord: relative error must be finite and >= 0")
        return super(SimulationRecord, cls).__new__(
            cls, distribution, int(n), int(p), method, statistic, relative_error,
            int(replications), float(elapsed), status, message)

    @property
    def key(self):
        return cell_key(self.distribution, self.n, self.p, self.method)

    def to_dict(self):
        return dict(self._asdict())

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def cell_key(distribution, n, p, method):
    return "{0}/{1}/{2}/{3}".format(distribution, n, p, method)


def _cell_records(dist, n, label, M, status, message='', mean_re=None, cov_re=None, elapsed=0.0):
    return (
        SimulationRecord(dist.kind, n, dist.p, label, 'mean', mean_re, M, elapsed, status, message),
        SimulationRecord(dist.kind, n, dist.p, label, 'covariance', cov_re, M, elapsed, status, message),
    )


def run_cell(dist, n, method, M, rng, o_sa_n_cap=None):
    """
    Relative errors of the empirical covariances of the mean and the
    vectorized covariance statistics against their closed-form limits.

    Targets are the Gaussian closed forms for every distribution, so the
    repeated-eigenvalue and Poisson cells are expected not to converge.
    O-SA cells with n above o_sa_n_cap are returned as skipped.

    :param method: Method, or None for the original data
    :return: (mean record, covariance record)
    """
    label = estimator_label(method)
    if method is not None and method.variant == 'O' and o_sa_n_cap is not None and n > o_sa_n_cap:
        return _cell_records(dist, n, label, M, SKIPPED,
                             "O-SA runs only for n <= {0}".format(o_sa_n_cap))
    if M < 2:
        raise ValueError("run_cell: need M >= 2 replications")
    if n <= dist.p:
        raise TooFewRows("run_cell: need n >= p + 1, got n={0}, p={1}".format(n, dist.p))

    start = perf_counter()
    means, covs = replicate_statistics(dist, n, method, M, rng)
    spec = dist.gaussian_spec()
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        mean_target = mean_limit_cov(spec, label).matrix
        cov_target = cov_limit_cov(spec, label, strict=False).matrix
    mean_re = relative_error(empirical_cov(means), mean_target)
    cov_re = relative_error(empirical_cov(covs), cov_target)
    elapsed = perf_counter() - start
    logger.info("cell %s n=%d p=%d %s: RE mean %.4f, covariance %.4f (%.1fs)",
                dist.kind, n, dist.p, label, mean_re, cov_re, elapsed)
    return _cell_records(dist, n, label, M, OK, mean_re=mean_re, cov_re=cov_re, elapsed=elapsed)


class SimulationSpec(namedtuple('SimulationSpecBase', [
        'distributions', 'n_grid', 'p_grid', 'methods', 'replications', 'seed',
        'o_sa_n_cap', 'privacy'])):
    """
    A full simulation grid. methods holds Method values; the original
    data is always included. privacy is a PrivacySettings or None.
    """
    __slots__ = ()

    def __new__(cls, distributions, n_grid, p_grid, methods, replications, seed,
                o_sa_n_cap=DEFAULT_O_SA_N_CAP, privacy=None):
        distributions = tuple(distributions)
        for kind in distributions:
            if kind not in DISTRIBUTIONS:
                raise ConfigError("unknown distribution {0!r}".format(kind))
        n_grid = tuple(int(n) for n in n_grid)
        p_grid = tuple(int(p) for p in p_grid)
        if not distributions or not n_grid or not p_grid:
            raise ConfigError("distributions, n and p grids must be non-empty")
        if min(p_grid) < 1:
            raise ConfigError("p values must be >= 1")
        if min(n_grid) < max(p_grid) + 1:
            raise ConfigError("every n must be at least max(p) + 1 = {0}".format(max(p_grid) + 1))
        methods = tuple(m if isinstance(m, Method) else Method(m) for m in methods)
        if int(replications) < 2:
            raise ConfigError("replications must be >= 2")
        return super(SimulationSpec, cls).__new__(
            cls, distributions, n_grid, p_grid, methods, int(replications), int(seed),
            None if o_sa_n_cap is None else int(o_sa_n_cap), privacy)

    def cells(self):
        """
        Grid cells in lexicographic order: (cell index, data cell index,
        distribution, n, method or None).
        """
        index = 0
        data_index = 0
        for kind in self.distributions:
            for n in self.n_grid:
                for p in self.p_grid:
                    dist = DataDistribution(kind, p)
                    for method in (None,) + self.methods:
                        yield index, data_index, dist, n, method
                        index += 1
                    data_index += 1


def _run_cell_task(seed, data_index, dist, n, method, M, o_sa_n_cap):
    try:
        return run_cell(dist, n, method, M, RngStream(seed, (data_index,)), o_sa_n_cap)
    except Exception as e:
        logger.warning("cell %s n=%d p=%d %s failed: %s",
                       dist.kind, n, dist.p, estimator_label(method), e)
        return _cell_records(dist, n, estimator_label(method), M, ERROR, str(e))


def run_grid(spec, parallelism=1, completed=None, on_cell=None):
    """
    Run every cell of the grid.

    :param parallelism: worker processes; 1 runs in-process
    :param completed: optional dict cell key -> (mean, covariance) records
        from an earlier run; those cells are not recomputed
    :param on_cell: optional callback(records) called in this process as
        each newly computed cell finishes
    :return: list of SimulationRecord, two per cell, in grid order
    """
    completed = completed or {}
    results = SortedDict()
    pending = []
    for index, data_index, dist, n, method in spec.cells():
        key = cell_key(dist.kind, n, dist.p, estimator_label(method))
        if key in completed:
            results[index] = tuple(completed[key])
        else:
            pending.append((index, (spec.seed, data_index, dist, n, method,
                                    spec.replications, spec.o_sa_n_cap)))
    logger.info("grid: %d cells to run, %d reused", len(pending), len(results))

    if parallelism > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            futures = {pool.submit(_run_cell_task, *args): index for index, args in pending}
            for future in as_completed(futures):
                records = future.result()
                results[futures[future]] = records
                if on_cell is not None:
                    on_cell(records)
    else:
        for index, args in pending:
            records = _run_cell_task(*args)
            results[index] = records
            if on_cell is not None:
                on_cell(records)

    return [record for records in results.values() for record in records]


SUMMARY_COLUMNS = ('distribution', 'n', 'p', 'method', 'statistic', 'RE', 'M')


def summary_table(records):
    """
    CSV text with one row per record and the columns
    distribution, n, p, method, statistic, RE, M. RE is empty for skipped
    and failed cells. Timings are left out so reruns compare equal.
    """
    rows = [
        [r.distribution, r.n, r.p, r.method, r.statistic,
         '' if r.relative_error is None else format_float(r.relative_error), r.replications]
        for r in records
    ]
    df = pd.DataFrame(rows, columns=list(SUMMARY_COLUMNS))
    return df.to_csv(index=False, lineterminator='\n')


def write_summary_csv(records, path):
    """Atomically write summary_table(records) to path."""
    write_atomic(path, summary_table(records))
