#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Distance-based record linkage: for every anonymized record, the Euclidean
distance to the closest original record, on the raw scale and using all
variables. Records closer than delta count as matches.

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
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor, as_completed

import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial.distance import cdist
from sortedcontainers import SortedDict

from .anonymize import anonymize, fit_spectral
from .exceptions import ConfigError, DimensionMismatch, EmptyInput
from .linalg import as_array
from .sampling import RngStream
from .simulate import ERROR, OK, SKIPPED, generate

logger = logging.getLogger(__name__)

DEFAULT_DELTA = 1e-6

# rows of the anonymized table per cdist block
SCAN_CHUNK = 1024


def _pair(anon, orig):
    A = as_array(anon)
    B = as_array(orig)
    if A.ndim != 2 or B.ndim != 2 or A.shape != B.shape:
        raise DimensionMismatch(
            "linkage: anonymized shape {0} does not match original shape {1}".format(
                A.shape, B.shape)
        )
    return A, B


def linkage_distances(anon, orig, accelerate=False):
    """
    For each anonymized row i, min_j ||anon_i - orig_j||_2.

    The default is a blocked brute-force scan. With accelerate=True the
    nearest original row is found with a k-d tree instead. Either way the
    reported distance is recomputed from the chosen pair with the same
    expression, so identical rows give exactly 0.

        >>> linkage_distances([[0.0, 0.0], [3.0, 4.0]], [[0.0, 0.0], [9.0, 9.0]])
        array([0., 5.])

    :raises DimensionMismatch: if the tables differ in shape
    :rtype: numpy.ndarray
    """
    A, B = _pair(anon, orig)
    if accelerate:
        _, nearest = cKDTree(B).query(A, k=1)
    else:
        nearest = np.empty(A.shape[0], dtype=int)
        for start in range(0, A.shape[0], SCAN_CHUNK):
            block = cdist(A[start:start + SCAN_CHUNK], B, 'sqeuclidean')
            nearest[start:start + SCAN_CHUNK] = np.argmin(block, axis=1)
    diff = A - B[nearest]
    return np.sqrt(np.sum(diff * diff, axis=1))


class PrivacyReport(namedtuple('PrivacyReportBase', [
        'distances', 'mean_distance', 'match_proportion', 'delta'])):
    """Linkage result for one anonymized dataset."""
    __slots__ = ()

    def __new__(cls, distances, delta=DEFAULT_DELTA):
        distances = np.array(distances, dtype=float).reshape(-1)
        if not distances.size:
            raise EmptyInput("PrivacyReport: no distances")
        if np.any(distances < 0):
            raise ValueError("PrivacyReport: distances must be >= 0")
        delta = float(delta)
        if not delta > 0:
            raise ValueError("PrivacyReport: delta must be > 0, got {0!r}".format(delta))
        distances.setflags(write=False)
        mean_distance = float(distances.mean())
        match_proportion = float(np.count_nonzero(distances < delta)) / distances.size
        return super(PrivacyReport, cls).__new__(
            cls, distances, mean_distance, match_proportion, delta)

    @property
    def n(self):
        return self.distances.size

    def to_dict(self, per_row=False):
        d = {
            'n': self.n,
            'mean_distance': self.mean_distance,
            'match_proportion': self.match_proportion,
            'delta': self.delta,
        }
        if per_row:
            d['distances'] = self.distances.tolist()
        return d

    def __repr__(self):
        return "PrivacyReport(n={0}, mean_distance={1!r}, match_proportion={2!r})".format(
            self.n, self.mean_distance, self.match_proportion)


def privacy_report(anon, orig, delta=DEFAULT_DELTA, accelerate=False):
    """
    Minimum distances, their mean and the proportion of anonymized rows
    strictly closer than delta to some original row.

        >>> r = privacy_report([[1.0], [2.0]], [[1.0], [5.0]])
        >>> r.match_proportion
        0.5

    :raises DimensionMismatch: if the tables differ in shape
    :rtype: PrivacyReport
    """
    return PrivacyReport(linkage_distances(anon, orig, accelerate=accelerate), delta)


class PrivacySummary(namedtuple('PrivacySummaryBase', [
        'euc', 'histogram', 'match_rate', 'runs'])):
    """
    Aggregate over datasets: euc is the mean of the per-dataset mean
    distances, histogram maps each bin's lower edge to the number of
    datasets whose match proportion falls in it, and match_rate is the
    mean match proportion.
    """
    __slots__ = ()


def aggregate_privacy(reports, bin_width=None):
    """
    :param bin_width: histogram bin width; defaults to 1/n of the first
        report, one bin per possible match count
    :raises EmptyInput: on an empty list
    :rtype: PrivacySummary
    """
    reports = list(reports)
    if not reports:
        raise EmptyInput("aggregate_privacy: no reports")
    if bin_width is None:
        bin_width = 1.0 / reports[0].n
    bin_width = float(bin_width)
    if not bin_width > 0:
        raise ValueError("aggregate_privacy: bin_width must be > 0")

    histogram = SortedDict()
    for r in reports:
        # k/n divided by 1/n can land just under k
        index = int(np.floor(r.match_proportion / bin_width + 1e-9))
        edge = round(index * bin_width, 12)
        histogram[edge] = histogram.get(edge, 0) + 1

    euc = float(np.mean([r.mean_distance for r in reports]))
    match_rate = float(np.mean([r.match_proportion for r in reports]))
    return PrivacySummary(euc, histogram, match_rate, len(reports))


def linkage_study(dist, n, method, runs, rng, delta=DEFAULT_DELTA,
                  bin_width=None, accelerate=False):
    """
    The record-linkage experiment for one grid cell: for each run, fresh
    data from dist, one anonymization, one report.

    Run r uses data stream rng.spawn(r) and anonymization stream
    rng.spawn(r, method.code), the same layout as the utility harness.
    :rtype: PrivacySummary
    """
    if runs < 1:
        raise ValueError("linkage_study: runs must be >= 1")
    reports = []
    for r in range(runs):
        X = generate(dist, n, rng.spawn(r))
        A = anonymize(fit_spectral(X), method, rng.spawn(r, method.code))
        reports.append(privacy_report(A, X, delta, accelerate=accelerate))
    return aggregate_privacy(reports, bin_width)


class PrivacySettings(namedtuple('PrivacySettingsBase', [
        'enabled', 'runs', 'delta', 'bin_width'])):
    """The optional privacy block of a simulation config."""
    __slots__ = ()

    def __new__(cls, enabled=False, runs=500, delta=DEFAULT_DELTA, bin_width=None):
        runs = int(runs)
        delta = float(delta)
        if runs < 1:
            raise ConfigError("privacy.runs must be >= 1")
        if not delta > 0:
            raise ConfigError("privacy.delta must be > 0")
        if bin_width is not None:
            bin_width = float(bin_width)
            if not bin_width > 0:
                raise ConfigError("privacy.bin_width must be > 0")
        return super(PrivacySettings, cls).__new__(cls, bool(enabled), runs, delta, bin_width)


class PrivacyRecord(namedtuple('PrivacyRecordBase', [
        'distribution', 'n', 'p', 'method', 'runs', 'euc', 'match_rate',
        'histogram', 'delta', 'status', 'message'])):
    """Linkage summary of one (distribution, n, p, method) cell."""
    __slots__ = ()

    def to_dict(self):
        d = dict(self._asdict())
        if self.histogram is not None:
            d['histogram'] = [[edge, count] for edge, count in self.histogram.items()]
        return d


def _privacy_cell_task(seed, data_index, dist, n, method, settings, o_sa_n_cap):
    label = method.variant
    if method.variant == 'O' and o_sa_n_cap is not None and n > o_sa_n_cap:
        return PrivacyRecord(dist.kind, n, dist.p, label, settings.runs, None, None, None,
                             settings.delta, SKIPPED,
                             "O-SA runs only for n <= {0}".format(o_sa_n_cap))
    try:
        summary = linkage_study(dist, n, method, settings.runs,
                                RngStream(seed, (data_index,)),
                                settings.delta, settings.bin_width)
    except Exception as e:
        logger.warning("privacy cell %s n=%d p=%d %s failed: %s", dist.kind, n, dist.p, label, e)
        return PrivacyRecord(dist.kind, n, dist.p, label, settings.runs, None, None, None,
                             settings.delta, ERROR, str(e))
    logger.info("privacy cell %s n=%d p=%d %s: EUC %.4f, match rate %.4f",
                dist.kind, n, dist.p, label, summary.euc, summary.match_rate)
    return PrivacyRecord(dist.kind, n, dist.p, label, summary.runs, summary.euc,
                         summary.match_rate, summary.histogram, settings.delta, OK, '')


def run_privacy_grid(spec, parallelism=1):
    """
    linkage_study() for every anonymized cell of a SimulationSpec, using
    spec.privacy settings. Cells share data streams with the utility
    grid, so run r sees the datasets of replication r.
    :return: list of PrivacyRecord in grid order
    """
    settings = spec.privacy or PrivacySettings(enabled=True)
    tasks = []
    for index, data_index, dist, n, method in spec.cells():
        if method is None:
            continue
        tasks.append((index, (spec.seed, data_index, dist, n, method, settings, spec.o_sa_n_cap)))

    results = SortedDict()
    if parallelism > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            futures = {pool.submit(_privacy_cell_task, *args): index for index, args in tasks}
            for future in as_completed(futures):
                results[futures[future]] = future.result()
    else:
        for index, args in tasks:
            results[index] = _privacy_cell_task(*args)
    return list(results.values())

