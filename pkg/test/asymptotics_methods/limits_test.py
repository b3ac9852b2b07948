"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Test module: closed-form limiting covariances

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
import warnings

import numpy as np
import pytest

from spectranon import GaussianSpec, Method, assumption_gap, cov_limit_cov, mean_limit_cov
from spectranon.asymptotics import (
    anonymized_core, cov_limit_cov_original, efficiency_ratio, estimator_name, sandwich,
)
from spectranon.exceptions import (
    AssumptionViolated, DimensionMismatch, NegativeEigenvalue, NotSymmetric,
)
from spectranon.linalg import commutation_matrix, is_symmetric
from test import data
from test.matrices import random_spd

DISPLAY2 = GaussianSpec.from_covariance(data.display2.sigma)


@pytest.mark.parametrize('estimator', ['P', 'J', 'O'])
def test_anonymized_display2(estimator):
    limit = cov_limit_cov(DISPLAY2, estimator)
    assert limit.statistic == 'covariance'
    assert limit.estimator == estimator
    assert np.array_equal(limit.matrix, np.array(data.display2.anonymized))


def test_original_display2():
    assert np.array_equal(cov_limit_cov_original(DISPLAY2).matrix, np.array(data.display2.original))
    assert np.array_equal(cov_limit_cov(DISPLAY2, 'original').matrix, np.array(data.display2.original))


def test_mean_limits():
    Sigma = np.array(data.display2.sigma)
    assert np.array_equal(mean_limit_cov(DISPLAY2, 'original').matrix, Sigma)
    assert np.array_equal(mean_limit_cov(DISPLAY2, 'P').matrix, Sigma)
    assert np.array_equal(mean_limit_cov(DISPLAY2, 'J').matrix, np.diag([4.0, 2.0]))
    assert np.array_equal(mean_limit_cov(DISPLAY2, Method('o')).matrix, 2 * Sigma)


def test_assumption_violated():
    spec = GaussianSpec.from_covariance(np.eye(2))
    with pytest.raises(AssumptionViolated) as e:
        cov_limit_cov(spec, 'J')
    assert 'repeated eigenvalues' in str(e.value)
    relaxed = cov_limit_cov(spec, 'J', strict=False).matrix
    assert np.all(np.isfinite(relaxed))
    assert is_symmetric(relaxed)


def test_original_warns_on_repeated_eigenvalues():
    spec = GaussianSpec.from_covariance(np.eye(3))
    with pytest.warns(UserWarning):
        cov_limit_cov_original(spec)


def test_original_quiet_on_distinct_eigenvalues():
    with warnings.catch_warnings():
        warnings.simplefilter('error')
        cov_limit_cov_original(DISPLAY2)


@pytest.mark.parametrize('p', [1, 2, 3, 4])
def test_root_free_matches_sandwich(p):
    Sigma = random_spd(p, seed=p)
    spec = GaussianSpec.from_covariance(Sigma)
    expected = sandwich(Sigma, anonymized_core(p))
    got = cov_limit_cov(spec, 'P').matrix
    assert np.allclose(got, expected, atol=1e-10 * np.max(np.abs(expected)))
    original = sandwich(Sigma, np.eye(p * p) + commutation_matrix(p, p))
    assert np.allclose(cov_limit_cov_original(spec).matrix, original,
                       atol=1e-10 * np.max(np.abs(original)))


@pytest.mark.parametrize('p', [1, 2, 3, 6])
def test_limits_are_symmetric_psd(p):
    spec = GaussianSpec.from_covariance(random_spd(p, seed=20 + p))
    for estimator in ['original', 'P']:
        M = cov_limit_cov(spec, estimator).matrix
        assert np.array_equal(M, M.T)
        assert np.linalg.eigvalsh(M).min() > -1e-9 * np.abs(M).max()


def test_all_anonymized_limits_agree():
    spec = GaussianSpec.from_covariance(random_spd(3, seed=7))
    P = cov_limit_cov(spec, 'P').matrix
    assert np.array_equal(P, cov_limit_cov(spec, 'J').matrix)
    assert np.array_equal(P, cov_limit_cov(spec, 'O').matrix)


def test_assumption_gap():
    assert assumption_gap(np.diag([2.0, 1.0])) == 0.5
    assert assumption_gap(np.diag([4.0, 3.0, 1.0])) == 0.25
    assert assumption_gap(np.eye(2)) == 0.0
    assert assumption_gap([[5.0]]) == 1.0
    assert assumption_gap(np.zeros((2, 2))) == 0.0


def test_efficiency_ratio_diagonal():
    R = efficiency_ratio(DISPLAY2)
    assert R[0, 0] == 1.0
    assert R[3, 3] == 1.0
    assert R[1, 2] == 2.0
    assert R[1, 1] == 2.0
    assert np.isnan(R[0, 1])
    assert np.isnan(R[0, 3])


def test_estimator_name():
    assert estimator_name('original') == 'original'
    assert estimator_name('ORIGINAL') == 'original'
    assert estimator_name('o') == 'O'
    assert estimator_name(Method('j')) == 'J'
    with pytest.raises(ValueError):
        estimator_name('q')


def test_gaussian_spec_validation():
    with pytest.raises(DimensionMismatch):
        GaussianSpec([0.0, 0.0], np.eye(3))
    with pytest.raises(NotSymmetric):
        GaussianSpec.from_covariance([[1.0, 0.5], [0.0, 1.0]])
    with pytest.raises(NegativeEigenvalue):
        GaussianSpec.from_covariance(np.diag([1.0, 0.0]))
    assert GaussianSpec([1.0, 2.0], np.eye(2)).p == 2


def test_limit_repr():
    assert repr(mean_limit_cov(DISPLAY2, 'J')) == "LimitCov('mean', 'J', shape=(2, 2))"


if __name__ == "__main__":
    pytest.main([__file__, '-v'])
