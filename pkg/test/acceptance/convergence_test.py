"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Test module: Monte Carlo convergence to the closed-form limits, and where it fails

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
import itertools

import pytest

from spectranon import DataDistribution, Method, RngStream, run_cell

pytestmark = pytest.mark.slow

M = 5000


def cell(kind, n, method, key):
    return run_cell(DataDistribution(kind, 2), n, method, M, RngStream(5150, (key,)))


@pytest.mark.parametrize('method', [None, Method('p'), Method('j'), Method('o')],
                         ids=['original', 'P', 'J', 'O'])
def test_mean_statistic_converges(method):
    mean, _ = cell('normal_distinct', 800, method, 0)
    assert mean.status == 'ok'
    assert mean.relative_error < 0.1


def test_covariance_statistic_converges():
    errors = {}
    for variant, n in [('P', 1600), ('J', 1600), ('O', 400)]:
        _, cov = cell('normal_distinct', n, Method(variant), 1)
        errors[variant] = cov.relative_error
        assert cov.relative_error < 0.15
    for a, b in itertools.combinations(errors, 2):
        assert abs(errors[a] - errors[b]) < 0.05


@pytest.mark.parametrize('variant', ['P', 'J', 'O'])
def test_repeated_eigenvalues_do_not_converge(variant):
    _, small = cell('normal_identity', 400, Method(variant), 2)
    _, large = cell('normal_identity', 1600, Method(variant), 3)
    assert large.relative_error > 0.2
    assert large.relative_error > 0.8 * small.relative_error


def test_poisson_original_does_not_converge():
    _, cov = cell('poisson_distinct', 1600, None, 4)
    assert cov.relative_error > 0.1


if __name__ == "__main__":
    pytest.main([__file__, '-v'])
