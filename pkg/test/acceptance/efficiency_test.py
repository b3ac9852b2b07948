"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Test module: anonymized sample covariances lose half the efficiency off the diagonal

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
import pytest

from spectranon import DataDistribution, Method, RngStream
from spectranon.simulate import replicate_statistics, variance_ratio

pytestmark = pytest.mark.slow

N = 800
M = 5000
# positions in vec(S) for p = 2: (r, c) -> r + 2c
S11, S12, S22 = 0, 2, 3


@pytest.fixture(scope='module')
def original():
    dist = DataDistribution('normal_distinct', 2)
    return replicate_statistics(dist, N, None, M, RngStream(31337, (0,)))[1]


@pytest.mark.parametrize('variant', ['P', 'J', 'O'])
def test_variance_ratios(original, variant):
    dist = DataDistribution('normal_distinct', 2)
    _, covs = replicate_statistics(dist, N, Method(variant), M, RngStream(31337, (0,)))
    ratio = variance_ratio(covs, original)
    assert 1.8 <= ratio[S12] <= 2.2
    assert 0.9 <= ratio[S11] <= 1.1
    assert 0.9 <= ratio[S22] <= 1.1


if __name__ == "__main__":
    pytest.main([__file__, '-v'])
