"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Test module: exact identities: permutation keeps the sample mean, closed-form limits for diag(2, 1)

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
import numpy as np
import pytest

from spectranon import DataDistribution, Method, RngStream, anonymize_data
from spectranon.cli import main
from spectranon.simulate import generate
from spectranon.tables import parse_table
from test import data

pytestmark = pytest.mark.slow


@pytest.mark.parametrize('p', [2, 3, 6])
def test_permutation_mean_identity(p):
    dist = DataDistribution('normal_distinct', p)
    rng = RngStream(2024, (p,))
    for m in range(100):
        X = generate(dist, 50, rng.spawn(m))
        A = anonymize_data(X, Method('p'), rng.spawn(m, 1))
        mean = X.values.mean(axis=0)
        assert np.all(np.abs(A.values.mean(axis=0) - mean) < 1e-10 * np.abs(mean))


def test_display2_from_command_line(capsys):
    for estimator in ('p', 'j', 'o'):
        assert main(['theory', '--diag', '2,1', '--estimator', estimator]) == 0
        got = parse_table(capsys.readouterr().out, header=False).values
        assert np.array_equal(got, np.array(data.display2.anonymized))
    assert main(['theory', '--diag', '2,1', '--estimator', 'original']) == 0
    got = parse_table(capsys.readouterr().out, header=False).values
    assert np.array_equal(got, np.array(data.display2.original))


if __name__ == "__main__":
    pytest.main([__file__, '-v'])
