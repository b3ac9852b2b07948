"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Test module: YAML simulation configs

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
import os

import pytest

from spectranon import Method
from spectranon.config import load_config, resolve_seed, spec_from_dict, spec_to_dict
from spectranon.exceptions import ConfigError

CONFIGS = os.path.join(os.path.dirname(__file__), '..', '..', 'configs')


def minimal(**kwargs):
    doc = {'seed': 3, 'replications': 10, 'distributions': ['normal_distinct'],
           'n': [25], 'p': [2]}
    doc.update(kwargs)
    return doc


def test_paper_grid_shape():
    spec = load_config(os.path.join(CONFIGS, 'paper-grid.yaml'))
    assert len(spec.distributions) == 4
    assert spec.n_grid == (25, 50, 100, 200, 400, 800, 1600)
    assert spec.p_grid == (2, 3, 6)
    assert spec.replications == 10000
    assert spec.o_sa_n_cap == 400
    assert spec.privacy.enabled
    assert spec.privacy.delta == 1e-6
    assert len(list(spec.cells())) == 4 * 7 * 3 * 4


def test_smoke_and_schema_load():
    smoke = load_config(os.path.join(CONFIGS, 'smoke.yaml'))
    assert smoke.seed == 7
    assert smoke.privacy is None
    schema = load_config(os.path.join(CONFIGS, 'schema.yaml'))
    assert 0 <= schema.seed < 2 ** 64
    assert not schema.privacy.enabled


def test_defaults():
    spec = spec_from_dict(minimal())
    assert spec.methods == (Method('p'), Method('j'), Method('o'))
    assert spec.o_sa_n_cap == 400
    assert spec.privacy is None


def test_o_mode():
    spec = spec_from_dict(minimal(methods=['o'], o_mode='literal'))
    assert spec.methods == (Method('o', 'literal'),)


def test_seed_override():
    assert spec_from_dict(minimal(), seed=99).seed == 99
    assert spec_from_dict(minimal(seed=None)).seed >= 0


def test_scalar_lists():
    spec = spec_from_dict(minimal(n=30, p=3, distributions='poisson_flat'))
    assert spec.n_grid == (30,)
    assert spec.distributions == ('poisson_flat',)


@pytest.mark.parametrize('doc', [
    minimal(extra=1),
    minimal(privacy={'enabled': True, 'rounds': 3}),
    minimal(privacy={'runs': 'many'}),
    minimal(privacy={'delta': 0}),
    minimal(methods=['q']),
    minimal(n=['ten']),
    minimal(replications=True),
    minimal(seed=-1),
    minimal(n=[2]),
    {'seed': 1},
    [1, 2],
])
def test_invalid(doc):
    with pytest.raises(ConfigError):
        spec_from_dict(doc)


def test_yaml_errors(tmp_path):
    path = tmp_path / 'bad.yaml'
    path.write_text('seed: [1, 2\n')
    with pytest.raises(ConfigError):
        load_config(str(path))


def test_effective_config_round_trip():
    spec = spec_from_dict(minimal(methods=['j', 'o'], privacy={'enabled': True, 'runs': 5}))
    again = spec_from_dict(spec_to_dict(spec))
    assert again == spec


def test_resolve_seed():
    assert resolve_seed(12) == 12
    with pytest.raises(ConfigError):
        resolve_seed(2 ** 64)


if __name__ == "__main__":
    pytest.main([__file__, '-v'])
