#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Simulation grid configs: YAML documents validated into a SimulationSpec.
See configs/schema.yaml for the keys.

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
import io
import logging

import yaml

from .anonymize import Method
from .exceptions import ConfigError
from .privacy import PrivacySettings
from .sampling import U64, RngStream
from .simulate import DEFAULT_O_SA_N_CAP, SimulationSpec

logger = logging.getLogger(__name__)

KEYS = frozenset([
    'seed', 'replications', 'distributions', 'n', 'p', 'methods', 'o_mode',
    'o_sa_n_cap', 'privacy',
])
REQUIRED = ('replications', 'distributions', 'n', 'p')
PRIVACY_KEYS = frozenset(['enabled', 'runs', 'delta', 'bin_width'])


def _as_list(value, key):
    if isinstance(value, (list, tuple)):
        return list(value)
    if isinstance(value, (int, str)):
        return [value]
    raise ConfigError("{0}: expected a list, got {1!r}".format(key, value))


def _int(value, key):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError("{0}: expected an integer, got {1!r}".format(key, value))
    return value


def resolve_seed(seed=None):
    """
    The given seed checked to be an unsigned 64-bit integer, or a fresh
    one from OS entropy when seed is None.
    """
    if seed is None:
        return RngStream.from_entropy().seed
    seed = _int(seed, 'seed')
    if not 0 <= seed < U64:
        raise ConfigError("seed: must be in [0, 2**64), got {0}".format(seed))
    return seed


def parse_privacy(block):
    if block is None:
        return None
    if not isinstance(block, dict):
        raise ConfigError("privacy: expected a mapping")
    unknown = sorted(set(block) - PRIVACY_KEYS)
    if unknown:
        raise ConfigError("privacy: unknown key(s) {0}".format(', '.join(unknown)))
    try:
        return PrivacySettings(**block)
    except ConfigError:
        raise
    except (TypeError, ValueError) as e:
        raise ConfigError("privacy: {0}".format(e))


def spec_from_dict(doc, seed=None):
    """
    Validate a parsed config document.

        >>> spec = spec_from_dict({'seed': 1, 'replications': 10,
        ...     'distributions': ['normal_distinct'], 'n': [25], 'p': [2],
        ...     'methods': ['p', 'o']})
        >>> [m.variant for m in spec.methods]
        ['P', 'O']
        >>> spec.o_sa_n_cap
        400

    :param seed: overrides the document's seed when not None
    :raises ConfigError: on unknown, missing or ill-typed keys
    :rtype: SimulationSpec
    """
    if not isinstance(doc, dict):
        raise ConfigError("config must be a mapping, got {0}".format(type(doc).__name__))
    unknown = sorted(set(doc) - KEYS)
    if unknown:
        raise ConfigError("unknown key(s) {0}".format(', '.join(unknown)))
    missing = [k for k in REQUIRED if k not in doc]
    if missing:
        raise ConfigError("missing key(s) {0}".format(', '.join(missing)))

    o_mode = doc.get('o_mode', 'fast')
    try:
        methods = tuple(Method(m, o_mode) for m in _as_list(doc.get('methods', ['p', 'j', 'o']), 'methods'))
    except ValueError as e:
        raise ConfigError("methods: {0}".format(e))
    cap = doc.get('o_sa_n_cap', DEFAULT_O_SA_N_CAP)
    if cap is not None:
        cap = _int(cap, 'o_sa_n_cap')

    return SimulationSpec(
        distributions=[str(d) for d in _as_list(doc['distributions'], 'distributions')],
        n_grid=[_int(n, 'n') for n in _as_list(doc['n'], 'n')],
        p_grid=[_int(p, 'p') for p in _as_list(doc['p'], 'p')],
        methods=methods,
        replications=_int(doc['replications'], 'replications'),
        seed=resolve_seed(seed if seed is not None else doc.get('seed')),
        o_sa_n_cap=cap,
        privacy=parse_privacy(doc.get('privacy')),
    )


def load_config(path, seed=None):
    """
    Read and validate a YAML config file.
    :raises ConfigError: on YAML syntax errors and invalid content
    :rtype: SimulationSpec
    """
    with io.open(path, 'r', encoding='utf-8') as fh:
        try:
            doc = yaml.safe_load(fh)
        except yaml.YAMLError as e:
            raise ConfigError("{0}: {1}".format(path, e))
    spec = spec_from_dict(doc, seed=seed)
    logger.debug("loaded %s: %d distribution(s), n %s, p %s",
                 path, len(spec.distributions), spec.n_grid, spec.p_grid)
    return spec


def spec_to_dict(spec):
    """The effective config of a SimulationSpec, as logged by the CLI."""
    d = {
        'seed': spec.seed,
        'replications': spec.replications,
        'distributions': list(spec.distributions),
        'n': list(spec.n_grid),
        'p': list(spec.p_grid),
        'methods': [m.variant.lower() for m in spec.methods],
        'o_mode': spec.methods[0].o_mode if spec.methods else 'fast',
        'o_sa_n_cap': spec.o_sa_n_cap,
    }
    if spec.privacy is not None:
        d['privacy'] = dict(spec.privacy._asdict())
    return d
