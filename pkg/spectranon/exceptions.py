#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Error taxonomy.

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


class SpectralAnonError(ValueError):
    """Base class. Every error raised on bad input is also a ValueError."""


class TooFewRows(SpectralAnonError):
    """Fewer rows than the operation needs (usually n <= p)."""


class NonFiniteInput(SpectralAnonError):
    """NaN or Inf found in a data matrix."""


class NotSymmetric(SpectralAnonError):
    pass


class NegativeEigenvalue(SpectralAnonError):
    pass


class AssumptionViolated(SpectralAnonError):
    """
    The covariance matrix has (numerically) repeated eigenvalues, so the
    closed-form limit for anonymized covariances does not apply.
    """


class ZeroTarget(SpectralAnonError):
    pass


class DimensionMismatch(SpectralAnonError):
    pass


class EmptyInput(SpectralAnonError):
    pass


class ConfigError(SpectralAnonError):
    pass


class ParseError(SpectralAnonError):
    """
    A table could not be read.
    :param row: 1-based data row (header excluded), or None
    :param column: column label, or None
    """
    def __init__(self, message, row=None, column=None):
        self.row = row
        self.column = column
        if row is not None or column is not None:
            message = "{0} (row {1}, column {2!r})".format(message, row, column)
        super(ParseError, self).__init__(message)
