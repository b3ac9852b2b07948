#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Core logic: the spectral model of a table and its P-, J- and O-spectral
anonymizations.

Given the thin SVD of the centered data, X - 1 mean' = U D V', each
column u_k of U is replaced by an independently perturbed copy and the
table is rebuilt as U0 D V' + 1 mean':

    P   u_k permuted by a uniform random permutation
    J   u_k multiplied entrywise by uniform random signs
    O   u_k mapped by a Haar orthogonal matrix ("literal"), or replaced
        by a uniform point on the unit sphere ("fast"); both give the
        same distribution because ||u_k|| = 1

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

import numpy as np

from .exceptions import DimensionMismatch, TooFewRows
from .linalg import DataMatrix, center, frobenius, rank_tolerance, thin_svd
from .sampling import haar_orthogonal, random_permutation, random_signs, uniform_sphere

logger = logging.getLogger(__name__)

VARIANTS = ('P', 'J', 'O')
O_MODES = ('fast', 'literal')

# stream ids for the anonymization draws of each estimator; 0 is the
# original data
METHOD_CODES = {'original': 0, 'P': 1, 'J': 2, 'O': 3}


class Method(namedtuple('MethodBase', ['variant', 'o_mode'])):
    """
    Which spectral anonymization to run.

        >>> Method('p')
        Method('P', 'fast')
    """
    __slots__ = ()

    def __new__(cls, variant, o_mode='fast'):
        variant = str(variant).upper()
        if variant not in VARIANTS:
            raise ValueError("Method: variant must be one of P, J, O, got {0!r}".format(variant))
        o_mode = str(o_mode).lower()
        if o_mode not in O_MODES:
            raise ValueError("Method: o_mode must be 'fast' or 'literal', got {0!r}".format(o_mode))
        return super(Method, cls).__new__(cls, variant, o_mode)

    @property
    def code(self):
        return METHOD_CODES[self.variant]

    def __repr__(self):
        return "Method({0!r}, {1!r})".format(self.variant, self.o_mode)

    __str__ = __repr__


class SpectralModel(namedtuple('SpectralModelBase', [
        'mean', 'left_vectors', 'singular_values', 'right_vectors', 'columns'])):
    """
    Column means plus the thin SVD factors of the centered data.
    Immutable; safe to share between threads.
    """
    __slots__ = ()

    def __new__(cls, mean, left_vectors, singular_values, right_vectors, columns=None):
        arrays = []
        for a in (mean, left_vectors, singular_values, right_vectors):
            a = np.array(a, dtype=float)
            a.setflags(write=False)
            arrays.append(a)
        mean, U, D, V = arrays
        if U.ndim != 2:
            raise DimensionMismatch(
                "SpectralModel: left_vectors must be n x p, got shape {0}".format(U.shape))
        p = U.shape[1]
        for name, a, shape in (('mean', mean, (p,)), ('singular_values', D, (p,)),
                               ('right_vectors', V, (p, p))):
            if a.shape != shape:
                raise DimensionMismatch("SpectralModel: {0} must have shape {1}, got {2}".format(
                    name, shape, a.shape))
        if np.any(D < 0) or np.any(np.diff(D) > 0):
            raise ValueError("SpectralModel: singular values must be >= 0 and descending")
        if columns is not None:
            columns = tuple(columns)
            if len(columns) != p:
                raise DimensionMismatch("SpectralModel: {0} column names for {1} columns".format(
                    len(columns), p))
        return super(SpectralModel, cls).__new__(cls, mean, U, D, V, columns)

    @property
    def n(self):
        return self.left_vectors.shape[0]

    @property
    def p(self):
        return self.left_vectors.shape[1]

    def reconstruct(self):
        """
        U D V' + 1 mean', the table the model was fitted on.
        :rtype: DataMatrix
        """
        U = self.left_vectors
        values = (U * self.singular_values).dot(self.right_vectors.T) + self.mean
        return DataMatrix(values, self.columns)

    def verify(self, source=None):
        """
        Check the model invariants; if source is given, also that the
        model rebuilds it. Should only be needed for debugging.
        """
        U = self.left_vectors
        V = self.right_vectors
        D = self.singular_values
        p = self.p
        assert frobenius(U.T.dot(U) - np.eye(p)) < 1e-10, "left vectors not orthonormal"
        assert frobenius(V.T.dot(V) - np.eye(p)) < 1e-10, "right vectors not orthonormal"
        assert np.all(D >= 0) and np.all(np.diff(D) <= 0), "singular values not descending"
        assert np.all(np.abs(U.sum(axis=0)) < 1e-9), "left vectors do not sum to zero"
        if source is not None:
            X = source.values if isinstance(source, DataMatrix) else np.asarray(source, float)
            err = frobenius(self.reconstruct().values - X)
            assert err <= 1e-9 * max(frobenius(X), 1.0), \
                "reconstruction error {0}".format(err)

    def __repr__(self):
        return "SpectralModel(n={0}, p={1}, singular_values={2!r})".format(
            self.n, self.p, self.singular_values.tolist())

    __str__ = __repr__


def fit_spectral(X):
    """
    Column means and thin SVD of the centered table.
    :param X: DataMatrix, or anything DataMatrix() accepts
    :raises TooFewRows: if n <= p
    :raises NonFiniteInput: on NaN or Inf entries
    :rtype: SpectralModel
    """
    if not isinstance(X, DataMatrix):
        X = DataMatrix(X)
    if X.n <= X.p:
        raise TooFewRows(
            "fit_spectral: need at least p + 1 = {0} rows, got {1}".format(X.p + 1, X.n)
        )
    Xc, mean = center(X)
    U, D, V = thin_svd(Xc, atol=rank_tolerance(X.values))
    logger.debug("fit_spectral: n=%d p=%d singular values %s", X.n, X.p, D.tolist())
    return SpectralModel(mean, U, D, V, X.columns)


def perturb_column(u, method, rng):
    """
    One draw of the transformation for a single unit-norm left vector.
    :rtype: numpy.ndarray
    """
    n = u.shape[0]
    if method.variant == 'P':
        return u[random_permutation(n, rng)]
    if method.variant == 'J':
        return u * random_signs(n, rng)
    if method.o_mode == 'literal':
        return haar_orthogonal(n, rng).dot(u)
    return uniform_sphere(n, rng)


def anonymize(model, method, rng, transforms=None):
    """
    The spectral anonymization U0 D V' + 1 mean' of the fitted table.

    Every column of U gets its own independent draw, in column order, from
    rng. Columns with zero singular value are perturbed too; they do not
    contribute to the output.

    :param model: SpectralModel
    :param method: Method
    :param rng: RngStream, consumed
    :param transforms: optional sequence of p callables u_k -> u0_k used
        instead of the random draws (for deterministic tests)
    :rtype: DataMatrix
    """
    U = model.left_vectors
    p = model.p
    if transforms is not None and len(transforms) != p:
        raise ValueError("anonymize: need {0} transforms, got {1}".format(p, len(transforms)))
    U0 = np.empty_like(U)
    for k in range(p):
        if transforms is not None:
            U0[:, k] = transforms[k](U[:, k])
        else:
            U0[:, k] = perturb_column(U[:, k], method, rng)
    values = (U0 * model.singular_values).dot(model.right_vectors.T) + model.mean
    return DataMatrix(values, model.columns)


def anonymize_data(X, method, rng, transforms=None):
    """
    fit_spectral() then anonymize().
    :rtype: DataMatrix
    """
    return anonymize(fit_spectral(X), method, rng, transforms=transforms)
