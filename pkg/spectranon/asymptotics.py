#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Closed-form limiting covariances of the sample mean and the vectorized
sample covariance, for original and spectrally anonymized Gaussian data.

For rows i.i.d. N_p(mu, Sigma) with distinct eigenvalues of Sigma:

    sqrt(n)(mean - mu)       ->  N(0, Sigma)       original, P
                             ->  N(0, 2 Sigma)     J, O
    sqrt(n) vec(S - Sigma)   ->  N(0, R (I + K) R')              original
                             ->  N(0, R (2I + 2K - 2V_p) R')     P, J, O

with R = Sigma^{1/2} (x) Sigma^{1/2}, Sigma^{1/2} = O Lambda^{1/2} from the
eigendecomposition Sigma = O Lambda O', K the (p, p) commutation matrix and
V_p = diag{vec(I_p)}. p*p indices follow linalg's vec convention.

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
from collections import namedtuple
from warnings import warn

import numpy as np

from .exceptions import AssumptionViolated, DimensionMismatch, NegativeEigenvalue, NotSymmetric
from .linalg import (
    as_array, commutation_matrix, eig_sqrt, is_symmetric, kron, sorted_eigh, vec, vp_matrix,
)

GAP_TOL = 1e-8
ESTIMATORS = ('original', 'P', 'J', 'O')
STATISTICS = ('mean', 'covariance')


def estimator_name(estimator):
    """
    Normalize 'original', a variant letter (any case) or a Method.

        >>> estimator_name('j')
        'J'
    """
    variant = getattr(estimator, 'variant', estimator)
    name = str(variant)
    if name.lower() == 'original':
        return 'original'
    name = name.upper()
    if name not in ESTIMATORS:
        raise ValueError("unknown estimator {0!r}; expected one of {1}".format(estimator, ESTIMATORS))
    return name


class GaussianSpec(namedtuple('GaussianSpecBase', ['mean', 'covariance'])):
    """
    Parameters (mu, Sigma) of a p-variate normal distribution. Sigma must
    be symmetric positive definite.
    """
    __slots__ = ()

    def __new__(cls, mean, covariance):
        mean = np.array(mean, dtype=float).reshape(-1)
        covariance = np.array(covariance, dtype=float)
        if covariance.shape != (mean.size, mean.size):
            raise DimensionMismatch(
                "GaussianSpec: covariance shape {0} does not fit a mean of length {1}".format(
                    covariance.shape, mean.size)
            )
        if not is_symmetric(covariance):
            raise NotSymmetric("GaussianSpec: covariance is not symmetric")
        w, _ = sorted_eigh(covariance)
        if w[-1] <= 0:
            raise NegativeEigenvalue("GaussianSpec: covariance is not positive definite")
        mean.setflags(write=False)
        covariance.setflags(write=False)
        return super(GaussianSpec, cls).__new__(cls, mean, covariance)

    @classmethod
    def from_covariance(cls, covariance):
        """Zero mean, given covariance."""
        covariance = np.asarray(covariance, dtype=float)
        return cls(np.zeros(covariance.shape[0]), covariance)

    @property
    def p(self):
        return self.mean.size


class LimitCov(namedtuple('LimitCovBase', ['statistic', 'estimator', 'matrix'])):
    """
    A closed-form limiting covariance: p x p for the mean, p*p x p*p for
    the vectorized covariance.
    """
    __slots__ = ()

    def __repr__(self):
        return "LimitCov({0!r}, {1!r}, shape={2})".format(
            self.statistic, self.estimator, self.matrix.shape)

    __str__ = __repr__


def assumption_gap(Sigma):
    """
    Smallest relative gap between adjacent sorted eigenvalues,
    min_k (lambda_k - lambda_{k+1}) / lambda_1. Zero means repeated
    eigenvalues; a 1 x 1 matrix has gap 1.

        >>> float(assumption_gap(np.diag([2.0, 1.0])))
        0.5
        >>> float(assumption_gap(np.eye(3)))
        0.0
    """
    w, _ = sorted_eigh(Sigma)
    if w.size < 2:
        return 1.0
    if w[0] <= 0:
        return 0.0
    return float(np.min(-np.diff(w)) / w[0])


def _symmetrized(M):
    return 0.5 * (M + M.T)


def sandwich(Sigma, core):
    """
    Literal evaluation of (Sigma^{1/2} (x) Sigma^{1/2}) core (...)' with
    the eigen square root.
    :rtype: numpy.ndarray
    """
    A = eig_sqrt(Sigma)
    R = kron(A, A)
    return R.dot(as_array(core)).dot(R.T)


def _cross_term(Sigma):
    """(I + K)(Sigma (x) Sigma), which equals R (I + K) R'."""
    p = Sigma.shape[0]
    return (np.eye(p * p) + commutation_matrix(p, p)).dot(kron(Sigma, Sigma))


def _diagonal_term(Sigma):
    """
    R V_p R' = sum_k lambda_k^2 vec(o_k o_k') vec(o_k o_k')', built from the
    eigenpairs so no square roots enter the result.
    """
    w, O = sorted_eigh(Sigma)
    w = np.clip(w, 0.0, None)
    p = Sigma.shape[0]
    M = np.zeros((p * p, p * p))
    for k in range(p):
        v = vec(np.outer(O[:, k], O[:, k]))
        M += (w[k] ** 2) * np.outer(v, v)
    return M


def mean_limit_cov(spec, estimator):
    """
    Limiting covariance of sqrt(n)(mean - mu): Sigma for the original data
    and P, 2 Sigma for J and O.
    :rtype: LimitCov
    """
    name = estimator_name(estimator)
    Sigma = np.array(spec.covariance)
    factor = 2.0 if name in ('J', 'O') else 1.0
    return LimitCov('mean', name, factor * Sigma)


def cov_limit_cov_original(spec):
    """
    Limiting covariance of sqrt(n) vec(S - Sigma) for the original data,
    R (I + K) R'. Warns when Sigma has repeated eigenvalues.
    :rtype: LimitCov
    """
    Sigma = np.array(spec.covariance)
    gap = assumption_gap(Sigma)
    if gap <= GAP_TOL:
        warn("covariance has repeated eigenvalues (gap {0:.3g})".format(gap))
    return LimitCov('covariance', 'original', _symmetrized(_cross_term(Sigma)))


def cov_limit_cov(spec, estimator, strict=True):
    """
    Limiting covariance of sqrt(n) vec(S_A - Sigma). For the anonymized
    estimators P, J and O it is the same matrix,
    R (2I + 2K - 2V_p) R'. 'original' returns cov_limit_cov_original().

        >>> spec = GaussianSpec.from_covariance(np.diag([2.0, 1.0]))
        >>> cov_limit_cov(spec, 'J').matrix
        array([[8., 0., 0., 0.],
               [0., 4., 4., 0.],
               [0., 4., 4., 0.],
               [0., 0., 0., 2.]])

    :param strict: refuse covariances with repeated eigenvalues; with
        strict=False the formula is evaluated anyway
    :raises AssumptionViolated: if strict and assumption_gap(Sigma) <= 1e-8
    :rtype: LimitCov
    """
    name = estimator_name(estimator)
    if name == 'original':
        return cov_limit_cov_original(spec)
    Sigma = np.array(spec.covariance)
    if strict:
        gap = assumption_gap(Sigma)
        if gap <= GAP_TOL:
            raise AssumptionViolated(
                "Sigma has repeated eigenvalues, the limit needs distinct ones: "
                "relative eigengap {0:.3g} <= {1}".format(gap, GAP_TOL)
            )
    M = 2.0 * _cross_term(Sigma) - 2.0 * _diagonal_term(Sigma)
    return LimitCov('covariance', name, _symmetrized(M))


def anonymized_core(p):
    """2I + 2K - 2V_p, the middle factor of the anonymized limit."""
    return 2.0 * np.eye(p * p) + 2.0 * commutation_matrix(p, p) - 2.0 * vp_matrix(p)


def efficiency_ratio(spec):
    """
    Entrywise ratio of the anonymized to the original covariance limit.
    Entries where the original limit is zero are NaN.

    For diagonal Sigma the ratio is 1 at the variance positions and 2 at
    the cross-covariance positions.
    :raises AssumptionViolated: on repeated eigenvalues
    :rtype: numpy.ndarray
    """
    num = cov_limit_cov(spec, 'P').matrix
    den = cov_limit_cov_original(spec).matrix
    scale = float(np.max(np.abs(den)))
    nonzero = np.abs(den) > 1e-12 * scale
    ratio = np.full(den.shape, np.nan)
    ratio[nonzero] = num[nonzero] / den[nonzero]
    return ratio
