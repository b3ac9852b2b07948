#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Dense matrix utilities: the DataMatrix value type, vectorization,
Kronecker and commutation matrices, the eigen square root, centering
and the thin SVD.

Indexing convention for anything of length p*p: vec is column-major, so
entry (row r, col c) of a p x p matrix sits at position r + p*c (0-based).

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
from scipy import linalg as sla

from .exceptions import (
    EmptyInput, NegativeEigenvalue, NonFiniteInput, NotSymmetric, TooFewRows,
    DimensionMismatch,
)

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-10
EIGENVALUE_FLOOR = -1e-12


class DataMatrix(namedtuple('DataMatrixBase', ['values', 'columns'])):
    """
    A dense n x p table, one row per record, one column per variable.

    The values are copied to a read-only float array on construction.

        >>> X = DataMatrix([[1, 2], [3, 4], [5, 6]], columns=['a', 'b'])
        >>> X.shape
        (3, 2)
        >>> X.columns
        ('a', 'b')
        >>> DataMatrix([[1.0, float('nan')]])
        Traceback (most recent call last):
        ...
        spectranon.exceptions.NonFiniteInput: DataMatrix: entries must be finite
    """
    __slots__ = ()

    def __new__(cls, values, columns=None):
        values = np.array(values, dtype=float)
        if values.ndim != 2:
            raise DimensionMismatch(
                "DataMatrix: expected a 2-d table, got {0} dimension(s)".format(values.ndim)
            )
        if values.shape[0] < 1 or values.shape[1] < 1:
            raise EmptyInput("DataMatrix: need at least one row and one column")
        if not np.all(np.isfinite(values)):
            raise NonFiniteInput("DataMatrix: entries must be finite")
        if columns is not None:
            columns = tuple(str(c) for c in columns)
            if len(columns) != values.shape[1]:
                raise DimensionMismatch(
                    "DataMatrix: {0} column names for {1} columns".format(
                        len(columns), values.shape[1])
                )
        values.setflags(write=False)
        return super(DataMatrix, cls).__new__(cls, values, columns)

    @property
    def n(self):
        return self.values.shape[0]

    @property
    def p(self):
        return self.values.shape[1]

    @property
    def shape(self):
        return self.values.shape

    def with_values(self, values):
        """
        New DataMatrix with the same column names.
        :rtype: DataMatrix
        """
        return DataMatrix(values, self.columns)

    def __eq__(self, other):
        if not isinstance(other, DataMatrix):
            return NotImplemented
        return (
            self.columns == other.columns and
            np.array_equal(self.values, other.values)
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __repr__(self):
        return "DataMatrix(n={0}, p={1}, columns={2!r})".format(self.n, self.p, self.columns)

    __str__ = __repr__


def as_array(A):
    """
    The float array behind a DataMatrix, or A itself converted.
    :rtype: numpy.ndarray
    """
    if isinstance(A, DataMatrix):
        return A.values
    return np.asarray(A, dtype=float)


def vec(A):
    """
    Column-wise vectorization: columns stacked top to bottom.

        >>> vec([[1, 3], [2, 4]])
        array([1., 2., 3., 4.])
    """
    return as_array(A).reshape(-1, order='F')


def kron(A, B):
    """
    Kronecker product A (x) B.

        >>> kron(np.eye(2), np.diag([3.0, 5.0]))
        array([[3., 0., 0., 0.],
               [0., 5., 0., 0.],
               [0., 0., 3., 0.],
               [0., 0., 0., 5.]])
    """
    return np.kron(as_array(A), as_array(B))


def commutation_matrix(p, q):
    """
    The pq x pq 0/1 matrix K with K vec(A) = vec(A') for every p x q A.

        >>> commutation_matrix(2, 2)
        array([[1., 0., 0., 0.],
               [0., 0., 1., 0.],
               [0., 1., 0., 0.],
               [0., 0., 0., 1.]])
    """
    if p < 1 or q < 1:
        raise ValueError("commutation_matrix: p and q must be >= 1")
    rows = np.arange(p * q)
    # A[i, j] sits at i + p*j in vec(A) and at j + q*i in vec(A')
    cols = rows.reshape((p, q), order='F').ravel()
    K = np.zeros((p * q, p * q))
    K[rows, cols] = 1.0
    return K


def vp_matrix(p):
    """
    diag{vec(I_p)}: ones at the p*p positions of the diagonal entries.

        >>> np.diag(vp_matrix(2))
        array([1., 0., 0., 1.])
    """
    if p < 1:
        raise ValueError("vp_matrix: p must be >= 1")
    return np.diag(vec(np.eye(p)))


def frobenius(A):
    """Frobenius norm (Euclidean norm for vectors)."""
    return float(np.linalg.norm(as_array(A).ravel()))


def is_symmetric(A, tol=SYMMETRY_TOL):
    """
    Whether A is square and equal to its transpose, entrywise within
    tol * max(1, max|A|).
    :rtype: bool
    """
    A = as_array(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    if not A.size:
        return True
    scale = max(1.0, float(np.max(np.abs(A))))
    return bool(np.max(np.abs(A - A.T)) <= tol * scale)


def _largest_entry_signs(V):
    """
    For each column of V, the sign that makes its largest-magnitude entry
    positive. argmax returns the lowest index on ties.
    """
    idx = np.argmax(np.abs(V), axis=0)
    signs = np.sign(V[idx, np.arange(V.shape[1])])
    signs[signs == 0] = 1.0
    return signs


def sorted_eigh(Sigma):
    """
    Eigendecomposition of a symmetric matrix with eigenvalues in
    descending order and each eigenvector's largest entry positive.
    Equal eigenvalues keep the solver's order.
    :return: (eigenvalues, eigenvectors as columns)
    :raises NotSymmetric: if Sigma is not symmetric within 1e-10
    """
    Sigma = as_array(Sigma)
    if not is_symmetric(Sigma):
        raise NotSymmetric("matrix is not symmetric within {0}".format(SYMMETRY_TOL))
    w, O = sla.eigh(Sigma)
    order = np.argsort(-w, kind='stable')
    w = w[order]
    O = O[:, order]
    O = O * _largest_entry_signs(O)
    return w, O


def eig_sqrt(Sigma):
    """
    The non-symmetric square root O diag(sqrt(lambda)) of a symmetric PSD
    matrix Sigma = O diag(lambda) O', eigenvalues descending.

    Eigenvalues in [-1e-12, 0) are clamped to zero.

        >>> np.abs(eig_sqrt(np.diag([4.0, 1.0])))
        array([[2., 0.],
               [0., 1.]])

    :raises NotSymmetric: if Sigma is not symmetric within 1e-10
    :raises NegativeEigenvalue: if an eigenvalue is below -1e-12
    :rtype: numpy.ndarray
    """
    w, O = sorted_eigh(Sigma)
    if w.size and w[-1] < EIGENVALUE_FLOOR:
        raise NegativeEigenvalue(
            "eigenvalue {0!r} is below {1}".format(float(w[-1]), EIGENVALUE_FLOOR)
        )
    w = np.clip(w, 0.0, None)
    return O * np.sqrt(w)


def center(X):
    """
    Subtract the column means. The n x n centering matrix is never formed.

        >>> Xc, mean = center(DataMatrix([[1.0], [3.0]]))
        >>> Xc.values
        array([[-1.],
               [ 1.]])
        >>> mean
        array([2.])

    :return: (centered DataMatrix, mean vector)
    """
    if not isinstance(X, DataMatrix):
        X = DataMatrix(X)
    mean = X.values.mean(axis=0)
    return X.with_values(X.values - mean), mean


def rank_tolerance(X):
    """
    Absolute threshold under which a singular value of the centered X is
    rounding noise left over from centering.
    """
    X = as_array(X)
    n, p = X.shape
    return np.sqrt(n * p) * n * np.finfo(float).eps * float(np.max(np.abs(X)))


def thin_svd(Xc, atol=None):
    """
    Thin SVD Xc = U diag(D) V' of a column-centered n x p matrix.

    D is descending and non-negative. Each column of V has its largest
    magnitude entry positive (lowest index on ties) and U follows.
    Singular values at or below max(atol, D[0] * max(n, p) * eps) are set
    to zero and their left vectors are replaced by an orthonormal
    completion orthogonal to the all-ones vector, so every column of U
    sums to zero.

    :param Xc: centered data, DataMatrix or array
    :param atol: optional absolute rank threshold, see rank_tolerance()
    :return: (U, D, V)
    :raises TooFewRows: if n <= p
    """
    Xc = as_array(Xc)
    n, p = Xc.shape
    if n <= p:
        raise TooFewRows("thin_svd: need n >= p + 1 rows, got n={0}, p={1}".format(n, p))

    U, D, Vt = sla.svd(Xc, full_matrices=False)
    V = Vt.T

    tol = D[0] * max(n, p) * np.finfo(float).eps
    if atol is not None:
        tol = max(tol, atol)
    null = D <= tol
    if np.any(null):
        logger.debug("thin_svd: rank %d of %d, completing left basis", p - int(null.sum()), p)
        D = np.where(null, 0.0, D)
        keep = np.column_stack([np.full(n, 1.0 / np.sqrt(n)), U[:, ~null]])
        completion = sla.null_space(keep.T)
        U = U.copy()
        U[:, null] = completion[:, :int(null.sum())]

    signs = _largest_entry_signs(V)
    return U * signs, D, V * signs
