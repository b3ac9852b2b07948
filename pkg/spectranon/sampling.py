#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Seeded random transformations: uniform permutations, uniform sign
changes, Haar orthogonal matrices and uniform points on the sphere.

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
from scipy import linalg as sla

U64 = 2 ** 64


def _u64(value, what):
    value = int(value)
    if not 0 <= value < U64:
        raise ValueError("RngStream: {0} must be an unsigned 64-bit integer, got {1}".format(what, value))
    return value


class RngStream(object):
    """
    A reproducible random stream identified by (seed, stream path).

    The stream path is a tuple of unsigned 64-bit ids. The underlying
    generator is PCG64 seeded with SeedSequence(seed, spawn_key=path), so
    the same (seed, path) gives the same draws on any platform and distinct
    paths give independent streams. Child streams come from spawn(), which
    does not depend on how much of the parent has been consumed.

    A stream is single-owner: do not draw from one stream in two threads.

        >>> a = RngStream(7).spawn(3)
        >>> b = RngStream(7, (3,))
        >>> bool((random_permutation(10, a) == random_permutation(10, b)).all())
        True
    """
    __slots__ = ('seed', 'stream', 'generator')

    def __init__(self, seed, stream=()):
        if isinstance(stream, (int, np.integer)):
            stream = (stream,)
        self.seed = _u64(seed, 'seed')
        self.stream = tuple(_u64(s, 'stream id') for s in stream)
        seq = np.random.SeedSequence(self.seed, spawn_key=self.stream)
        self.generator = np.random.Generator(np.random.PCG64(seq))

    @classmethod
    def from_entropy(cls):
        """
        A stream with a fresh seed drawn from OS entropy. Read .seed to
        replay it.
        :rtype: RngStream
        """
        return cls(int(np.random.SeedSequence().entropy) % U64)

    def spawn(self, *keys):
        """
        Independent child stream at path self.stream + keys.
        :rtype: RngStream
        """
        return RngStream(self.seed, self.stream + tuple(keys))

    def __repr__(self):
        return "RngStream({0}, {1!r})".format(self.seed, self.stream)


def random_permutation(n, rng):
    """
    A uniform random permutation of range(n), as an index vector.
    Applying it to a vector u is the gather u[perm].
    :rtype: numpy.ndarray of int
    """
    if n < 1:
        raise ValueError("random_permutation: n must be >= 1")
    return rng.generator.permutation(n)


def random_signs(n, rng):
    """
    n independent fair +1/-1 signs, the diagonal of a sign-change matrix.
    :rtype: numpy.ndarray of float
    """
    if n < 1:
        raise ValueError("random_signs: n must be >= 1")
    return 2.0 * rng.generator.integers(0, 2, size=n) - 1.0


def haar_orthogonal(n, rng):
    """
    An n x n orthogonal matrix from the Haar distribution.

    QR of an i.i.d. standard Gaussian matrix, with the sign of each
    diagonal entry of R folded into the matching column of Q. Without
    that correction the result is not Haar.
    :rtype: numpy.ndarray
    """
    if n < 1:
        raise ValueError("haar_orthogonal: n must be >= 1")
    Z = rng.generator.standard_normal((n, n))
    Q, R = sla.qr(Z)
    d = np.sign(np.diag(R))
    d[d == 0] = 1.0
    return Q * d


def uniform_sphere(n, rng):
    """
    A uniform point on the unit sphere in R^n: a normalized standard
    Gaussian vector. Distributed like haar_orthogonal(n) applied to any
    fixed unit vector, at O(n) cost.
    :rtype: numpy.ndarray
    """
    if n < 1:
        raise ValueError("uniform_sphere: n must be >= 1")
    while True:
        z = rng.generator.standard_normal(n)
        norm = np.linalg.norm(z)
        if norm > 0:
            return z / norm
