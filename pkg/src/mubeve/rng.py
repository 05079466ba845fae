"""Deterministic random streams.

Every random object in this package (attack unitaries, measurement bases,
campaign sub-seeds) is derived from SplitMix64, so identical seeds give
bit-identical integer streams on any platform and in any language that
implements the same algorithm.

SplitMix64 keeps a 64-bit state ``x`` and produces one output per step::

    x = (x + 0x9E3779B97F4A7C15) mod 2**64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output = z ^ (z >> 31)

Derived quantities:

* uniform double in [0, 1): the top 53 bits, ``(output >> 11) * 2**-53``;
* one Gaussian pair per two uniforms via Box-Muller,
  ``r = sqrt(-2 ln(1 - u1))``, ``(r cos(2 pi u2), r sin(2 pi u2))``;
* complex Gaussian matrices filled row-major, one Box-Muller pair per
  entry, entry ``(z0 + i z1) / sqrt(2)``;
* sub-seeds via :func:`mix`, which folds integers into a seed with the
  same finalizer.

Test vectors (first outputs for a given seed) are frozen in
``tests/test_rng.py`` and listed in the README.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatchError

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """Apply the SplitMix64 output finalizer to a 64-bit integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix(seed: int, *parts: int) -> int:
    """Fold integers into a 64-bit sub-seed.

    ``mix(s, p1, p2, ...)`` starts from ``s`` and absorbs each part with
    ``h = mix64(((h ^ p) + GOLDEN) mod 2**64)``.  Used to derive one
    independent stream per campaign cell and per audited attack.
    """
    h = seed & MASK64
    for p in parts:
        h = mix64(((h ^ (int(p) & MASK64)) + GOLDEN) & MASK64)
    return h


class SplitMix64:
    """Sequential SplitMix64 stream."""

    def __init__(self, seed: int):
        self._state = int(seed) & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN) & MASK64
        return mix64(self._state)

    def next_double(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def next_gaussian_pair(self) -> tuple[float, float]:
        """One Box-Muller pair of independent standard normals."""
        u1 = self.next_double()
        u2 = self.next_double()
        r = math.sqrt(-2.0 * math.log(1.0 - u1))
        t = 2.0 * math.pi * u2
        return r * math.cos(t), r * math.sin(t)

    def gaussian_matrix(self, rows: int, cols: int) -> np.ndarray:
        """Matrix of standard complex Gaussians, filled row-major.

        Each entry is ``(z0 + i z1) / sqrt(2)`` for one Box-Muller pair,
        so real and imaginary parts have variance 1/2.
        """
        out = np.empty((rows, cols), dtype=complex)
        inv_sqrt2 = 1.0 / math.sqrt(2.0)
        for r in range(rows):
            for c in range(cols):
                z0, z1 = self.next_gaussian_pair()
                out[r, c] = complex(z0, z1) * inv_sqrt2
        return out


def gram_schmidt_unitary(a: np.ndarray) -> np.ndarray:
    """Orthonormalize the columns of a square matrix.

    Modified Gram-Schmidt with one re-orthogonalization pass, which keeps
    the residual ``||Q^dag Q - I||`` at machine precision even for
    ill-conditioned inputs.
    """
    a = np.array(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("expected a square matrix")
    n = a.shape[0]
    q = np.zeros_like(a)
    for k in range(n):
        v = a[:, k].copy()
        for _ in range(2):
            if k:
                v -= q[:, :k] @ (q[:, :k].conj().T @ v)
        nrm = np.linalg.norm(v)
        if nrm < 1e-12:
            raise ValueError("columns are numerically dependent")
        q[:, k] = v / nrm
    return q


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Seeded random unitary: complex Gaussian matrix, columns orthonormalized."""
    stream = SplitMix64(seed)
    return gram_schmidt_unitary(stream.gaussian_matrix(dim, dim))
