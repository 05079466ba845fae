"""Dense complex linear algebra for small multi-qubit systems.

Everything here works on plain ``numpy`` arrays of ``complex128``.  Bit
ordering is fixed package-wide: qubit 1 is the most significant bit of an
index, and tensor factors compose with the left factor owning the most
significant bits (the ``numpy.kron`` convention).

The Hermitian eigensolver is a cyclic Jacobi iteration with complex plane
rotations.  It is deterministic for identical input bits, which the audit
pipeline relies on for byte-identical reruns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    DimensionTooLargeError,
    InvalidStateError,
    NotADistributionError,
    NotHermitianError,
    OutOfRangeError,
)

# Shared tolerances.  Double precision with dimensions up to 512.
TAU_HERM = 1e-9
TAU_TR = 1e-9
TAU_PSD = 1e-10
TAU_EIG = 1e-10
TAU_UNIT = 1e-9

# Largest supported qubit count for basis transforms and channels.
N_MAX = 4

# Jacobi stops once the off-diagonal Frobenius mass drops below this,
# relative to the Frobenius norm of the input.
_JACOBI_OFF_TOL = 1e-14
_JACOBI_MAX_SWEEPS = 60


def bit_parity(x: int) -> int:
    """Parity (0 or 1) of the number of set bits."""
    return int(x).bit_count() & 1


def bit_dot(a: int, b: int) -> int:
    """Bit-wise product of two indices, summed mod 2."""
    return (int(a) & int(b)).bit_count() & 1


@dataclass(frozen=True)
class BitString:
    """An n-bit string stored as an unsigned integer."""

    n: int
    value: int

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.value < (1 << self.n):
            raise OutOfRangeError(
                f"value {self.value} does not fit in {self.n} bits"
            )

    def xor(self, other: "BitString") -> "BitString":
        if self.n != other.n:
            raise DimensionMismatchError("bit strings have different lengths")
        return BitString(self.n, self.value ^ other.value)

    def dot(self, other: "BitString") -> int:
        if self.n != other.n:
            raise DimensionMismatchError("bit strings have different lengths")
        return bit_dot(self.value, other.value)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value


def as_index(i, n: int) -> int:
    """Coerce an int or BitString to a validated index for n qubits."""
    if isinstance(i, BitString):
        if i.n != n:
            raise DimensionMismatchError(
                f"bit string has {i.n} bits, channel has {n}"
            )
        return i.value
    i = int(i)
    if not 0 <= i < (1 << n):
        raise OutOfRangeError(f"index {i} out of range for {n} qubits")
    return i


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; the left factor owns the most significant bits."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def hermitian_residual(a: np.ndarray) -> float:
    """Max-norm deviation of a square matrix from its conjugate transpose."""
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def _jacobi(a: np.ndarray, want_vectors: bool):
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Returns (eigenvalues, eigenvectors or None), unsorted.  Each rotation
    annihilates one off-diagonal entry ``a[p, q] = r * u`` (r >= 0, |u| = 1)
    with the unitary that is the phase ``diag(1, conj(u))`` followed by the
    real rotation with ``tan(theta)`` the smaller root of
    ``t**2 + 2*tau*t - 1 = 0``, ``tau = (a_qq - a_pp) / (2 r)``.  The
    bounded angle (|theta| <= pi/4) guarantees convergence.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)  # remove sub-tolerance asymmetry
    v = np.eye(n, dtype=complex) if want_vectors else None
    if n == 1:
        return a.diagonal().real.copy(), v

    scale = max(1.0, float(np.linalg.norm(a)))
    target = _JACOBI_OFF_TOL * scale
    skip = target / (2.0 * n)

    for _ in range(_JACOBI_MAX_SWEEPS):
        mags = np.abs(a) ** 2
        np.fill_diagonal(mags, 0.0)
        if math.sqrt(float(mags.sum())) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= skip:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                u = apq / r
                tau = (aqq - app) / (2.0 * r)
                sign = 1.0 if tau >= 0.0 else -1.0
                t = sign / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                ubar = u.conjugate()

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * ubar * col_q
                a[:, q] = s * col_p + c * ubar * col_q

                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * u * row_q
                a[q, :] = s * row_p + c * u * row_q

                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                a[p, q] = 0.0
                a[q, p] = 0.0

                if v is not None:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - s * ubar * vq
                    v[:, q] = s * vp + c * ubar * vq
    else:
        raise ArithmeticError("Jacobi iteration failed to converge")

    return a.diagonal().real.copy(), v


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition result: eigenvalues sorted descending, with the
    matching orthonormal eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _check_hermitian(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("expected a square matrix")
    res = hermitian_residual(a)
    if res > TAU_HERM:
        raise NotHermitianError(f"Hermitian residual {res:.3e} exceeds {TAU_HERM}")
    return a


def hermitian_eigendecomposition(a: np.ndarray) -> Spectrum:
    """Full eigendecomposition of a Hermitian matrix.

    Deterministic for identical input bits.  Raises NotHermitianError when
    the symmetry check fails.
    """
    a = _check_hermitian(a)
    w, v = _jacobi(a, want_vectors=True)
    order = np.argsort(-w, kind="stable")
    return Spectrum(eigenvalues=w[order], eigenvectors=v[:, order])


def hermitian_eigenvalues(a: np.ndarray) -> np.ndarray:
    """Eigenvalues only, sorted descending."""
    a = _check_hermitian(a)
    w, _ = _jacobi(a, want_vectors=False)
    return np.sort(w)[::-1]


def _min_eigenvalue_at_least(a: np.ndarray, floor: float) -> bool:
    """True when the smallest eigenvalue of Hermitian ``a`` is >= -floor.

    Fast path: Cholesky of ``a + floor*I`` succeeds iff that shift is
    positive definite.  On failure (boundary or violation) fall back to the
    Jacobi eigenvalues for the exact verdict.
    """
    shifted = a + floor * np.eye(a.shape[0])
    try:
        np.linalg.cholesky(shifted)
        return True
    except np.linalg.LinAlgError:
        w = _jacobi(a, want_vectors=False)[0]
        return bool(w.min() >= -floor)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace complex matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatchError("density matrix must be square")
        res = hermitian_residual(m)
        if res > TAU_HERM:
            raise NotHermitianError(
                f"Hermitian residual {res:.3e} exceeds {TAU_HERM}"
            )
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TAU_TR:
            raise InvalidStateError(f"trace {tr} deviates from 1 beyond {TAU_TR}")
        if not _min_eigenvalue_at_least(m, TAU_PSD):
            raise InvalidStateError(
                f"smallest eigenvalue below -{TAU_PSD}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def pure(cls, amplitudes: np.ndarray) -> "DensityMatrix":
        """Rank-1 state |v><v| from a normalized amplitude vector."""
        v = np.asarray(amplitudes, dtype=complex).reshape(-1)
        return cls(np.outer(v, v.conj()))


def _matrix_of(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def partial_trace(rho, dim_left: int, dim_right: int, keep: str = "left") -> DensityMatrix:
    """Reduced state of one tensor factor of a bipartite density matrix.

    ``keep`` selects the surviving factor, "left" or "right"; the left
    factor owns the most significant bits.
    """
    m = _matrix_of(rho)
    d = dim_left * dim_right
    if m.shape != (d, d):
        raise DimensionMismatchError(
            f"matrix is {m.shape}, expected {(d, d)} for {dim_left}x{dim_right}"
        )
    t = m.reshape(dim_left, dim_right, dim_left, dim_right)
    if keep == "left":
        red = np.einsum("akbk->ab", t)
    elif keep == "right":
        red = np.einsum("kakb->ab", t)
    else:
        raise ValueError("keep must be 'left' or 'right'")
    return DensityMatrix(red)


def von_neumann_entropy(rho) -> float:
    """Entropy in bits, with eigenvalues <= 0 contributing nothing."""
    w = hermitian_eigenvalues(_matrix_of(rho))
    pos = w[w > 0.0]
    if pos.size == 0:
        return 0.0
    return float(-np.sum(pos * np.log2(pos))) + 0.0  # normalize -0.0


def shannon_entropy(p) -> float:
    """Shannon entropy in bits of a probability sequence.

    Entries in [-TAU_PSD, 0) are clipped to 0; the sequence must sum to 1
    within 1e-9, otherwise NotADistributionError is raised.
    """
    arr = np.asarray(p, dtype=float).reshape(-1)
    if arr.size and float(arr.min()) < -TAU_PSD:
        raise NotADistributionError(
            f"entry {arr.min():.3e} below -{TAU_PSD}"
        )
    total = float(arr.sum())
    if abs(total - 1.0) > 1e-9:
        raise NotADistributionError(f"sum {total!r} deviates from 1 beyond 1e-9")
    q = np.clip(arr, 0.0, None)
    pos = q[q > 0.0]
    return float(-np.sum(pos * np.log2(pos))) + 0.0  # normalize -0.0


def sign_grid(n: int) -> np.ndarray:
    """2^n x 2^n matrix of (-1)**(i.j) with the bit-wise dot product."""
    d = 1 << n
    idx = np.arange(d)
    dots = np.bitwise_and(idx[:, None], idx[None, :])
    parity = np.zeros((d, d), dtype=int)
    for k in range(n):
        parity ^= (dots >> k) & 1
    return 1.0 - 2.0 * parity


def mub_transform(n: int) -> np.ndarray:
    """Change of basis between the computational basis and its conjugate.

    Real orthogonal, symmetric, involutive: entry (i, k) equals
    ``2**(-n/2) * (-1)**(i.k)``, so the two bases are mutually unbiased.
    """
    if n < 1:
        raise OutOfRangeError("qubit count must be at least 1")
    if n > N_MAX:
        raise DimensionTooLargeError(f"qubit count {n} exceeds {N_MAX}")
    return sign_grid(n) * 2.0 ** (-n / 2.0)
