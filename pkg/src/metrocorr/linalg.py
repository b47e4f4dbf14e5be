"""Dense complex-Hermitian kernel: validation, spectra, tensor structure, sampling.

Operators are plain complex ndarrays.  Composite indices are A-major
throughout the package: for dims (dA, dB) the joint index is i = iA*dB + iB,
which is exactly the ordering produced by ``np.kron``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Sequence

import numpy as np

from .errors import (
    BadRank,
    BadSubsystemIndex,
    ConvergenceFailure,
    DegenerateSpectrum,
    DimMismatch,
    NotHermitian,
    NotPositive,
    NotUnitary,
    NotUnitTrace,
    OutOfRange,
)

HERM_ATOL = 1e-10
TRACE_ATOL = 1e-8
EIG_HARD_FLOOR = -1e-8
UNITARY_ATOL = 1e-10
SPECTRUM_GAP = 1e-9

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = np.stack([PAULI_X, PAULI_Y, PAULI_Z])


def as_matrix(m) -> np.ndarray:
    """Coerce input to a square complex matrix."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def hermitian_part(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def require_hermitian(m, atol: float = HERM_ATOL) -> np.ndarray:
    """Validate Hermiticity entrywise and return the symmetrized matrix."""
    a = as_matrix(m)
    dev = np.max(np.abs(a - a.conj().T))
    if dev > atol:
        raise NotHermitian(f"max |M - M^dag| = {dev:.3e} exceeds {atol:.0e}")
    return hermitian_part(a)


@dataclass(eq=False)
class EigDecomposition:
    """Eigenvalues (ascending) and column-orthonormal eigenvectors of a Hermitian matrix."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eig_hermitian(m) -> EigDecomposition:
    """Spectral decomposition of a Hermitian matrix, eigenvalues ascending."""
    a = require_hermitian(m)
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceFailure(str(exc)) from exc
    return EigDecomposition(w, v)


def psd_sqrt(m: np.ndarray) -> np.ndarray:
    """Square root of a PSD Hermitian matrix; negative rounding noise clamps to 0."""
    e = eig_hermitian(m)
    w = np.sqrt(np.maximum(e.eigenvalues, 0.0))
    return hermitian_part((e.eigenvectors * w) @ e.eigenvectors.conj().T)


@dataclass(eq=False)
class DensityMatrix:
    """Trace-one PSD Hermitian matrix together with its subsystem dimension split.

    Instances are immutable by convention; the spectral decomposition and the
    matrix square root are computed once and cached.
    """

    dims: tuple[int, ...]
    mat: np.ndarray

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        self.mat = np.asarray(self.mat, dtype=complex)
        self.mat.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @cached_property
    def eig(self) -> EigDecomposition:
        # eigenvalues below solver noise are exact zeros (sqrt would otherwise
        # amplify 1e-16 noise into 1e-8 errors in every measure)
        e = eig_hermitian(self.mat)
        w = np.where(e.eigenvalues > 1e-13, e.eigenvalues, 0.0)
        return EigDecomposition(w, e.eigenvectors)

    @cached_property
    def sqrtm(self) -> np.ndarray:
        e = self.eig
        w = np.sqrt(e.eigenvalues)
        return hermitian_part((e.eigenvectors * w) @ e.eigenvectors.conj().T)

    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))

    def is_pure(self, atol: float = 1e-9) -> bool:
        return abs(self.purity() - 1.0) <= atol


def validate_density(m, dims: Sequence[int]) -> DensityMatrix:
    """Check Hermiticity, unit trace and positivity, then clamp and renormalize.

    Eigenvalues below -1e-8 raise NotPositive; negative values above that
    threshold are treated as rounding noise, clamped to zero, and the state is
    renormalized to unit trace.
    """
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise DimMismatch(f"subsystem dimensions must be positive, got {dims}")
    a = require_hermitian(m)
    side = int(np.prod(dims))
    if a.shape[0] != side:
        raise DimMismatch(f"matrix side {a.shape[0]} != product(dims) = {side}")
    tr = float(np.real(np.trace(a)))
    if abs(tr - 1.0) > TRACE_ATOL:
        raise NotUnitTrace(f"trace = {tr!r} deviates from 1 by more than {TRACE_ATOL:.0e}")
    e = eig_hermitian(a)
    wmin = float(e.eigenvalues[0])
    if wmin < EIG_HARD_FLOOR:
        raise NotPositive(f"eigenvalue {wmin:.3e} below {EIG_HARD_FLOOR:.0e}")
    w = np.maximum(e.eigenvalues, 0.0)
    mat = (e.eigenvectors * w) @ e.eigenvectors.conj().T
    mat = hermitian_part(mat / np.sum(w))
    return DensityMatrix(dims, mat)


def pure_density(vec, dims: Sequence[int]) -> DensityMatrix:
    """Density matrix of a (not necessarily normalized) pure state vector."""
    v = np.asarray(vec, dtype=complex).reshape(-1)
    dims = tuple(int(d) for d in dims)
    if v.size != int(np.prod(dims)):
        raise DimMismatch(f"vector length {v.size} != product(dims)")
    v = v / np.linalg.norm(v)
    return DensityMatrix(dims, np.outer(v, v.conj()))


def mat_sqrt(rho: DensityMatrix) -> np.ndarray:
    """Matrix square root of a density matrix (cached on the instance)."""
    return rho.sqrtm


def tensor(a, b) -> np.ndarray:
    """Kronecker product with A-major index convention."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def embed(op, dims: Sequence[int], site: int) -> np.ndarray:
    """Embed a single-subsystem operator into the full space (identity elsewhere)."""
    dims = tuple(int(d) for d in dims)
    if not 0 <= site < len(dims):
        raise BadSubsystemIndex(f"site {site} out of range for dims {dims}")
    op = as_matrix(op)
    if op.shape[0] != dims[site]:
        raise DimMismatch(f"operator side {op.shape[0]} != dims[{site}] = {dims[site]}")
    factors = [np.eye(d, dtype=complex) for d in dims]
    factors[site] = op
    return reduce(np.kron, factors)


def _ptrace_mat(mat: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    dims = list(dims)
    n = len(dims)
    keep = sorted(keep)
    traced = [i for i in range(n) if i not in keep]
    resh = mat.reshape(dims + dims)
    for idx in sorted(traced, reverse=True):
        resh = np.trace(resh, axis1=idx, axis2=idx + len(dims))
        dims.pop(idx)
    d = int(np.prod(dims))
    return resh.reshape(d, d)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state over the kept subsystem(s); trace is preserved."""
    if len(rho.dims) < 2:
        raise BadSubsystemIndex("state has a single subsystem; nothing to trace out")
    keep_list = [keep] if np.ndim(keep) == 0 else list(keep)
    for k in keep_list:
        if not 0 <= int(k) < len(rho.dims):
            raise BadSubsystemIndex(f"subsystem {k} out of range for dims {rho.dims}")
    keep_list = [int(k) for k in keep_list]
    red = _ptrace_mat(rho.mat, rho.dims, keep_list)
    return DensityMatrix(tuple(rho.dims[k] for k in sorted(keep_list)), hermitian_part(red))


def trace_norm(m) -> float:
    """Trace norm of a Hermitian matrix: sum of absolute eigenvalues."""
    a = require_hermitian(m)
    return float(np.sum(np.abs(np.linalg.eigvalsh(a))))


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix with phase fixing."""
    if d < 1:
        raise DimMismatch(f"dimension must be >= 1, got {d}")
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_density(dims: Sequence[int], rank: int, rng: np.random.Generator) -> DensityMatrix:
    """Random density matrix of the given rank (Ginibre-induced measure)."""
    dims = tuple(int(d) for d in dims)
    d = int(np.prod(dims))
    if not 1 <= rank <= d:
        raise BadRank(f"rank must lie in [1, {d}], got {rank}")
    g = (rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))) / np.sqrt(2.0)
    m = g @ g.conj().T
    return DensityMatrix(dims, hermitian_part(m / np.real(np.trace(m))))


def random_hermitian(d: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Random Hermitian matrix with Gaussian entries (GUE-like), O(1) norm."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return hermitian_part(g) * (scale / np.sqrt(d))


def pauli_vector(n) -> np.ndarray:
    """The qubit operator n . sigma for a 3-component real direction n."""
    n = np.asarray(n, dtype=float).reshape(3)
    return n[0] * PAULI_X + n[1] * PAULI_Y + n[2] * PAULI_Z


def linear_spectrum(d: int) -> np.ndarray:
    """Default non-degenerate spectrum: d values linearly spaced over [-1, 1]."""
    if d == 1:
        return np.array([1.0])
    return np.linspace(-1.0, 1.0, d)


@dataclass(eq=False)
class Observable:
    """Hermitian operator K = U diag(spectrum) U^dag with an explicit non-degenerate spectrum.

    Used both for measured observables and for phase generators.  The spectrum
    is stored ascending; the columns of ``basis_unitary`` are the matching
    eigenvectors.
    """

    spectrum: np.ndarray
    basis_unitary: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.spectrum, dtype=float).reshape(-1)
        u = np.asarray(self.basis_unitary, dtype=complex)
        if u.shape != (lam.size, lam.size):
            raise DimMismatch(
                f"basis shape {u.shape} incompatible with spectrum of length {lam.size}"
            )
        order = np.argsort(lam)
        lam = lam[order]
        u = u[:, order]
        if lam.size > 1 and np.min(np.diff(lam)) < SPECTRUM_GAP:
            raise DegenerateSpectrum(
                f"minimum spectral gap {np.min(np.diff(lam)):.3e} below {SPECTRUM_GAP:.0e}"
            )
        dev = np.max(np.abs(u.conj().T @ u - np.eye(lam.size)))
        if dev > UNITARY_ATOL:
            raise NotUnitary(f"basis deviates from unitarity by {dev:.3e}")
        self.spectrum = lam
        self.basis_unitary = u
        self.spectrum.setflags(write=False)
        self.basis_unitary.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.spectrum.size

    @cached_property
    def matrix(self) -> np.ndarray:
        u = self.basis_unitary
        return hermitian_part((u * self.spectrum) @ u.conj().T)

    @classmethod
    def from_matrix(cls, k) -> "Observable":
        e = eig_hermitian(k)
        return cls(e.eigenvalues, e.eigenvectors)

    @classmethod
    def pauli(cls, direction) -> "Observable":
        """Spin observable n . sigma with unit spectrum {-1, +1}."""
        n = np.asarray(direction, dtype=float).reshape(3)
        norm = np.linalg.norm(n)
        if norm == 0:
            raise OutOfRange("direction must be a nonzero 3-vector")
        return cls.from_matrix(pauli_vector(n / norm))
