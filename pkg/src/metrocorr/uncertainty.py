"""Quantum-uncertainty quantifiers and the local quantum uncertainty (LQU).

The skew information I(rho, O) = tr[rho O^2] - tr[sqrt(rho) O sqrt(rho) O]
isolates the genuinely quantum part of the measurement variance: it vanishes
exactly when the state and the observable commute and equals the variance on
pure states.  The LQU is its minimum over local observables with a fixed
non-degenerate spectrum, a discord-like correlation measure.
"""
from __future__ import annotations

import numpy as np

from .errors import DegenerateSpectrum, DimMismatch
from .linalg import PAULIS, DensityMatrix, Observable, as_matrix, embed, partial_trace
from .manifold import MeasureResult, OptimizerConfig, minimize_over_unitaries

SPECTRUM_GAP = 1e-9


def _check_op(rho: DensityMatrix, o) -> np.ndarray:
    op = as_matrix(o)
    if op.shape[0] != rho.dim:
        raise DimMismatch(f"operator side {op.shape[0]} != state side {rho.dim}")
    return op


def _trace_prod(a: np.ndarray, b: np.ndarray) -> float:
    # tr[a b] for Hermitian products that are real in exact arithmetic
    return float(np.real(np.sum(a * b.T)))


def variance(rho: DensityMatrix, o) -> float:
    """V(rho, O) = tr[rho O^2] - tr[rho O]^2."""
    op = _check_op(rho, o)
    mean = _trace_prod(rho.mat, op)
    second = _trace_prod(rho.mat, op @ op)
    return max(second - mean * mean, 0.0)


def skew_information(rho: DensityMatrix, o) -> float:
    """Wigner-Yanase skew information tr[rho O^2] - tr[sqrt(rho) O sqrt(rho) O]."""
    op = _check_op(rho, o)
    r = rho.sqrtm
    second = _trace_prod(rho.mat, op @ op)
    cross = _trace_prod(r @ op, r @ op)
    return max(second - cross, 0.0)


def classical_uncertainty(rho: DensityMatrix, o) -> float:
    """Variance minus skew information: the mixedness-driven part of the spread."""
    return max(variance(rho, o) - skew_information(rho, o), 0.0)


def hellinger_sq(rho1: DensityMatrix, rho2: DensityMatrix) -> float:
    """Squared Hellinger distance 1 - tr[sqrt(rho1) sqrt(rho2)], in [0, 1]."""
    if rho1.dim != rho2.dim:
        raise DimMismatch(f"state sides differ: {rho1.dim} vs {rho2.dim}")
    overlap = _trace_prod(rho1.sqrtm, rho2.sqrtm)
    return float(np.clip(1.0 - overlap, 0.0, 1.0))


def _require_qubit_qudit(rho: DensityMatrix) -> None:
    if len(rho.dims) != 2 or rho.dims[0] != 2:
        raise DimMismatch(f"closed form needs dims (2, d), got {rho.dims}")


def pauli_correlation_matrix(rho: DensityMatrix) -> np.ndarray:
    """3x3 symmetric matrix tr[sqrt(rho) (sigma_i x I) sqrt(rho) (sigma_j x I)]."""
    _require_qubit_qudit(rho)
    r = rho.sqrtm
    rs = [r @ embed(s, rho.dims, 0) for s in PAULIS]
    w = np.empty((3, 3))
    for i in range(3):
        for j in range(i, 3):
            w[i, j] = w[j, i] = np.real(np.sum(rs[i] * rs[j].T))
    return w


def lqu_qubit_qudit(rho: DensityMatrix) -> MeasureResult:
    """LQU of a qubit-qudit state with unit spectrum: 1 - lambda_max of the
    Pauli correlation matrix; the certificate is the optimal spin direction."""
    pauli_w = pauli_correlation_matrix(rho)
    evals, evecs = np.linalg.eigh(pauli_w)
    direction = evecs[:, -1]
    value = 1.0 - float(evals[-1])
    return MeasureResult(
        value=value,
        certificate=Observable.pauli(direction),
        restarts_used=0,
        converged=True,
        info={"direction": direction, "w_eigenvalues": evals},
    )


def _check_spectrum(spectrum, d: int) -> np.ndarray:
    lam = np.sort(np.asarray(spectrum, dtype=float).reshape(-1))
    if lam.size != d:
        raise DimMismatch(f"spectrum length {lam.size} != measured-subsystem dimension {d}")
    if lam.size > 1 and np.min(np.diff(lam)) < SPECTRUM_GAP:
        raise DegenerateSpectrum("spectrum gaps below 1e-9 are not allowed")
    return lam


def lqu_general(
    rho: DensityMatrix,
    spectrum,
    side: str = "A",
    config: OptimizerConfig | None = None,
) -> MeasureResult:
    """LQU for an arbitrary finite spectrum via multi-start descent over unitaries.

    The observable is K = U diag(spectrum) U^dag embedded on the measured side;
    the minimum of the skew information over U is located by the shared
    manifold optimizer (closed forms exist only for a qubit probe).
    """
    if len(rho.dims) != 2:
        raise DimMismatch(f"bipartite state expected, got dims {rho.dims}")
    site = {"A": 0, "B": 1}.get(side.upper())
    if site is None:
        raise DimMismatch(f"side must be 'A' or 'B', got {side!r}")
    d = rho.dims[site]
    lam = _check_spectrum(spectrum, d)

    # Quadratic form of the cross term in the local operator:
    # tr[sqrt(rho) (K x I) sqrt(rho) (K x I)] = sum K_ab K_cd T_abcd,
    # with T precomputed once from the reshaped matrix square root.
    shape = rho.dims + rho.dims
    r4 = rho.sqrtm.reshape(shape)
    if site == 0:
        t_cross = np.einsum("djai,bicj->abcd", r4, r4)
    else:
        t_cross = np.einsum("idja,jbic->abcd", r4, r4)
    rho_local = partial_trace(rho, site).mat

    def cost(u: np.ndarray) -> float:
        k_local = (u * lam) @ u.conj().T
        second = np.real(np.sum(rho_local * (k_local @ k_local).T))
        cross = np.real(np.einsum("ab,cd,abcd->", k_local, k_local, t_cross))
        return float(second - cross)

    best, u_best, used, converged, values = minimize_over_unitaries(cost, d, config)
    return MeasureResult(
        value=max(best, 0.0),
        certificate=Observable(lam, u_best),
        restarts_used=used,
        converged=converged,
        info={"restart_values": values, "side": side.upper()},
    )
