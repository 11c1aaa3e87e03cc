"""Small dense linear-algebra helpers used throughout the package."""

from __future__ import annotations

import numpy as np

from .errors import NotUnitary


def max_abs(m: np.ndarray) -> float:
    """Largest entry magnitude, 0.0 for empty arrays."""
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m)))


def unitarity_defect(m: np.ndarray) -> float:
    """max-abs entry of U U^dag - I."""
    d = m.shape[0]
    return max_abs(m @ m.conj().T - np.eye(d))


def check_unitary(m: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Validate and return a square complex matrix that is unitary within tol."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise NotUnitary(f"expected a square matrix, got shape {m.shape}")
    defect = unitarity_defect(m)
    if defect > tol:
        raise NotUnitary(f"unitarity defect {defect:.3e} exceeds tol {tol:.3e}")
    return m


def canonical_key(m: np.ndarray, round_digits: int = 9) -> bytes:
    """Canonical hash key: entries rounded to `round_digits` decimals, row-major.

    Adding complex zero after rounding collapses -0.0 into +0.0 so that the
    byte representation is canonical.
    """
    r = np.round(np.ascontiguousarray(m, dtype=complex), round_digits) + (0.0 + 0.0j)
    return r.tobytes()


def phase_canonical(m: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Rescale by a global phase so the first entry with magnitude > tol is
    positive real. Zero matrices are returned unchanged."""
    flat = m.ravel()
    for v in flat:
        if abs(v) > tol:
            return m * (abs(v) / v)
    return m


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-8) -> bool:
    if a.shape != b.shape:
        return False
    return max_abs(phase_canonical(a) - phase_canonical(b)) <= tol
