"""Dense state-vector engine: the reference simulator and oracle.

Gates are applied one at a time by tensor contraction on the state; the full
2^n x 2^n circuit matrix is never materialized here. Axis mapping is
little-endian: qubit q lives on axis n-1-q of the reshaped state.
"""

from __future__ import annotations

import time

import numpy as np

from .circuits import Circuit, GateInstance, gate_matrix
from .errors import TooWide
from .histogram import MeasurementHistogram
from .observables import Observable, pauli_matrix

SV_MAX_QUBITS = 22


def zero_state(n: int) -> np.ndarray:
    psi = np.zeros(1 << n, dtype=complex)
    psi[0] = 1.0
    return psi


def apply_gate(psi: np.ndarray, g: GateInstance, n: int) -> np.ndarray:
    return _apply_matrix(psi, gate_matrix(g.kind, g.angle), g.qubits, n)


def _apply_matrix(psi: np.ndarray, mat: np.ndarray, qubits: tuple[int, ...], n: int) -> np.ndarray:
    k = len(qubits)
    t = psi.reshape([2] * n)
    axes = tuple(n - 1 - q for q in reversed(qubits))  # (..., bit_{k-1}, bit_0)
    t = np.moveaxis(t, axes, range(n - k, n))
    t = t.reshape(-1, 1 << k) @ mat.T
    t = t.reshape([2] * n)
    t = np.moveaxis(t, range(n - k, n), axes)
    return t.reshape(-1)


def run_gates(c: Circuit, initial: np.ndarray | None = None) -> np.ndarray:
    """Evolve the measure-free body; the trailing measure suffix is ignored."""
    if c.n_qubits > SV_MAX_QUBITS:
        raise TooWide(f"{c.n_qubits} qubits exceed the state-vector limit {SV_MAX_QUBITS}")
    body, _ = c.body_and_suffix()
    psi = zero_state(c.n_qubits) if initial is None else np.asarray(initial, dtype=complex).copy()
    for g in body:
        psi = apply_gate(psi, g, c.n_qubits)
    return psi


def marginal_probabilities(psi: np.ndarray, measured: list[int], n: int) -> np.ndarray:
    """Probability vector over the measured qubits; outcome bit j of the
    returned index is measured[j]."""
    probs = np.abs(psi) ** 2
    idx = np.arange(probs.size)
    out_idx = np.zeros(probs.size, dtype=np.int64)
    for j, q in enumerate(measured):
        out_idx |= ((idx >> q) & 1) << j
    marg = np.bincount(out_idx, weights=probs, minlength=1 << len(measured))
    marg = np.clip(marg, 0.0, None)
    return marg / marg.sum()


def sample_histogram(
    probs: np.ndarray, n_bits: int, shots: int, rng: np.random.Generator
) -> MeasurementHistogram:
    outcomes = rng.choice(probs.size, size=shots, p=probs)
    values, counts = np.unique(outcomes, return_counts=True)
    return MeasurementHistogram(
        shots=shots,
        counts={format(int(v), f"0{n_bits}b"): int(c) for v, c in zip(values, counts)},
    )


def sv_run(
    c: Circuit, shots: int, seed: int, initial: np.ndarray | None = None
) -> MeasurementHistogram:
    """Evolve, then sample the measured qubits (all qubits when the circuit
    has no measure suffix)."""
    psi = run_gates(c, initial)
    measured = c.measured_qubits()
    probs = marginal_probabilities(psi, measured, c.n_qubits)
    return sample_histogram(probs, len(measured), shots, np.random.default_rng(seed))


def expectation_of_state(psi: np.ndarray, obs: Observable, n: int) -> float:
    if obs.pauli is not None:
        if len(obs.pauli) != n:
            raise ValueError(f"pauli string length {len(obs.pauli)} != {n} qubits")
        phi = psi
        for q in range(n):
            letter = obs.letter_for(q)
            if letter != "I":
                phi = _apply_matrix(phi, pauli_matrix(letter), (q,), n)
        val = obs.coeff * np.vdot(psi, phi)
    else:
        if obs.matrix.shape[0] != psi.size:
            raise ValueError("observable dimension does not match the state")
        val = obs.coeff * np.vdot(psi, obs.matrix @ psi)
    if abs(val.imag) > 1e-9:
        raise AssertionError(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


def sv_expectation(c: Circuit, obs: Observable, initial: np.ndarray | None = None) -> float:
    """<psi0| U^dag O U |psi0> from |0...0> (or a supplied input state)."""
    psi = run_gates(c, initial)
    return expectation_of_state(psi, obs, c.n_qubits)


def time_gate_loop(c: Circuit, repeats: int) -> list[float]:
    """Wall-clock seconds around the gate-application loop only, one entry
    per repeat. Parsing, setup, and sampling are excluded."""
    body, _ = c.body_and_suffix()
    stripped = Circuit(c.n_qubits, body, name=c.name)
    out = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        run_gates(stripped)
        out.append(time.perf_counter() - t0)
    return out
