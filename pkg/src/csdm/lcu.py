"""Statevector simulation of the Direct Measurement circuit.

The circuit is ``U = (B^dagger (x) I) V (B (x) I)`` acting on ``|0>_a |phi>_s``.
``B`` loads ``sqrt(beta_i / A)`` into the ancilla register and ``V`` applies
``exp(i phase_i) P_i`` to the system when the ancilla reads ``i``. The ancilla
block of the output that returns to ``|0>_a`` equals ``H|phi> / A``.

Amplitude layout: ancilla bits are the high-order bits of the flat index, so a
state reshapes to ``(2**n_a, 2**n_s)`` with one row per ancilla basis state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .errors import DimensionError, DomainError
from .pauli import LcuHamiltonian, apply_pauli

MAX_QUBITS = 24
NORM_TOL = 1e-10


@dataclass
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_qubits > MAX_QUBITS:
            raise DomainError(f"{self.n_qubits} qubits exceeds the simulator ceiling of {MAX_QUBITS}")
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise DimensionError(f"expected {1 << self.n_qubits} amplitudes, got {self.amplitudes.shape}")

    @classmethod
    def with_ancilla(cls, n_a: int, phi) -> "StateVector":
        """``|0>_a (x) |phi>_s``."""
        phi = np.asarray(phi, dtype=complex)
        n_s = phi.size.bit_length() - 1
        if 1 << n_s != phi.size:
            raise DimensionError(f"system state length {phi.size} is not a power of two")
        amps = np.zeros(phi.size << n_a, dtype=complex)
        amps[: phi.size] = phi
        return cls(n_a + n_s, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def blocks(self, n_a: int) -> np.ndarray:
        """View as ``(2**n_a, 2**n_s)``; rows are ancilla basis states."""
        return self.amplitudes.reshape(1 << n_a, -1)


@dataclass(frozen=True)
class MeasurementResult:
    mode: str
    p0: float
    shots: int
    seed: Optional[int]
    success_amplitude: Optional[complex] = None
    exact_p0: Optional[float] = None


def prepare_b(betas, A: float | None = None) -> np.ndarray:
    """Real orthogonal ``B`` with ``B|0> = sum_i sqrt(beta_i / A)|i>``.

    Built as the Householder reflection that swaps ``|0>`` and the target
    vector ``b``, so ``B`` is symmetric and its own inverse.
    """
    betas = np.asarray(betas, dtype=float)
    if np.any(betas < 0):
        raise ValueError("betas must be non-negative")
    total = betas.sum() if A is None else A
    if not total > 0:
        raise ValueError("betas are all zero")
    b = np.sqrt(betas / total)
    size = b.size
    w = -b
    w[0] += 1.0
    wn = np.linalg.norm(w)
    out = np.eye(size)
    if wn > 1e-15:
        w /= wn
        out -= 2.0 * np.outer(w, w)
    return out


def apply_b(state: StateVector, B: np.ndarray, adjoint: bool = False) -> StateVector:
    n_a = B.shape[0].bit_length() - 1
    m = B.conj().T if adjoint else B
    return StateVector(state.n_qubits, (m @ state.blocks(n_a)).ravel())


def apply_select_v(state: StateVector, lcu: LcuHamiltonian) -> StateVector:
    """Apply ``exp(i phase_i) P_i`` to the system block of every ancilla index ``i``."""
    if state.n_qubits != lcu.n_a + lcu.n_s:
        raise DimensionError(f"state has {state.n_qubits} qubits, LCU needs {lcu.n_a + lcu.n_s}")
    blocks = state.blocks(lcu.n_a).copy()
    for i, (phase, ps) in enumerate(zip(lcu.phases, lcu.strings)):
        if ps.is_identity:
            if phase:
                blocks[i] *= np.exp(1j * phase)
            continue
        blocks[i] = np.exp(1j * phase) * apply_pauli(ps, blocks[i])
    return StateVector(state.n_qubits, blocks.ravel())


def run_circuit(lcu: LcuHamiltonian, phi) -> StateVector:
    """Output state ``U |0>_a |phi>_s``."""
    B = prepare_b(lcu.betas, lcu.A)
    state = StateVector.with_ancilla(lcu.n_a, phi)
    state = apply_b(state, B)
    state = apply_select_v(state, lcu)
    return apply_b(state, B, adjoint=True)


def run_direct_measurement(
    lcu: LcuHamiltonian,
    phi,
    mode: Literal["exact", "shots"] = "exact",
    shots: int = 0,
    seed: int | None = None,
) -> MeasurementResult:
    """Probability of reading the ancilla register as all zeros.

    In ``exact`` mode the probability is read off the statevector and the
    success amplitude ``<0, phi|U|0, phi>`` is reported. In ``shots`` mode the
    zero count is a binomial draw from ``default_rng(seed)``.
    """
    phi = np.asarray(phi, dtype=complex)
    if phi.size != 1 << lcu.n_s:
        raise DimensionError(f"system state has {phi.size} amplitudes, LCU acts on {lcu.n_s} qubits")
    if abs(np.linalg.norm(phi) - 1.0) > NORM_TOL:
        raise ValueError(f"input state must be unit norm, got {np.linalg.norm(phi):.12f}")
    if lcu.n_a + lcu.n_s > MAX_QUBITS:
        raise DomainError(f"{lcu.n_a + lcu.n_s} qubits exceeds the simulator ceiling of {MAX_QUBITS}")
    out = run_circuit(lcu, phi)
    zero_block = out.blocks(lcu.n_a)[0]
    p0 = float(np.vdot(zero_block, zero_block).real)
    p0 = min(max(p0, 0.0), 1.0)
    if mode == "exact":
        return MeasurementResult("exact", p0, 0, seed, complex(np.vdot(phi, zero_block)), p0)
    if mode != "shots":
        raise ValueError(f"mode must be 'exact' or 'shots', got {mode!r}")
    if shots <= 0:
        raise ValueError("shots must be positive in shots mode")
    if seed is None:
        raise ValueError("seed is required in shots mode")
    zeros = np.random.default_rng(seed).binomial(shots, p0)
    return MeasurementResult("shots", zeros / shots, shots, seed, None, p0)
