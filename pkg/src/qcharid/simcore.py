"""Exact statevector simulation for small qubit registers.

States are dense complex vectors over up to 16 qubits. Qubit 0 is the most
significant bit of the basis index, so ``prepare_product([a, b])`` assigns
pixel ``a`` to qubit 0 and ``b`` to qubit 1. Measurement sampling uses a
SplitMix64 stream so that results are identical across platforms for a
given (state, shots, seed).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CapacityError, DomainError

MAX_QUBITS = 16

_NORM_TOL = 1e-10

# SplitMix64 constants (Steele et al., the standard 64-bit mix).
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX_A = np.uint64(0xBF58476D1CE4E5B9)
_MIX_B = np.uint64(0x94D049BB133111EB)
_U64 = np.uint64(0xFFFFFFFFFFFFFFFF)
_TWO64 = float(2**64)


class StateVector:
    """Normalized amplitude vector over ``qubit_count`` qubits."""

    __slots__ = ("qubit_count", "amplitudes")

    def __init__(self, amplitudes: Sequence[complex] | np.ndarray):
        amps = np.asarray(amplitudes, dtype=np.complex128).copy()
        if amps.ndim != 1 or amps.size < 2 or (amps.size & (amps.size - 1)) != 0:
            raise DomainError(f"amplitude count must be a power of two >= 2, got {amps.size}")
        n = int(amps.size).bit_length() - 1
        if n > MAX_QUBITS:
            raise CapacityError(f"{n} qubits exceeds the {MAX_QUBITS}-qubit cap")
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > _NORM_TOL:
            raise DomainError(f"state is not normalized: sum |a_k|^2 = {norm2!r}")
        self.qubit_count = n
        self.amplitudes = amps
        amps.setflags(write=False)

    def __repr__(self) -> str:
        return f"StateVector({self.qubit_count} qubits, {self.amplitudes!r})"


@dataclass(frozen=True)
class ShotReadout:
    """Per-qubit |0> frequencies estimated from a finite sample."""

    shots: int
    zero_frequencies: tuple[float, ...]


def _check_same_dims(a: StateVector, b: StateVector) -> None:
    if a.qubit_count != b.qubit_count:
        raise DomainError(
            f"qubit counts differ: {a.qubit_count} vs {b.qubit_count}"
        )


def prepare_product(pixel_values: Sequence[float]) -> StateVector:
    """Prepare the product state with P(qubit i reads |0>) = pixel_values[i].

    Each value v in [0, 1] becomes the real 1-qubit state
    sqrt(v)|0> + sqrt(1-v)|1>, and the register is their tensor product.
    """
    values = list(pixel_values)
    if not values:
        raise DomainError("pixel_values must be non-empty")
    if len(values) > MAX_QUBITS:
        raise CapacityError(f"{len(values)} qubits exceeds the {MAX_QUBITS}-qubit cap")
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise DomainError(f"pixel value {v!r} outside [0, 1]")
    amps = np.ones(1, dtype=np.complex128)
    for v in values:
        amps = np.kron(amps, np.array([np.sqrt(v), np.sqrt(1.0 - v)], dtype=np.complex128))
    return StateVector(amps)


def rank1_phase(state: StateVector, axis: StateVector, angle: float) -> StateVector:
    """Apply I - (1 - e^{i*angle}) |axis><axis| to ``state``.

    This is the shared kernel behind the search oracle and the diffuser:
    the component along ``axis`` picks up phase e^{i*angle}, the orthogonal
    complement is untouched. Unitary for any angle.
    """
    _check_same_dims(state, axis)
    inner = np.vdot(axis.amplitudes, state.amplitudes)
    out = state.amplitudes - (1.0 - np.exp(1j * angle)) * inner * axis.amplitudes
    return StateVector(out)


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2, symmetric and invariant under global phase."""
    _check_same_dims(a, b)
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


def prob_zero(state: StateVector, qubit: int) -> float:
    """Probability of reading |0> on one qubit (marginal over the rest)."""
    n = state.qubit_count
    if not 0 <= qubit < n:
        raise DomainError(f"qubit {qubit} out of range for {n}-qubit state")
    probs = np.abs(state.amplitudes) ** 2
    # Big-endian: qubit q lives at bit (n-1-q) of the basis index.
    shaped = probs.reshape(2**qubit, 2, -1)
    return float(np.clip(shaped[:, 0, :].sum(), 0.0, 1.0))


def mix64(value: int | np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer: a bijective 64-bit avalanche mix."""
    z = np.asarray(value, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * _MIX_A
    z = (z ^ (z >> np.uint64(27))) * _MIX_B
    return z ^ (z >> np.uint64(31))


def uniform_stream(seed: int, count: int) -> np.ndarray:
    """``count`` uniforms in [0, 1) from the SplitMix64 stream at ``seed``.

    Element k is mix64(seed + (k+1) * golden_gamma) / 2^64, exactly the
    SplitMix64 output sequence. Deterministic across platforms.
    """
    base = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
    states = base + np.arange(1, count + 1, dtype=np.uint64) * _GOLDEN
    return mix64(states).astype(np.float64) / _TWO64


def sample_outcomes(state: StateVector, shots: int, seed: int) -> np.ndarray:
    """Draw ``shots`` full-register basis outcomes from |amplitude|^2."""
    if shots < 1:
        raise DomainError("shots must be >= 1 (use exact readout for shots=0)")
    cum = np.cumsum(np.abs(state.amplitudes) ** 2)
    u = uniform_stream(seed, shots)
    outcomes = np.searchsorted(cum, u, side="right")
    return np.minimum(outcomes, state.amplitudes.size - 1)


def sample_marginals(state: StateVector, shots: int, seed: int) -> ShotReadout:
    """Per-qubit |0> frequencies over ``shots`` sampled register outcomes.

    All qubits are marginalized from one joint sample stream, so multi-qubit
    frequencies are mutually consistent. Identical (state, shots, seed)
    yields identical output on every platform.
    """
    outcomes = sample_outcomes(state, shots, seed)
    n = state.qubit_count
    freqs = []
    for q in range(n):
        bit = (outcomes >> (n - 1 - q)) & 1
        freqs.append(float(np.count_nonzero(bit == 0)) / shots)
    return ShotReadout(shots=shots, zero_frequencies=tuple(freqs))
