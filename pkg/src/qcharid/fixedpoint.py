"""Grover iteration and the pi/3 fixed-point search over statevectors.

The fixed-point recursion is

    U_m = U_{m-1} R0(psi) U_{m-1}^dag O_phi U_{m-1},      U_0 |0> = |s>,

where O_phi marks the target with phase phi and R0(psi) phases the all-zeros
state. One phi = psi = pi/3 level contracts the deviation eps = 1 - |<t|s>|^2
to eps^3; m nested levels reach eps^(3^m) at a cost of 3^m rank-one steps.
U_m is only ever applied as a procedure (preparation rotations plus rank-one
updates); no dense matrix is formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .simcore import StateVector, prepare_product, rank1_phase, fidelity

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FixedPointParams:
    """Oracle phase, diffuser phase, and recursion depth."""

    phi: float = math.pi / 3.0
    psi: float = math.pi / 3.0
    recursions: int = 1

    def __post_init__(self):
        if not 0.0 < self.phi < _TWO_PI:
            raise DomainError(f"phi must lie in (0, 2*pi), got {self.phi!r}")
        if not 0.0 < self.psi < _TWO_PI:
            raise DomainError(f"psi must lie in (0, 2*pi), got {self.psi!r}")
        if self.recursions < 0:
            raise DomainError(f"recursions must be >= 0, got {self.recursions}")


@dataclass(frozen=True)
class SearchProblem:
    """Product-state preparation (defines U and |s> = U|0..0>) plus a target."""

    preparation: tuple[float, ...]
    target: StateVector

    def __init__(self, preparation: Sequence[float], target: StateVector):
        object.__setattr__(self, "preparation", tuple(float(v) for v in preparation))
        object.__setattr__(self, "target", target)
        for v in self.preparation:
            if not 0.0 <= v <= 1.0:
                raise DomainError(f"preparation value {v!r} outside [0, 1]")
        if target.qubit_count != len(self.preparation):
            raise DomainError(
                f"target has {target.qubit_count} qubits but preparation "
                f"has {len(self.preparation)} values"
            )


def oracle_apply(state: StateVector, target: StateVector, phi: float) -> StateVector:
    """Oracle O_phi = I - (1 - e^{i*phi}) |target><target|."""
    return rank1_phase(state, target, phi)


def diffuser_apply(state: StateVector, prep_unitary_image: StateVector, psi: float) -> StateVector:
    """Diffuser U (I - (1 - e^{i*psi}) |0><0|) U^dag for U|0..0> = prep_unitary_image.

    For any preparation unitary this conjugation reduces to the rank-one
    phase about the prepared state itself.
    """
    return rank1_phase(state, prep_unitary_image, psi)


def deviation(state: StateVector, target: StateVector) -> float:
    """1 - |<target|state>|^2, the failure probability against the target."""
    return 1.0 - fidelity(state, target)


def _rotate_product(values: tuple[float, ...], vec: np.ndarray, invert: bool) -> np.ndarray:
    """Apply the preparation rotations (or their inverses) qubit by qubit."""
    n = len(values)
    out = vec.copy()
    for q in range(n):
        c = math.sqrt(values[q])
        s = math.sqrt(1.0 - values[q])
        shaped = out.reshape(2**q, 2, -1)
        x0 = shaped[:, 0, :].copy()
        x1 = shaped[:, 1, :].copy()
        if invert:
            shaped[:, 0, :] = c * x0 + s * x1
            shaped[:, 1, :] = -s * x0 + c * x1
        else:
            shaped[:, 0, :] = c * x0 - s * x1
            shaped[:, 1, :] = s * x0 + c * x1
    return out


def fixed_point_evolve(problem: SearchProblem, params: FixedPointParams) -> StateVector:
    """Return U_m |0..0> for the fixed-point recursion.

    Level 0 is the prepared state |s>. Level k applies, in order, U_{k-1},
    the oracle O_phi, then the level-(k-1) diffuser realized as
    U_{k-1} R0(psi) U_{k-1}^dag with U_{k-1} and its inverse expanded
    recursively. Cost grows as 3^m rank-one applications.
    """
    values = problem.preparation
    target = problem.target.amplitudes
    phi, psi = params.phi, params.psi

    def mark_target(x: np.ndarray, angle: float) -> np.ndarray:
        inner = np.vdot(target, x)
        return x - (1.0 - np.exp(1j * angle)) * inner * target

    def apply_u(level: int, x: np.ndarray) -> np.ndarray:
        if level == 0:
            return _rotate_product(values, x, invert=False)
        x = apply_u(level - 1, x)
        x = mark_target(x, phi)
        x = apply_u_dag(level - 1, x)
        x[0] = x[0] * np.exp(1j * psi)  # R0(psi): phase on |0..0>
        return apply_u(level - 1, x)

    def apply_u_dag(level: int, x: np.ndarray) -> np.ndarray:
        if level == 0:
            return _rotate_product(values, x, invert=True)
        x = apply_u_dag(level - 1, x)
        x[0] = x[0] * np.exp(-1j * psi)
        x = apply_u(level - 1, x)
        x = mark_target(x, -phi)
        return apply_u_dag(level - 1, x)

    start = np.zeros(2 ** len(values), dtype=np.complex128)
    start[0] = 1.0
    return StateVector(apply_u(params.recursions, start))


def grover_iterate(state: StateVector, target: StateVector, initial: StateVector) -> StateVector:
    """One textbook Grover step: (2|initial><initial| - I)(I - 2|target><target|).

    Realized as the two pi-phase reflections followed by a global sign so
    the composite matches the standard rotation toward the target.
    """
    x = rank1_phase(state, target, math.pi)
    x = rank1_phase(x, initial, math.pi)
    return StateVector(-x.amplitudes)


def theta_of(initial: StateVector, target: StateVector) -> float:
    """Grover rotation angle theta for real 1-qubit states.

    theta/2 = atan2(<target|initial>, <perp|initial>) with |perp> the unit
    vector orthogonal to the target, oriented so both overlaps are
    non-negative. Coincident states give pi, orthogonal states give 0.
    """
    for sv in (initial, target):
        if sv.qubit_count != 1:
            raise DomainError("theta_of is defined for 1-qubit states")
        if float(np.max(np.abs(sv.amplitudes.imag))) > 1e-9:
            raise DomainError("theta_of requires real-amplitude states")
    s = initial.amplitudes.real
    t = target.amplitudes.real
    perp = np.array([t[1], -t[0]])
    along = abs(float(np.dot(t, s)))
    across = abs(float(np.dot(perp, s)))
    return 2.0 * math.atan2(along, across)
