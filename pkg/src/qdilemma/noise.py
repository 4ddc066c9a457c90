"""Corrupt-source model: the umpire hands out |111> with probability x.

The mixed input ``(1-x)|000><000| + x|111><111|`` is available both directly
and through the ancilla circuit a real device would use: rotate an ancilla by
``theta`` with ``x = sin^2(theta/2)``, fan out CNOTs onto the three game
qubits, and trace the ancilla out.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .game import general_unitary


def check_corruption(x: float) -> float:
    """Validate a corruption probability and return it as a float."""
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"corruption must lie in [0, 1], got {x}")
    return x


def corrupted_input(x: float) -> np.ndarray:
    """Mixed 3-qubit input: |000> with probability 1-x, |111> with probability x."""
    x = check_corruption(x)
    rho = np.zeros((8, 8), dtype=complex)
    rho[0, 0] = 1.0 - x
    rho[7, 7] = x
    return rho


def theta_for_x(x: float) -> float:
    """Ancilla rotation angle in [0, pi] with x = sin^2(theta/2)."""
    x = check_corruption(x)
    return 2.0 * np.arcsin(np.sqrt(x))


# Index weights of the three game qubits in the 4-qubit register; the ancilla
# is the last qubit (weight 1).
_GAME_QUBIT_WEIGHTS = (8, 4, 2)


def ancilla_prepare(x: float) -> np.ndarray:
    """Corrupted input built the hardware way, equal to ``corrupted_input(x)``.

    The 4-qubit register is kept as a pure statevector (ancilla last) until
    the final partial trace, so the equivalence is exact to rounding.
    """
    x = check_corruption(x)
    psi = np.zeros(16, dtype=complex)
    psi[0] = 1.0
    # Rotate the ancilla (least-significant index bit).
    u = general_unitary(theta_for_x(x))
    psi = (psi.reshape(8, 2) @ u.T).reshape(16)
    # CNOT from the ancilla onto each game qubit: a pure index permutation.
    idx = np.arange(16)
    for weight in _GAME_QUBIT_WEIGHTS:
        perm = np.where(idx & 1 == 1, idx ^ weight, idx)
        psi = psi[perm]
    return linalg.partial_trace_last(np.outer(psi, psi.conj()))
