"""Pauli-basis state tomography, shot-based estimation, and Uhlmann fidelity.

A 3-qubit state is fully described by the 4x4x4 tensor of expectation values
of the 64 Pauli strings; linear inversion recovers the matrix as
``(1/8) sum_t t[i,j,k] s_i ⊗ s_j ⊗ s_k``.  Inversion of noisy data can
produce "raw" matrices (Hermitian, unit trace, but not positive); those are
accepted wherever it is meaningful, in particular by :func:`fidelity`.
"""

from __future__ import annotations

import warnings
from importlib import resources
from itertools import product

import numpy as np

from . import linalg
from .linalg import dagger, herm_sqrt, kron3, validate_density_matrix

IMAG_TOL = 1e-12
UNIT_TRACE_TOL = 1e-12

_PAULI_STRINGS = {
    (i, j, k): kron3(linalg.PAULIS[i], linalg.PAULIS[j], linalg.PAULIS[k])
    for i, j, k in product(range(4), repeat=3)
}


def expectations(rho: np.ndarray) -> np.ndarray:
    """4x4x4 tensor of Pauli-string expectation values tr(rho · s_i ⊗ s_j ⊗ s_k).

    Accepts raw (non-positive) states; Hermiticity keeps every expectation
    real, and any imaginary residue beyond rounding raises.
    """
    rho = validate_density_matrix(rho, qubits=3, raw=True)
    t = np.empty((4, 4, 4))
    for idx, string in _PAULI_STRINGS.items():
        value = np.trace(rho @ string)
        if abs(value.imag) > IMAG_TOL:
            raise ValueError(f"expectation {idx} has imaginary residue {value.imag:.3e}")
        t[idx] = value.real
    return t


def reconstruct(t: np.ndarray) -> np.ndarray:
    """Linear-inversion density matrix from an expectation tensor.

    The result is Hermitian with unit trace but is *raw*: positivity is not
    enforced, matching what inversion of noisy data actually yields.
    """
    t = np.asarray(t, dtype=float)
    if t.shape != (4, 4, 4):
        raise ValueError(f"expectation tensor must be 4x4x4, got shape {t.shape}")
    if abs(t[0, 0, 0] - 1.0) > UNIT_TRACE_TOL:
        raise ValueError(f"t[0,0,0] = {t[0, 0, 0]!r} must be 1 (unit trace)")
    rho = np.zeros((8, 8), dtype=complex)
    for idx, string in _PAULI_STRINGS.items():
        if t[idx] != 0.0:
            rho += t[idx] * string
    return rho / 8.0


def estimate_expectations(rho: np.ndarray, shots: int, seed: int = 0) -> np.ndarray:
    """Finite-shot estimate of the expectation tensor.

    Each of the 63 non-identity Pauli strings is measured independently:
    ``shots`` outcomes are drawn from its two-point (+1/-1) distribution under
    ``rho`` and averaged.  Every string gets its own counter-based stream
    keyed by (seed, string index), so the result is reproducible and
    independent of evaluation order.
    """
    rho = validate_density_matrix(rho, qubits=3)
    shots = int(shots)
    if shots < 1:
        raise ValueError(f"shots must be a positive integer, got {shots}")
    exact = expectations(rho)
    key = int(seed) % 2**64
    t = np.empty((4, 4, 4))
    t[0, 0, 0] = 1.0
    for flat, idx in enumerate(product(range(4), repeat=3)):
        if idx == (0, 0, 0):
            continue
        p_plus = min(max((1.0 + exact[idx]) / 2.0, 0.0), 1.0)
        rng = np.random.Generator(np.random.Philox(key=[key, flat]))
        wins = int(rng.binomial(shots, p_plus))
        t[idx] = (2.0 * wins - shots) / shots
    return t


def fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Closeness tr sqrt(sqrt(sigma) rho sqrt(sigma)) of ``rho`` to a physical ``sigma``.

    ``rho`` may be raw; negative eigenvalues met along the way are clamped by
    :func:`~qdilemma.linalg.herm_sqrt` (with a warning beyond rounding slack).
    For a pure ``sigma = |psi><psi|`` this reduces to
    ``sqrt(max(0, <psi|rho|psi>))``.
    """
    rho = validate_density_matrix(rho, raw=True)
    sigma = validate_density_matrix(sigma)
    if rho.shape != sigma.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    root = herm_sqrt(sigma)
    mid = root @ rho @ root
    mid = (mid + dagger(mid)) / 2
    return float(np.trace(herm_sqrt(mid)).real)


def project_to_physical(rho: np.ndarray) -> np.ndarray:
    """Nearest positive-semidefinite matrix in Frobenius distance, trace renormalized.

    The standard repair for raw tomography output when a physical state is
    required (for example as the second fidelity argument).
    """
    rho = validate_density_matrix(rho, raw=True)
    w, v = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    out = (v * w) @ dagger(v)
    total = float(np.trace(out).real)
    if total <= 0.0:
        raise ValueError("state has no positive part to keep")
    return out / total


#: Names of the bundled reconstructed states.
REFERENCE_STATES = ("class7_appendix",)


def parse_density_text(text: str) -> np.ndarray:
    """Parse the plain-text matrix format: 8 rows of real parts, a blank line,
    8 rows of imaginary parts, each row 8 space-separated decimals."""
    lines = [line.strip() for line in text.splitlines()]
    while lines and not lines[0]:
        lines.pop(0)
    while lines and not lines[-1]:
        lines.pop()
    if len(lines) != 17 or lines[8]:
        raise ValueError("expected 8 real rows, a blank line, and 8 imaginary rows")
    try:
        re = np.array([[float(v) for v in line.split()] for line in lines[:8]])
        im = np.array([[float(v) for v in line.split()] for line in lines[9:]])
    except ValueError as exc:
        raise ValueError(f"malformed matrix entry: {exc}") from None
    if re.shape != (8, 8) or im.shape != (8, 8):
        raise ValueError("every row must hold exactly 8 values")
    return re + 1j * im


def read_density_matrix(path) -> np.ndarray:
    """Read a density matrix from a text file, reporting (not repairing) defects."""
    with open(path, encoding="utf-8") as fh:
        rho = parse_density_text(fh.read())
    _report_deviations(rho, str(path))
    return rho


def load_reference_state(name: str) -> np.ndarray:
    """A bundled reconstructed density matrix, returned exactly as transcribed.

    The result may be raw (non-positive); Hermiticity and trace deviations
    are reported via a warning, never silently repaired.
    """
    if name not in REFERENCE_STATES:
        raise KeyError(f"unknown reference state {name!r}; available: {', '.join(REFERENCE_STATES)}")
    text = resources.files("qdilemma").joinpath("data", f"{name}.txt").read_text(encoding="utf-8")
    rho = parse_density_text(text)
    _report_deviations(rho, name)
    return rho


def _report_deviations(rho: np.ndarray, name: str):
    herm_dev = linalg.max_abs(rho - dagger(rho))
    trace_dev = abs(np.trace(rho) - 1.0)
    if herm_dev > linalg.HERM_TOL or trace_dev > linalg.TRACE_TOL:
        warnings.warn(
            f"{name}: hermiticity deviation {herm_dev:.3e}, trace deviation {trace_dev:.3e}",
            UserWarning,
            stacklevel=3,
        )
