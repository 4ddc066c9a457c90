"""The three-player dilemma game circuit and its payoff accounting.

The umpire entangles ``|000>``, each player applies a local strategy gate to
their own qubit, the umpire disentangles, and the register is measured in the
computational basis.  Outcome bit 1 means "go to the party"; the stakes
``(p, q, n)`` turn the eight outcomes into per-player payoffs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import I2, X, dagger, kron, kron3, max_abs

#: Entanglement strength giving maximal correlation.
DEFAULT_GAMMA = np.pi / 2

#: Measurement outcomes as bit strings, index order.
OUTCOMES = tuple(f"{k:03b}" for k in range(8))

#: Negative probabilities above this magnitude are a simulation error, not rounding.
NEG_PROB_TOL = 1e-12

PROB_SUM_TOL = 1e-10


@dataclass(frozen=True)
class Strategy:
    """One player's move.

    ``"I"`` stays home, ``"X"`` goes to the party, ``"H"`` goes with half
    probability, and ``"U"`` is a general single-qubit unitary parametrized by
    three angles.
    """

    kind: str
    theta: float = 0.0
    phi: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        if self.kind not in ("I", "H", "X", "U"):
            raise ValueError(f"unknown strategy kind {self.kind!r}")

    @classmethod
    def general(cls, theta: float, phi: float = 0.0, lam: float = 0.0) -> "Strategy":
        return cls("U", theta, phi, lam)


IDENTITY = Strategy("I")
HADAMARD = Strategy("H")
FLIP = Strategy("X")


def as_strategy(s) -> Strategy:
    """Coerce a `Strategy` or one of the letters I/H/X."""
    if isinstance(s, Strategy):
        return s
    if isinstance(s, str) and s in ("I", "H", "X"):
        return Strategy(s)
    raise ValueError(f"not a strategy: {s!r}")


def parse_profile(text: str):
    """Parse a profile string like ``"XIX"``; the leftmost letter is player 1."""
    letters = text.upper()
    if len(letters) != 3 or any(c not in "IHX" for c in letters):
        raise ValueError(f"profile must be three letters from I/H/X, got {text!r}")
    return tuple(Strategy(c) for c in letters)


def general_unitary(theta: float, phi: float = 0.0, lam: float = 0.0) -> np.ndarray:
    """Single-qubit unitary with entries cos/sin of theta/2 and phases phi, lam."""
    c = np.cos(theta / 2)
    s = np.sin(theta / 2)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (lam + phi)) * c],
        ]
    )


def strategy_unitary(s) -> np.ndarray:
    """The 2x2 gate a strategy applies to its player's qubit."""
    s = as_strategy(s)
    if s.kind == "I":
        return I2
    if s.kind == "H":
        return linalg.H
    if s.kind == "X":
        return X
    return general_unitary(s.theta, s.phi, s.lam)


def rx(angle: float) -> np.ndarray:
    """X-axis rotation, phased so that rx(-pi/2)|0> = (|0> + i|1>)/sqrt(2)."""
    return np.cos(angle / 2) * I2 - 1j * np.sin(angle / 2) * X


def _check_gamma(gamma: float):
    if not 0.0 <= gamma <= np.pi / 2:
        raise ValueError(f"gamma must lie in [0, pi/2], got {gamma}")


def entangler(gamma: float = DEFAULT_GAMMA) -> np.ndarray:
    """Three-qubit entangling gate cos(g/2) I + i sin(g/2) X⊗X⊗X."""
    _check_gamma(gamma)
    return np.cos(gamma / 2) * np.eye(8, dtype=complex) + 1j * np.sin(gamma / 2) * kron3(X, X, X)


def disentangler(gamma: float = DEFAULT_GAMMA) -> np.ndarray:
    """Inverse of the entangler, applied before measurement."""
    return dagger(entangler(gamma))


@dataclass(frozen=True)
class PayoffTable:
    """Stakes of the game, constrained to 0 < p < q < n.

    ``p`` rewards a lone (or left-behind) player, ``q`` the overcrowded
    all-go outcome, and ``n`` the win/loss magnitude when exactly two go.
    """

    p: float = 1.0
    q: float = 2.0
    n: float = 9.0

    def __post_init__(self):
        if not 0.0 < self.p < self.q < self.n:
            raise ValueError(
                f"payoffs must satisfy 0 < p < q < n, got p={self.p}, q={self.q}, n={self.n}"
            )

    def outcome_payoffs(self) -> np.ndarray:
        """8x3 array of per-player payoffs, one row per outcome 000..111."""
        p, q, n = self.p, self.q, self.n
        return np.array(
            [
                [0, 0, 0],  # 000
                [-n, -n, p],  # 001
                [-n, p, -n],  # 010
                [p, n, n],  # 011
                [p, -n, -n],  # 100
                [n, p, n],  # 101
                [n, n, p],  # 110
                [q, q, q],  # 111
            ],
            dtype=float,
        )


@dataclass(frozen=True)
class PayoffVector:
    """Expected payoff per player; ``mean`` is their arithmetic average."""

    player1: float
    player2: float
    player3: float

    @property
    def mean(self) -> float:
        return (self.player1 + self.player2 + self.player3) / 3


def profile_unitary(profile) -> np.ndarray:
    """Tensor product of the three players' strategy gates."""
    s1, s2, s3 = profile
    return kron3(strategy_unitary(s1), strategy_unitary(s2), strategy_unitary(s3))


def circuit_unitary(profile, gamma: float = DEFAULT_GAMMA) -> np.ndarray:
    """Full game unitary: disentangler · strategies · entangler."""
    j = entangler(gamma)
    return dagger(j) @ profile_unitary(profile) @ j


def evolve(profile, rho: np.ndarray | None = None, gamma: float = DEFAULT_GAMMA) -> np.ndarray:
    """Final 3-qubit state of the game circuit on ``rho`` (default pristine ``|000>``)."""
    if rho is None:
        rho = linalg.basis_density("000")
    else:
        rho = linalg.validate_density_matrix(rho, qubits=3)
    return linalg.conjugate_by(circuit_unitary(profile, gamma), rho)


def play(profile, rho: np.ndarray | None = None, gamma: float = DEFAULT_GAMMA) -> np.ndarray:
    """Outcome distribution of the game: eight computational-basis probabilities.

    Negative diagonal entries within rounding slack are clamped and the
    distribution renormalized; larger negatives raise.
    """
    probs = np.diag(evolve(profile, rho, gamma)).real.copy()
    if probs.min() < -NEG_PROB_TOL:
        raise ValueError(f"outcome probability {probs.min():.3e} below rounding slack")
    np.clip(probs, 0.0, None, out=probs)
    return probs / probs.sum()


def payoff(probs: np.ndarray, table: PayoffTable) -> PayoffVector:
    """Expected per-player payoffs of an outcome distribution."""
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (8,):
        raise ValueError(f"expected 8 outcome probabilities, got shape {probs.shape}")
    if probs.min() < -NEG_PROB_TOL or abs(probs.sum() - 1.0) > PROB_SUM_TOL:
        raise ValueError("not a probability distribution")
    p1, p2, p3 = probs @ table.outcome_payoffs()
    return PayoffVector(float(p1), float(p2), float(p3))


def mean_payoff(profile, table: PayoffTable, rho: np.ndarray | None = None,
                gamma: float = DEFAULT_GAMMA) -> float:
    """Mean payoff per player for one profile on one input state."""
    return payoff(play(profile, rho, gamma), table).mean


@dataclass(frozen=True, eq=False)
class GateStep:
    """One gate of the entangler decomposition, as the full 8x8 matrix it applies."""

    name: str
    matrix: np.ndarray


# Two-qubit CNOTs in the |ab> basis (a the more significant bit):
# _CNOT_CTRL_FIRST flips b when a=1; _CNOT_CTRL_SECOND flips a when b=1.
_CNOT_CTRL_FIRST = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
_CNOT_CTRL_SECOND = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex
)


def decompose_entangler():
    """Five-gate hardware realization of the maximal entangler, in application order.

    One middle-qubit rotation and four CNOTs; their ordered product equals
    ``entangler(pi/2)`` up to a global phase.
    """
    cnot_1_0 = kron(_CNOT_CTRL_SECOND, I2)  # control qubit 1, target qubit 0
    cnot_1_2 = kron(I2, _CNOT_CTRL_FIRST)  # control qubit 1, target qubit 2
    rot = kron3(I2, rx(-np.pi / 2), I2)
    return [
        GateStep("cnot q1->q0", cnot_1_0),
        GateStep("cnot q1->q2", cnot_1_2),
        GateStep("rx(-pi/2) q1", rot),
        GateStep("cnot q1->q0", cnot_1_0),
        GateStep("cnot q1->q2", cnot_1_2),
    ]


def compose(steps) -> np.ndarray:
    """Product of gate steps applied left to right (first element acts first)."""
    out = np.eye(steps[0].matrix.shape[0], dtype=complex)
    for step in steps:
        out = step.matrix @ out
    return out


def global_phase_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Max-norm distance between ``a`` and ``c*b`` for the aligning unit phase ``c``.

    ``c`` is the entry ratio at the largest-magnitude entry of ``b``,
    normalized to unit modulus.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    k = int(np.argmax(np.abs(b)))
    c = a.flat[k] / b.flat[k]
    c = c / abs(c) if abs(c) > 0 else 1.0
    return max_abs(a - c * b)
