"""Hermitian phase of a single qubit from the polar decomposition of S-.

Conventions
-----------
Basis order is (|0>, |1>).  The ladder operators are ``S+ = |1><0|`` and
``S- = |0><1|`` with ``Sz = (|1><1| - |0><0|)/2``, so |1> sits at the top of
the Bloch sphere.  ``Sx = (S+ + S-)/2`` and ``Sy = (S- - S+)/(2i)`` are the
components for which the state ``sin(t/2)|0> + e^{ip} cos(t/2)|1>`` has Bloch
vector ``(sin t cos p, sin t sin p, cos t)``.
"""
from dataclasses import dataclass

import numpy as np

from .core import QuantumState, as_state, commutator, dagger

__all__ = [
    "IDENTITY",
    "S_PLUS",
    "S_MINUS",
    "S_Z",
    "S_X",
    "S_Y",
    "LadderSet",
    "ladder_set",
    "PhaseExponential",
    "phase_exponential",
    "psd_sqrt",
    "bloch_state",
    "bloch_vector",
    "lowering_expectation",
    "phase_eigenstates",
    "phase_operator_function",
    "hermitian_phase_operator",
    "hermitian_phase_distribution",
]

IDENTITY = np.eye(2, dtype=complex)
S_PLUS = np.array([[0, 0], [1, 0]], dtype=complex)
S_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)
S_Z = np.diag([-0.5, 0.5]).astype(complex)
S_X = (S_PLUS + S_MINUS) / 2
S_Y = (S_MINUS - S_PLUS) / 2j

for _m in (IDENTITY, S_PLUS, S_MINUS, S_Z, S_X, S_Y):
    _m.setflags(write=False)


@dataclass(frozen=True, eq=False)
class LadderSet:
    s_plus: np.ndarray
    s_minus: np.ndarray
    s_z: np.ndarray
    identity: np.ndarray

    def commutator_residuals(self):
        """Entrywise residuals of [Sz, S+-] = +-S+- and [S+, S-] = 2 Sz."""
        return {
            "[Sz,S+]-S+": float(np.max(np.abs(commutator(self.s_z, self.s_plus) - self.s_plus))),
            "[Sz,S-]+S-": float(np.max(np.abs(commutator(self.s_z, self.s_minus) + self.s_minus))),
            "[S+,S-]-2Sz": float(np.max(np.abs(commutator(self.s_plus, self.s_minus) - 2 * self.s_z))),
        }


def ladder_set():
    return LadderSet(S_PLUS, S_MINUS, S_Z, IDENTITY)


def psd_sqrt(m):
    """Principal (positive semidefinite) square root of a Hermitian PSD matrix."""
    w, v = np.linalg.eigh((m + dagger(m)) / 2)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ dagger(v)


@dataclass(frozen=True, eq=False)
class PhaseExponential:
    """Unitary exponential of the qubit phase, ``E = |0><1| + e^{i phi0} |1><0|``."""

    e_operator: np.ndarray
    phi0: float

    def polar_residual(self):
        """max |S- - sqrt(S- S+) E|, zero for every phi0."""
        root = psd_sqrt(S_MINUS @ S_PLUS)
        return float(np.max(np.abs(S_MINUS - root @ self.e_operator)))

    def unitarity_residual(self):
        return float(np.max(np.abs(self.e_operator @ dagger(self.e_operator) - IDENTITY)))


def phase_exponential(phi0=np.pi):
    """Solve the polar decomposition ``S- = sqrt(S- S+) E`` for unitary ``E``.

    ``sqrt(S- S+) = |0><0|`` fixes only the ``<0|E|1>`` element; unitarity then
    leaves ``<1|E|0> = e^{i phi0}`` free.  The default ``phi0 = pi`` is the
    choice under which complex conjugation of the state reverses the phase,
    giving ``E = |0><1| - |1><0|``.
    """
    e = np.zeros((2, 2), dtype=complex)
    e[0, 1] = 1.0
    e[1, 0] = -1.0 if phi0 == np.pi else np.exp(1j * phi0)
    e.setflags(write=False)
    return PhaseExponential(e, float(phi0))


def bloch_state(theta, phi):
    """Pure state ``sin(theta/2)|0> + e^{i phi} cos(theta/2)|1>``."""
    if not 0.0 <= theta <= np.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
    return QuantumState.pure([np.sin(theta / 2), np.exp(1j * phi) * np.cos(theta / 2)])


def bloch_vector(s):
    """Bloch vector ``(Tr[rho sx], Tr[rho sy], Tr[rho sz])`` with ``s_j = 2 S_j``."""
    rho = as_state(s).density_matrix()
    return tuple(float(np.real(np.trace(rho @ (2 * op)))) for op in (S_X, S_Y, S_Z))


def lowering_expectation(s):
    """``<S->``; for a Bloch state this is ``(1/2) sin(theta) e^{i phi}``."""
    rho = as_state(s).density_matrix()
    return complex(np.trace(rho @ S_MINUS))


_SQ2 = 1 / np.sqrt(2)


def phase_eigenstates():
    """Eigenphases and eigenvectors of the default ``E``: ``(+pi/2, |phi+>), (-pi/2, |phi->)``."""
    return (
        (np.pi / 2, QuantumState.pure([_SQ2, 1j * _SQ2])),
        (-np.pi / 2, QuantumState.pure([_SQ2, -1j * _SQ2])),
    )


def phase_operator_function(f):
    """Operator ``F(Phi) = sum_+- |phi+-> F(phi+-) <phi+-|`` for a scalar function ``f``."""
    out = np.zeros((2, 2), dtype=complex)
    for phase, state in phase_eigenstates():
        out += f(phase) * np.outer(state.data, state.data.conj())
    return out


def hermitian_phase_operator():
    """The Hermitian phase operator, eigenvalues +-pi/2."""
    return phase_operator_function(lambda x: x)


def hermitian_phase_distribution(s):
    """Probabilities ``(P(+pi/2), P(-pi/2))`` of the two possible phase outcomes."""
    rho = as_state(s).density_matrix()
    probs = []
    for _, state in phase_eigenstates():
        probs.append(float(np.real(state.data.conj() @ rho @ state.data)))
    return tuple(probs)

