"""Phase description of one- and two-qubit states and a phase-dispersion entanglement degree."""
from .config import DEFAULT_TOL, Tolerances
from .core import QuantumState, partial_trace, validate_state
from .entangle import bell_states, concurrence, entanglement_degree, epsilon_family, schmidt_decompose
from .povm import PhasePovm, phase_distribution, reconstruct_from_three_points
from .qubit_phase import hermitian_phase_distribution, phase_exponential
from .twoqubit import cast_povm, joint_distribution

__version__ = "0.1.0"
