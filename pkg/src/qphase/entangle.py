"""Entanglement degree from phase-sum and phase-difference dispersions."""
from dataclasses import asdict, dataclass

import numpy as np

from .config import DEFAULT_TOL
from .core import QuantumState, as_state, partial_trace
from .povm import check_gamma
from .twoqubit import joint_phase_coefficients

__all__ = [
    "SchmidtForm",
    "EntanglementReport",
    "schmidt_decompose",
    "joint_phase_coefficients",
    "sum_diff_dispersions",
    "entanglement_degree",
    "bell_states",
    "epsilon_family",
    "is_maximally_entangled",
    "concurrence",
]

_SQ2 = 1 / np.sqrt(2)
SIGMA_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


@dataclass(frozen=True, eq=False)
class SchmidtForm:
    """``|psi> = kappa1 |x1, y1> + kappa2 |x2, y2>`` with ``kappa1 >= kappa2 >= 0``.

    ``basis_a[k]`` holds ``(a_k, b_k)`` and ``basis_b[k]`` holds ``(alpha_k, beta_k)``.
    """

    kappa1: float
    kappa2: float
    basis_a: np.ndarray
    basis_b: np.ndarray

    @property
    def kappas(self):
        return np.array([self.kappa1, self.kappa2])

    def reconstruct(self):
        return sum(k * np.kron(x, y) for k, x, y in zip(self.kappas, self.basis_a, self.basis_b))


def _phase_fix(x):
    """Phase making the first non-negligible component of ``x`` real and non-negative."""
    idx = int(np.argmax(np.abs(x) > 1e-12))
    z = x[idx]
    return np.conj(z) / abs(z) if abs(z) > 0 else 1.0


def schmidt_decompose(s, tol=DEFAULT_TOL):
    """Schmidt form of a pure two-qubit state via the SVD of its 2x2 coefficient matrix.

    Each ``|x_k>`` has its first nonzero component real and non-negative; the
    compensating phase goes to ``|y_k>``.  For degenerate coefficients the
    computational basis is used on A.
    """
    s = as_state(s)
    if not s.is_pure or s.qubits != 2:
        raise ValueError("schmidt_decompose needs a pure two-qubit state")
    m = s.data.reshape(2, 2)
    u, k, vh = np.linalg.svd(m)
    if abs(k[0] - k[1]) <= tol.closed_form:
        # m is kappa times a unitary: any basis on A works
        kappa = float(np.sqrt((k[0] ** 2 + k[1] ** 2) / 2))
        xs = np.eye(2, dtype=complex)
        ys = m / kappa if kappa > 0 else np.eye(2, dtype=complex)
        return SchmidtForm(kappa, kappa, xs, ys)
    xs = u.T.copy()
    ys = vh.copy()
    for i in range(2):
        ph = _phase_fix(xs[i])
        xs[i] *= ph
        ys[i] /= ph
    return SchmidtForm(float(k[0]), float(k[1]), xs, ys)


@dataclass(frozen=True)
class EntanglementReport:
    d_plus: float
    d_minus: float
    degree: float
    gamma_a: float
    gamma_b: float
    concurrence: float
    c_plus: complex
    c_minus: complex

    def to_dict(self):
        out = asdict(self)
        for key in ("c_plus", "c_minus"):
            out[key] = [out[key].real, out[key].imag]
        return out


def sum_diff_dispersions(s, gamma_a=1.0, gamma_b=1.0):
    """``D+ = 1 - (gA gB)^2 |C+|^2`` and ``D- = 1 - (gA gB)^2 |C-|^2``."""
    g = check_gamma(gamma_a) * check_gamma(gamma_b)
    c_plus, c_minus = joint_phase_coefficients(s)
    return 1.0 - g ** 2 * abs(c_plus) ** 2, 1.0 - g ** 2 * abs(c_minus) ** 2


def entanglement_degree(s, gamma_a=1.0, gamma_b=1.0):
    """Degree ``|D+ - D-| / (gA gB / 2)^2`` with the dispersions it came from.

    ``D+ - D-`` is formed as ``(gA gB)^2 (|C-|^2 - |C+|^2)`` rather than by
    subtracting two numbers close to 1, so the gamma factors cancel exactly and
    the result is ``4 | |C+|^2 - |C-|^2 |``.
    """
    s = as_state(s)
    g = check_gamma(gamma_a) * check_gamma(gamma_b)
    c_plus, c_minus = joint_phase_coefficients(s)
    d_plus, d_minus = sum_diff_dispersions(s, gamma_a, gamma_b)
    gap = g ** 2 * abs(abs(c_plus) ** 2 - abs(c_minus) ** 2)
    degree = gap / (g / 2) ** 2
    return EntanglementReport(
        d_plus=d_plus,
        d_minus=d_minus,
        degree=float(degree),
        gamma_a=float(gamma_a),
        gamma_b=float(gamma_b),
        concurrence=concurrence(s),
        c_plus=c_plus,
        c_minus=c_minus,
    )


def bell_states():
    """``{"phi+": ..., "phi-": ..., "psi+": ..., "psi-": ...}`` as pure states."""
    return {
        "phi+": QuantumState.pure([_SQ2, 0, 0, _SQ2]),
        "phi-": QuantumState.pure([_SQ2, 0, 0, -_SQ2]),
        "psi+": QuantumState.pure([0, _SQ2, _SQ2, 0]),
        "psi-": QuantumState.pure([0, _SQ2, -_SQ2, 0]),
    }


def epsilon_family(epsilon, sign=+1):
    """State ``{[eps|0> + (1-eps)|1>]/N (x) |0> +- |11>}/sqrt 2`` and its predicted degree ``eps^2/N^2``."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon!r}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    norm = np.hypot(epsilon, 1.0 - epsilon)
    vec = _SQ2 * np.array([epsilon / norm, 0.0, (1.0 - epsilon) / norm, sign])
    return QuantumState.pure(vec), float(epsilon ** 2 / norm ** 2)


def is_maximally_entangled(s, tol=DEFAULT_TOL):
    """True iff both reduced states equal ``I/2``; also returns the two residuals."""
    s = as_state(s)
    if not s.is_pure or s.qubits != 2:
        raise ValueError("is_maximally_entangled needs a pure two-qubit state")
    rho = s.density_matrix()
    half = np.eye(2) / 2
    res_a = float(np.max(np.abs(partial_trace(rho, keep="A") - half)))
    res_b = float(np.max(np.abs(partial_trace(rho, keep="B") - half)))
    return (res_a <= tol.maximal and res_b <= tol.maximal), (res_a, res_b)


def concurrence(s):
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)``.

    The ``l_i`` are the square roots of the eigenvalues of
    ``rho (sy sy) rho* (sy sy)``, obtained as the singular values of
    ``W^T (sy sy) W`` where ``rho = W W^dagger``; this avoids square roots of
    round-off eigenvalues for low-rank states.
    """
    s = as_state(s)
    if s.qubits != 2:
        raise ValueError("concurrence needs a two-qubit state")
    if s.is_pure:
        w = s.data[:, None]
    else:
        p, vecs = np.linalg.eigh(s.density_matrix())
        keep = p > 1e-14
        w = vecs[:, keep] * np.sqrt(p[keep])
    lam = np.zeros(4)
    sv = np.linalg.svd(w.T @ SIGMA_YY @ w, compute_uv=False)
    lam[: len(sv)] = sv
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_schmidt(s):
    """``2 kappa1 kappa2`` for pure states, an independent route to the concurrence."""
    f = schmidt_decompose(s)
    return 2 * f.kappa1 * f.kappa2
