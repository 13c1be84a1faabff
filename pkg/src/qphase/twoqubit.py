"""Phase sum and difference for two qubits, cast into a 2pi window.

The individual phases live in 2pi windows, so their sum and difference span
4pi.  Casting folds that back: the pair ``(phi_A, phi_B)`` and
``(phi_A + pi, phi_B + pi)`` share the same sum and difference modulo 2pi and
are averaged, while the parity operator ``V`` labels the two branches.
"""
from dataclasses import dataclass

import numpy as np

from .core import as_state, commutator, dagger, kron
from .povm import TWO_PI, check_gamma, periodic_grid, povm_element, sg_state
from .qubit_phase import IDENTITY, S_MINUS, S_PLUS, S_Z, phase_exponential

SP_SP = np.kron(S_PLUS, S_PLUS)    # |11><00|, carries e^{i phi+}
SP_SM = np.kron(S_PLUS, S_MINUS)   # |10><01|, carries e^{i phi-}
IDENTITY4 = np.eye(4, dtype=complex)


@dataclass(frozen=True, eq=False)
class SumDiffOperators:
    e_plus: np.ndarray
    e_minus: np.ndarray
    s_plus_z: np.ndarray
    s_minus_z: np.ndarray
    v: np.ndarray

    def commutator_residuals(self):
        """Entrywise residuals of the six commutation relations between E(+-), S(+-) and V."""
        def r(m):
            return float(np.max(np.abs(m)))
        return {
            "[E+,S+]=E+": r(commutator(self.e_plus, self.s_plus_z) - self.e_plus),
            "[E-,S-]=E-": r(commutator(self.e_minus, self.s_minus_z) - self.e_minus),
            "[E+,S-]=0": r(commutator(self.e_plus, self.s_minus_z)),
            "[E-,S+]=0": r(commutator(self.e_minus, self.s_plus_z)),
            "[E+,V]=0": r(commutator(self.e_plus, self.v)),
            "[E-,V]=0": r(commutator(self.e_minus, self.v)),
        }


def build_sum_diff(phi0=np.pi):
    """Exponentials of phase sum/difference, ``S(+-) = Sz_A +- Sz_B`` and the parity ``V``.

    ``V = -exp(i pi S(+))`` is diagonal ``(+1, -1, -1, +1)``.  The literal
    ``exp(2 i pi S(+))`` would be the identity because ``S(+)`` has integer
    spectrum.
    """
    e = phase_exponential(phi0).e_operator
    s_plus = kron(S_Z, IDENTITY) + kron(IDENTITY, S_Z)
    s_minus = kron(S_Z, IDENTITY) - kron(IDENTITY, S_Z)
    # S(+) has integer spectrum, so the exponential is exactly +-1
    v = np.diag(np.round(-np.exp(1j * np.pi * np.real(np.diag(s_plus))).real)).astype(complex)
    return SumDiffOperators(kron(e, e), kron(e, dagger(e)), s_plus, s_minus, v)


def sg_product_state(phi_a, phi_b):
    """``|phi_A> (x) |phi_B>`` with the unnormalised phase states ``(|0> + e^{i phi}|1>)/sqrt(2pi)``.

    Broadcasts over array angles, returning shape ``(..., 4)``.
    """
    if np.ndim(phi_a) == 0 and np.ndim(phi_b) == 0:
        return np.kron(sg_state(phi_a), sg_state(phi_b))
    ea, eb = np.broadcast_arrays(np.exp(1j * np.asarray(phi_a, float)), np.exp(1j * np.asarray(phi_b, float)))
    return np.stack([np.ones_like(ea), eb, ea, ea * eb], axis=-1) / TWO_PI


@dataclass(frozen=True, eq=False)
class CastBasisState:
    phi_plus: float
    phi_minus: float
    v: int
    vector: np.ndarray


def _cast_vector(phi_plus, phi_minus, v):
    phi_a = (phi_plus + phi_minus) / 2
    phi_b = (phi_plus - phi_minus) / 2
    branch = sg_product_state(phi_a, phi_b) + (-1) ** v * sg_product_state(phi_a + np.pi, phi_b + np.pi)
    prefactor = np.exp(1j * v * np.asarray(phi_a)) / 2
    return prefactor[..., None] * branch


def cast_basis_state(phi_plus, phi_minus, v):
    """``|phi+, phi-, v> = (e^{i v phi_A}/2)[|phi_A, phi_B> + (-1)^v |phi_A+pi, phi_B+pi>]``."""
    if v not in (0, 1):
        raise ValueError(f"v must be 0 or 1, got {v!r}")
    phi_plus = float(np.mod(phi_plus, TWO_PI))
    phi_minus = float(np.mod(phi_minus, TWO_PI))
    return CastBasisState(phi_plus, phi_minus, v, _cast_vector(phi_plus, phi_minus, v))


def cast_basis_vectors(phi_plus, phi_minus, v):
    """Vectorised closed form of the cast basis, shape ``broadcast(phi_plus, phi_minus) + (4,)``."""
    pp, pm = np.broadcast_arrays(np.asarray(phi_plus, float), np.asarray(phi_minus, float))
    out = np.zeros(pp.shape + (4,), dtype=complex)
    if v == 0:
        out[..., 0] = 1.0
        out[..., 3] = np.exp(1j * pp)
    else:
        out[..., 1] = np.exp(1j * pp)
        out[..., 2] = np.exp(1j * (pp + pm))
    return out / TWO_PI


def resolution_residual(points=128):
    """max |sum_v int int |phi+,phi-,v><phi+,phi-,v| - I| on a ``points x points`` grid."""
    grid, w = periodic_grid(points)
    pp, pm = np.meshgrid(grid, grid, indexing="ij")
    total = np.zeros((4, 4), dtype=complex)
    for v in (0, 1):
        vecs = _cast_vector(pp, pm, v).reshape(-1, 4)
        total += w * w * np.einsum("ni,nj->ij", vecs, vecs.conj())
    return float(np.max(np.abs(total - IDENTITY4)))


def cast_distribution(p):
    """Fold a joint distribution ``P(phi_A, phi_B)`` into ``P(phi+, phi-)``.

    ``P(phi+, phi-) = (P[(phi+ + phi-)/2, (phi+ - phi-)/2] + P[... + pi, ... + pi]) / 2``.
    ``p`` must accept broadcastable arrays.
    """
    def folded(phi_plus, phi_minus):
        phi_a = (np.asarray(phi_plus) + np.asarray(phi_minus)) / 2
        phi_b = (np.asarray(phi_plus) - np.asarray(phi_minus)) / 2
        return (p(phi_a, phi_b) + p(phi_a + np.pi, phi_b + np.pi)) / 2

    return folded


def product_povm(gamma_a, gamma_b, phi_a, phi_b):
    """``Delta_gA(phi_A) (x) Delta_gB(phi_B)``, broadcasting over the angles."""
    da = povm_element(gamma_a, phi_a)
    db = povm_element(gamma_b, phi_b)
    da, db = np.broadcast_arrays(da, db)
    return np.einsum("...ij,...kl->...ikjl", da, db).reshape(da.shape[:-2] + (4, 4))


def cast_povm(gamma_a, gamma_b):
    """Evaluator ``(phi+, phi-) -> Lambda(phi+, phi-)``, the cast product POVM."""
    check_gamma(gamma_a)
    check_gamma(gamma_b)

    def element(phi_plus, phi_minus):
        phi_a = (np.asarray(phi_plus, float) + np.asarray(phi_minus, float)) / 2
        phi_b = (np.asarray(phi_plus, float) - np.asarray(phi_minus, float)) / 2
        return (product_povm(gamma_a, gamma_b, phi_a, phi_b)
                + product_povm(gamma_a, gamma_b, phi_a + np.pi, phi_b + np.pi)) / 2

    return element


def product_distribution(s, gamma_a, gamma_b):
    """``P(phi_A, phi_B) = Tr[rho Delta_gA(phi_A) (x) Delta_gB(phi_B)]`` as a vectorised callable."""
    rho = as_state(s).density_matrix()
    if rho.shape != (4, 4):
        raise ValueError("product_distribution needs a two-qubit state")

    def p(phi_a, phi_b):
        m = product_povm(gamma_a, gamma_b, phi_a, phi_b)
        return np.real(np.einsum("...ij,ji->...", m, rho))

    return p


def joint_phase_coefficients(s):
    """``C+ = Tr[rho S+ (x) S+] = <00|rho|11>`` and ``C- = Tr[rho S+ (x) S-] = <01|rho|10>``."""
    rho = as_state(s).density_matrix()
    if rho.shape != (4, 4):
        raise ValueError("joint_phase_coefficients needs a two-qubit state")
    return complex(rho[0, 3]), complex(rho[1, 2])


@dataclass(frozen=True)
class JointPhaseFourier:
    """Cast joint distribution of phase sum and difference.

    ``P(phi+, phi-) = [1 + gA gB (C+ e^{i phi+} + c.c.) + gA gB (C- e^{i phi-} + c.c.)] / (2pi)^2``
    """

    c_plus: complex
    c_minus: complex
    gamma_a: float
    gamma_b: float

    @property
    def gamma(self):
        return self.gamma_a * self.gamma_b

    def __call__(self, phi_plus, phi_minus):
        pp = np.asarray(phi_plus, dtype=float)
        pm = np.asarray(phi_minus, dtype=float)
        g = self.gamma
        return (1.0 + 2 * g * np.real(self.c_plus * np.exp(1j * pp))
                + 2 * g * np.real(self.c_minus * np.exp(1j * pm))) / TWO_PI ** 2

    def marginal_minus(self, phi_minus):
        pm = np.asarray(phi_minus, dtype=float)
        return (1.0 + 2 * self.gamma * np.real(self.c_minus * np.exp(1j * pm))) / TWO_PI

    def marginal_plus(self, phi_plus):
        pp = np.asarray(phi_plus, dtype=float)
        return (1.0 + 2 * self.gamma * np.real(self.c_plus * np.exp(1j * pp))) / TWO_PI

    def first_moments(self):
        """``(int e^{i phi+} P, int e^{i phi-} P)`` over the full window: ``gA gB (C+*, C-*)``."""
        return self.gamma * self.c_plus.conjugate(), self.gamma * self.c_minus.conjugate()


def joint_distribution(s, gamma_a, gamma_b):
    c_plus, c_minus = joint_phase_coefficients(s)
    return JointPhaseFourier(c_plus, c_minus, check_gamma(gamma_a), check_gamma(gamma_b))


def marginal_diff_povm(gamma_a, gamma_b, phi_minus, nodes=2048):
    """``Lambda(phi-) = int Delta_gA(phi- + phi') (x) Delta_gB(phi') dphi'`` by trapezoid quadrature."""
    grid, w = periodic_grid(nodes)
    return w * product_povm(gamma_a, gamma_b, phi_minus + grid, grid).sum(axis=0)


def marginal_diff_povm_closed(gamma_a, gamma_b, phi_minus):
    """Closed form ``[I + gA gB (e^{i phi-} S+ (x) S- + h.c.)] / 2pi``."""
    z = check_gamma(gamma_a) * check_gamma(gamma_b) * np.exp(1j * phi_minus)
    return (IDENTITY4 + z * SP_SM + np.conj(z) * dagger(SP_SM)) / TWO_PI


def grid_integrate_2d(f, points, k=0, l=0, period=TWO_PI):
    """``int int e^{i k x} e^{i l y} f(x, y) dx dy`` over ``[0, period)^2`` by the trapezoid rule."""
    grid = period * np.arange(points) / points
    w = period / points
    x, y = np.meshgrid(grid, grid, indexing="ij")
    return complex(w * w * np.sum(np.exp(1j * (k * x + l * y)) * f(x, y)))


def half_harmonic_coefficients(f, points=64):
    """Normalised Fourier coefficients of ``f(phi+, phi-)`` at half-integer frequencies.

    Computed over ``[0, 4pi)^2`` for ``(k, l)`` in ``{(+-1/2, +-1/2), (+-1/2, 0), (0, +-1/2)}``.
    A 2pi-periodic function has all of them equal to zero.
    """
    out = {}
    for k in (-0.5, 0.0, 0.5):
        for l in (-0.5, 0.0, 0.5):
            if k == 0 and l == 0:
                continue
            val = grid_integrate_2d(f, 2 * points, -k, -l, period=2 * TWO_PI) / (2 * TWO_PI) ** 2
            out[(k, l)] = val
    return out
