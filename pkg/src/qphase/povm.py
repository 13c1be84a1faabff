"""Covariant phase POVMs for a single qubit.

The family ``Delta_g(phi) = (I + g e^{i phi} S+ + g e^{-i phi} S-) / 2pi``
with ``0 < g <= 1`` induces distributions with only the harmonics 0 and +-1,
so every distribution is stored exactly as its single Fourier coefficient
``c = g <0|rho|1>``.  Grids are used only for export and cross-checks.
"""
from dataclasses import dataclass

import numpy as np

from .core import as_state
from .qubit_phase import IDENTITY, S_MINUS, S_PLUS, bloch_state

TWO_PI = 2 * np.pi
# phi_r = 2 pi r / 3 for r = 0, +1, -1
THREE_POINT_PHASES = np.array([0.0, TWO_PI / 3, -TWO_PI / 3])
Q_GAMMA = np.pi / 4


def check_gamma(gamma):
    gamma = float(gamma)
    if not 0.0 < gamma <= 1.0:
        raise ValueError(f"gamma must lie in (0, 1], got {gamma!r}")
    return gamma


def periodic_grid(points):
    """Uniform trapezoid nodes on [0, 2 pi) and the common weight."""
    if points < 1:
        raise ValueError(f"need at least one node, got {points}")
    return TWO_PI * np.arange(points) / points, TWO_PI / points


@dataclass(frozen=True)
class PhasePovm:
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "gamma", check_gamma(self.gamma))

    def element(self, phi):
        return povm_element(self, phi)


def _gamma_of(p):
    return p.gamma if isinstance(p, PhasePovm) else check_gamma(p)


def povm_element(p, phi):
    """``Delta_g(phi)``; ``phi`` may be an array, giving a stack of shape (..., 2, 2)."""
    g = _gamma_of(p)
    z = g * np.exp(1j * np.mod(np.asarray(phi, dtype=float), TWO_PI))[..., None, None]
    return (IDENTITY + z * S_PLUS + np.conj(z) * S_MINUS) / TWO_PI


@dataclass(frozen=True)
class PhaseFourier:
    """``P(phi) = (1 + c e^{i phi} + c* e^{-i phi}) / 2pi``."""

    c: complex
    gamma: float

    def __call__(self, phi):
        phi = np.asarray(phi, dtype=float)
        return (1.0 + 2.0 * np.real(self.c * np.exp(1j * phi))) / TWO_PI

    @property
    def dispersion_squared(self):
        return 1.0 - abs(self.c) ** 2

    def three_point_samples(self):
        return tuple(float(v) for v in self(THREE_POINT_PHASES))


def phase_distribution(s, p):
    g = _gamma_of(p)
    rho = as_state(s).density_matrix()
    if rho.shape != (2, 2):
        raise ValueError("phase_distribution needs a single-qubit state")
    return PhaseFourier(complex(g * rho[0, 1]), g)


def dispersion_squared(d):
    return d.dispersion_squared


def dispersion(d):
    """Phase dispersion ``D = sqrt(1 - |int e^{i phi} P|^2) = sqrt(1 - |c|^2)``."""
    return float(np.sqrt(max(d.dispersion_squared, 0.0)))


def moments_from_distribution(d):
    """Recover ``(<Sx>, <Sy>) = (1/g) int (cos, sin)(phi) P(phi) dphi = (Re c, -Im c) / g``."""
    if d.gamma == 0:
        raise ValueError("gamma = 0 carries no moment information")
    return d.c.real / d.gamma, -d.c.imag / d.gamma


def reconstruct_from_three_points(p0, p1, p_neg1):
    """Fourier coefficient ``c`` from ``P`` sampled at ``0, 2pi/3, -2pi/3``."""
    samples = np.array([p0, p1, p_neg1], dtype=float)
    return complex(TWO_PI / 3 * np.sum(samples * np.exp(-1j * THREE_POINT_PHASES)))


def three_point_evaluate(p0, p1, p_neg1, phi):
    """``P(phi) = (1/3) sum_{r,s} P(phi_r) e^{i s (phi - phi_r)}``, for any ``phi``."""
    samples = np.array([p0, p1, p_neg1], dtype=float)
    phi = np.asarray(phi, dtype=float)[..., None, None]
    s = np.array([0, 1, -1])[:, None]
    terms = samples * np.exp(1j * s * (phi - THREE_POINT_PHASES))
    return np.real(terms.sum(axis=(-2, -1))) / 3


def povm_convert(target_gamma, source, nodes=2048):
    """Evaluator for ``Delta_{g1}`` built by kernel integration of ``Delta_{g2}``.

    ``Delta_{g1}(phi) = (1/2pi) int [1 + (g1/g2) e^{i(phi-phi')} + c.c.] Delta_{g2}(phi') dphi'``
    evaluated with an ``nodes``-point trapezoid rule.
    """
    g1 = check_gamma(target_gamma)
    g2 = _gamma_of(source)
    grid, w = periodic_grid(nodes)
    stack = povm_element(g2, grid)
    ratio = g1 / g2

    def element(phi):
        kernel = 1.0 + 2.0 * np.real(ratio * np.exp(1j * (phi - grid)))
        return w / TWO_PI * np.einsum("n,nij->ij", kernel, stack)

    return element


@dataclass(frozen=True)
class TruncatedPhaseFunction:
    """``F~(phi) = (1/2pi) sum_{|k|<=1} F_k e^{-i k phi}`` with ``F_k = int e^{i k phi} F(phi)``."""

    f_minus: complex
    f_zero: complex
    f_plus: complex
    real: bool = False

    @property
    def coefficients(self):
        return self.f_minus, self.f_zero, self.f_plus

    def __call__(self, phi):
        phi = np.asarray(phi, dtype=float)
        val = (self.f_zero + self.f_plus * np.exp(-1j * phi) + self.f_minus * np.exp(1j * phi)) / TWO_PI
        return np.real(val) if self.real else val


def fourier_truncate(f, nodes=4096):
    """Keep the ``k = -1, 0, +1`` harmonics of a 2pi-periodic function.

    ``f`` is sampled on a uniform grid over [0, 2pi) and the coefficients come
    from the trapezoid rule.  Complex-valued ``f`` is allowed.
    """
    grid, w = periodic_grid(nodes)
    vals = np.asarray(f(grid))
    coeffs = [complex(w * np.sum(np.exp(1j * k * grid) * vals)) for k in (-1, 0, 1)]
    real = np.isrealobj(vals)
    if real:
        # exact conjugate symmetry for real input
        coeffs = [coeffs[2].conjugate(), complex(coeffs[1].real), coeffs[2]]
    return TruncatedPhaseFunction(*coeffs, real=real)


def expectation_three_point(f, d, nodes=4096):
    """``<F> = (2pi/3) sum_r F~(phi_r) P(phi_r)``, exact for any integrable ``F``."""
    ft = fourier_truncate(f, nodes)
    val = TWO_PI / 3 * np.sum(ft(THREE_POINT_PHASES) * d(THREE_POINT_PHASES))
    return float(np.real(val)) if ft.real else complex(val)


def sg_state(phi):
    """Unnormalised phase state ``(|0> + e^{i phi}|1>)/sqrt(2pi)``."""
    return np.array([1.0, np.exp(1j * phi)]) / np.sqrt(TWO_PI)


def sg_element(phi):
    v = sg_state(phi)
    return np.outer(v, v.conj())


def sg_povm():
    """The projector POVM ``|phi><phi|`` on phase states, which is ``Delta_1``."""
    return PhasePovm(1.0)


def q_function(s, theta, phi):
    """Husimi function ``Q = Tr[rho |theta,phi><theta,phi|] / 2pi`` on spin coherent states."""
    rho = as_state(s).density_matrix()
    v = bloch_state(theta, phi).data
    return float(np.real(v.conj() @ rho @ v)) / TWO_PI


def q_povm_element(phi, nodes=64):
    """``Delta_Q(phi) = (1/2pi) int_0^pi sin(t) |t,phi><t,phi| dt`` by Gauss-Legendre quadrature.

    Agrees with ``povm_element(pi/4, phi)``.
    """
    if nodes < 64:
        raise ValueError(f"need at least 64 quadrature nodes, got {nodes}")
    x, wx = np.polynomial.legendre.leggauss(nodes)
    theta = np.pi / 2 * (x + 1)
    weights = np.pi / 2 * wx * np.sin(theta)
    vecs = np.stack([np.sin(theta / 2), np.exp(1j * phi) * np.cos(theta / 2)], axis=-1)
    return np.einsum("n,ni,nj->ij", weights, vecs, vecs.conj()) / TWO_PI


def q_povm():
    return PhasePovm(Q_GAMMA)


def completeness_residual(p, nodes=2048):
    """max |int Delta(phi) dphi - I| by trapezoid quadrature."""
    grid, w = periodic_grid(nodes)
    total = w * povm_element(p, grid).sum(axis=0)
    return float(np.max(np.abs(total - IDENTITY)))



def phase_shift(shift):
    """``exp(i shift Sz)``."""
    return np.diag(np.exp(1j * shift * np.array([-0.5, 0.5])))


def covariance_residual(p, phi, shift):
    """max |e^{i s Sz} Delta(phi) e^{-i s Sz} - Delta(phi + s)|."""
    u = phase_shift(shift)
    lhs = u @ povm_element(p, phi) @ u.conj().T
    return float(np.max(np.abs(lhs - povm_element(p, phi + shift))))


def complementarity_residual(p, phi, e_operator):
    """max |E Delta(phi) E^dagger - Delta(phi)|.

    For ``E = |0><1| + e^{i phi0}|1><0|`` the left side equals
    ``Delta(phi0 - phi)``, so the residual vanishes only at ``phi = phi0/2 (mod pi)``.
    """
    e = np.asarray(e_operator)
    lhs = e @ povm_element(p, phi) @ e.conj().T
    return float(np.max(np.abs(lhs - povm_element(p, phi))))
