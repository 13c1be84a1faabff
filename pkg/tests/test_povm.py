import numpy as np
import pytest
from hypothesis import given, strategies as st

from qphase import povm
from qphase.core import QuantumState, random_density, random_pure
from qphase.qubit_phase import IDENTITY, S_X, S_Y, bloch_state, phase_eigenstates, phase_exponential

TWO_PI = 2 * np.pi
GAMMAS = (0.1, 0.5, np.pi / 4, 1.0)
PLUS = QuantumState.pure([1 / np.sqrt(2), 1 / np.sqrt(2)])
ZERO = QuantumState.pure([1, 0])
seeds = st.integers(0, 2**32 - 1)
gammas = st.floats(1e-3, 1.0)
angles = st.floats(-10, 10, allow_nan=False)


def maxabs(m):
    return float(np.max(np.abs(m)))


def trapezoid(values, points):
    return TWO_PI / points * np.sum(values)


def test_sg_element_at_zero():
    assert maxabs(povm.povm_element(1.0, 0.0) - np.ones((2, 2)) / TWO_PI) <= 1e-16


def test_sg_element_is_phase_state_projector():
    v = np.array([1, 1]) / np.sqrt(TWO_PI)
    assert maxabs(povm.povm_element(povm.sg_povm(), 0.0) - np.outer(v, v)) <= 1e-16
    assert maxabs(povm.sg_element(0.0) - np.outer(v, v)) <= 1e-16


def test_sg_povm_at_pi():
    expected = np.array([[1, -1], [-1, 1]]) / TWO_PI
    assert maxabs(povm.sg_povm().element(np.pi) - expected) <= 1e-16
    assert povm.sg_povm().gamma == 1.0


@pytest.mark.parametrize("gamma", GAMMAS)
def test_povm_axioms(gamma):
    grid = TWO_PI * np.arange(256) / 256
    stack = povm.povm_element(gamma, grid)
    assert np.array_equal(stack, np.conj(np.swapaxes(stack, -1, -2)))
    assert np.min(np.linalg.eigvalsh(stack)) >= -1e-12
    assert povm.completeness_residual(gamma, 2048) <= 1e-9


@pytest.mark.parametrize("gamma", GAMMAS)
def test_povm_covariance(gamma, rng):
    for phi, shift in rng.uniform(-np.pi, np.pi, (16, 2)):
        assert povm.covariance_residual(gamma, phi, shift) <= 1e-12


@pytest.mark.parametrize("gamma", GAMMAS)
def test_povm_complementarity(gamma, rng):
    e = phase_exponential().e_operator
    worst = max(povm.complementarity_residual(gamma, phi, e) for phi in rng.uniform(-np.pi, np.pi, 16))
    assert worst <= 1e-12


@pytest.mark.parametrize("gamma", GAMMAS)
def test_conjugation_by_exponential_reflects_phase(gamma, rng):
    e = phase_exponential().e_operator
    for phi in rng.uniform(-np.pi, np.pi, 16):
        lhs = e @ povm.povm_element(gamma, phi) @ e.conj().T
        assert maxabs(lhs - povm.povm_element(gamma, np.pi - phi)) <= 1e-15


def test_gamma_range_enforced():
    for bad in (0.0, -0.1, 1.5):
        with pytest.raises(ValueError):
            povm.PhasePovm(bad)


def test_distribution_examples():
    d = povm.phase_distribution(PLUS, 1.0)
    assert abs(d.c - 0.5) <= 1e-15
    phi = np.linspace(0, TWO_PI, 17)
    assert np.allclose(d(phi), (1 + np.cos(phi)) / TWO_PI, atol=1e-15)
    for g in GAMMAS:
        d0 = povm.phase_distribution(ZERO, g)
        assert d0.c == 0 and np.allclose(d0(phi), 1 / TWO_PI)
    assert abs(povm.phase_distribution(PLUS, np.pi / 4).c - np.pi / 8) <= 1e-15


@given(seeds, gammas)
def test_distribution_matches_trace_rule(seed, gamma):
    rng = np.random.default_rng(seed)
    s = random_density(1, rng)
    d = povm.phase_distribution(s, gamma)
    phi = rng.uniform(0, TWO_PI, 8)
    direct = np.real(np.einsum("nij,ji->n", povm.povm_element(gamma, phi), s.density_matrix()))
    assert np.allclose(d(phi), direct, atol=1e-14)
    assert np.min(d(np.linspace(0, TWO_PI, 256))) >= -1e-12


def test_dispersion_examples():
    assert povm.dispersion_squared(povm.phase_distribution(ZERO, 1.0)) == 1.0
    assert abs(povm.dispersion_squared(povm.phase_distribution(PLUS, 1.0)) - 0.75) <= 1e-15
    assert abs(povm.dispersion(povm.phase_distribution(PLUS, 1.0)) - np.sqrt(0.75)) <= 1e-15


@given(seeds, gammas)
def test_dispersion_matches_quadrature(seed, gamma):
    rng = np.random.default_rng(seed)
    d = povm.phase_distribution(random_density(1, rng), gamma)
    grid = TWO_PI * np.arange(64) / 64
    first = trapezoid(np.exp(1j * grid) * d(grid), 64)
    assert abs(1 - abs(first) ** 2 - d.dispersion_squared) <= 1e-12


@given(seeds, gammas, gammas)
def test_dispersion_ordering(seed, g1, g2):
    g1, g2 = sorted((g1, g2))
    s = random_density(1, np.random.default_rng(seed))
    assert povm.dispersion(povm.phase_distribution(s, g1)) >= povm.dispersion(povm.phase_distribution(s, g2))


def test_moments_examples():
    (_, plus_phase), _ = phase_eigenstates()
    assert np.allclose(povm.moments_from_distribution(povm.phase_distribution(PLUS, 1.0)), (0.5, 0), atol=1e-15)
    assert np.allclose(povm.moments_from_distribution(povm.phase_distribution(plus_phase, 1.0)), (0, 0.5), atol=1e-15)
    assert np.allclose(povm.moments_from_distribution(povm.phase_distribution(ZERO, 0.3)), (0, 0))


@given(seeds, gammas)
def test_moments_match_operators(seed, gamma):
    s = random_density(1, np.random.default_rng(seed))
    rho = s.density_matrix()
    sx, sy = povm.moments_from_distribution(povm.phase_distribution(s, gamma))
    assert abs(sx - np.trace(rho @ S_X).real) <= 1e-12 / gamma
    assert abs(sy - np.trace(rho @ S_Y).real) <= 1e-12 / gamma


@given(seeds, gammas)
def test_moments_match_quadrature(seed, gamma):
    s = random_density(1, np.random.default_rng(seed))
    d = povm.phase_distribution(s, gamma)
    grid = TWO_PI * np.arange(32) / 32
    sx = trapezoid(np.cos(grid) * d(grid), 32) / gamma
    sy = trapezoid(np.sin(grid) * d(grid), 32) / gamma
    assert np.allclose(povm.moments_from_distribution(d), (sx, sy), atol=1e-12 / gamma)


def test_three_point_examples():
    assert abs(povm.reconstruct_from_three_points(*[1 / TWO_PI] * 3)) <= 1e-15
    samples = (1 + np.cos(povm.THREE_POINT_PHASES)) / TWO_PI
    assert abs(povm.reconstruct_from_three_points(*samples) - 0.5) <= 1e-15


@given(seeds, gammas)
def test_three_point_round_trip(seed, gamma):
    rng = np.random.default_rng(seed)
    d = povm.phase_distribution(random_density(1, rng), gamma)
    samples = d.three_point_samples()
    assert abs(povm.reconstruct_from_three_points(*samples) - d.c) <= 1e-13
    phi = rng.uniform(-10, 10, 16)
    assert np.allclose(povm.three_point_evaluate(*samples, phi), d(phi), rtol=0, atol=1e-12)


@pytest.mark.parametrize("g", GAMMAS)
def test_convert_same_gamma(g):
    element = povm.povm_convert(g, povm.PhasePovm(g))
    for phi in (0.0, 1.0, 4.0):
        assert maxabs(element(phi) - povm.povm_element(g, phi)) <= 1e-9


def test_convert_sg_to_q():
    element = povm.povm_convert(np.pi / 4, povm.sg_povm(), nodes=2048)
    assert maxabs(element(0.0) - povm.povm_element(np.pi / 4, 0.0)) <= 1e-9


def test_convert_examples(rng):
    element = povm.povm_convert(0.3, povm.PhasePovm(0.6))
    for phi in rng.uniform(0, TWO_PI, 16):
        assert maxabs(element(phi) - povm.povm_element(0.3, phi)) <= 1e-9


def test_truncate_second_harmonic():
    ft = povm.fourier_truncate(lambda x: np.exp(2j * x))
    phi = np.linspace(0, TWO_PI, 9)
    assert maxabs(ft(phi)) <= 1e-12
    assert maxabs(povm.fourier_truncate(lambda x: np.cos(2 * x))(phi)) <= 1e-12


def test_truncate_cosine():
    phi = np.linspace(0, TWO_PI, 9)
    assert np.allclose(povm.fourier_truncate(np.cos)(phi), np.cos(phi), atol=1e-13)


def sawtooth(x):
    y = np.mod(x + np.pi, TWO_PI) - np.pi
    # midpoint value at the jump keeps the trapezoid rule second order
    return np.where(np.isclose(np.abs(y), np.pi), 0.0, y)


def test_truncate_sawtooth():
    ft = povm.fourier_truncate(sawtooth, 4096)
    phi = np.linspace(0, TWO_PI, 33)
    assert np.allclose(ft(phi), 2 * np.sin(phi), atol=1e-5)


def test_three_point_expectation_examples():
    d = povm.phase_distribution(PLUS, 1.0)
    assert abs(povm.expectation_three_point(lambda x: np.ones_like(x), d) - 1) <= 1e-13
    assert abs(povm.expectation_three_point(np.cos, d) - 0.5) <= 1e-13
    assert abs(povm.expectation_three_point(lambda x: np.exp(2j * x), d)) <= 1e-12


@given(seeds, gammas)
def test_three_point_expectation_of_sawtooth(seed, gamma):
    d = povm.phase_distribution(random_density(1, np.random.default_rng(seed)), gamma)
    grid = TWO_PI * np.arange(8192) / 8192
    direct = trapezoid(sawtooth(grid) * d(grid), 8192)
    assert abs(povm.expectation_three_point(sawtooth, d, 8192) - direct) <= 1e-6


def test_q_function_examples():
    s = bloch_state(1.1, 0.4)
    assert abs(povm.q_function(s, 1.1, 0.4) - 1 / TWO_PI) <= 1e-15
    assert abs(povm.q_function(np.eye(2) / 2, 0.7, 2.0) - 1 / (4 * np.pi)) <= 1e-15
    assert abs(povm.q_function(QuantumState.pure([0, 1]), 0.0, 0.0) - 1 / TWO_PI) <= 1e-15


def test_q_element_entries():
    m = povm.q_povm_element(0.0)
    assert abs(m[0, 1] - 1 / 8) <= 1e-12 and abs(m[1, 0] - 1 / 8) <= 1e-12
    assert np.allclose(np.diag(m), 1 / TWO_PI, atol=1e-12)


def test_q_element_matches_family(rng):
    for phi in rng.uniform(0, TWO_PI, 16):
        assert maxabs(povm.q_povm_element(phi, 64) - povm.povm_element(povm.Q_GAMMA, phi)) <= 1e-9


def test_q_element_completeness():
    grid = TWO_PI * np.arange(64) / 64
    total = sum(povm.q_povm_element(phi) for phi in grid) * TWO_PI / 64
    assert maxabs(total - IDENTITY) <= 1e-9
    assert povm.q_povm().gamma == np.pi / 4


def test_q_element_requires_nodes():
    with pytest.raises(ValueError):
        povm.q_povm_element(0.0, nodes=8)


@given(seeds)
def test_q_function_integrates_to_distribution(seed):
    rng = np.random.default_rng(seed)
    s = random_pure(1, rng)
    phi = rng.uniform(0, TWO_PI)
    x, w = np.polynomial.legendre.leggauss(64)
    theta = np.pi / 2 * (x + 1)
    marginal = np.pi / 2 * np.sum(w * np.sin(theta) * [povm.q_function(s, t, phi) for t in theta])
    assert abs(marginal - povm.phase_distribution(s, povm.q_povm())(phi)) <= 1e-12
