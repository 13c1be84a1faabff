"""Invariant suites run by ``qphase validate``.

Each check draws from a seeded generator and returns ``(passed, residual)``;
the residual is the worst deviation observed (or the smallest value, for
lower-bound checks such as positivity).
"""
import time

import numpy as np

from . import core, entangle, povm, qubit_phase, twoqubit
from .config import DEFAULT_TOL

GAMMAS = (0.1, 0.5, np.pi / 4, 1.0)
GAMMA_GRID = (0.1, 0.25, 0.5, np.pi / 4, 1.0)

_CHECKS = []


def check(module):
    def register(fn):
        _CHECKS.append((module, fn.__name__, fn))
        return fn
    return register


def _maxabs(x):
    return float(np.max(np.abs(x)))


def _le(res, tol):
    return bool(res <= tol), float(res)


# core

@check("core")
def kron_trace_factorises(rng, tol):
    worst = 0.0
    for _ in range(100):
        a, b = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(2))
        worst = max(worst, abs(np.trace(core.kron(a, b)) - np.trace(a) * np.trace(b)))
    return _le(worst, tol.closed_form)


@check("core")
def partial_trace_of_product(rng, tol):
    worst = 0.0
    for _ in range(100):
        a, b = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(2))
        m = core.kron(a, b)
        worst = max(worst, _maxabs(core.partial_trace(m, "A") - a * np.trace(b)),
                    _maxabs(core.partial_trace(m, "B") - b * np.trace(a)))
    return _le(worst, tol.closed_form)


@check("core")
def eigenvalues_sum_to_trace(rng, tol):
    trace_res = recon_res = 0.0
    for _ in range(100):
        dim = int(rng.choice([2, 4]))
        z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        h = z + core.dagger(z)
        w, v = core.hermitian_eigen(h)
        trace_res = max(trace_res, abs(w.sum() - np.trace(h).real))
        recon_res = max(recon_res, _maxabs((v * w) @ core.dagger(v) - h))
    ok = trace_res <= tol.hermitian_input and recon_res <= tol.eigen_reconstruction
    return bool(ok), max(trace_res, recon_res)


# single-qubit phase

@check("qubit_phase")
def ladder_commutators(rng, tol):
    return _le(max(qubit_phase.ladder_set().commutator_residuals().values()), tol.algebra)


@check("qubit_phase")
def polar_decomposition(rng, tol):
    worst = max(qubit_phase.phase_exponential(p).polar_residual() for p in rng.uniform(0, 2 * np.pi, 32))
    return _le(worst, tol.closed_form)


@check("qubit_phase")
def default_exponential_identities(rng, tol):
    e = qubit_phase.phase_exponential().e_operator
    res = max(_maxabs(e @ e + np.eye(2)), _maxabs(core.dagger(e) + e))
    return _le(res, tol.algebra)


@check("qubit_phase")
def lowering_expectation_of_bloch_states(rng, tol):
    worst = 0.0
    for theta, phi in zip(rng.uniform(0, np.pi, 200), rng.uniform(-np.pi, np.pi, 200)):
        got = qubit_phase.lowering_expectation(qubit_phase.bloch_state(theta, phi))
        worst = max(worst, abs(got - 0.5 * np.sin(theta) * np.exp(1j * phi)))
    return _le(worst, tol.closed_form)


@check("qubit_phase")
def hermitian_distribution_normalised(rng, tol):
    worst = max(abs(sum(qubit_phase.hermitian_phase_distribution(core.random_density(1, rng))) - 1)
                for _ in range(1000))
    return _le(worst, tol.closed_form)


@check("qubit_phase")
def cos_phase_vanishes(rng, tol):
    return _le(_maxabs(qubit_phase.phase_operator_function(np.cos)), tol.closed_form)


# single-qubit POVMs

@check("povm")
def povm_hermitian(rng, tol):
    grid = np.linspace(0, 2 * np.pi, 256, endpoint=False)
    res = max(_maxabs(m - core.dagger(m)) for g in GAMMAS for m in povm.povm_element(g, grid))
    return bool(res == 0.0), res


@check("povm")
def povm_positive(rng, tol):
    grid = np.linspace(0, 2 * np.pi, 256, endpoint=False)
    low = min(float(np.linalg.eigvalsh(povm.povm_element(g, grid)).min()) for g in GAMMAS)
    return bool(low >= -1e-12), low


@check("povm")
def povm_complete(rng, tol):
    return _le(max(povm.completeness_residual(g, 2048) for g in GAMMAS), tol.quadrature)


@check("povm")
def povm_covariance(rng, tol):
    worst = 0.0
    for g in GAMMAS:
        for phi, shift in rng.uniform(0, 2 * np.pi, (16, 2)):
            worst = max(worst, povm.covariance_residual(g, phi, shift))
    return _le(worst, tol.closed_form)


@check("povm")
def povm_complementarity(rng, tol):
    e = qubit_phase.phase_exponential().e_operator
    worst = 0.0
    for g in GAMMAS:
        for phi in rng.uniform(0, 2 * np.pi, 16):
            worst = max(worst, povm.complementarity_residual(g, phi, e))
    return _le(worst, tol.closed_form)


@check("povm")
def dispersion_ordering(rng, tol):
    worst = 0.0
    for _ in range(1000):
        s = core.random_density(1, rng)
        g1, g2 = np.sort(rng.uniform(1e-3, 1.0, 2))
        d1 = povm.dispersion(povm.phase_distribution(s, g1))
        d2 = povm.dispersion(povm.phase_distribution(s, g2))
        worst = max(worst, d2 - d1)
    return bool(worst <= 0.0), worst


@check("povm")
def three_point_round_trip(rng, tol):
    worst = 0.0
    for _ in range(100):
        d = povm.phase_distribution(core.random_density(1, rng), rng.uniform(1e-3, 1.0))
        samples = d.three_point_samples()
        phis = rng.uniform(0, 2 * np.pi, 64)
        worst = max(worst, abs(povm.reconstruct_from_three_points(*samples) - d.c),
                    _maxabs(povm.three_point_evaluate(*samples, phis) - d(phis)))
    return _le(worst, 1e-13)


@check("povm")
def distribution_nonnegative(rng, tol):
    grid = np.linspace(0, 2 * np.pi, 1024, endpoint=False)
    low = min(float(povm.phase_distribution(core.random_density(1, rng), g)(grid).min())
              for g in GAMMAS for _ in range(25))
    return bool(low >= -1e-12), low


@check("povm")
def q_povm_matches_family(rng, tol):
    worst = max(_maxabs(povm.q_povm_element(phi, 64) - povm.povm_element(np.pi / 4, phi))
                for phi in rng.uniform(0, 2 * np.pi, 16))
    return _le(worst, tol.quadrature)


@check("povm")
def povm_conversion(rng, tol):
    worst = 0.0
    for g1, g2 in ((np.pi / 4, 1.0), (0.3, 0.6), (1.0, 0.5), (0.5, 0.5)):
        conv = povm.povm_convert(g1, g2, nodes=2048)
        for phi in rng.uniform(0, 2 * np.pi, 16):
            worst = max(worst, _maxabs(conv(phi) - povm.povm_element(g1, phi)))
    return _le(worst, tol.quadrature)


# two qubits

@check("twoqubit")
def sum_diff_commutators(rng, tol):
    return _le(max(twoqubit.build_sum_diff().commutator_residuals().values()), tol.algebra)


@check("twoqubit")
def parity_action(rng, tol):
    v = twoqubit.build_sum_diff().v
    worst = _maxabs(v @ v - np.eye(4))
    for pp, pm in rng.uniform(0, 2 * np.pi, (16, 2)):
        for label in (0, 1):
            b = twoqubit.cast_basis_state(pp, pm, label)
            worst = max(worst, _maxabs(v @ b.vector - (-1) ** label * b.vector))
    return _le(worst, tol.closed_form)


@check("twoqubit")
def cast_basis_reparametrisation(rng, tol):
    worst = 0.0
    for pa, pb in rng.uniform(0, 2 * np.pi, (16, 2)):
        for label in (0, 1):
            a = twoqubit._cast_vector(pa + pb, pa - pb, label)
            b = twoqubit._cast_vector(pa + pb + 2 * np.pi, pa - pb, label)
            worst = max(worst, _maxabs(a - b))
    return _le(worst, tol.closed_form)


@check("twoqubit")
def cast_resolution_of_identity(rng, tol):
    return _le(twoqubit.resolution_residual(128), tol.resolution)


def _moment_pairs():
    return [(k, l) for k in (-1, 0, 1) for l in (-1, 0, 1)]


@check("twoqubit")
def casting_fourier_moments(rng, tol):
    worst = 0.0
    for _ in range(100):
        s = core.random_density(2, rng)
        ga, gb = rng.uniform(0.05, 1.0, 2)
        p = twoqubit.product_distribution(s, ga, gb)
        cast = twoqubit.cast_distribution(p)
        for k, l in _moment_pairs():
            lhs = twoqubit.grid_integrate_2d(cast, 32, k, l)
            rhs = twoqubit.grid_integrate_2d(p, 32, k + l, k - l)
            worst = max(worst, abs(lhs - rhs))
    return _le(worst, tol.quadrature)


@check("twoqubit")
def casting_half_harmonics(rng, tol):
    worst = 0.0
    for _ in range(100):
        s = core.random_density(2, rng)
        cast = twoqubit.cast_distribution(twoqubit.product_distribution(s, 1.0, 1.0))
        worst = max(worst, max(abs(v) for v in twoqubit.half_harmonic_coefficients(cast, 16).values()))
    return _le(worst, 1e-10)


@check("twoqubit")
def cast_povm_distribution(rng, tol):
    grid = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    pp, pm = np.meshgrid(grid, grid, indexing="ij")
    low, worst_norm, worst_sym = np.inf, 0.0, 0.0
    for _ in range(20):
        s = core.random_density(2, rng)
        ga, gb = rng.uniform(0.05, 1.0, 2)
        lam = twoqubit.cast_povm(ga, gb)(pp, pm)
        rho = s.density_matrix()
        vals = np.real(np.einsum("...ij,ji->...", lam, rho))
        low = min(low, float(vals.min()))
        worst_norm = max(worst_norm, abs(vals.sum() * (2 * np.pi / 64) ** 2 - 1))
        worst_sym = max(worst_sym, _maxabs(vals - twoqubit.joint_distribution(s, ga, gb)(pp, pm)))
    ok = low >= -1e-10 and worst_norm <= tol.quadrature and worst_sym <= 1e-10
    return bool(ok), max(worst_norm, worst_sym, -low)


# entanglement degree

@check("entangle")
def degree_gamma_invariant(rng, tol):
    worst = 0.0
    for _ in range(100):
        s = core.random_density(2, rng) if rng.random() < 0.5 else core.random_pure(2, rng)
        vals = [entanglement_value(s, ga, gb) for ga in GAMMA_GRID for gb in GAMMA_GRID]
        worst = max(worst, max(vals) - min(vals))
    return _le(worst, tol.closed_form)


def entanglement_value(s, ga, gb):
    return entangle.entanglement_degree(s, ga, gb).degree


@check("entangle")
def degree_in_unit_interval(rng, tol):
    lo, hi = np.inf, -np.inf
    for i in range(10000):
        s = core.random_pure(2, rng) if i % 2 else core.random_density(2, rng)
        d = entanglement_value(s, 1.0, 1.0)
        lo, hi = min(lo, d), max(hi, d)
    ok = lo >= 0.0 and hi <= 1.0 + tol.closed_form
    return bool(ok), float(hi)


@check("entangle")
def degree_zero_on_products(rng, tol):
    worst = max(entanglement_value(core.random_product_density(rng), 1.0, 1.0) for _ in range(1000))
    return _le(worst, tol.closed_form)


@check("entangle")
def dispersions_match_quadrature(rng, tol):
    worst = 0.0
    for _ in range(100):
        s = core.random_density(2, rng)
        ga, gb = rng.uniform(0.05, 1.0, 2)
        cast = twoqubit.cast_distribution(twoqubit.product_distribution(s, ga, gb))
        d_plus = 1 - abs(twoqubit.grid_integrate_2d(cast, 32, 1, 0)) ** 2
        d_minus = 1 - abs(twoqubit.grid_integrate_2d(cast, 32, 0, 1)) ** 2
        closed = entangle.sum_diff_dispersions(s, ga, gb)
        worst = max(worst, abs(closed[0] - d_plus), abs(closed[1] - d_minus))
    return _le(worst, tol.quadrature)


@check("entangle")
def epsilon_family_degree(rng, tol):
    worst = 0.0
    for eps in np.concatenate([np.linspace(0, 1, 11), rng.uniform(0, 1, 100)]):
        for sign in (1, -1):
            s, predicted = entangle.epsilon_family(eps, sign)
            d = entanglement_value(s, 1.0, 1.0)
            worst = max(worst, abs(d - predicted), abs(d - entangle.concurrence(s) ** 2))
    return _le(worst, tol.closed_form)


@check("entangle")
def bell_degree(rng, tol):
    worst = max(abs(entanglement_value(s, 1.0, 1.0) - 1) for s in entangle.bell_states().values())
    return _le(worst, tol.closed_form)


@check("entangle")
def schmidt_round_trip(rng, tol):
    worst = 0.0
    for _ in range(1000):
        s = core.random_pure(2, rng)
        f = entangle.schmidt_decompose(s)
        fid = abs(np.vdot(f.reconstruct(), s.data)) ** 2
        worst = max(worst, 1 - fid, abs(f.kappa1 ** 2 + f.kappa2 ** 2 - 1))
    return _le(worst, tol.closed_form)


@check("entangle")
def concurrence_matches_schmidt(rng, tol):
    worst = 0.0
    for _ in range(200):
        s = core.random_pure(2, rng)
        f = entangle.schmidt_decompose(s)
        rho = core.QuantumState.density(s.density_matrix())
        worst = max(worst, abs(entangle.concurrence(rho) - 2 * f.kappa1 * f.kappa2))
    return _le(worst, tol.maximal)


def run_all(seed=0, tol=DEFAULT_TOL, modules=None):
    """Run every registered check; returns a JSON-ready report."""
    rng = np.random.default_rng(seed)
    results = []
    start = time.perf_counter()
    for module, name, fn in _CHECKS:
        if modules and module not in modules:
            continue
        t0 = time.perf_counter()
        passed, residual = fn(rng, tol)
        results.append({
            "module": module,
            "check": name,
            "passed": bool(passed),
            "residual": float(residual),
            "seconds": round(time.perf_counter() - t0, 4),
        })
    return {
        "seed": seed,
        "passed": all(r["passed"] for r in results),
        "seconds": round(time.perf_counter() - start, 3),
        "checks": results,
    }
