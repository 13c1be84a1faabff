"""Small dense complex linear algebra for one and two qubits.

Operators are plain ``numpy`` arrays of shape (2, 2) or (4, 4).  Two-qubit
operators use the basis order |00>, |01>, |10>, |11> with qubit A as the left
Kronecker factor.
"""
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOL

__all__ = [
    "QuantumState",
    "ValidationReport",
    "as_state",
    "kron",
    "partial_trace",
    "dagger",
    "commutator",
    "hermitian_eigen",
    "validate_state",
    "random_unitary",
    "random_pure",
    "random_density",
    "random_product_density",
]

_DIMS = {2: 1, 4: 2}


def _check_square(m, dims=(2, 4), name="matrix"):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in dims:
        raise ValueError(f"{name} must be square with dimension in {dims}, got shape {m.shape}")
    return m


@dataclass(frozen=True, eq=False)
class QuantumState:
    """A one- or two-qubit state, either a ket or a density matrix.

    No physical validity is enforced on construction so that invalid input
    can still be reported on by :func:`validate_state`.
    """

    data: np.ndarray
    kind: str = "pure"
    qubits: int = field(init=False)

    def __post_init__(self):
        data = np.array(self.data, dtype=complex)
        if self.kind == "pure":
            if data.ndim != 1 or data.shape[0] not in _DIMS:
                raise ValueError(f"pure state must be a vector of length 2 or 4, got shape {data.shape}")
        elif self.kind == "density":
            data = _check_square(data, name="density matrix")
        else:
            raise ValueError(f"kind must be 'pure' or 'density', got {self.kind!r}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "qubits", _DIMS[data.shape[0]])

    @classmethod
    def pure(cls, vector):
        return cls(vector, "pure")

    @classmethod
    def density(cls, matrix):
        return cls(matrix, "density")

    @property
    def dim(self):
        return self.data.shape[0]

    @property
    def is_pure(self):
        return self.kind == "pure"

    def density_matrix(self):
        if self.kind == "pure":
            return np.outer(self.data, self.data.conj())
        return np.array(self.data)

    def __repr__(self):
        return f"QuantumState(kind={self.kind!r}, qubits={self.qubits}, data={self.data.tolist()!r})"


def as_state(s):
    """Coerce a ket (1D array), density matrix (2D array) or QuantumState."""
    if isinstance(s, QuantumState):
        return s
    arr = np.asarray(s, dtype=complex)
    return QuantumState(arr, "pure" if arr.ndim == 1 else "density")


def kron(a, b):
    """Kronecker product of two single-qubit operators, A on the left."""
    a = _check_square(a, dims=(2,), name="left factor")
    b = _check_square(b, dims=(2,), name="right factor")
    return np.kron(a, b)


def partial_trace(m, keep="A"):
    """Reduce a two-qubit operator to the subsystem ``keep`` ('A' or 'B')."""
    m = _check_square(m, dims=(4,), name="two-qubit operator")
    t = m.reshape(2, 2, 2, 2)  # indices a, b, a', b'
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def dagger(m):
    return np.conj(np.transpose(m))


def commutator(a, b):
    return a @ b - b @ a


def hermitian_eigen(m, tol=DEFAULT_TOL.hermitian_input):
    """Eigenvalues (descending) and orthonormal eigenvectors (columns).

    Raises ``ValueError`` if ``m`` departs from Hermiticity by more than ``tol``
    in any entry.
    """
    m = _check_square(m)
    asym = np.max(np.abs(m - dagger(m)))
    if asym > tol:
        raise ValueError(f"matrix is not Hermitian (max |m - m^H| = {asym:.3g})")
    w, v = np.linalg.eigh((m + dagger(m)) / 2)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    checks: dict  # name -> (passed, residual)

    def __bool__(self):
        return self.passed


def validate_state(s, tol=DEFAULT_TOL):
    """Check the physical invariants of a state and report residuals.

    Never raises on physically invalid data; shape errors are caught when the
    state is built.
    """
    s = as_state(s)
    checks = {}
    if s.is_pure:
        r = abs(np.linalg.norm(s.data) - 1.0)
        checks["norm"] = (bool(r <= tol.norm), float(r))
    else:
        m = s.data
        herm = float(np.max(np.abs(m - dagger(m))))
        checks["hermitian"] = (bool(herm <= tol.norm), herm)
        tr = float(abs(np.trace(m) - 1.0))
        checks["trace"] = (bool(tr <= tol.norm), tr)
        min_eig = float(np.min(np.linalg.eigvalsh((m + dagger(m)) / 2)))
        checks["positive"] = (bool(min_eig >= -tol.psd), min_eig)
    return ValidationReport(all(ok for ok, _ in checks.values()), checks)


# random states for property tests and the validation suite

def random_unitary(dim, rng):
    """Haar-random unitary via QR of a Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_pure(qubits, rng):
    dim = 2 ** qubits
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return QuantumState.pure(v / np.linalg.norm(v))


def random_density(qubits, rng, rank=None):
    """Random mixed state: a random-rank mixture of random-unitary-rotated projectors."""
    dim = 2 ** qubits
    if rank is None:
        rank = int(rng.integers(1, dim + 1))
    u = random_unitary(dim, rng)
    p = rng.dirichlet(np.ones(rank))
    rho = (u[:, :rank] * p) @ dagger(u[:, :rank])
    return QuantumState.density((rho + dagger(rho)) / 2)


def random_product_density(rng, pure_factors=None):
    """Product state rho_A (x) rho_B with independently drawn (pure or mixed) factors."""
    factors = []
    for _ in range(2):
        pure = rng.random() < 0.5 if pure_factors is None else pure_factors
        s = random_pure(1, rng) if pure else random_density(1, rng, rank=2)
        factors.append(s.density_matrix())
    return QuantumState.density(kron(*factors))
