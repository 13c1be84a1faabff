"""Numerical tolerances shared by the library, the validation suite and the tests."""
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    norm: float = 1e-12          # pure-state norm, density trace, Hermiticity of states
    psd: float = 1e-10           # smallest admissible density-matrix eigenvalue is -psd
    hermitian_input: float = 1e-10
    eigen_orthonormal: float = 1e-10
    eigen_reconstruction: float = 1e-9
    algebra: float = 1e-14       # entrywise residual of exact operator identities
    closed_form: float = 1e-12   # closed-form results evaluated in floating point
    quadrature: float = 1e-9     # 1D/2D trapezoid on band-limited periodic integrands
    resolution: float = 1e-6     # v-basis resolution of identity
    maximal: float = 1e-10       # partial-trace test for maximal entanglement

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not value > 0:
                raise ValueError(f"tolerance {f.name!r} must be positive, got {value!r}")

    def scaled(self, factor):
        if not factor > 0:
            raise ValueError(f"tolerance scale must be positive, got {factor!r}")
        return replace(self, **{f.name: getattr(self, f.name) * factor for f in fields(self)})


DEFAULT_TOL = Tolerances()
