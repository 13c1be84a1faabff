"""JSON state files.

::

    {"qubits": 2, "type": "pure", "data": [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]]}

``data`` lists complex numbers as ``[re, im]`` pairs: 2 or 4 amplitudes for a
pure state, 4 or 16 row-major entries for a density matrix.
"""
import json

import numpy as np

from .core import QuantumState, validate_state


class StateFileError(ValueError):
    """Raised for unreadable, malformed or physically invalid state files."""


def _complex(pair, where):
    if isinstance(pair, (int, float)) and not isinstance(pair, bool):
        return complex(pair)
    if not (isinstance(pair, list) and len(pair) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)):
        raise StateFileError(f"{where}: expected [re, im] pair of numbers, got {pair!r}")
    return complex(pair[0], pair[1])


def decode_state(obj, source="<state>", check=True):
    if not isinstance(obj, dict):
        raise StateFileError(f"{source}: top level must be an object")
    for key in ("qubits", "type", "data"):
        if key not in obj:
            raise StateFileError(f"{source}: missing field {key!r}")
    qubits, kind, data = obj["qubits"], obj["type"], obj["data"]
    if qubits not in (1, 2):
        raise StateFileError(f"{source}: field 'qubits' must be 1 or 2, got {qubits!r}")
    if kind not in ("pure", "density"):
        raise StateFileError(f"{source}: field 'type' must be 'pure' or 'density', got {kind!r}")
    dim = 2 ** qubits
    expected = dim if kind == "pure" else dim * dim
    if not isinstance(data, list) or len(data) != expected:
        got = len(data) if isinstance(data, list) else type(data).__name__
        raise StateFileError(f"{source}: field 'data' must hold {expected} entries for a "
                             f"{qubits}-qubit {kind} state, got {got}")
    values = np.array([_complex(p, f"{source}: data[{i}]") for i, p in enumerate(data)])
    if kind == "density":
        values = values.reshape(dim, dim)
    state = QuantumState(values, kind)
    if check:
        report = validate_state(state)
        if not report:
            failed = ", ".join(f"{k} (residual {r:.3g})" for k, (ok, r) in report.checks.items() if not ok)
            raise StateFileError(f"{source}: invalid state: {failed}")
    return state


def load_state(path, check=True):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise StateFileError(f"{path}: cannot read state file: {exc.strerror or exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return decode_state(obj, str(path), check=check)


def encode_state(state):
    data = state.data.reshape(-1)
    return {
        "qubits": state.qubits,
        "type": state.kind,
        "data": [[float(z.real), float(z.imag)] for z in data],
    }


def dump_state(state, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(encode_state(state), fh)
        fh.write("\n")
