"""Kernel backend selection.

The compiled Cython module is used when it was built; otherwise the numpy
implementations are loaded. Both expose ``fwht``, ``grover_run`` and
``grover_run_circuit`` with identical in-place semantics.
"""
from types import ModuleType

from grovermem import _pykernels

try:
    from grovermem import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS: dict[str, ModuleType] = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

BACKEND = "cython" if _ckernels is not None else "python"
_active = BACKENDS[BACKEND]


def get_backend(name: str | None = None) -> ModuleType:
    """Return the kernel module called ``name`` (default: the active one)."""
    if name is None:
        return _active
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {sorted(BACKENDS)}") from None


def set_backend(name: str) -> None:
    global _active, BACKEND
    _active = get_backend(name)
    BACKEND = name


def fwht(a):
    return _active.fwht(a)


def grover_run(psi, marked, rot_marked, coeff, iterations):
    return _active.grover_run(psi, marked, rot_marked, coeff, iterations)


def grover_run_circuit(psi, marked, rot_marked, rot_zero, iterations):
    return _active.grover_run_circuit(psi, marked, rot_marked, rot_zero, iterations)
