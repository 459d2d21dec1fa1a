"""Numpy implementations of the hot loops.

Same signatures and in-place semantics as the compiled ``_ckernels`` module;
used whenever the extension is not built.
"""
import numpy as np


def fwht(a):
    """Unnormalized in-place Walsh-Hadamard butterflies on a complex128 vector."""
    n = a.shape[0]
    if n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    h = 1
    while h < n:
        view = a.reshape(-1, 2, h)
        upper = view[:, 0, :].copy()
        view[:, 0, :] += view[:, 1, :]
        np.subtract(upper, view[:, 1, :], out=view[:, 1, :])
        h *= 2
    return a


def grover_run(psi, marked, rot_marked, coeff, iterations):
    """Run ``iterations`` projector-form generalized Grover steps in place.

    Each step multiplies ``psi[marked]`` by ``rot_marked`` and then maps
    ``psi -> -psi + coeff * mean(psi)`` where ``coeff = 1 - exp(i*phi)``.
    Returns the marked-item probability before each step and after the last.
    """
    n = psi.shape[0]
    probs = np.empty(iterations + 1)
    probs[0] = abs(psi[marked]) ** 2
    for t in range(iterations):
        psi[marked] *= rot_marked
        shift = coeff * psi.sum() / n
        np.negative(psi, out=psi)
        psi += shift
        probs[t + 1] = abs(psi[marked]) ** 2
    return probs


def grover_run_circuit(psi, marked, rot_marked, rot_zero, iterations):
    """Same as :func:`grover_run` but through explicit W, R_0(phi), W gates."""
    n = psi.shape[0]
    inv_sqrt = 1.0 / np.sqrt(n)
    probs = np.empty(iterations + 1)
    probs[0] = abs(psi[marked]) ** 2
    for t in range(iterations):
        psi[marked] *= rot_marked
        fwht(psi)
        psi *= inv_sqrt
        psi[0] *= rot_zero
        fwht(psi)
        psi *= -inv_sqrt
        probs[t + 1] = abs(psi[marked]) ** 2
    return probs
