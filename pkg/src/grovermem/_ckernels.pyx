# cython: language_level=3
"""Compiled hot loops; mirrors ``_pykernels`` exactly."""
import numpy as np
from libc.math cimport sqrt


cdef inline double _abs2(double complex z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef void _fwht(double complex[::1] a) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t h = 1
    cdef Py_ssize_t i, k
    cdef double complex x, y
    while h < n:
        i = 0
        while i < n:
            for k in range(i, i + h):
                x = a[k]
                y = a[k + h]
                a[k] = x + y
                a[k + h] = x - y
            i += 2 * h
        h *= 2


def fwht(a):
    cdef double complex[::1] view = a
    cdef Py_ssize_t n = view.shape[0]
    if n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    with nogil:
        _fwht(view)
    return a


def grover_run(psi, Py_ssize_t marked, double complex rot_marked,
               double complex coeff, Py_ssize_t iterations):
    cdef double complex[::1] v = psi
    cdef Py_ssize_t n = v.shape[0]
    probs = np.empty(iterations + 1)
    cdef double[::1] p = probs
    cdef Py_ssize_t t, i
    cdef double complex total, shift
    p[0] = _abs2(v[marked])
    with nogil:
        for t in range(iterations):
            v[marked] = v[marked] * rot_marked
            total = 0
            for i in range(n):
                total = total + v[i]
            shift = coeff * total / n
            for i in range(n):
                v[i] = shift - v[i]
            p[t + 1] = _abs2(v[marked])
    return probs


def grover_run_circuit(psi, Py_ssize_t marked, double complex rot_marked,
                       double complex rot_zero, Py_ssize_t iterations):
    cdef double complex[::1] v = psi
    cdef Py_ssize_t n = v.shape[0]
    if n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    probs = np.empty(iterations + 1)
    cdef double[::1] p = probs
    cdef double inv_sqrt = 1.0 / sqrt(<double>n)
    cdef Py_ssize_t t, i
    p[0] = _abs2(v[marked])
    with nogil:
        for t in range(iterations):
            v[marked] = v[marked] * rot_marked
            _fwht(v)
            for i in range(n):
                v[i] = v[i] * inv_sqrt
            v[0] = v[0] * rot_zero
            _fwht(v)
            for i in range(n):
                v[i] = v[i] * (-inv_sqrt)
            p[t + 1] = _abs2(v[marked])
    return probs
