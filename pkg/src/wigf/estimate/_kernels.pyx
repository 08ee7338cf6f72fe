# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gaussian-kernel sums used by the kernel density estimator."""
import numpy as np

from libc.math cimport erfc, exp, log

cdef double INV_SQRT_2PI = 0.3989422804014327
cdef double INV_SQRT_2 = 0.7071067811865476


def gauss_kde(const double[::1] x, const double[::1] data, double b):
    """f(x_j) = (1/(n b)) sum_i phi((x_j - X_i)/b) for every node x_j."""
    cdef Py_ssize_t m = x.shape[0], n = data.shape[0], j, i
    cdef double acc, z, scale = INV_SQRT_2PI / (n * b), inv_b = 1.0 / b
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for j in range(m):
            acc = 0.0
            for i in range(n):
                z = (x[j] - data[i]) * inv_b
                acc += exp(-0.5 * z * z)
            o[j] = acc * scale
    return out


def gauss_tail(double t, const double[::1] data, double b):
    """(1/n) sum_i P(Z > (t - X_i)/b): the kernel estimate of S(t)."""
    cdef Py_ssize_t n = data.shape[0], i
    cdef double acc = 0.0, inv_b = 1.0 / b
    with nogil:
        for i in range(n):
            acc += 0.5 * erfc((t - data[i]) * inv_b * INV_SQRT_2)
    return acc / n


def gauss_residual_integrand(const double[::1] x, const double[::1] data, double b,
                             double beta, double log_surv):
    """x (f(x)/S)^beta at every node, with log S supplied."""
    cdef Py_ssize_t m = x.shape[0]
    f = gauss_kde(x, data, b)
    cdef double[::1] fv = f
    cdef Py_ssize_t j
    with nogil:
        for j in range(m):
            if fv[j] > 0.0:
                fv[j] = x[j] * exp(beta * (log(fv[j]) - log_surv))
            else:
                fv[j] = 0.0
    return f

