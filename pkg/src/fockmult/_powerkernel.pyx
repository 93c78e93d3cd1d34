# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled power-iteration loop over a CSC matrix.

Semantics mirror fockmult._power._power_iterate_py exactly: Rayleigh
quotients lam_t = ||A x_t||^2 with unit x_t, stopping when consecutive
quotients differ by at most tol * max(1, lam_prev). The start vector is
mutated in place; callers pass a copy.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


def power_iterate(const long long[::1] indptr,
                  const long long[::1] indices,
                  const double complex[::1] data,
                  Py_ssize_t nrows,
                  double complex[::1] x,
                  double tol,
                  long max_iters):
    """Run power iteration on A^H A; returns (lam, iterations, converged)."""
    cdef Py_ssize_t ncols = indptr.shape[0] - 1
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] wbuf = np.zeros(nrows, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zbuf = np.zeros(ncols, dtype=np.complex128)
    cdef double complex[::1] w = wbuf
    cdef double complex[::1] z = zbuf
    cdef double lam = 0.0, lam_prev = 0.0, nz, thresh
    cdef double complex xj, s
    cdef Py_ssize_t i, j, k
    cdef long it

    for it in range(1, max_iters + 1):
        for i in range(nrows):
            w[i] = 0
        for j in range(ncols):
            xj = x[j]
            if xj != 0:
                for k in range(indptr[j], indptr[j + 1]):
                    w[indices[k]] = w[indices[k]] + data[k] * xj
        lam = 0.0
        for i in range(nrows):
            lam += w[i].real * w[i].real + w[i].imag * w[i].imag
        if it > 1:
            thresh = tol * (lam_prev if lam_prev > 1.0 else 1.0)
            if fabs(lam - lam_prev) <= thresh:
                return lam, it, True
        for j in range(ncols):
            s = 0
            for k in range(indptr[j], indptr[j + 1]):
                s = s + data[k].conjugate() * w[indices[k]]
            z[j] = s
        nz = 0.0
        for j in range(ncols):
            nz += z[j].real * z[j].real + z[j].imag * z[j].imag
        if nz == 0.0:
            return lam, it, False
        nz = sqrt(nz)
        for j in range(ncols):
            x[j] = z[j] / nz
        lam_prev = lam

    return lam, max_iters, False
