"""Spectral-norm estimation by power iteration on A^H A.

Two interchangeable backends compute the same iteration: a Cython kernel
(fockmult._powerkernel, built at install time) and a pure numpy loop. The
compiled kernel is picked by default when present; `backend=` forces one.
benchmarks/bench_power.py measures the difference.

The iteration is deterministic: the start vector comes from a seeded
generator, and a single deterministic phase-rotated restart is attempted
before giving up, so equal inputs give equal outputs on a fixed backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

try:
    from . import _powerkernel

    _HAVE_KERNEL = True
except ImportError:
    _powerkernel = None
    _HAVE_KERNEL = False

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITERS = 100_000
DEFAULT_SEED = 0x5EED


@dataclass(frozen=True)
class NormEstimate:
    """Largest-singular-value estimate. `converged` must be checked."""

    sigma: float
    iterations: int
    converged: bool
    backend: str


def available_backends() -> tuple:
    return ("cython", "python") if _HAVE_KERNEL else ("python",)


def default_backend() -> str:
    return "cython" if _HAVE_KERNEL else "python"


def _as_csc(a) -> sp.csc_matrix:
    if sp.issparse(a):
        m = a.tocsc()
    else:
        m = sp.csc_matrix(np.asarray(a))
    if m.dtype != np.complex128:
        m = m.astype(np.complex128)
    return m


def _power_iterate_py(mat, math_, x, tol, max_iters):
    """Numpy twin of the compiled kernel; identical update and stop rule."""
    lam = 0.0
    lam_prev = 0.0
    for it in range(1, max_iters + 1):
        w = mat.dot(x)
        lam = float(np.vdot(w, w).real)
        if it > 1 and abs(lam - lam_prev) <= tol * max(1.0, lam_prev):
            return lam, it, True
        z = math_.dot(w)
        nz = math.sqrt(float(np.vdot(z, z).real))
        if nz == 0.0:
            return lam, it, False
        x = z / nz
        lam_prev = lam
    return lam, max_iters, False


def spectral_norm(
    a,
    tol: float = DEFAULT_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
    seed: int = DEFAULT_SEED,
    backend: str | None = None,
) -> NormEstimate:
    """Estimate the largest singular value of `a` (matrix-like or sparse).

    Rayleigh quotients of A^H A increase toward sigma_max^2; iteration stops
    when |lam_{t+1} - lam_t| <= tol * max(1, lam_t). On a stall the run is
    restarted once from a deterministically phase-rotated start vector, and
    the best estimate is returned with converged=False if that stalls too.
    """
    if backend is None:
        backend = default_backend()
    if backend not in available_backends():
        raise ValueError(f"unknown or unavailable backend {backend!r}")

    mat = _as_csc(a)
    m, n = mat.shape
    if m == 0 or n == 0 or mat.nnz == 0 or not np.any(mat.data):
        return NormEstimate(0.0, 0, True, backend)

    rng = np.random.default_rng(seed)
    x0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x0 /= np.linalg.norm(x0)

    if backend == "cython":
        indptr = np.asarray(mat.indptr, dtype=np.int64)
        indices = np.asarray(mat.indices, dtype=np.int64)
        data = np.asarray(mat.data, dtype=np.complex128)

        def run(x):
            return _powerkernel.power_iterate(
                indptr, indices, data, m, x.copy(), tol, max_iters
            )

    else:
        mat_h = mat.getH().tocsr()

        def run(x):
            return _power_iterate_py(mat, mat_h, x.copy(), tol, max_iters)

    lam, iters, ok = run(x0)
    if not ok:
        x1 = x0 * np.exp(2j * np.pi * np.arange(n) / n)
        x1 /= np.linalg.norm(x1)
        lam2, iters2, ok = run(x1)
        lam = max(lam, lam2)
        iters += iters2
    return NormEstimate(math.sqrt(max(lam, 0.0)), iters, ok, backend)
