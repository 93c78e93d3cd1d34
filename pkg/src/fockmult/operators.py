"""Exact finite truncations of convolution operators.

An OperatorMatrix carries its domain and codomain windows next to a sparse
complex matrix. Multiplication matrices are built column-exactly: column j
is the full coefficient vector of the operator applied to the j-th basis
element, and the codomain is the smallest canonical window holding every
product. Nothing is ever silently projected away, so restricted norms grow
monotonically toward the operator norm as the domain level increases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO

import numpy as np
import scipy.sparse as sp

from ._power import (
    DEFAULT_MAX_ITERS,
    DEFAULT_SEED,
    DEFAULT_TOL,
    NormEstimate,
    spectral_norm,
)
from .errors import IncompatibleWindowError, UnsupportedOperationError
from .fock import FockVector
from .semigroups import (
    CAPACITY_DEFAULT,
    Element,
    FreeMonoid,
    MonoidSpec,
    Window,
    reverse_word,
    window,
)


@dataclass
class OperatorMatrix:
    """Sparse matrix between two windows; rows follow the codomain order."""

    domain: Window
    codomain: Window
    mat: sp.csc_matrix

    @property
    def shape(self) -> tuple:
        return self.mat.shape

    def to_dense(self) -> np.ndarray:
        return self.mat.toarray()

    def entry(self, u: Element, r: Element) -> complex:
        return complex(self.mat[self.codomain.position(u), self.domain.position(r)])

    def apply(self, f: FockVector) -> FockVector:
        if f.window != self.domain:
            raise IncompatibleWindowError(
                f"vector on {f.window.describe()}, operator domain {self.domain.describe()}"
            )
        x = np.zeros(len(self.domain), dtype=np.complex128)
        for el, c in f.coeffs.items():
            x[self.domain.position(el)] = c
        y = self.mat.dot(x)
        coeffs = {
            self.codomain.elements[i]: y[i] for i in np.flatnonzero(y != 0)
        }
        return FockVector(self.codomain, coeffs, validate=False)

    def __repr__(self) -> str:
        return (
            f"OperatorMatrix({self.domain.describe()} -> "
            f"{self.codomain.describe()}, nnz={self.mat.nnz})"
        )


def _mult_matrix(
    phi: FockVector, domain: Window, side: str, cap: int
) -> OperatorMatrix:
    spec = domain.spec
    if phi.window.spec != spec:
        raise IncompatibleWindowError("symbol and domain must share the spec")
    rows_el = []
    cols = []
    data = []
    max_lvl = 0
    for j, r in enumerate(domain.elements):
        for s, c in phi.coeffs.items():
            u = spec.compose(s, r) if side == "left" else spec.compose(r, s)
            lvl = spec.element_level(u)
            if lvl > max_lvl:
                max_lvl = lvl
            rows_el.append(u)
            cols.append(j)
            data.append(c)
    if max_lvl <= domain.level:
        codomain = domain
    else:
        codomain = window(spec, max_lvl, cap=cap)
    rows = [codomain.position(u) for u in rows_el]
    mat = sp.coo_matrix(
        (np.array(data, dtype=np.complex128), (rows, cols)),
        shape=(len(codomain), len(domain)),
    ).tocsc()
    return OperatorMatrix(domain, codomain, mat)


def left_mult_matrix(
    spec: MonoidSpec,
    phi: FockVector,
    domain: Window,
    cap: int = CAPACITY_DEFAULT,
) -> OperatorMatrix:
    """Matrix of f |-> phi * f on the domain window, columns exact."""
    if domain.spec != spec:
        raise IncompatibleWindowError("domain window does not match the spec")
    return _mult_matrix(phi, domain, "left", cap)


def right_mult_matrix(
    spec: MonoidSpec,
    phi: FockVector,
    domain: Window,
    cap: int = CAPACITY_DEFAULT,
) -> OperatorMatrix:
    """Matrix of f |-> f * phi on the domain window, columns exact."""
    if domain.spec != spec:
        raise IncompatibleWindowError("domain window does not match the spec")
    return _mult_matrix(phi, domain, "right", cap)


def lrr_matrix(
    spec: MonoidSpec,
    s: Element,
    domain: Window,
    cap: int = CAPACITY_DEFAULT,
) -> OperatorMatrix:
    """Matrix of the isometry V_s: delta_r |-> delta_{s r}."""
    spec.validate(s)
    phi = FockVector(
        window(spec, spec.element_level(s), cap=cap), {s: 1.0 + 0j}, validate=False
    )
    return left_mult_matrix(spec, phi, domain, cap=cap)


@dataclass
class AntiLinearU:
    """The involution (U f)(g) = conj(f(g^{-1})) as a permutation + conj.

    Not a linear matrix; apply() is the only sanctioned action. The
    permutation satisfies perm[i] = position of elements[i]^{-1}.
    """

    window: Window
    perm: np.ndarray

    def apply(self, f: FockVector) -> FockVector:
        if f.window != self.window:
            raise IncompatibleWindowError("vector lives on a different window")
        spec = self.window.spec
        out = {spec.invert(x): c.conjugate() for x, c in f.coeffs.items()}
        return FockVector(self.window, out)

    def apply_to_array(self, x: np.ndarray) -> np.ndarray:
        return np.conj(x[self.perm])


def u_action(spec: MonoidSpec, win: Window) -> AntiLinearU:
    """Build U on a group window (canonical group windows are inversion-closed)."""
    if not spec.is_group:
        raise UnsupportedOperationError("U needs a group spec")
    if win.spec != spec:
        raise IncompatibleWindowError("window does not match the spec")
    perm = np.array([win.position(spec.invert(x)) for x in win.elements])
    return AntiLinearU(win, perm)


def flip_matrix(spec: MonoidSpec, win: Window) -> OperatorMatrix:
    """Word-reversal permutation W on a free-monoid window; W^2 = 1."""
    if not isinstance(spec, FreeMonoid):
        raise UnsupportedOperationError("flip is defined on free monoids")
    if win.spec != spec:
        raise IncompatibleWindowError("window does not match the spec")
    n = len(win)
    rows = [win.position(reverse_word(spec, x)) for x in win.elements]
    mat = sp.coo_matrix(
        (np.ones(n, dtype=np.complex128), (rows, range(n))), shape=(n, n)
    ).tocsc()
    return OperatorMatrix(win, win, mat)


def adjoint(a: OperatorMatrix) -> OperatorMatrix:
    """Hermitian adjoint; swaps domain and codomain."""
    return OperatorMatrix(a.codomain, a.domain, a.mat.getH().tocsc())


def sharp_of(a: OperatorMatrix) -> OperatorMatrix:
    """Conjugation by U: (A#)[u, v] = conj(A[u^{-1}, v^{-1}]).

    Needs a square matrix on a single group window. For a multiplier pair
    this realizes R# = L* and L# = R*.
    """
    win = a.domain
    if a.codomain != win:
        raise IncompatibleWindowError("sharp needs matching domain and codomain")
    if not win.spec.is_group:
        raise UnsupportedOperationError("sharp needs a group spec")
    perm = np.array([win.position(win.spec.invert(x)) for x in win.elements])
    b = a.mat.conj().tocsr()[perm].tocsc()[:, perm]
    return OperatorMatrix(win, win, b.tocsc())


def multiply(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """Composition a . b; b's codomain must equal a's domain exactly."""
    if b.codomain != a.domain:
        raise IncompatibleWindowError(
            f"cannot compose: {b.codomain.describe()} != {a.domain.describe()}"
        )
    return OperatorMatrix(b.domain, a.codomain, (a.mat @ b.mat).tocsc())


def embed(a: OperatorMatrix, codomain: Window) -> OperatorMatrix:
    """Re-express `a` with a larger codomain window (zero rows added)."""
    if codomain == a.codomain:
        return a
    if codomain.spec != a.codomain.spec or codomain.level < a.codomain.level:
        raise IncompatibleWindowError(
            f"cannot embed {a.codomain.describe()} into {codomain.describe()}"
        )
    rowmap = np.array([codomain.position(x) for x in a.codomain.elements])
    coo = a.mat.tocoo()
    mat = sp.coo_matrix(
        (coo.data, (rowmap[coo.row], coo.col)),
        shape=(len(codomain), len(a.domain)),
    ).tocsc()
    return OperatorMatrix(a.domain, codomain, mat)


def operator_norm(
    a,
    tol: float = DEFAULT_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
    seed: int = DEFAULT_SEED,
    backend: str | None = None,
) -> NormEstimate:
    """Largest singular value via seeded power iteration on A^H A.

    Accepts an OperatorMatrix, a scipy sparse matrix, or a dense array.
    A zero matrix short-circuits to sigma = 0. The estimate approaches the
    true norm from below; callers must check `converged`.
    """
    mat = a.mat if isinstance(a, OperatorMatrix) else a
    return spectral_norm(mat, tol=tol, max_iters=max_iters, seed=seed, backend=backend)


def dump_matrix_csv(a: OperatorMatrix, fh: IO[str]) -> None:
    """Dense CSV dump with a window-descriptor header comment.

    Entries print as re+imj with 17 significant digits; rows follow the
    codomain order, columns the domain order.
    """
    fh.write(f"# domain={a.domain.describe()} codomain={a.codomain.describe()}\n")
    dense = a.to_dense()
    for row in dense:
        fh.write(",".join(f"{v.real:.17g}{v.imag:+.17g}j" for v in row))
        fh.write("\n")
