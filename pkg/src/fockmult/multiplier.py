"""Multiplier pairs (L, R) generated by a polynomial symbol.

Every pair is symbol-generated: L is left convolution by the symbol, R is
right convolution, both realized as exact-column truncations on the pair's
window level. The pair norm is max(||L||, ||R||) at that truncation; as the
level grows the values increase toward the norm on the full sequence space.

Products follow (L1, R1)(L2, R2) = (L1 L2, R2 R1); on symbols that is plain
convolution, and the component rule is enforced by tests rather than trusted
blindly. Adjoints exist on group windows: the adjoint pair is generated by
the U-image of the symbol.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._power import DEFAULT_MAX_ITERS, DEFAULT_SEED, DEFAULT_TOL, NormEstimate
from .errors import (
    IncompatibleWindowError,
    OutOfWindowError,
    UnsupportedOperationError,
)
from .fock import FockVector, apply_U, convolve_left, convolve_right, random_polynomial
from .operators import (
    OperatorMatrix,
    left_mult_matrix,
    operator_norm,
    right_mult_matrix,
)
from .semigroups import (
    CAPACITY_DEFAULT,
    Cyclic,
    FreeMonoid,
    MonoidSpec,
    NonNegIntegers,
    NonNegVectors,
    window,
)


@dataclass
class MultiplierPair:
    """Symbol-generated (L, R) truncated at `level`."""

    spec: MonoidSpec
    symbol: FockVector
    level: int
    lmat: OperatorMatrix
    rmat: OperatorMatrix

    def __repr__(self) -> str:
        return (
            f"MultiplierPair({self.spec.short_name()}, level={self.level}, "
            f"{len(self.symbol)} terms)"
        )


def make_pair(
    spec: MonoidSpec,
    symbol: FockVector,
    level: int,
    cap: int = CAPACITY_DEFAULT,
) -> MultiplierPair:
    """Build the pair generated by `symbol` on the level-`level` window."""
    if symbol.window.spec != spec:
        raise IncompatibleWindowError("symbol spec does not match")
    need = symbol.degree()
    if level < need:
        raise OutOfWindowError(
            f"symbol has degree {need}, does not fit window level {level}"
        )
    dom = window(spec, level, cap=cap)
    sym = symbol.rebase(dom)
    lmat = left_mult_matrix(spec, sym, dom, cap=cap)
    rmat = right_mult_matrix(spec, sym, dom, cap=cap)
    return MultiplierPair(spec, sym, level, lmat, rmat)


@dataclass(frozen=True)
class PairNormEstimate:
    value: float
    l_estimate: NormEstimate
    r_estimate: NormEstimate

    @property
    def converged(self) -> bool:
        return self.l_estimate.converged and self.r_estimate.converged


def pair_norm_estimate(
    p: MultiplierPair,
    tol: float = DEFAULT_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
    seed: int = DEFAULT_SEED,
    backend: str | None = None,
) -> PairNormEstimate:
    kw = dict(tol=tol, max_iters=max_iters, seed=seed, backend=backend)
    le = operator_norm(p.lmat, **kw)
    re = operator_norm(p.rmat, **kw)
    return PairNormEstimate(max(le.sigma, re.sigma), le, re)


def pair_norm(p: MultiplierPair, **kw) -> float:
    """max(||L||, ||R||) on the pair's truncation."""
    return pair_norm_estimate(p, **kw).value


def pair_add(p: MultiplierPair, q: MultiplierPair, cap: int = CAPACITY_DEFAULT) -> MultiplierPair:
    if p.spec != q.spec:
        raise IncompatibleWindowError("pairs live over different monoids")
    level = max(p.level, q.level)
    win = window(p.spec, level, cap=cap)
    return make_pair(p.spec, p.symbol.rebase(win) + q.symbol.rebase(win), level, cap=cap)


def pair_scale(c: complex, p: MultiplierPair, cap: int = CAPACITY_DEFAULT) -> MultiplierPair:
    return make_pair(p.spec, p.symbol.scale(c), p.level, cap=cap)


def pair_product(p: MultiplierPair, q: MultiplierPair, cap: int = CAPACITY_DEFAULT) -> MultiplierPair:
    """Pair generated by the convolution of the symbols.

    The component identities L_{pq} = L_p L_q and R_{pq} = R_q R_p hold on
    re-based windows and are asserted in the test suite.
    """
    if p.spec != q.spec:
        raise IncompatibleWindowError("pairs live over different monoids")
    deg = p.symbol.degree() + q.symbol.degree()
    level = max(p.level, q.level, deg)
    target = window(p.spec, max(deg, level), cap=cap)
    sym = convolve_left(p.symbol.rebase(target), q.symbol.rebase(target), target)
    return make_pair(p.spec, sym, level, cap=cap)


def pair_adjoint(p: MultiplierPair, cap: int = CAPACITY_DEFAULT) -> MultiplierPair:
    """Adjoint pair on a group window, generated by U(symbol).

    Componentwise this is (sharp(R), sharp(L)) = (L*, R*)# — the test suite
    pins the matrix identities sharp_of(rmat) == adjoint(lmat)."""
    if not p.spec.is_group:
        raise UnsupportedOperationError("adjoints need a group spec")
    return make_pair(p.spec, apply_U(p.symbol), p.level, cap=cap)


# -- intertwining -------------------------------------------------------------


@dataclass(frozen=True)
class IntertwineVerdict:
    passed: bool
    max_residual: float
    trials: int
    witness: tuple | None = None


def verify_intertwine(
    p: MultiplierPair,
    trials: int = 20,
    seed: int = 0,
    tol: float = 1e-12,
    cap: int = CAPACITY_DEFAULT,
) -> IntertwineVerdict:
    """Check f * L(g) = R(f) * g on random polynomials, through the matrices.

    The pair's stored matrices are exercised directly, so a forged pair
    whose components come from different symbols is caught.
    """
    spec = p.spec
    rng = np.random.default_rng(seed)
    sample_level = min(p.level, 2)
    sw = window(spec, sample_level, cap=cap)
    dom = p.lmat.domain
    tgt_level = max(
        sample_level + p.lmat.codomain.level,
        p.rmat.codomain.level + sample_level,
    )
    target = window(spec, tgt_level, cap=cap)
    worst = 0.0
    witness = None
    for _ in range(trials):
        f = random_polynomial(rng, sw, max_terms=4)
        g = random_polynomial(rng, sw, max_terms=4)
        lg = p.lmat.apply(g.rebase(dom))
        rf = p.rmat.apply(f.rebase(dom))
        lhs = convolve_left(f.rebase(target), lg.rebase(target), target)
        rhs = convolve_right(rf.rebase(target), g.rebase(target), target)
        res = (lhs - rhs).norm()
        if res > worst:
            worst = res
            witness = (f, g)
    passed = worst <= tol
    return IntertwineVerdict(passed, worst, trials, None if passed else witness)


# -- norm reports and sweeps ---------------------------------------------------


@dataclass(frozen=True)
class NormReport:
    """Norm values over increasing truncation levels."""

    levels: tuple
    norms: tuple
    converged: bool
    extrapolate: float

    def to_json_obj(self) -> dict:
        return {
            "levels": list(self.levels),
            "norms": list(self.norms),
            "converged": self.converged,
        }

    def to_csv_text(self) -> str:
        lines = ["level,norm"]
        lines += [f"{k},{v:.17g}" for k, v in zip(self.levels, self.norms)]
        return "\n".join(lines) + "\n"

    def is_monotone(self, slack: float = 1e-10) -> bool:
        return all(
            self.norms[i + 1] >= self.norms[i] - slack
            for i in range(len(self.norms) - 1)
        )


def finfty_sweep(
    spec: MonoidSpec,
    symbol: FockVector,
    levels,
    tol: float = 1e-6,
    norm_tol: float = DEFAULT_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
    seed: int = DEFAULT_SEED,
    backend: str | None = None,
    cap: int = CAPACITY_DEFAULT,
) -> NormReport:
    """Pair norms over strictly increasing levels.

    `converged` records whether the final increment is at most `tol` and
    every power iteration converged; the last value doubles as the
    extrapolation (values increase toward the full-space norm from below).
    """
    levels = tuple(int(k) for k in levels)
    if not levels:
        raise ValueError("need at least one level")
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise ValueError("levels must be strictly increasing")
    if levels[0] < symbol.degree():
        raise OutOfWindowError(
            f"first level {levels[0]} below symbol degree {symbol.degree()}"
        )
    norms = []
    all_ok = True
    for k in levels:
        est = pair_norm_estimate(
            make_pair(spec, symbol, k, cap=cap),
            tol=norm_tol,
            max_iters=max_iters,
            seed=seed,
            backend=backend,
        )
        norms.append(est.value)
        all_ok = all_ok and est.converged
    increment_ok = len(norms) >= 2 and abs(norms[-1] - norms[-2]) <= tol
    return NormReport(levels, tuple(norms), increment_ok and all_ok, norms[-1])


# -- identifications -----------------------------------------------------------


@dataclass(frozen=True)
class CirculantReport:
    passed: bool
    max_deviation: float
    symbol: tuple
    round_trip_exact: bool
    matrix: np.ndarray


def circulant_of(
    spec: MonoidSpec, symbol: FockVector, tol: float = 1e-12
) -> CirculantReport:
    """Assemble L over a cyclic group and check the circulant property.

    Entry (i, j) must depend on (i - j) mod n only; the extracted first
    column must reproduce the symbol's coefficients bit-for-bit.
    """
    if not isinstance(spec, Cyclic):
        raise UnsupportedOperationError("circulant identification needs Cyclic(n)")
    pair = make_pair(spec, symbol, 0)
    dense = pair.lmat.to_dense()
    n = spec.n
    dev = 0.0
    col0 = dense[:, 0]
    for i in range(n):
        for j in range(n):
            dev = max(dev, abs(dense[i, j] - col0[(i - j) % n]))
    extracted = tuple(complex(v) for v in col0)
    wanted = tuple(symbol[i] for i in range(n))
    return CirculantReport(dev <= tol, dev, extracted, extracted == wanted, dense)


def hardy_norm_grid(
    spec: MonoidSpec, symbol: FockVector, gridsize: int | None = None
) -> float:
    """Sup of |symbol(z)| over a uniform torus grid.

    d = 1 uses 2^16 points by default; higher dimensions 1024 per axis,
    capped at d <= 3 (the d = 3 case streams one axis to bound memory).
    The grid must resolve the polynomial: gridsize >= 2 * (degree + 1).
    """
    if isinstance(spec, NonNegIntegers):
        d = 1
    elif isinstance(spec, NonNegVectors):
        d = spec.d
    else:
        raise UnsupportedOperationError("torus sup needs NonNegIntegers or NonNegVectors")
    if d > 3:
        raise UnsupportedOperationError("torus grids are capped at d <= 3")
    if symbol.window.spec != spec:
        raise IncompatibleWindowError("symbol spec does not match")
    g = gridsize if gridsize is not None else (1 << 16 if d == 1 else 1024)
    if g < 2 * (symbol.degree() + 1):
        raise ValueError(
            f"gridsize {g} too coarse for degree {symbol.degree()}"
        )
    theta = 2.0 * np.pi * np.arange(g) / g
    if d == 1:
        vals = np.zeros(g, dtype=np.complex128)
        for m, c in symbol.coeffs.items():
            mm = m if isinstance(m, int) else m[0]
            vals += c * np.exp(1j * mm * theta)
        return float(np.abs(vals).max())
    phases = [np.exp(1j * m * theta) for m in range(0, symbol.degree() + 1)]
    terms = [(x, c) for x, c in symbol.coeffs.items()]
    if d == 2:
        vals = np.zeros((g, g), dtype=np.complex128)
        for (m1, m2), c in terms:
            vals += c * np.outer(phases[m1], phases[m2])
        return float(np.abs(vals).max())
    best = 0.0
    for i in range(g):
        slab = np.zeros((g, g), dtype=np.complex128)
        for (m1, m2, m3), c in terms:
            slab += (c * phases[m1][i]) * np.outer(phases[m2], phases[m3])
        best = max(best, float(np.abs(slab).max()))
    return best


def popescu_norm(
    spec: MonoidSpec,
    symbol: FockVector,
    depth: int,
    cap: int = CAPACITY_DEFAULT,
    **norm_kw,
) -> float:
    """Pair norm at word-length `depth` on a free monoid.

    A lower bound for the pair norm on the full Fock space; the left
    component alone lower-bounds the noncommutative-Hardy norm of the
    symbol.
    """
    if not isinstance(spec, FreeMonoid):
        raise UnsupportedOperationError("this identification needs a free monoid")
    return pair_norm(make_pair(spec, symbol, depth, cap=cap), **norm_kw)
