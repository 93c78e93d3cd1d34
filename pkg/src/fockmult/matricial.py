"""Matrix levels over the multiplier pairs.

A block is a rectangular grid of symbol-generated pairs over one monoid and
one window level. Its norm is computed from the assembled block matrices:
every entry's L (and R) is embedded into a common codomain window, the grid
is stitched into one sparse operator per side, and the block norm is the max
of the two spectral norms.

Scalar bimodule actions and block products act on symbols, not on matrices;
the block-matrix identities they induce are pinned in the test suite. The
sampled checks at the bottom exercise the operator-space axioms: the
direct-sum max rule, ||a x b|| <= ||a|| ||x|| ||b||, and submultiplicativity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ._power import DEFAULT_MAX_ITERS, DEFAULT_SEED, DEFAULT_TOL, spectral_norm
from .errors import IncompatibleWindowError
from .fock import FockVector, convolve_left, random_polynomial
from .multiplier import MultiplierPair, make_pair
from .semigroups import CAPACITY_DEFAULT, MonoidSpec, window


@dataclass
class MatricialBlock:
    """Grid of pairs over a common spec and level."""

    spec: MonoidSpec
    level: int
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if not rows or not rows[0]:
            raise ValueError("block needs at least one entry")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged block")
            for p in r:
                if p.spec != self.spec or p.level != self.level:
                    raise IncompatibleWindowError(
                        "all entries must share the block's spec and level"
                    )
        object.__setattr__(self, "entries", rows)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    def symbol(self, i: int, j: int) -> FockVector:
        return self.entries[i][j].symbol

    def __repr__(self) -> str:
        return (
            f"MatricialBlock({self.spec.short_name()}, level={self.level}, "
            f"{self.nrows}x{self.ncols})"
        )


def block_from_symbols(
    spec: MonoidSpec,
    symbols,
    level: int,
    cap: int = CAPACITY_DEFAULT,
) -> MatricialBlock:
    entries = tuple(
        tuple(make_pair(spec, s, level, cap=cap) for s in row) for row in symbols
    )
    return MatricialBlock(spec, level, entries)


def _zero_pair(spec: MonoidSpec, level: int, cap: int) -> MultiplierPair:
    win = window(spec, level, cap=cap)
    return make_pair(spec, FockVector(win, {}), level, cap=cap)


def _assemble(x: MatricialBlock, side: str, cap: int) -> sp.csc_matrix:
    from .operators import embed

    mats = [[getattr(p, side) for p in row] for row in x.entries]
    cod_level = max(m.codomain.level for row in mats for m in row)
    cod = window(x.spec, cod_level, cap=cap)
    grid = [[embed(m, cod).mat for m in row] for row in mats]
    return sp.bmat(grid, format="csc")


def assembled_lmat(x: MatricialBlock, cap: int = CAPACITY_DEFAULT) -> sp.csc_matrix:
    return _assemble(x, "lmat", cap)


def assembled_rmat(x: MatricialBlock, cap: int = CAPACITY_DEFAULT) -> sp.csc_matrix:
    return _assemble(x, "rmat", cap)


@dataclass(frozen=True)
class BlockNormEstimate:
    value: float
    l_sigma: float
    r_sigma: float
    converged: bool


def matricial_norm_estimate(
    x: MatricialBlock,
    tol: float = DEFAULT_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
    seed: int = DEFAULT_SEED,
    backend: str | None = None,
    cap: int = CAPACITY_DEFAULT,
) -> BlockNormEstimate:
    kw = dict(tol=tol, max_iters=max_iters, seed=seed, backend=backend)
    le = spectral_norm(assembled_lmat(x, cap=cap), **kw)
    re = spectral_norm(assembled_rmat(x, cap=cap), **kw)
    return BlockNormEstimate(
        max(le.sigma, re.sigma), le.sigma, re.sigma, le.converged and re.converged
    )


def matricial_norm(x: MatricialBlock, **kw) -> float:
    return matricial_norm_estimate(x, **kw).value


def bimodule_action(
    alpha,
    x: MatricialBlock,
    beta,
    cap: int = CAPACITY_DEFAULT,
) -> MatricialBlock:
    """Scalar action (alpha x beta) computed on symbols.

    `alpha` is m x nrows, `beta` is ncols x r; either may be None for the
    identity. The block-matrix identity L(axb) = (a ox I) L(x) (b ox I) is
    pinned in the tests.
    """
    a = np.eye(x.nrows, dtype=np.complex128) if alpha is None else np.asarray(
        alpha, dtype=np.complex128
    )
    b = np.eye(x.ncols, dtype=np.complex128) if beta is None else np.asarray(
        beta, dtype=np.complex128
    )
    if a.ndim != 2 or a.shape[1] != x.nrows:
        raise ValueError(f"alpha must be (m, {x.nrows})")
    if b.ndim != 2 or b.shape[0] != x.ncols:
        raise ValueError(f"beta must be ({x.ncols}, r)")
    win = window(x.spec, x.level, cap=cap)
    out = []
    for i in range(a.shape[0]):
        row = []
        for j in range(b.shape[1]):
            acc = FockVector(win, {})
            for k in range(x.nrows):
                if a[i, k] == 0:
                    continue
                for l in range(x.ncols):
                    c = complex(a[i, k] * b[l, j])
                    if c == 0:
                        continue
                    acc = acc + x.symbol(k, l).rebase(win).scale(c)
            row.append(make_pair(x.spec, acc, x.level, cap=cap))
        out.append(tuple(row))
    return MatricialBlock(x.spec, x.level, tuple(out))


def matricial_product(
    x: MatricialBlock, y: MatricialBlock, cap: int = CAPACITY_DEFAULT
) -> MatricialBlock:
    """Block product on symbols: psi_ij = sum_k phi^x_ik * phi^y_kj.

    The assembled left matrices multiply in the same order; the right
    matrices multiply reversed within each block entry (checked in tests).
    """
    if x.spec != y.spec:
        raise IncompatibleWindowError("blocks live over different monoids")
    if x.ncols != y.nrows:
        raise ValueError(f"inner dimensions {x.ncols} and {y.nrows} differ")
    deg = max(
        (
            x.symbol(i, k).degree() + y.symbol(k, j).degree()
            for i in range(x.nrows)
            for k in range(x.ncols)
            for j in range(y.ncols)
        ),
        default=0,
    )
    level = max(x.level, y.level, deg)
    win = window(x.spec, level, cap=cap)
    out = []
    for i in range(x.nrows):
        row = []
        for j in range(y.ncols):
            acc = FockVector(win, {})
            for k in range(x.ncols):
                acc = acc + convolve_left(
                    x.symbol(i, k).rebase(win), y.symbol(k, j).rebase(win), win
                )
            row.append(make_pair(x.spec, acc, level, cap=cap))
        out.append(tuple(row))
    return MatricialBlock(x.spec, level, tuple(out))


def direct_sum(
    x: MatricialBlock, y: MatricialBlock, cap: int = CAPACITY_DEFAULT
) -> MatricialBlock:
    if x.spec != y.spec:
        raise IncompatibleWindowError("blocks live over different monoids")
    level = max(x.level, y.level)
    win = window(x.spec, level, cap=cap)

    def lift(p: MultiplierPair) -> MultiplierPair:
        return make_pair(x.spec, p.symbol.rebase(win), level, cap=cap)

    z = _zero_pair(x.spec, level, cap)
    out = []
    for i in range(x.nrows):
        out.append(tuple(lift(x.entries[i][j]) for j in range(x.ncols)) + (z,) * y.ncols)
    for i in range(y.nrows):
        out.append((z,) * x.ncols + tuple(lift(y.entries[i][j]) for j in range(y.ncols)))
    return MatricialBlock(x.spec, level, tuple(out))


@dataclass(frozen=True)
class RuanVerdict:
    passed: bool
    worst_violation: float
    failures: tuple
    trials: int


def _random_block(
    rng: np.random.Generator,
    spec: MonoidSpec,
    n: int,
    m: int,
    level: int,
    sym_level: int,
    cap: int,
) -> MatricialBlock:
    sw = window(spec, sym_level, cap=cap)
    symbols = [
        [random_polynomial(rng, sw, max_terms=3) for _ in range(m)] for _ in range(n)
    ]
    return block_from_symbols(spec, symbols, level, cap=cap)


def ruan_axiom_check(
    spec: MonoidSpec,
    n: int,
    trials: int = 50,
    seed: int = 0,
    tol: float = 1e-8,
    level: int | None = None,
    norm_tol: float = 1e-13,
    cap: int = CAPACITY_DEFAULT,
) -> RuanVerdict:
    """Sample the three operator-space laws on random n x n blocks.

    Checks, per trial: |  ||x (+) y|| - max(||x||, ||y||) | <= tol;
    ||a x b|| <= ||a|| ||x|| ||b|| + tol; ||x y|| <= ||x|| ||y|| + tol.
    `level` defaults to 0 on finite families and 2 otherwise so that the
    degree-1 sample symbols keep their products inside the window.
    """
    rng = np.random.default_rng(seed)
    if level is None:
        level = 0 if spec.window_size(3) == spec.window_size(0) else 2
    sym_level = min(level, 1)
    kw = dict(tol=norm_tol, cap=cap)
    worst = 0.0
    failures = []
    for t in range(trials):
        x = _random_block(rng, spec, n, n, level, sym_level, cap)
        y = _random_block(
            rng,
            spec,
            int(rng.integers(1, n + 1)),
            int(rng.integers(1, n + 1)),
            level,
            sym_level,
            cap,
        )
        x2 = _random_block(rng, spec, n, n, level, sym_level, cap)
        alpha = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        beta = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        nx = matricial_norm(x, **kw)
        ny = matricial_norm(y, **kw)
        nds = matricial_norm(direct_sum(x, y, cap=cap), **kw)
        v = abs(nds - max(nx, ny))
        if v > worst:
            worst = v
        if v > tol:
            failures.append(("direct_sum", t, v))
        na = float(np.linalg.norm(alpha, 2))
        nb = float(np.linalg.norm(beta, 2))
        naxb = matricial_norm(bimodule_action(alpha, x, beta, cap=cap), **kw)
        v = naxb - na * nx * nb
        if v > worst:
            worst = v
        if v > tol:
            failures.append(("bimodule", t, v))
        nxy = matricial_norm(matricial_product(x, x2, cap=cap), **kw)
        nx2 = matricial_norm(x2, **kw)
        v = nxy - nx * nx2
        if v > worst:
            worst = v
        if v > tol:
            failures.append(("product", t, v))
    return RuanVerdict(not failures, worst, tuple(failures), trials)
