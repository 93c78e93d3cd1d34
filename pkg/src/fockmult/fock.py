"""Finitely supported vectors on a window of ell^2(S).

A FockVector pairs a window with a sparse coefficient dict. Exact zeros are
pruned at construction and coefficients are kept in window order, so sums
(norms, inner products, convolutions) run in a canonical order and repeated
runs are bit-identical.

Polynomials are FockVectors; their degree is the largest window level
occurring in the support. The inner product is linear in the first slot and
conjugate-linear in the second.
"""

from __future__ import annotations

import json
import math
from typing import Iterable

from .errors import (
    IncompatibleWindowError,
    SymbolParseError,
    TruncationOverflowError,
    UnsupportedOperationError,
)
from .semigroups import (
    CAPACITY_DEFAULT,
    Element,
    MonoidSpec,
    Window,
    window,
)


class FockVector:
    """Sparse vector supported inside a window."""

    __slots__ = ("window", "coeffs")

    def __init__(self, win: Window, coeffs: dict, validate: bool = True):
        if validate:
            for x in coeffs:
                win.position(x)
        ordered = sorted(coeffs.items(), key=lambda kv: win.position(kv[0]))
        self.window = win
        self.coeffs = {x: complex(c) for x, c in ordered if c != 0}

    # -- basic queries ------------------------------------------------------

    def __getitem__(self, x: Element) -> complex:
        self.window.position(x)
        return self.coeffs.get(x, 0j)

    def __len__(self) -> int:
        return len(self.coeffs)

    def support(self) -> tuple:
        return tuple(self.coeffs)

    def degree(self) -> int:
        spec = self.window.spec
        return max((spec.element_level(x) for x in self.coeffs), default=0)

    def norm(self) -> float:
        return math.sqrt(sum(abs(c) ** 2 for c in self.coeffs.values()))

    # -- arithmetic on a shared window ---------------------------------------

    def _require_same_window(self, other: "FockVector") -> None:
        if self.window != other.window:
            raise IncompatibleWindowError(
                f"{self.window.describe()} vs {other.window.describe()}"
            )

    def __add__(self, other: "FockVector") -> "FockVector":
        self._require_same_window(other)
        out = dict(self.coeffs)
        for x, c in other.coeffs.items():
            out[x] = out.get(x, 0j) + c
        return FockVector(self.window, out, validate=False)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(-1)

    def scale(self, c: complex) -> "FockVector":
        return FockVector(
            self.window,
            {x: c * v for x, v in self.coeffs.items()},
            validate=False,
        )

    def __mul__(self, c: complex) -> "FockVector":
        return self.scale(c)

    __rmul__ = __mul__

    def rebase(self, win: Window) -> "FockVector":
        """Move the support onto another window of the same spec."""
        if win.spec != self.window.spec:
            raise IncompatibleWindowError(
                f"cannot rebase {self.window.describe()} onto {win.describe()}"
            )
        return FockVector(win, dict(self.coeffs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.window == other.window and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        terms = ", ".join(f"{x!r}: {c:.6g}" for x, c in self.coeffs.items())
        return f"FockVector({self.window.describe()}, {{{terms}}})"


Polynomial = FockVector


def delta(win: Window, s: Element) -> FockVector:
    """The Dirac basis vector at s."""
    win.position(s)
    return FockVector(win, {s: 1.0 + 0j}, validate=False)


def inner(f: FockVector, g: FockVector) -> complex:
    """<f, g>, linear in f and conjugate-linear in g."""
    f._require_same_window(g)
    small, big = (f, g) if len(f) <= len(g) else (g, f)
    acc = 0j
    for x, c in small.coeffs.items():
        d = big.coeffs.get(x)
        if d is not None:
            acc += (c * d.conjugate()) if small is f else (d * c.conjugate())
    return acc


def _convolve(f: FockVector, g: FockVector, target: Window) -> FockVector:
    """f * g into `target`; any product outside `target` is a hard error."""
    spec = target.spec
    if f.window.spec != spec or g.window.spec != spec:
        raise IncompatibleWindowError("convolution operands must share the spec")
    acc: dict = {}
    for s, c in f.coeffs.items():
        for r, d in g.coeffs.items():
            u = spec.compose(s, r)
            if u not in target:
                raise TruncationOverflowError(
                    f"product {u!r} escapes {target.describe()}"
                )
            acc[u] = acc.get(u, 0j) + c * d
    return FockVector(target, acc, validate=False)


def convolve_left(p: FockVector, f: FockVector, target: Window) -> FockVector:
    """Left multiplication p * f."""
    return _convolve(p, f, target)


def convolve_right(f: FockVector, p: FockVector, target: Window) -> FockVector:
    """Right multiplication f * p."""
    return _convolve(f, p, target)


def apply_U(f: FockVector) -> FockVector:
    """The anti-linear involution (U f)(g) = conj(f(g^{-1})) on group windows.

    Canonical group windows are closed under inversion, so the result lives
    on the same window.
    """
    spec = f.window.spec
    if not spec.is_group:
        raise UnsupportedOperationError(
            f"U needs a group; {spec.short_name()} has no inverses"
        )
    out = {spec.invert(x): c.conjugate() for x, c in f.coeffs.items()}
    return FockVector(f.window, out)


# -- polynomial JSON ---------------------------------------------------------


def parse_polynomial(
    spec: MonoidSpec,
    source,
    level: int | None = None,
    cap: int = CAPACITY_DEFAULT,
) -> FockVector:
    """Read `[{"elem": ..., "re": ..., "im": ...}, ...]` into a FockVector.

    With level=None the vector lands on the smallest canonical window that
    holds its support.
    """
    if isinstance(source, str):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise SymbolParseError(
                f"invalid JSON: {exc.msg}", position=exc.pos
            ) from exc
    else:
        obj = source
    if not isinstance(obj, list):
        raise SymbolParseError(f"polynomial must be an array, got {obj!r}")
    coeffs: dict = {}
    for i, entry in enumerate(obj):
        if not isinstance(entry, dict) or "elem" not in entry:
            raise SymbolParseError(f"term {i} must be an object with 'elem'")
        x = spec.element_from_json(entry["elem"])
        re = entry.get("re", 0.0)
        im = entry.get("im", 0.0)
        if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
            raise SymbolParseError(f"term {i} has non-numeric coefficients")
        coeffs[x] = coeffs.get(x, 0j) + complex(re, im)
    need = max((spec.element_level(x) for x in coeffs), default=0)
    lvl = need if level is None else level
    if lvl < need:
        raise SymbolParseError(
            f"polynomial has degree {need}, does not fit window level {lvl}"
        )
    return FockVector(window(spec, lvl, cap=cap), coeffs)


def polynomial_to_json(f: FockVector) -> list:
    """Structured JSON form, terms in window order."""
    spec = f.window.spec
    return [
        {"elem": spec.element_to_json(x), "re": c.real, "im": c.imag}
        for x, c in f.coeffs.items()
    ]


def polynomial_json_text(f: FockVector) -> str:
    """JSON text with coefficients printed to 17 significant digits."""
    spec = f.window.spec
    parts = []
    for x, c in f.coeffs.items():
        elem = json.dumps(spec.element_to_json(x), separators=(",", ":"))
        parts.append(
            f'{{"elem":{elem},"re":{c.real:.17g},"im":{c.imag:.17g}}}'
        )
    return "[" + ",".join(parts) + "]"


def random_polynomial(
    rng,
    win: Window,
    max_terms: int | None = None,
    normalize: bool = False,
) -> FockVector:
    """Seeded random vector on `win` with complex standard-normal weights.

    Helper shared by verification samplers and tests; all randomness flows
    through the supplied numpy Generator.
    """
    n = len(win)
    k = n if max_terms is None else min(max_terms, n)
    picks: Iterable[int] = sorted(rng.choice(n, size=k, replace=False)) if k < n else range(n)
    coeffs = {}
    for i in picks:
        re, im = rng.standard_normal(2)
        coeffs[win.elements[i]] = complex(re, im)
    f = FockVector(win, coeffs, validate=False)
    if normalize and len(f):
        f = f.scale(1.0 / f.norm())
    return f
