"""Left-cancellative monoids and their canonical finite windows.

Six families are supported. Elements are plain Python payloads so they can
be dict keys and window indices without wrapper overhead:

======================  =======================================
family                  element payload
======================  =======================================
FiniteGroup             int index into the Cayley table
Cyclic(n)               int in 0..n-1
Integers                int
NonNegIntegers          int >= 0
NonNegVectors(d)        tuple of d ints >= 0
FreeMonoid(rank)        tuple of generator indices in 1..rank
======================  =======================================

A window is the canonical finite truncation at a given level: the full
table for finite families, 0..k / -k..k for the integer families, the lex
box {0..k}^d for vectors, and all words of length <= k in length-then-lex
order for the free monoid. Windows nest, and the enumeration order of the
shared elements agrees between levels.
"""

from __future__ import annotations

import itertools
import json
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Union

from .errors import (
    CapacityError,
    InvalidElementError,
    InvalidSpecError,
    OutOfWindowError,
    SymbolParseError,
    UnsupportedOperationError,
)

Element = Union[int, tuple]

CAPACITY_DEFAULT = 200_000


class MonoidSpec(ABC):
    """A monoid given by its composition law plus window conventions."""

    kind: str

    @abstractmethod
    def compose(self, a: Element, b: Element) -> Element:
        """Product a*b."""

    @abstractmethod
    def identity(self) -> Element:
        """The unit element."""

    def invert(self, a: Element) -> Element:
        raise UnsupportedOperationError(
            f"{self.short_name()} is not a group; no inverses"
        )

    @property
    def is_group(self) -> bool:
        return False

    @property
    @abstractmethod
    def is_abelian(self) -> bool: ...

    @abstractmethod
    def validate(self, x: Element) -> None:
        """Raise InvalidElementError unless x is a valid payload."""

    @abstractmethod
    def element_level(self, x: Element) -> int:
        """Smallest level k with x in window(k)."""

    @abstractmethod
    def window_size(self, level: int) -> int:
        """Cardinality of window(level), computed without enumerating."""

    @abstractmethod
    def enumerate_window(self, level: int) -> Iterator[Element]:
        """Yield window(level) in canonical order."""

    @abstractmethod
    def short_name(self) -> str:
        """Compact tag used in window descriptors, e.g. 'cyclic(3)'."""

    @abstractmethod
    def to_json(self) -> dict:
        """JSON form accepted back by parse_spec."""

    # element serialization ------------------------------------------------

    _payload_key = "int"

    def element_to_json(self, x: Element) -> dict:
        self.validate(x)
        return {self._payload_key: x if isinstance(x, int) else list(x)}

    def element_from_json(self, obj) -> Element:
        if not isinstance(obj, dict) or len(obj) != 1:
            raise SymbolParseError(f"element must be a one-key object, got {obj!r}")
        key, value = next(iter(obj.items()))
        if key not in ("int", "vec", "word", "idx"):
            raise SymbolParseError(f"unknown element key {key!r}")
        if key != self._payload_key:
            raise InvalidElementError(
                f"{self.short_name()} elements use key {self._payload_key!r}, got {key!r}"
            )
        x = self._payload_from_json(value)
        self.validate(x)
        return x

    def _payload_from_json(self, value) -> Element:
        if not isinstance(value, int) or isinstance(value, bool):
            raise InvalidElementError(f"expected an integer payload, got {value!r}")
        return value

    def __repr__(self) -> str:
        return self.short_name()


class _TupleSpec(MonoidSpec):
    """Shared payload handling for tuple-valued families."""

    def _payload_from_json(self, value) -> Element:
        if not isinstance(value, list) or any(
            not isinstance(v, int) or isinstance(v, bool) for v in value
        ):
            raise InvalidElementError(f"expected a list of integers, got {value!r}")
        return tuple(value)


@dataclass(frozen=True)
class FiniteGroup(MonoidSpec):
    """Group given by a Cayley table; table[a][b] is the index of a*b."""

    table: tuple
    names: tuple | None = None

    kind = "group"
    _payload_key = "idx"

    def __init__(self, table, names=None, validate: bool = True):
        object.__setattr__(self, "table", tuple(tuple(row) for row in table))
        object.__setattr__(
            self, "names", tuple(names) if names is not None else None
        )
        n = len(self.table)
        if n == 0:
            raise InvalidSpecError("empty Cayley table")
        if any(len(row) != n for row in self.table):
            raise InvalidSpecError("Cayley table is not square")
        if self.names is not None and len(self.names) != n:
            raise InvalidSpecError("names length does not match table order")
        if validate:
            self._check_table()

    def _check_table(self) -> None:
        n = self.order
        full = set(range(n))
        for i, row in enumerate(self.table):
            if set(row) != full:
                raise InvalidSpecError(f"row {i} is not a permutation of 0..{n - 1}")
        for j in range(n):
            if {row[j] for row in self.table} != full:
                raise InvalidSpecError(f"column {j} is not a permutation of 0..{n - 1}")
        self._identity_index  # noqa: B018  raises if no two-sided identity

    @property
    def order(self) -> int:
        return len(self.table)

    @cached_property
    def _identity_index(self) -> int:
        n = self.order
        for e in range(n):
            if all(self.table[e][b] == b for b in range(n)) and all(
                self.table[a][e] == a for a in range(n)
            ):
                return e
        raise InvalidSpecError("Cayley table has no two-sided identity")

    @cached_property
    def _inverse_table(self) -> tuple:
        e = self._identity_index
        inv = []
        for a in range(self.order):
            b = self.table[a].index(e)
            if self.table[b][a] != e:
                raise InvalidSpecError(f"element {a} has no two-sided inverse")
            inv.append(b)
        return tuple(inv)

    def compose(self, a: Element, b: Element) -> Element:
        return self.table[a][b]

    def identity(self) -> Element:
        return self._identity_index

    def invert(self, a: Element) -> Element:
        return self._inverse_table[a]

    @property
    def is_group(self) -> bool:
        return True

    @cached_property
    def is_abelian(self) -> bool:
        n = self.order
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(n)
            for b in range(a + 1, n)
        )

    def validate(self, x: Element) -> None:
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < self.order:
            raise InvalidElementError(f"{x!r} is not an index in 0..{self.order - 1}")

    def element_level(self, x: Element) -> int:
        self.validate(x)
        return 0

    def window_size(self, level: int) -> int:
        return self.order

    def enumerate_window(self, level: int) -> Iterator[Element]:
        return iter(range(self.order))

    def short_name(self) -> str:
        return f"group({self.order})"

    def to_json(self) -> dict:
        obj = {"kind": "group", "table": [list(row) for row in self.table]}
        if self.names is not None:
            obj["names"] = list(self.names)
        return obj


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on 0..n-1, elements enumerated as permutations in lex order."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms
    ]
    names = ["".join(map(str, p)) for p in perms]
    return FiniteGroup(table, names=names)


@dataclass(frozen=True)
class Cyclic(MonoidSpec):
    """Z/nZ with addition mod n; elements are canonical residues."""

    n: int

    kind = "cyclic"

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSpecError("cyclic order must be >= 1")

    def compose(self, a: Element, b: Element) -> Element:
        return (a + b) % self.n

    def identity(self) -> Element:
        return 0

    def invert(self, a: Element) -> Element:
        return (-a) % self.n

    @property
    def is_group(self) -> bool:
        return True

    @property
    def is_abelian(self) -> bool:
        return True

    def validate(self, x: Element) -> None:
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < self.n:
            raise InvalidElementError(f"{x!r} is not a residue in 0..{self.n - 1}")

    def element_level(self, x: Element) -> int:
        self.validate(x)
        return 0

    def window_size(self, level: int) -> int:
        return self.n

    def enumerate_window(self, level: int) -> Iterator[Element]:
        return iter(range(self.n))

    def short_name(self) -> str:
        return f"cyclic({self.n})"

    def to_json(self) -> dict:
        return {"kind": "cyclic", "n": self.n}


@dataclass(frozen=True)
class Integers(MonoidSpec):
    """(Z, +); window(k) is -k..k."""

    kind = "z"

    def compose(self, a: Element, b: Element) -> Element:
        return a + b

    def identity(self) -> Element:
        return 0

    def invert(self, a: Element) -> Element:
        return -a

    @property
    def is_group(self) -> bool:
        return True

    @property
    def is_abelian(self) -> bool:
        return True

    def validate(self, x: Element) -> None:
        if not isinstance(x, int) or isinstance(x, bool):
            raise InvalidElementError(f"{x!r} is not an integer")

    def element_level(self, x: Element) -> int:
        self.validate(x)
        return abs(x)

    def window_size(self, level: int) -> int:
        return 2 * level + 1

    def enumerate_window(self, level: int) -> Iterator[Element]:
        return iter(range(-level, level + 1))

    def short_name(self) -> str:
        return "z"

    def to_json(self) -> dict:
        return {"kind": "z"}


@dataclass(frozen=True)
class NonNegIntegers(MonoidSpec):
    """(Z+, +); window(k) is 0..k."""

    kind = "zplus"

    def compose(self, a: Element, b: Element) -> Element:
        return a + b

    def identity(self) -> Element:
        return 0

    @property
    def is_abelian(self) -> bool:
        return True

    def validate(self, x: Element) -> None:
        if not isinstance(x, int) or isinstance(x, bool) or x < 0:
            raise InvalidElementError(f"{x!r} is not a nonnegative integer")

    def element_level(self, x: Element) -> int:
        self.validate(x)
        return x

    def window_size(self, level: int) -> int:
        return level + 1

    def enumerate_window(self, level: int) -> Iterator[Element]:
        return iter(range(level + 1))

    def short_name(self) -> str:
        return "zplus"

    def to_json(self) -> dict:
        return {"kind": "zplus"}


@dataclass(frozen=True)
class NonNegVectors(_TupleSpec):
    """(Z+^d, +); window(k) is the box {0..k}^d in lexicographic order."""

    d: int

    kind = "zplus_d"
    _payload_key = "vec"

    def __post_init__(self):
        if self.d < 1:
            raise InvalidSpecError("vector dimension must be >= 1")

    def compose(self, a: Element, b: Element) -> Element:
        return tuple(x + y for x, y in zip(a, b))

    def identity(self) -> Element:
        return (0,) * self.d

    @property
    def is_abelian(self) -> bool:
        return True

    def validate(self, x: Element) -> None:
        if (
            not isinstance(x, tuple)
            or len(x) != self.d
            or any(not isinstance(v, int) or isinstance(v, bool) or v < 0 for v in x)
        ):
            raise InvalidElementError(
                f"{x!r} is not a length-{self.d} tuple of nonnegative integers"
            )

    def element_level(self, x: Element) -> int:
        self.validate(x)
        return max(x)

    def window_size(self, level: int) -> int:
        return (level + 1) ** self.d

    def enumerate_window(self, level: int) -> Iterator[Element]:
        return itertools.product(range(level + 1), repeat=self.d)

    def short_name(self) -> str:
        return f"zplus_d({self.d})"

    def to_json(self) -> dict:
        return {"kind": "zplus_d", "d": self.d}


@dataclass(frozen=True)
class FreeMonoid(_TupleSpec):
    """Free monoid on `rank` generators; words are tuples over 1..rank.

    window(k) holds all words of length <= k, ordered by length then
    lexicographically.
    """

    rank: int

    kind = "free"
    _payload_key = "word"

    def __post_init__(self):
        if self.rank < 1:
            raise InvalidSpecError("free monoid rank must be >= 1")

    def compose(self, a: Element, b: Element) -> Element:
        return a + b

    def identity(self) -> Element:
        return ()

    @property
    def is_abelian(self) -> bool:
        return self.rank == 1

    def validate(self, x: Element) -> None:
        if not isinstance(x, tuple) or any(
            not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= self.rank
            for v in x
        ):
            raise InvalidElementError(
                f"{x!r} is not a word over generators 1..{self.rank}"
            )

    def element_level(self, x: Element) -> int:
        self.validate(x)
        return len(x)

    def window_size(self, level: int) -> int:
        if self.rank == 1:
            return level + 1
        return (self.rank ** (level + 1) - 1) // (self.rank - 1)

    def enumerate_window(self, level: int) -> Iterator[Element]:
        gens = range(1, self.rank + 1)
        for length in range(level + 1):
            yield from itertools.product(gens, repeat=length)

    def short_name(self) -> str:
        return f"free({self.rank})"

    def to_json(self) -> dict:
        return {"kind": "free", "rank": self.rank}


def reverse_word(spec: MonoidSpec, x: Element) -> Element:
    """Reverse a free-monoid word; undefined for the other families."""
    if not isinstance(spec, FreeMonoid):
        raise UnsupportedOperationError("word reversal needs a free monoid")
    spec.validate(x)
    return tuple(reversed(x))


class Window:
    """Canonical truncation of a monoid at a level, with positional index.

    Never constructed directly; use window(). Equality is by spec and level
    (which determine the element list).
    """

    __slots__ = ("spec", "level", "elements", "_index")

    def __init__(self, spec: MonoidSpec, level: int, elements: tuple):
        self.spec = spec
        self.level = level
        self.elements = elements
        self._index = {x: i for i, x in enumerate(elements)}

    def position(self, x: Element) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise OutOfWindowError(f"{x!r} not in {self.describe()}") from None
        except TypeError:
            raise InvalidElementError(f"{x!r} is not a valid element") from None

    def __contains__(self, x: Element) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Window):
            return NotImplemented
        return self.spec == other.spec and self.level == other.level

    def __hash__(self) -> int:
        return hash((self.spec, self.level))

    def describe(self) -> str:
        return f"{self.spec.short_name()}/{self.level}"

    def __repr__(self) -> str:
        return f"Window({self.describe()}, {len(self)} elements)"


def window(spec: MonoidSpec, level: int, cap: int = CAPACITY_DEFAULT) -> Window:
    """Build the canonical window at `level`, refusing to exceed `cap`.

    Finite families ignore the level and always return the full table.
    """
    if level < 0:
        raise InvalidSpecError("window level must be >= 0")
    size = spec.window_size(level)
    if size > cap:
        raise CapacityError(
            f"window {spec.short_name()}/{level} has {size} elements, cap is {cap}"
        )
    return Window(spec, level, tuple(spec.enumerate_window(level)))


@dataclass(frozen=True)
class CancellativityVerdict:
    passed: bool
    counterexample: tuple | None = None


def check_left_cancellative(spec: MonoidSpec, win: Window) -> CancellativityVerdict:
    """Exhaustively check t*r = t*r' => r = r' over the window.

    Quadratic in the window size: for each t, scan the row of products for a
    duplicate. The counterexample is (t, r, r') with r != r' and t*r = t*r'.
    """
    for t in win:
        seen: dict = {}
        for r in win:
            u = spec.compose(t, r)
            if u in seen:
                return CancellativityVerdict(False, (t, seen[u], r))
            seen[u] = r
    return CancellativityVerdict(True)


# -- JSON forms --------------------------------------------------------------

_SPEC_KINDS = {"cyclic", "free", "zplus", "z", "zplus_d", "group"}


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SymbolParseError(f"invalid JSON: {exc.msg}", position=exc.pos) from exc


def parse_spec(source) -> MonoidSpec:
    """Build a MonoidSpec from its JSON form (dict or JSON text)."""
    obj = _load_json(source) if isinstance(source, str) else source
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SymbolParseError(f"spec must be an object with a 'kind', got {obj!r}")
    kind = obj["kind"]
    if kind not in _SPEC_KINDS:
        raise SymbolParseError(f"unknown spec kind {kind!r}")
    try:
        if kind == "cyclic":
            return Cyclic(int(obj["n"]))
        if kind == "free":
            return FreeMonoid(int(obj["rank"]))
        if kind == "zplus":
            return NonNegIntegers()
        if kind == "z":
            return Integers()
        if kind == "zplus_d":
            return NonNegVectors(int(obj["d"]))
        return FiniteGroup(obj["table"], names=obj.get("names"))
    except KeyError as exc:
        raise SymbolParseError(f"spec kind {kind!r} is missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise InvalidSpecError(f"bad {kind!r} spec: {exc}") from exc


def parse_element(spec: MonoidSpec, source) -> Element:
    """Parse one element (dict or JSON text) against `spec`."""
    obj = _load_json(source) if isinstance(source, str) else source
    return spec.element_from_json(obj)
