"""Truth tables, exact dyadic numbers and the {0,1} <-> {-1,1} encoding.

Input index ``j`` in ``[0, 2**n)`` encodes the assignment ``a_i = (j >> (i-1)) & 1``
and the point ``x_i = (-1)**a_i``.  A table stores one bit ``b_j`` per input with
``f(x) = (-1)**b_j``.  Negating the coordinates in a subset ``S`` is therefore
``j ^ mask(S)``.
"""
from __future__ import annotations

import functools
import numbers
import string
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

MAX_VARS = 20


class Dyadic:
    """Exact rational ``numerator / 2**exponent`` kept in canonical form.

    Canonical means the numerator is odd, or the value is ``0/2**0``.
    Arithmetic with ``int`` and other ``Dyadic`` values stays dyadic; comparisons
    also accept :class:`fractions.Fraction`.
    """

    __slots__ = ("_num", "_exp")

    def __init__(self, numerator: int, exponent: int = 0):
        numerator = int(numerator)
        exponent = int(exponent)
        if exponent < 0:
            numerator <<= -exponent
            exponent = 0
        if numerator == 0:
            exponent = 0
        else:
            tz = (numerator & -numerator).bit_length() - 1
            shift = min(tz, exponent)
            numerator >>= shift
            exponent -= shift
        self._num = numerator
        self._exp = exponent

    @property
    def numerator(self) -> int:
        return self._num

    @property
    def exponent(self) -> int:
        return self._exp

    @classmethod
    def from_fraction(cls, value) -> "Dyadic":
        value = Fraction(value)
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not dyadic")
        return cls(value.numerator, den.bit_length() - 1)

    def as_fraction(self) -> Fraction:
        return Fraction(self._num, 1 << self._exp)

    def scaled(self, exponent: int) -> int:
        """Return ``self * 2**exponent`` as an int; it must be integral."""
        if exponent < self._exp:
            raise ValueError(f"{self} * 2**{exponent} is not an integer")
        return self._num << (exponent - self._exp)

    def _coerce(self, other):
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, numbers.Integral):
            return Dyadic(int(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        e = max(self._exp, o._exp)
        return Dyadic(self.scaled(e) + o.scaled(e), e)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self._num, self._exp)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Dyadic(self._num * o._num, self._exp + o._exp)

    __rmul__ = __mul__

    def __abs__(self):
        return Dyadic(abs(self._num), self._exp)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self._num == other._num and self._exp == other._exp
        if isinstance(other, (numbers.Rational, Fraction)):
            return self.as_fraction() == other
        if isinstance(other, float):
            return self.as_fraction() == Fraction(other)
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, Dyadic):
            other = other.as_fraction()
        elif isinstance(other, float):
            other = Fraction(other)
        elif not isinstance(other, numbers.Rational):
            return NotImplemented
        return self.as_fraction() < other

    def __le__(self, other):
        lt = self.__lt__(other)
        if lt is NotImplemented:
            return lt
        return lt or self == other

    def __gt__(self, other):
        le = self.__le__(other)
        return le if le is NotImplemented else not le

    def __ge__(self, other):
        lt = self.__lt__(other)
        return lt if lt is NotImplemented else not lt

    def __hash__(self):
        return hash(self.as_fraction())

    def __float__(self):
        return float(self.as_fraction())

    def __bool__(self):
        return self._num != 0

    def __repr__(self):
        return f"Dyadic({self._num}, {self._exp})"

    def __str__(self):
        if self._exp == 0:
            return str(self._num)
        return f"{self._num}/{1 << self._exp}"

    def to_json(self) -> dict:
        return {"numerator": self._num, "exponent": self._exp, "value": float(self)}


def popcount(x: int) -> int:
    return int(x).bit_count()


def mask_of(variables: Iterable[int]) -> int:
    """Subset mask for 1-based variable indices."""
    m = 0
    for i in variables:
        if i < 1:
            raise ValueError(f"variable index {i} must be >= 1")
        m |= 1 << (i - 1)
    return m


def variables_of(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def _check_n(n: int) -> int:
    if not isinstance(n, numbers.Integral) or not 1 <= n <= MAX_VARS:
        raise ValueError(f"n must be an integer in [1, {MAX_VARS}], got {n!r}")
    return int(n)


@functools.lru_cache(maxsize=None)
def _cube_assignments(n: int) -> np.ndarray:
    """``(2**n, n)`` array of a_i bits, read-only."""
    j = np.arange(1 << n, dtype=np.int64)
    a = ((j[:, None] >> np.arange(n)) & 1).astype(np.int8)
    a.setflags(write=False)
    return a


def cube_points(n: int) -> np.ndarray:
    """All points of ``{-1,1}**n`` in input-index order, shape ``(2**n, n)``."""
    return (1 - 2 * _cube_assignments(n)).astype(np.int8)


class TruthTable:
    """Immutable n-variable Boolean function.

    Bits are stored packed, LSB-first by input index; :attr:`bits` gives the
    unpacked read-only ``uint8`` view and :attr:`values` the ``{-1,1}`` view.
    """

    __slots__ = ("_n", "_packed", "_bits")

    def __init__(self, n: int, bits):
        n = _check_n(n)
        arr = np.asarray(bits)
        if arr.shape != (1 << n,):
            raise ValueError(f"expected {1 << n} bits for n={n}, got shape {arr.shape}")
        if arr.dtype == bool:
            arr = arr.astype(np.uint8)
        elif not np.isin(arr, (0, 1)).all():
            raise ValueError("bits must be 0 or 1")
        arr = np.array(arr, dtype=np.uint8, copy=True)
        arr.setflags(write=False)
        self._n = n
        self._bits = arr
        self._packed = np.packbits(arr, bitorder="little").tobytes()

    @classmethod
    def from_values(cls, n: int, values) -> "TruthTable":
        """Build from a ``{-1,1}`` vector in input-index order."""
        v = np.asarray(values)
        if not np.isin(v, (-1, 1)).all():
            raise ValueError("values must be -1 or 1")
        return cls(n, (v == -1).astype(np.uint8))

    @classmethod
    def from_callable(cls, n: int, func) -> "TruthTable":
        """Tabulate ``func(x)`` for every ``x`` in ``{-1,1}**n`` (a tuple of ints)."""
        pts = cube_points(_check_n(n))
        return cls.from_values(n, [func(tuple(int(v) for v in p)) for p in pts])

    @property
    def n(self) -> int:
        return self._n

    @property
    def size(self) -> int:
        return 1 << self._n

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def values(self) -> np.ndarray:
        return 1 - 2 * self._bits.astype(np.int8)

    @property
    def packed(self) -> bytes:
        return self._packed

    def to_int(self) -> int:
        """Table as an integer whose bit ``j`` is ``b_j``."""
        return int.from_bytes(self._packed, "little")

    @classmethod
    def from_int(cls, n: int, value: int) -> "TruthTable":
        n = _check_n(n)
        if not 0 <= value < 1 << (1 << n):
            raise ValueError(f"table integer out of range for n={n}")
        nbytes = max(1, (1 << n) // 8)
        raw = np.frombuffer(int(value).to_bytes(nbytes, "little"), dtype=np.uint8)
        return cls(n, np.unpackbits(raw, bitorder="little")[: 1 << n])

    def to_hex(self) -> str:
        return self._packed.hex()

    def __eq__(self, other):
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self._n == other._n and self._packed == other._packed

    def __hash__(self):
        return hash((self._n, self._packed))

    def __repr__(self):
        return f"TruthTable(n={self._n}, hex={self.to_hex()!r})"

    def __call__(self, point):
        return evaluate(self, point)

    def __neg__(self):
        return TruthTable(self._n, 1 - self._bits)


def hex_length(n: int) -> int:
    return 2 * max(1, (1 << n) // 8)


def from_hex(hexstring: str, n: int) -> TruthTable:
    """Parse the canonical hex wire format.

    Bytes run in increasing input index, bit ``j`` sits at byte ``j // 8``,
    position ``j % 8`` (LSB first).  For ``n < 3`` the unused high bits of the
    single byte must be zero.
    """
    n = _check_n(n)
    s = hexstring.strip()
    if s.lower().startswith("0x"):
        s = s[2:]
    want = hex_length(n)
    if len(s) != want:
        raise ValueError(f"n={n} needs exactly {want} hex digits, got {len(s)}")
    bad = [c for c in s if c not in string.hexdigits]
    if bad:
        raise ValueError(f"non-hex character {bad[0]!r} in truth table")
    raw = np.frombuffer(bytes.fromhex(s), dtype=np.uint8)
    bits = np.unpackbits(raw, bitorder="little")
    if n < 3 and bits[1 << n:].any():
        raise ValueError(f"padding bits above index {(1 << n) - 1} must be zero")
    return TruthTable(n, bits[: 1 << n])


def to_hex(tt: TruthTable) -> str:
    return tt.to_hex()


def point_index(point: Sequence[int]) -> int:
    """Input index of a ``{-1,1}`` assignment ``(x_1, ..., x_n)``."""
    j = 0
    for i, x in enumerate(point):
        if x == -1:
            j |= 1 << i
        elif x != 1:
            raise ValueError(f"coordinate x_{i + 1}={x!r} is not in {{-1, 1}}")
    return j


def evaluate(tt: TruthTable, point) -> int:
    """Value of ``tt`` in ``{-1,1}`` at an input index or a ``{-1,1}`` assignment."""
    if isinstance(point, numbers.Integral):
        j = int(point)
    else:
        point = list(point)
        if len(point) != tt.n:
            raise ValueError(f"point has {len(point)} coordinates, expected {tt.n}")
        j = point_index(point)
    if not 0 <= j < tt.size:
        raise IndexError(f"input index {j} out of range [0, {tt.size})")
    return 1 - 2 * int(tt.bits[j])


def flip_point(tt: TruthTable, j: int, mask: int) -> int:
    """Index of ``x`` with the coordinates in ``mask`` negated."""
    if not 0 <= j < tt.size:
        raise IndexError(f"input index {j} out of range [0, {tt.size})")
    if not 0 <= mask < tt.size:
        raise ValueError(f"subset mask {mask} out of range for n={tt.n}")
    return j ^ mask


def restrict(tt: TruthTable, fixed: Mapping[int, int]) -> TruthTable:
    """Fix variables (1-based index -> value in ``{-1,1}``) and renumber the rest.

    Surviving variables keep their relative order.  Fixing every variable is
    rejected.
    """
    n = tt.n
    items = list(fixed.items())
    keys = [int(i) for i, _ in items]
    if len(set(keys)) != len(keys):
        raise ValueError("duplicate variable in restriction")
    k = len(keys)
    if not 1 <= k <= n - 1:
        raise ValueError(f"must fix between 1 and n-1={n - 1} variables, got {k}")
    base = 0
    for i, v in items:
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} out of range [1, {n}]")
        if v not in (-1, 1):
            raise ValueError(f"fixed value for x_{i} must be -1 or 1, got {v!r}")
        if v == -1:
            base |= 1 << (i - 1)
    free = [i for i in range(n) if (i + 1) not in fixed]
    m = len(free)
    jj = np.arange(1 << m, dtype=np.int64)
    idx = np.full(1 << m, base, dtype=np.int64)
    for new_pos, old_pos in enumerate(free):
        idx |= ((jj >> new_pos) & 1) << old_pos
    return TruthTable(m, tt.bits[idx])


# -- a few named functions used throughout ------------------------------------

def constant(n: int, value: int = 1) -> TruthTable:
    if value not in (-1, 1):
        raise ValueError("constant value must be -1 or 1")
    return TruthTable(n, np.full(1 << _check_n(n), value == -1, dtype=np.uint8))


def dictator(n: int, i: int = 1) -> TruthTable:
    """``f(x) = x_i``."""
    n = _check_n(n)
    if not 1 <= i <= n:
        raise ValueError(f"variable index {i} out of range")
    return TruthTable(n, _cube_assignments(n)[:, i - 1].astype(np.uint8))


def parity(n: int) -> TruthTable:
    """``f(x) = x_1 x_2 ... x_n``."""
    n = _check_n(n)
    return TruthTable(n, (np.bitwise_count(np.arange(1 << n, dtype=np.uint32)) & 1).astype(np.uint8))


def majority(n: int) -> TruthTable:
    """``sign(x_1 + ... + x_n)`` with ``sign(0) = -1``."""
    pts = cube_points(_check_n(n)).astype(np.int64)
    return TruthTable(n, (pts.sum(axis=1) <= 0).astype(np.uint8))


def and_type(n: int) -> TruthTable:
    """``b = a_1 AND ... AND a_n``: -1 only at the all-(-1) point."""
    n = _check_n(n)
    bits = np.zeros(1 << n, dtype=np.uint8)
    bits[-1] = 1
    return TruthTable(n, bits)


def all_tables(n: int) -> np.ndarray:
    """Bits of every n-variable function, row ``t`` holds table integer ``t``.

    Shape ``(2**(2**n), 2**n)``; only sensible for ``n <= 4``.
    """
    n = _check_n(n)
    if n > 4:
        raise ValueError("all_tables is limited to n <= 4; iterate in chunks beyond that")
    size = 1 << n
    t = np.arange(1 << size, dtype=np.uint32)
    return ((t[:, None] >> np.arange(size, dtype=np.uint32)) & 1).astype(np.uint8)
