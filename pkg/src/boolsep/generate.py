"""Witness constructions and seeded random models.

Randomness comes from numpy's PCG64 bit generator.  Sample ``i`` of a run with
seed ``s`` draws from ``SeedSequence([s, i])``, so any subset of samples can be
regenerated independently and in any order.  Normal variates use the
Box-Muller cosine branch ``sqrt(-2 ln(1-u1)) cos(2 pi u2)`` on two uniforms.

Threshold coefficients are rounded to multiples of ``2**-32`` before use so
every generated table is the exact sign of a known dyadic polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Literal, Sequence

import numpy as np

from .classify import bent_rows, feature_matrix
from .core import TruthTable, _check_n
from .spectral import wht_rows

COEFF_SCALE_BITS = 32
MAX_MONOTONE_N = 6


def substream(seed: int, index: int = 0) -> np.random.Generator:
    """Generator for sample ``index`` of a run seeded with ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed) & (2**64 - 1), int(index)])))


def box_muller(rng: np.random.Generator, size: int) -> np.ndarray:
    u1 = rng.random(size)
    u2 = rng.random(size)
    return np.sqrt(-2.0 * np.log1p(-u1)) * np.cos(2.0 * np.pi * u2)


@dataclass(frozen=True)
class RandomModel:
    """Coefficient distribution for random threshold functions.

    ``kind="fixed"`` bypasses sampling and uses ``coefficients`` verbatim (in
    monomial order), which is how tests inject known weights.
    """

    kind: Literal["uniform", "normal", "fixed"] = "normal"
    seed: int = 0
    degree: int = 1
    coefficients: tuple | None = field(default=None)

    def __post_init__(self):
        if self.kind not in ("uniform", "normal", "fixed"):
            raise ValueError(f"unknown random model {self.kind!r}")
        if self.kind == "fixed" and self.coefficients is None:
            raise ValueError("fixed model needs coefficients")

    def sample(self, count: int, index: int = 0) -> np.ndarray:
        """``count`` raw float coefficients for sample ``index``."""
        if self.kind == "fixed":
            c = np.array([float(v) for v in self.coefficients])
            if len(c) != count:
                raise ValueError(f"fixed model has {len(c)} coefficients, need {count}")
            return c
        rng = substream(self.seed, index)
        if self.kind == "uniform":
            return rng.uniform(-1.0, 1.0, count)
        return box_muller(rng, count)


def quantize(coeffs: np.ndarray) -> np.ndarray:
    """Integer numerators of ``coeffs`` rounded to multiples of ``2**-32``."""
    c = np.asarray(coeffs, dtype=np.float64)
    if np.abs(c).max(initial=0.0) >= 2.0**20:
        raise ValueError("coefficient magnitude too large to quantize exactly")
    return np.round(np.ldexp(c, COEFF_SCALE_BITS)).astype(np.int64)


def polynomial_values(phi: np.ndarray, coeff_ints: np.ndarray) -> np.ndarray:
    """Exact ``phi @ c`` for integer coefficient columns (shape ``(m, B)``)."""
    bound = int(np.abs(coeff_ints).max(initial=0)) * phi.shape[1]
    if bound < 2**53:
        # every partial sum is an integer below 2**53, so float64 BLAS is exact
        return phi.astype(np.float64) @ coeff_ints.astype(np.float64)
    return phi.astype(np.int64) @ coeff_ints


def ptf_coefficients(m: int, model: RandomModel, count: int, start: int = 0) -> np.ndarray:
    """Quantized coefficient rows for samples ``start..start+count-1``."""
    if not count:
        return np.zeros((0, m), np.int64)
    return np.stack([quantize(model.sample(m, start + i)) for i in range(count)])


def ptf_batch(n: int, d: int, model: RandomModel, count: int, start: int = 0):
    """``count`` random degree-``d`` PTFs (samples ``start..start+count-1``).

    Returns ``(bits, coeff_ints)`` with ``bits`` of shape ``(count, 2**n)`` and
    ``coeff_ints`` of shape ``(count, #monomials)``; true coefficients are
    ``coeff_ints / 2**32``.
    """
    n = _check_n(n)
    phi = feature_matrix(n, d)
    C = ptf_coefficients(phi.shape[1], model, count, start)
    z = polynomial_values(phi, C.T)
    return (z <= 0).T.astype(np.uint8), C


def random_ptf(n: int, d: int, model: RandomModel, *, index: int = 0,
               return_coefficients: bool = False):
    """Sign of a random polynomial over all monomials of degree ``<= d``."""
    if n > 14 or not 0 <= d <= min(n, 4):
        raise ValueError(f"random_ptf needs n <= 14 and 0 <= d <= min(n, 4), got n={n}, d={d}")
    bits, C = ptf_batch(n, d, model, 1, start=index)
    tt = TruthTable(n, bits[0])
    if return_coefficients:
        return tt, tuple(Fraction(int(v), 1 << COEFF_SCALE_BITS) for v in C[0])
    return tt


def random_ltf(n: int, model: RandomModel, *, index: int = 0) -> tuple[TruthTable, tuple[Fraction, ...]]:
    """``(table, (w_0, ..., w_n))`` with ``f(x) = sign(w_0 + sum w_i x_i)``."""
    if n > 16:
        raise ValueError(f"random_ltf supports n <= 16, got {n}")
    bits, C = ptf_batch(n, 1, model, 1, start=index)
    return TruthTable(n, bits[0]), tuple(Fraction(int(v), 1 << COEFF_SCALE_BITS) for v in C[0])


def random_function(n: int, seed: int) -> TruthTable:
    """Uniformly random table, deterministic in ``seed``."""
    n = _check_n(n)
    return TruthTable(n, substream(seed).integers(0, 2, 1 << n, dtype=np.uint8))


def random_bits(n: int, count: int, seed: int) -> np.ndarray:
    """``count`` uniformly random tables as a ``(count, 2**n)`` bit array."""
    return substream(seed).integers(0, 2, (count, 1 << n), dtype=np.uint8)


# -- bent and plateaued -----------------------------------------------------------

@dataclass(frozen=True)
class MMSpec:
    """Maiorana-McFarland data: ``f(x, y) = <x, pi(y)> + g(y)`` over GF(2).

    ``x`` occupies variables ``1..m`` and ``y`` variables ``m+1..2m``.
    ``g=None`` means the zero function.
    """

    m: int
    pi: tuple[int, ...]
    g: TruthTable | None = None

    def __post_init__(self):
        if not 1 <= self.m <= 8:
            raise ValueError(f"m must lie in [1, 8], got {self.m}")
        if sorted(self.pi) != list(range(1 << self.m)):
            raise ValueError("pi is not a permutation of {0, ..., 2**m - 1}")
        if self.g is not None and self.g.n != self.m:
            raise ValueError(f"g must have {self.m} variables")

    @classmethod
    def identity(cls, m: int) -> "MMSpec":
        return cls(m, tuple(range(1 << m)))

    @classmethod
    def random(cls, m: int, seed: int, index: int = 0) -> "MMSpec":
        rng = substream(seed, index)
        pi = tuple(int(v) for v in rng.permutation(1 << m))
        g = TruthTable(m, rng.integers(0, 2, 1 << m, dtype=np.uint8))
        return cls(m, pi, g)


def mm_bent(spec: MMSpec) -> TruthTable:
    m = spec.m
    j = np.arange(1 << (2 * m), dtype=np.uint32)
    ax = j & ((1 << m) - 1)
    ay = j >> m
    pi = np.array(spec.pi, dtype=np.uint32)
    bits = np.bitwise_count(ax & pi[ay]) & 1
    if spec.g is not None:
        bits ^= spec.g.bits[ay]
    return TruthTable(2 * m, bits.astype(np.uint8))


def padded_plateaued(bent_g: TruthTable, k: int) -> TruthTable:
    """``f(x, y) = g(x)`` with ``k`` dummy variables appended after ``g``'s."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if not bent_rows(wht_rows(bent_g.values)[None, :], bent_g.n)[0]:
        raise ValueError("base function is not bent")
    n = bent_g.n + k
    if n > 16:
        raise ValueError(f"padded function would have n={n} > 16 variables")
    if k == 0:
        return bent_g
    return TruthTable(n, np.tile(bent_g.bits, 1 << k))


# -- monotone enumeration ---------------------------------------------------------

def monotone_table_ints(n: int, *, allow_n6: bool = False) -> np.ndarray:
    """Table integers of every monotone ``n``-variable function, sorted.

    Built by the split on the last variable: the ``x_n = +1`` half (lower
    indices) must lie pointwise below the ``x_n = -1`` half in bit terms.
    """
    n = _check_n(n)
    if n > MAX_MONOTONE_N or (n == MAX_MONOTONE_N and not allow_n6):
        raise ValueError(f"monotone enumeration is limited to n <= 5 (n = 6 needs allow_n6=True), got {n}")
    cur = np.array([0, 2, 3], dtype=np.uint64)
    for k in range(2, n + 1):
        half = np.uint64(1 << (k - 1))
        parts = []
        for lo in cur:
            hi = cur[(lo & ~cur) == 0]
            parts.append(lo | (hi << half))
        cur = np.sort(np.concatenate(parts))
    return cur


def enumerate_monotone(n: int, *, allow_n6: bool = False) -> Iterator[TruthTable]:
    """Yield every monotone ``n``-variable function exactly once."""
    for t in monotone_table_ints(n, allow_n6=allow_n6):
        yield TruthTable.from_int(n, int(t))


def ints_to_bits(ints: Sequence[int] | np.ndarray, n: int) -> np.ndarray:
    """Expand table integers into a ``(len, 2**n)`` bit array."""
    v = np.asarray(ints, dtype=np.uint64)
    return ((v[:, None] >> np.arange(1 << n, dtype=np.uint64)) & np.uint64(1)).astype(np.uint8)


def with_seed(model: RandomModel, seed: int) -> RandomModel:
    return replace(model, seed=seed)
