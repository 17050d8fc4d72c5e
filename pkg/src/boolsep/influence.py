"""Exact influences, total influence and sensitivity.

Everything is returned as :class:`~boolsep.core.Dyadic`.  The single-table
functions compute each quantity two independent ways (flip counting and the
spectral or autocorrelation identity) and raise :class:`InconsistentInfluence`
if they ever disagree; pass ``cross_check=False`` to skip the second route.
The ``*_rows`` helpers return integer numerators over ``2**n`` for whole
batches of tables.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Dyadic, TruthTable
from .spectral import autocorrelation, wht


class InconsistentInfluence(AssertionError):
    """Two exact routes to the same influence quantity disagreed."""


@dataclass(frozen=True)
class InfluenceProfile:
    n: int
    per_variable: tuple[Dyadic, ...]
    total: Dyadic

    def to_json(self) -> dict:
        return {
            "per_variable": [v.to_json() for v in self.per_variable],
            "total": self.total.to_json(),
        }


def _as_bits_rows(tables) -> np.ndarray:
    b = np.asarray(tables, dtype=np.uint8)
    return b[None, :] if b.ndim == 1 else b


def _log2_size(size: int) -> int:
    n = size.bit_length() - 1
    if size != 1 << n:
        raise ValueError(f"row length {size} is not a power of two")
    return n


def flip_counts_rows(bits: np.ndarray) -> np.ndarray:
    """``#{x : f(x) != f(x^i)}`` for every row and variable, shape ``(batch, n)``."""
    bits = _as_bits_rows(bits)
    batch, size = bits.shape
    n = _log2_size(size)
    out = np.empty((batch, n), dtype=np.int64)
    for i in range(n):
        h = 1 << i
        v = bits.reshape(batch, size // (2 * h), 2, h)
        out[:, i] = 2 * np.count_nonzero(v[:, :, 0, :] != v[:, :, 1, :], axis=(1, 2))
    return out


def fourier_influence_rows(spectra: np.ndarray, n: int) -> np.ndarray:
    """``sum_{S containing i} W(S)**2`` per row and variable (numerators over ``4**n``)."""
    spectra = np.asarray(spectra, dtype=np.int64)
    if spectra.ndim == 1:
        spectra = spectra[None, :]
    sq = spectra * spectra
    masks = np.arange(1 << n)
    return np.stack([sq[:, (masks >> i) & 1 == 1].sum(axis=1) for i in range(n)], axis=1)


def sensitivity_rows(bits: np.ndarray) -> np.ndarray:
    """Pointwise sensitivity ``s(f, x)`` for each row, shape ``(batch, 2**n)``."""
    bits = _as_bits_rows(bits)
    batch, size = bits.shape
    n = _log2_size(size)
    j = np.arange(size)
    s = np.zeros((batch, size), dtype=np.int64)
    for i in range(n):
        s += bits != bits[:, j ^ (1 << i)]
    return s


def unate_influence_rows(spectra: np.ndarray, n: int) -> np.ndarray:
    """``|W({i})|`` per variable, numerators over ``2**n``.

    Equals the flip-count influence only for functions that are monotone or
    antitone in every variable (threshold functions among them).
    """
    spectra = np.asarray(spectra, dtype=np.int64)
    if spectra.ndim == 1:
        spectra = spectra[None, :]
    return np.abs(spectra[:, [1 << i for i in range(n)]])


def _check_var(tt: TruthTable, i: int):
    if not 1 <= i <= tt.n:
        raise ValueError(f"variable index {i} out of range [1, {tt.n}]")


def influence_var(tt: TruthTable, i: int, *, cross_check: bool = True) -> Dyadic:
    """``Inf_i(f) = Pr[f(x) != f(x^i)]``."""
    _check_var(tt, i)
    h = 1 << (i - 1)
    v = tt.bits.reshape(tt.size // (2 * h), 2, h)
    count = 2 * int(np.count_nonzero(v[:, 0, :] != v[:, 1, :]))
    result = Dyadic(count, tt.n)
    if cross_check:
        W = wht(tt).W
        masks = np.arange(tt.size)
        sq = int((W[(masks >> (i - 1)) & 1 == 1] ** 2).sum())
        if Dyadic(sq, 2 * tt.n) != result:
            raise InconsistentInfluence(f"Inf_{i}: flips give {result}, spectrum gives {Dyadic(sq, 2 * tt.n)}")
    return result


def influence_set(tt: TruthTable, mask: int, *, cross_check: bool = True) -> Dyadic:
    """``Inf_S(f) = Pr[f(x) != f(x^S)]``; the empty set has influence 0."""
    if not 0 <= mask < tt.size:
        raise ValueError(f"subset mask {mask} out of range for n={tt.n}")
    j = np.arange(tt.size)
    count = int(np.count_nonzero(tt.bits != tt.bits[j ^ mask]))
    result = Dyadic(count, tt.n)
    if cross_check:
        # Inf_S = 1/2 - C(w_S) / 2**(n+1)
        via_c = Dyadic(1, 1) - Dyadic(autocorrelation(tt)[mask], tt.n + 1)
        if via_c != result:
            raise InconsistentInfluence(f"Inf_S(mask={mask}): flips give {result}, autocorrelation gives {via_c}")
    return result


def total_influence(tt: TruthTable, *, cross_check: bool = True) -> Dyadic:
    """``I(f) = sum_i Inf_i(f)``, cross-checked against ``sum_S |S| W(S)**2 / 4**n``."""
    counts = flip_counts_rows(tt.bits)[0]
    result = Dyadic(int(counts.sum()), tt.n)
    if cross_check:
        W = wht(tt).W
        weights = np.bitwise_count(np.arange(tt.size, dtype=np.uint32)).astype(np.int64)
        spectral = Dyadic(int((weights * W * W).sum()), 2 * tt.n)
        if spectral != result:
            raise InconsistentInfluence(f"I(f): flips give {result}, spectrum gives {spectral}")
    return result


def influence_profile(tt: TruthTable, *, cross_check: bool = True) -> InfluenceProfile:
    counts = flip_counts_rows(tt.bits)[0]
    per_var = tuple(Dyadic(int(c), tt.n) for c in counts)
    if cross_check:
        fourier = fourier_influence_rows(wht(tt).W, tt.n)[0]
        for i, (c, q) in enumerate(zip(counts, fourier), start=1):
            if int(c) << tt.n != int(q):
                raise InconsistentInfluence(f"Inf_{i}: flip count {c} vs spectral {q}")
    total = Dyadic(int(counts.sum()), tt.n)
    return InfluenceProfile(tt.n, per_var, total)


def sensitivity(tt: TruthTable, j: int) -> int:
    """``s(f, x) = #{i : f(x) != f(x^i)}`` at input index ``j``."""
    if not 0 <= j < tt.size:
        raise IndexError(f"input index {j} out of range [0, {tt.size})")
    b = tt.bits
    return sum(int(b[j] != b[j ^ (1 << i)]) for i in range(tt.n))


def average_sensitivity(tt: TruthTable) -> Dyadic:
    return Dyadic(int(sensitivity_rows(tt.bits).sum()), tt.n)
