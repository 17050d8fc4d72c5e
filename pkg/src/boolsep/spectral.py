"""Exact Walsh-Hadamard spectra, Fourier entropy and autocorrelation.

Spectra are unnormalised integers ``W(S) = sum_x f(x) prod_{i in S} x_i``, i.e.
``2**n`` times the Fourier coefficient, indexed by subset mask.  Every routine
here has a row-batched form (``*_rows``) working on 2-D arrays so censuses and
sampling experiments avoid Python loops.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Dyadic, TruthTable

__all__ = [
    "Spectrum",
    "AutocorrelationTable",
    "wht",
    "wht_rows",
    "fourier_coefficient",
    "fourier_entropy",
    "entropy_rows",
    "autocorrelation",
    "autocorrelation_rows",
    "autocorrelation_direct",
    "parseval_holds",
]


def wht_rows(values: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform of each row.

    ``values`` has shape ``(batch, 2**n)`` (or ``(2**n,)``) with integer
    entries; the butterfly runs on a private int64 copy.
    """
    a = np.array(values, dtype=np.int64, copy=True)
    squeeze = a.ndim == 1
    if squeeze:
        a = a[None, :]
    batch, size = a.shape
    if size & (size - 1):
        raise ValueError(f"row length {size} is not a power of two")
    h = 1
    while h < size:
        v = a.reshape(batch, size // (2 * h), 2, h)
        lo = v[:, :, 0, :].copy()
        hi = v[:, :, 1, :]
        v[:, :, 0, :] += hi
        v[:, :, 1, :] = lo - hi
        h *= 2
    return a[0] if squeeze else a


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Integer spectrum ``W`` of an ``n``-variable function (read-only array)."""

    n: int
    W: np.ndarray

    def __post_init__(self):
        if self.W.shape != (1 << self.n,):
            raise ValueError("spectrum length must be 2**n")
        self.W.setflags(write=False)

    def __getitem__(self, mask: int) -> int:
        return int(self.W[mask])

    def coefficient(self, mask: int) -> Dyadic:
        return fourier_coefficient(self, mask)

    def squared_sum(self) -> int:
        # |W| <= 2**20, so squares and their sum fit in int64
        return int((self.W * self.W).sum())

    def to_list(self) -> list[int]:
        return [int(w) for w in self.W]


def wht(tt: TruthTable) -> Spectrum:
    """Spectrum of ``tt`` via the in-place butterfly, O(n 2**n)."""
    return Spectrum(tt.n, wht_rows(tt.values))


def fourier_coefficient(spec: Spectrum, mask: int) -> Dyadic:
    """Exact ``f^(S) = W(S) / 2**n``."""
    if not 0 <= mask < 1 << spec.n:
        raise ValueError(f"subset mask {mask} out of range for n={spec.n}")
    return Dyadic(int(spec.W[mask]), spec.n)


def parseval_holds(spec: Spectrum) -> bool:
    return spec.squared_sum() == 1 << (2 * spec.n)


def _entropy_from_squares(sq: np.ndarray, n: int) -> np.ndarray:
    p = sq.astype(np.float64) / float(1 << (2 * n))
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, -p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return terms.sum(axis=-1)


def fourier_entropy(spec: Spectrum) -> float:
    """Shannon entropy (bits) of ``{W(S)**2 / 4**n}``; zero terms are skipped."""
    W = spec.W.astype(np.int64)
    return float(_entropy_from_squares(W * W, spec.n))


def entropy_rows(spectra: np.ndarray, n: int) -> np.ndarray:
    spectra = np.asarray(spectra, dtype=np.int64)
    return _entropy_from_squares(spectra * spectra, n)


@dataclass(frozen=True, eq=False)
class AutocorrelationTable:
    """``C(u) = sum_x f(x) f(x * w_u)`` indexed by the shift mask ``u``.

    Shift mask ``u`` negates exactly the coordinates in ``u``, so ``C(u)`` is
    the correlation of the table with itself XOR-shifted by ``u``.
    """

    n: int
    C: np.ndarray

    def __post_init__(self):
        self.C.setflags(write=False)

    def __getitem__(self, mask: int) -> int:
        return int(self.C[mask])


def autocorrelation_rows(spectra: np.ndarray, n: int) -> np.ndarray:
    """Autocorrelations from spectra: ``2**n C(u) = sum_S W(S)**2 (-1)**<u,S>``."""
    spectra = np.asarray(spectra, dtype=np.int64)
    sq = spectra * spectra
    out = wht_rows(sq)
    return out >> n


def autocorrelation(tt: TruthTable) -> AutocorrelationTable:
    """Autocorrelation in O(n 2**n) through the squared spectrum."""
    return AutocorrelationTable(tt.n, autocorrelation_rows(wht(tt).W, tt.n))


def autocorrelation_direct(tt: TruthTable) -> AutocorrelationTable:
    """Reference O(4**n) evaluation of the defining sum."""
    v = tt.values.astype(np.int64)
    j = np.arange(tt.size)
    C = np.array([int((v * v[j ^ u]).sum()) for u in range(tt.size)], dtype=np.int64)
    return AutocorrelationTable(tt.n, C)


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def inverse_binary_entropy(y: float, tol: float = 1e-12) -> float:
    """The ``p`` in ``[0, 1/2]`` with ``h(p) = y``, by bisection to ``tol``."""
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"binary entropy value {y} outside [0, 1]")
    if y == 1.0:
        # h is flat at 1/2, so float rounding would stop bisection short
        return 0.5
    lo, hi = 0.0, 0.5
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if binary_entropy(mid) < y:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2
