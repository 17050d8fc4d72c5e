"""Membership deciders for bent, plateaued, SAC, PC, monotone, LTF/PTF and LHE.

Each decider has a single-table form and, where censuses need it, a batched
``*_rows`` form over 2-D bit or spectrum arrays.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import Dyadic, TruthTable, cube_points, restrict
from .influence import flip_counts_rows, total_influence
from .lp import SignCertificate, sign_representation, verify_weights, verify_witness
from .spectral import (
    Spectrum,
    autocorrelation_rows,
    fourier_entropy,
    inverse_binary_entropy,
    wht,
)

MAX_LP_VARS = 12
MAX_LP_FEATURES = 1 << 12


# -- spectral classes ----------------------------------------------------------

def is_bent(spec: Spectrum) -> bool | None:
    """``True`` iff every ``|W(S)| = 2**(n/2)``; ``None`` for odd ``n``."""
    if spec.n % 2:
        return None
    return bool((np.abs(spec.W) == 1 << (spec.n // 2)).all())


def bent_rows(spectra: np.ndarray, n: int) -> np.ndarray:
    if n % 2:
        return np.zeros(len(spectra), dtype=bool)
    return (np.abs(spectra) == 1 << (n // 2)).all(axis=1)


def plateaued_order(spec: Spectrum) -> int | None:
    """The ``k`` with every ``W(S)`` in ``{0, +-2**((n+k)/2)}``, else ``None``."""
    k = int(plateaued_rows(spec.W[None, :], spec.n)[0])
    return k if k >= 0 else None


def plateaued_rows(spectra: np.ndarray, n: int) -> np.ndarray:
    """Plateaued order per row, ``-1`` where the row is not plateaued."""
    A = np.abs(np.asarray(spectra, dtype=np.int64))
    amp = A.max(axis=1)
    flat = ((A == 0) | (A == amp[:, None])).all(axis=1)
    power = (amp & (amp - 1)) == 0
    log_amp = np.zeros_like(amp)
    nz = amp > 0
    log_amp[nz] = np.log2(amp[nz]).round().astype(np.int64)
    k = 2 * log_amp - n
    ok = flat & power & (k >= 0) & (k <= n)
    # (n + k) even is automatic from k = 2 log M - n; Parseval fixes the support size
    return np.where(ok, k, -1)


# -- avalanche and propagation ------------------------------------------------------

def _half(n: int) -> int:
    return 1 << (n - 1)


def satisfies_sac(tt: TruthTable) -> bool:
    """Every single-variable influence is exactly 1/2."""
    return bool((flip_counts_rows(tt.bits)[0] == 1 << (tt.n - 1)).all())


def sac_rows(bits: np.ndarray) -> np.ndarray:
    bits = np.asarray(bits)
    n = bits.shape[1].bit_length() - 1
    return (flip_counts_rows(bits) == _half(n)).all(axis=1)


def satisfies_sac_order(tt: TruthTable, k: int) -> bool:
    """SAC for every restriction fixing exactly ``k`` variables (``k <= n-2``)."""
    n = tt.n
    if not 0 <= k <= n - 2:
        raise ValueError(f"SAC order must lie in [0, n-2] = [0, {n - 2}], got {k}")
    if k == 0:
        return satisfies_sac(tt)
    for fixed_vars in itertools.combinations(range(1, n + 1), k):
        for values in itertools.product((1, -1), repeat=k):
            if not satisfies_sac(restrict(tt, dict(zip(fixed_vars, values)))):
                return False
    return True


def max_sac_order(tt: TruthTable) -> int | None:
    """Largest ``k <= n-2`` with SAC(0..k) all holding; ``None`` if SAC fails."""
    if tt.n < 2 or not satisfies_sac(tt):
        return None
    best = 0
    for k in range(1, tt.n - 1):
        if not satisfies_sac_order(tt, k):
            break
        best = k
    return best


def _shift_masks_by_weight(n: int) -> list[np.ndarray]:
    masks = np.arange(1 << n)
    w = np.bitwise_count(masks.astype(np.uint32))
    return [masks[w == t] for t in range(n + 1)]


def pc_degree_rows(spectra: np.ndarray, n: int) -> np.ndarray:
    """Largest ``k`` with ``C(u) = 0`` for all shifts of weight ``1..k``."""
    C = autocorrelation_rows(spectra, n)
    groups = _shift_masks_by_weight(n)
    deg = np.zeros(len(C), dtype=np.int64)
    alive = np.ones(len(C), dtype=bool)
    for t in range(1, n + 1):
        ok = (C[:, groups[t]] == 0).all(axis=1)
        alive &= ok
        deg[alive] = t
    return deg


def max_pc_degree(tt: TruthTable) -> int:
    """PC degree via vanishing autocorrelation; 0 when some singleton fails."""
    return int(pc_degree_rows(wht(tt).W[None, :], tt.n)[0])


def satisfies_pc(tt: TruthTable, k: int) -> bool:
    return max_pc_degree(tt) >= k


# -- monotone ----------------------------------------------------------------------

def monotone_rows(bits: np.ndarray) -> np.ndarray:
    """Covering-pair test: ``b(a_i = 0) <= b(a_i = 1)`` for every ``i``.

    Raising ``x_i`` from -1 to 1 clears bit ``a_i``; the value may not drop,
    i.e. ``b`` may not go from 0 to 1.  In bit terms the table is monotone in
    the usual 0/1 sense.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.ndim == 1:
        bits = bits[None, :]
    batch, size = bits.shape
    n = size.bit_length() - 1
    ok = np.ones(batch, dtype=bool)
    for i in range(n):
        h = 1 << i
        v = bits.reshape(batch, size // (2 * h), 2, h)
        ok &= (v[:, :, 0, :] <= v[:, :, 1, :]).all(axis=(1, 2))
    return ok


def is_monotone(tt: TruthTable) -> bool:
    return bool(monotone_rows(tt.bits)[0])


# -- threshold functions --------------------------------------------------------

@functools.lru_cache(maxsize=64)
def _monomials(n: int, d: int) -> tuple[int, ...]:
    masks = [m for m in range(1 << n) if m.bit_count() <= d]
    return tuple(sorted(masks, key=lambda m: (m.bit_count(), m)))


def monomials(n: int, d: int) -> list[int]:
    """Subset masks of size ``<= d`` ordered by (size, mask); mask 0 first."""
    return list(_monomials(n, d))


@functools.lru_cache(maxsize=16)
def feature_matrix(n: int, d: int) -> np.ndarray:
    """``chi_S(x)`` for every point (rows) and monomial of degree ``<= d`` (columns).

    Cached; the returned array is read-only.
    """
    j = np.arange(1 << n, dtype=np.uint32)
    cols = monomials(n, d)
    out = np.empty((1 << n, len(cols)), dtype=np.int64)
    for c, m in enumerate(cols):
        out[:, c] = 1 - 2 * (np.bitwise_count(j & np.uint32(m)) & 1).astype(np.int64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class ThresholdCertificate:
    """LTF/PTF verdict with exact weights (members) or a Farkas witness."""

    n: int
    degree: int
    monomials: tuple[int, ...]
    certificate: SignCertificate

    @property
    def member(self) -> bool:
        return self.certificate.member

    @property
    def verdict(self) -> str:
        return self.certificate.verdict

    @property
    def weights(self) -> tuple[Fraction, ...] | None:
        return self.certificate.weights

    @property
    def witness(self) -> dict[int, Fraction] | None:
        return self.certificate.witness

    def verify(self, tt: TruthTable) -> bool:
        phi = feature_matrix(tt.n, self.degree)
        if self.member:
            return verify_weights(phi, tt.values, self.weights)
        return verify_witness(phi, tt.values, self.witness)

    def to_json(self) -> dict:
        out = self.certificate.to_json()
        out["degree"] = self.degree
        out["monomials"] = list(self.monomials)
        return out


def is_ptf(tt: TruthTable, d: int, *, exact_only: bool = False) -> ThresholdCertificate:
    """Decide whether ``tt`` is the sign of a degree-``d`` polynomial."""
    if tt.n > MAX_LP_VARS:
        raise ValueError(f"threshold recognition limited to n <= {MAX_LP_VARS}, got n={tt.n}")
    if not 0 <= d <= tt.n:
        raise ValueError(f"degree must lie in [0, n], got {d}")
    mons = monomials(tt.n, d)
    if len(mons) > MAX_LP_FEATURES:
        raise ValueError(f"too many features ({len(mons)})")
    cert = sign_representation(feature_matrix(tt.n, d), tt.values, exact_only=exact_only)
    return ThresholdCertificate(tt.n, d, tuple(mons), cert)


def is_ltf(tt: TruthTable, *, exact_only: bool = False) -> ThresholdCertificate:
    """LTF test; weights are ordered ``(w_0, w_1, ..., w_n)``."""
    return is_ptf(tt, 1, exact_only=exact_only)


def threshold_table(n: int, weights) -> TruthTable:
    """``sign(w_0 + sum w_i x_i)`` with ``sign(0) = -1``, evaluated exactly."""
    weights = [Fraction(w) for w in weights]
    if len(weights) != n + 1:
        raise ValueError(f"need n+1={n + 1} weights, got {len(weights)}")
    den = math.lcm(*(w.denominator for w in weights))
    ints = [int(w * den) for w in weights]
    pts = cube_points(n).astype(object)
    z = ints[0] + pts @ np.array(ints[1:], dtype=object)
    return TruthTable(n, np.array([0 if v > 0 else 1 for v in z], dtype=np.uint8))


# -- LHE -------------------------------------------------------------------------

@dataclass(frozen=True)
class LheReport:
    c: float
    entropy: float
    total_influence: Dyadic
    member: bool
    bound: float
    holds: bool


def lhe_factor(c: float) -> float:
    """``(1 + c) / h^{-1}(c**2)``."""
    if not 0.0 < c < 0.5:
        raise ValueError(f"c must lie in (0, 1/2), got {c}")
    return (1.0 + c) / inverse_binary_entropy(c * c)


def lhe_bound(tt: TruthTable, c: float) -> LheReport:
    """Check ``H(f) <= (1+c) / h^{-1}(c**2) * I(f)`` for ``c``-linearly-high-entropy ``f``.

    ``holds`` is reported for non-members too but only carries meaning for
    members.
    """
    factor = lhe_factor(c)
    H = fourier_entropy(wht(tt))
    I = total_influence(tt, cross_check=False)
    bound = factor * float(I)
    return LheReport(c, H, I, H >= c * tt.n, bound, H <= bound)


# -- full report -----------------------------------------------------------------

def _yes_no(v: bool | None) -> str:
    if v is None:
        return "not-applicable"
    return "yes" if v else "no"


@dataclass(frozen=True)
class ClassReport:
    n: int
    bent: bool | None
    plateaued_order: int | None
    sac: bool
    sac_order: int | None
    pc_degree: int
    monotone: bool
    ltf: ThresholdCertificate | None
    chow: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "bent": _yes_no(self.bent),
            "plateaued_order": self.plateaued_order,
            "sac": _yes_no(self.sac),
            "sac_order": self.sac_order,
            "pc_degree": self.pc_degree,
            "monotone": _yes_no(self.monotone),
            "ltf": self.ltf.to_json() if self.ltf is not None else None,
            "chow": list(self.chow),
        }


def classify(tt: TruthTable, *, with_ltf: bool | None = None) -> ClassReport:
    """Run every decider; LTF is skipped above ``n = 12`` unless forced off/on."""
    spec = wht(tt)
    if with_ltf is None:
        with_ltf = tt.n <= MAX_LP_VARS
    sac = satisfies_sac(tt)
    return ClassReport(
        n=tt.n,
        bent=is_bent(spec),
        plateaued_order=plateaued_order(spec),
        sac=sac,
        sac_order=max_sac_order(tt) if sac else None,
        pc_degree=max_pc_degree(tt),
        monotone=is_monotone(tt),
        ltf=is_ltf(tt) if with_ltf else None,
        chow=tuple(int(spec.W[m]) for m in [0] + [1 << i for i in range(tt.n)]),
    )
