"""Sign-representation feasibility with exact certificates.

Given a feature matrix ``Phi`` (rows are points, columns are monomials
``chi_S``) and labels ``y`` in ``{-1,1}``, decide whether some weight vector
``w`` has ``sign(Phi w) = y`` with ``sign(0) = -1``.  When the constant
monomial is a column this is equivalent to feasibility of ``y_x (Phi w)_x >= 1``
for every row.

The fast path solves that LP in floating point with HiGHS, rounds to
integers or small rationals and re-verifies exactly.  An infeasible LP yields a
Farkas witness ``z >= 0`` with ``sum_x z_x y_x Phi_x = 0`` and ``sum z = 1``,
also recovered exactly.  Whenever rounding does not verify, the problem is
handed to :func:`phase_one`, a dense rational simplex using Bland's rule.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np
from scipy.optimize import linprog

log = logging.getLogger(__name__)


class CertificateError(AssertionError):
    """A certificate failed exact re-verification."""


@dataclass(frozen=True)
class SignCertificate:
    """Outcome of a sign-representation query.

    Members carry ``weights`` (one exact rational per feature column);
    non-members carry ``witness``, a map from row index to a positive
    rational multiplier.
    """

    member: bool
    weights: tuple[Fraction, ...] | None = None
    witness: dict[int, Fraction] | None = field(default=None)
    method: str = "float+verify"

    @property
    def verdict(self) -> str:
        return "member" if self.member else "non-member"

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "method": self.method}
        if self.member:
            out["weights"] = [str(w) for w in self.weights]
        else:
            out["witness"] = [{"index": int(j), "multiplier": str(z)} for j, z in sorted(self.witness.items())]
        return out


def _matvec_exact(phi: np.ndarray, w: list[int]) -> np.ndarray:
    """``Phi @ w`` for integer ``w`` without overflow."""
    bound = max((abs(x) for x in w), default=0) * phi.shape[1]
    if bound < 2**62:
        return phi.astype(np.int64) @ np.array(w, dtype=np.int64)
    return phi.astype(object) @ np.array(w, dtype=object)


def verify_weights(phi: np.ndarray, labels: np.ndarray, weights) -> bool:
    """Exact check of ``sign(Phi w) == labels`` with ``sign(0) = -1``."""
    weights = [Fraction(w) for w in weights]
    if len(weights) != phi.shape[1]:
        return False
    den = lcm(*(w.denominator for w in weights)) if weights else 1
    ints = [int(w * den) for w in weights]
    z = _matvec_exact(phi, ints)
    pred = np.where(np.asarray(z > 0, dtype=bool), 1, -1)
    return bool(np.array_equal(pred, np.asarray(labels)))


def verify_witness(phi: np.ndarray, labels: np.ndarray, witness: dict[int, Fraction]) -> bool:
    """Exact check that ``witness`` proves infeasibility.

    Needs ``z >= 0``, ``sum_x z_x y_x Phi_x = 0`` and positive mass on some
    row with ``y_x = 1``: that row demands ``p(x) > 0`` while the weighted sum
    of ``y_x p(x)`` over the support, each term of which must be >= 0, is zero.
    """
    if not witness or any(z < 0 for z in witness.values()):
        return False
    total = [Fraction(0)] * phi.shape[1]
    pos_mass = Fraction(0)
    for j, z in witness.items():
        y = int(labels[j])
        if y == 1:
            pos_mass += z
        row = phi[j]
        for c in range(phi.shape[1]):
            if row[c]:
                total[c] += z * y * int(row[c])
    return pos_mass > 0 and all(t == 0 for t in total)


# -- exact simplex -------------------------------------------------------------

def phase_one(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Find ``x >= 0`` with ``A x = b`` exactly, or ``None`` if infeasible.

    Dense two-phase simplex, phase one only, Bland's anti-cycling rule.
    """
    m = len(A)
    nvar = len(A[0]) if m else 0
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        rows.append(row + art + [rhs])
    width = nvar + m
    basis = [nvar + i for i in range(m)]
    # objective: minimise sum of artificials -> reduced costs row
    obj = [Fraction(0)] * (width + 1)
    for r in rows:
        for c in range(nvar):
            obj[c] -= r[c]
        obj[width] -= r[width]
    while True:
        enter = next((c for c in range(width) if obj[c] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i, r in enumerate(rows):
            if r[enter] > 0:
                ratio = r[width] / r[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            # unbounded cannot happen in phase one (objective bounded below by 0)
            raise RuntimeError("phase one reported unbounded")
        pr = rows[leave]
        piv = pr[enter]
        if piv != 1:
            rows[leave] = pr = [v / piv for v in pr]
        for i, r in enumerate(rows):
            if i != leave and r[enter] != 0:
                f = r[enter]
                rows[i] = [a - f * p for a, p in zip(r, pr)]
        f = obj[enter]
        obj = [a - f * p for a, p in zip(obj, pr)]
        basis[leave] = enter
    if obj[width] != 0:
        return None
    x = [Fraction(0)] * nvar
    for i, var in enumerate(basis):
        if var < nvar:
            x[var] = rows[i][width]
    return x


def _exact_primal(phi: np.ndarray, labels: np.ndarray) -> list[Fraction] | None:
    # y_x Phi_x (u - v) - s_x = 1 with u, v, s >= 0
    npts, nfeat = phi.shape
    A, b = [], []
    for j in range(npts):
        a = [int(labels[j]) * int(c) for c in phi[j]]
        slack = [0] * npts
        slack[j] = -1
        A.append(a + [-v for v in a] + slack)
        b.append(1)
    x = phase_one(A, b)
    if x is None:
        return None
    return [x[c] - x[nfeat + c] for c in range(nfeat)]


def _exact_farkas(phi: np.ndarray, labels: np.ndarray, rows: list[int]) -> dict[int, Fraction] | None:
    # sum_x z_x y_x Phi_x = 0, sum z = 1, z >= 0 over the given rows
    nfeat = phi.shape[1]
    A = [[int(labels[j]) * int(phi[j, c]) for j in rows] for c in range(nfeat)]
    A.append([1] * len(rows))
    b = [0] * nfeat + [1]
    z = phase_one(A, b)
    if z is None:
        return None
    return {j: v for j, v in zip(rows, z) if v != 0}


def _round_weights(w: np.ndarray) -> list[list[Fraction]]:
    """Candidate exact weight vectors from a float LP solution."""
    cands = [[Fraction(int(round(v))) for v in w]]
    for den in (1 << 10, 1 << 20, 1 << 30):
        cands.append([Fraction(v).limit_denominator(den) for v in w])
    return cands


def _float_farkas(phi: np.ndarray, labels: np.ndarray) -> np.ndarray | None:
    A = (labels[:, None] * phi).astype(np.float64)
    npts = A.shape[0]
    A_eq = np.vstack([A.T, np.ones((1, npts))])
    b_eq = np.zeros(A_eq.shape[0])
    b_eq[-1] = 1.0
    res = linprog(np.zeros(npts), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    return res.x if res.status == 0 else None


def sign_representation(phi: np.ndarray, labels: np.ndarray, *, exact_only: bool = False) -> SignCertificate:
    """Decide whether ``labels = sign(Phi w)`` for some ``w``; return an exact certificate.

    ``phi`` must contain the all-ones column (the constant monomial).
    ``exact_only`` skips the float solver and runs the rational simplex.
    """
    phi = np.asarray(phi, dtype=np.int64)
    labels = np.asarray(labels, dtype=np.int64)
    if not np.isin(labels, (-1, 1)).all():
        raise ValueError("labels must be -1 or 1")
    if not (phi == 1).all(axis=0).any():
        raise ValueError("feature matrix needs a constant column")
    npts = phi.shape[0]

    if exact_only:
        return _exact_decide(phi, labels)

    A = (labels[:, None] * phi).astype(np.float64)
    res = linprog(
        np.zeros(phi.shape[1]), A_ub=-A, b_ub=-np.ones(npts),
        bounds=(None, None), method="highs",
    )
    if res.status == 0:
        for cand in _round_weights(res.x):
            if verify_weights(phi, labels, cand):
                return SignCertificate(True, weights=tuple(cand))
        log.debug("float weights did not verify; falling back to exact simplex")
    elif res.status == 2:
        z = _float_farkas(phi, labels)
        if z is not None:
            support = [int(j) for j in np.flatnonzero(z > 1e-9 * max(z.max(), 1e-300))]
            wit = _exact_farkas(phi, labels, support) if support else None
            if wit is not None and verify_witness(phi, labels, wit):
                return SignCertificate(False, witness=wit)
        log.debug("float Farkas witness did not verify; falling back to exact simplex")
    return _exact_decide(phi, labels)


def _exact_decide(phi: np.ndarray, labels: np.ndarray) -> SignCertificate:
    w = _exact_primal(phi, labels)
    if w is not None:
        if not verify_weights(phi, labels, w):
            raise CertificateError("exact simplex weights failed verification")
        return SignCertificate(True, weights=tuple(w), method="exact-simplex")
    wit = _exact_farkas(phi, labels, list(range(phi.shape[0])))
    if wit is None or not verify_witness(phi, labels, wit):
        raise CertificateError("exact simplex found neither weights nor a valid witness")
    return SignCertificate(False, witness=wit, method="exact-simplex")
