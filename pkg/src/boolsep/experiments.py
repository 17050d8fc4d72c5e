"""Separation experiments: exhaustive censuses, bound checks and trend probes.

All pass/fail decisions are exact.  Influences are integer numerators over
``2**n``; irrational bounds such as ``2 sqrt(n)`` are compared after squaring.
Rows with status ``report-only`` record quantities whose asymptotic claims
have no usable constants at this scale.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .circuits import evaluate_circuit, read_once_tree, tribes_circuit
from .classify import (
    bent_rows,
    feature_matrix,
    is_ltf,
    max_sac_order,
    monotone_rows,
    pc_degree_rows,
    plateaued_order,
    plateaued_rows,
)
from .core import Dyadic, TruthTable, _check_n
from .generate import (
    MMSpec,
    RandomModel,
    mm_bent,
    monotone_table_ints,
    padded_plateaued,
    polynomial_values,
    ptf_batch,
    ptf_coefficients,
    random_bits,
)
from .influence import flip_counts_rows, total_influence
from .spectral import entropy_rows, inverse_binary_entropy, wht, wht_rows


WITNESS_LIMIT = 16
CENSUS_MAX_N = 4
CENSUS_LONG_RUN_N = 5


class GuardError(ValueError):
    """A size guard refused the request (use the documented flag to override)."""


@dataclass(frozen=True)
class ExperimentRow:
    experiment: str
    n: int
    param: str
    statistic: str
    numerator: int | None = None
    exponent: int | None = None
    value: float | None = None
    bound: str = ""
    status: str = "report-only"
    note: str = ""

    @classmethod
    def exact(cls, experiment, n, param, statistic, d: Dyadic, **kw) -> "ExperimentRow":
        return cls(experiment, n, param, statistic, d.numerator, d.exponent, float(d), **kw)

    @property
    def passed(self) -> bool:
        return self.status != "fail"


ROW_FIELDS = [f for f in ExperimentRow.__dataclass_fields__]


def rows_to_csv(rows: Iterable[ExperimentRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ROW_FIELDS)
    for r in rows:
        d = asdict(r)
        w.writerow(["" if d[k] is None else (repr(d[k]) if isinstance(d[k], float) else d[k]) for k in ROW_FIELDS])
    return buf.getvalue()


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


# -- bounds ---------------------------------------------------------------------------

def monotone_bound(n: int) -> Fraction:
    """``C(n, floor(n/2)) * ceil(n/2) / 2**(n-1)``."""
    return Fraction(math.comb(n, n // 2) * ((n + 1) // 2), 1 << (n - 1))


def within_two_sqrt_n(I: Dyadic, n: int) -> bool:
    """``I <= 2 sqrt(n)`` decided as ``(2I)**2 <= 16 n`` in exact arithmetic."""
    return (2 * I) * (2 * I) <= 16 * n


def within_d_sqrt_n(I: Dyadic, n: int, d: int) -> bool:
    return I * I <= d * d * n


# -- census ---------------------------------------------------------------------------

def _orbit_canon(bits: np.ndarray, n: int) -> np.ndarray:
    """Minimum table integer over all coordinate permutations and negations."""
    size = 1 << n
    place = np.int64(1) << np.arange(size, dtype=np.int64)
    j = np.arange(size)
    canon = None
    b = bits.astype(np.int64)
    for perm in itertools.permutations(range(n)):
        pj = np.zeros(size, dtype=np.int64)
        for i, src in enumerate(perm):
            pj |= ((j >> src) & 1) << i
        for neg in range(size):
            vals = b[:, pj ^ neg] @ place
            canon = vals if canon is None else np.minimum(canon, vals)
    return canon


def ltf_rows_by_orbit(bits: np.ndarray, n: int) -> np.ndarray:
    """LTF verdicts for a full batch, one exact LP per hyperoctahedral orbit.

    Threshold functions are closed under permuting and negating inputs, so the
    verdict is constant on each orbit.
    """
    canon = _orbit_canon(bits, n)
    reps, inverse = np.unique(canon, return_inverse=True)
    verdicts = np.array([is_ltf(TruthTable.from_int(n, int(r))).member for r in reps], dtype=bool)
    return verdicts[inverse]


@dataclass
class CensusResult:
    n: int
    total: int
    counts: dict[str, int | None] = field(default_factory=dict)
    plateaued_counts: dict[int, int] = field(default_factory=dict)
    sac_order_counts: dict[int, int] = field(default_factory=dict)
    pc_degree_counts: dict[int, int] = field(default_factory=dict)
    intersections: dict[str, int | None] = field(default_factory=dict)
    witnesses: dict[str, list[str]] = field(default_factory=dict)
    influence_range: dict[str, tuple[Dyadic, Dyadic]] = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def rows(self) -> list[ExperimentRow]:
        out = []
        for name, c in self.counts.items():
            if c is not None:
                out.append(ExperimentRow("census", self.n, "", f"count:{name}", c, 0, float(c)))
        for k, c in sorted(self.plateaued_counts.items()):
            out.append(ExperimentRow("census", self.n, f"k={k}", "count:plateaued", c, 0, float(c)))
        for k, c in sorted(self.sac_order_counts.items()):
            out.append(ExperimentRow("census", self.n, f"k={k}", "count:sac_max_order", c, 0, float(c)))
        for k, c in sorted(self.pc_degree_counts.items()):
            out.append(ExperimentRow("census", self.n, f"k={k}", "count:pc_degree", c, 0, float(c)))
        for name, c in self.intersections.items():
            if c is not None:
                wit = " ".join(self.witnesses.get(name, []))
                out.append(ExperimentRow("census", self.n, "", f"intersection:{name}", c, 0, float(c), note=wit))
        for name, (lo, hi) in self.influence_range.items():
            out.append(ExperimentRow.exact("census", self.n, "", f"min_I:{name}", lo))
            out.append(ExperimentRow.exact("census", self.n, "", f"max_I:{name}", hi))
        for name, ok in self.checks.items():
            out.append(ExperimentRow("census", self.n, "", f"check:{name}", status=_status(ok)))
        return out

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "total": self.total,
            "counts": self.counts,
            "plateaued_counts": {str(k): v for k, v in self.plateaued_counts.items()},
            "sac_order_counts": {str(k): v for k, v in self.sac_order_counts.items()},
            "pc_degree_counts": {str(k): v for k, v in self.pc_degree_counts.items()},
            "intersections": self.intersections,
            "witnesses": self.witnesses,
            "influence_range": {k: [lo.to_json(), hi.to_json()] for k, (lo, hi) in self.influence_range.items()},
            "checks": self.checks,
        }


def _table_chunks(n: int, chunk: int = 1 << 16):
    size = 1 << n
    total = 1 << size
    pos = np.arange(size, dtype=np.uint64)
    for start in range(0, total, chunk):
        t = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        yield t, ((t[:, None] >> pos) & np.uint64(1)).astype(np.uint8)


def census(n: int, *, long_run: bool = False, witness_limit: int = WITNESS_LIMIT) -> CensusResult:
    """Classify every ``n``-variable function.

    Checks recorded in :attr:`CensusResult.checks`:

    * ``prop1``: every bent, SAC or PC(>=1) function has ``I = n/2``;
    * ``monotone_disjoint`` (n >= 4) or ``monotone_meets`` (n in {2, 3}):
      monotone functions avoid / meet that union;
    * ``fact2``: every non-constant monotone function is within the bound;
    * ``ltf_witnesses_verified``: census LTF verdicts on witnesses re-verify.

    LTF verdicts cover every table for ``n <= 4``; at ``n = 5`` only members of
    the bent/SAC/PC union are tested and the overall LTF count is omitted.
    """
    n = _check_n(n)
    if n > CENSUS_LONG_RUN_N or (n == CENSUS_LONG_RUN_N and not long_run):
        raise GuardError(f"census is limited to n <= {CENSUS_MAX_N} (n = 5 needs --long-run), got n={n}")
    size = 1 << n
    half_total = n << (n - 1)  # numerator of n/2 over 2**n
    bound = monotone_bound(n)
    res = CensusResult(n, 1 << size)
    names = ["bent", "sac", "pc1", "monotone", "ltf", "special", "plateaued"]
    counts = {k: 0 for k in names}
    inter_names = ["monotone&special", "monotone&bent", "monotone&sac", "monotone&pc1",
                   "ltf&special", "ltf&bent", "ltf&sac", "ltf&pc1"]
    inter = {k: 0 for k in inter_names}
    witnesses: dict[str, list[str]] = {k: [] for k in inter_names}
    ranges: dict[str, list[int]] = {}
    prop1 = True
    fact2 = True
    hexlen = max(1, size // 8)

    def to_hex(t):
        return int(t).to_bytes(hexlen, "little").hex()

    for tints, bits in _table_chunks(n):
        W = wht_rows(1 - 2 * bits.astype(np.int64))
        bent = bent_rows(W, n)
        pl = plateaued_rows(W, n)
        flips = flip_counts_rows(bits)
        I = flips.sum(axis=1)
        sac = (flips == 1 << (n - 1)).all(axis=1)
        pc = pc_degree_rows(W, n)
        pc1 = pc >= 1
        mono = monotone_rows(bits)
        special = bent | sac | pc1
        if n <= CENSUS_MAX_N:
            ltf = ltf_rows_by_orbit(bits, n)
        else:
            ltf = np.zeros(len(bits), dtype=bool)
            for r in np.flatnonzero(special):
                ltf[r] = is_ltf(TruthTable(n, bits[r])).member
        sets = {"bent": bent, "sac": sac, "pc1": pc1, "monotone": mono, "ltf": ltf,
                "special": special, "plateaued": pl >= 0}
        for k, mask in sets.items():
            counts[k] += int(mask.sum())
            if mask.any():
                lo, hi = int(I[mask].min()), int(I[mask].max())
                if k in ranges:
                    ranges[k] = [min(ranges[k][0], lo), max(ranges[k][1], hi)]
                else:
                    ranges[k] = [lo, hi]
        for k in np.unique(pl[pl >= 0]):
            res.plateaued_counts[int(k)] = res.plateaued_counts.get(int(k), 0) + int((pl == k).sum())
        for k in np.unique(pc):
            res.pc_degree_counts[int(k)] = res.pc_degree_counts.get(int(k), 0) + int((pc == k).sum())
        for r in np.flatnonzero(sac):
            k = max_sac_order(TruthTable(n, bits[r]))
            res.sac_order_counts[k] = res.sac_order_counts.get(k, 0) + 1
        for name in inter_names:
            a, b = name.split("&")
            hit = sets[a] & sets[b]
            inter[name] += int(hit.sum())
            room = witness_limit - len(witnesses[name])
            for r in np.flatnonzero(hit)[:max(room, 0)]:
                witnesses[name].append(to_hex(tints[r]))
        prop1 &= bool((I[special] == half_total).all())
        nonconst = mono & (I > 0)
        if nonconst.any():
            fact2 &= Fraction(int(I[nonconst].max()), size) <= bound

    if n > CENSUS_MAX_N:
        counts["ltf"] = None
    res.counts = counts
    res.intersections = inter
    res.witnesses = {k: v for k, v in witnesses.items() if v}
    res.influence_range = {k: (Dyadic(lo, n), Dyadic(hi, n)) for k, (lo, hi) in ranges.items()}
    res.checks["prop1"] = prop1
    res.checks["fact2"] = fact2
    if n >= 4:
        res.checks["monotone_disjoint"] = inter["monotone&special"] == 0
    elif n in (2, 3):
        res.checks["monotone_meets"] = inter["monotone&special"] > 0
    return res


# -- Fact 2 ---------------------------------------------------------------------------

def monotone_influence_numerators(ints: np.ndarray, n: int) -> np.ndarray:
    """Total influence numerators (over ``2**n``) for packed table integers."""
    T = np.asarray(ints, dtype=np.uint64)
    size = 1 << n
    j = np.arange(size)
    total = np.zeros(len(T), dtype=np.int64)
    for i in range(n):
        low = np.uint64(sum(1 << int(p) for p in j[(j >> i) & 1 == 0]))
        diff = (T ^ (T >> np.uint64(1 << i))) & low
        total += 2 * np.bitwise_count(diff).astype(np.int64)
    return total


def fact2_experiment(n: int, *, allow_n6: bool = False) -> list[ExperimentRow]:
    """Exhaust the monotone functions and compare max ``I`` against the bound."""
    n = _check_n(n)
    if n > 6 or (n == 6 and not allow_n6):
        raise GuardError(f"fact2 experiment limited to n <= 5 (n = 6 needs --long-run), got n={n}")
    ints = monotone_table_ints(n, allow_n6=allow_n6)
    full = np.uint64((1 << (1 << n)) - 1) if n < 6 else np.uint64(2**64 - 1)
    nonconst = ints[(ints != 0) & (ints != full)]
    I = monotone_influence_numerators(nonconst, n)
    bound = monotone_bound(n)
    best = int(np.argmax(I))
    max_I = Dyadic(int(I[best]), n)
    hexlen = max(1, (1 << n) // 8)
    witness = int(nonconst[best]).to_bytes(hexlen, "little").hex()
    violations = int(sum(Fraction(int(v), 1 << n) > bound for v in np.unique(I)))
    rows = [
        ExperimentRow("fact2", n, "", "monotone_count", len(ints), 0, float(len(ints))),
        ExperimentRow.exact("fact2", n, "", "max_I_nonconstant_monotone", max_I,
                            bound=str(bound), status=_status(max_I <= bound and violations == 0),
                            note=witness),
    ]
    half = Fraction(n, 2)
    if n >= 4:
        rows.append(ExperimentRow("fact2", n, "", "bound_below_n_over_2", bound.numerator, None,
                                  float(bound), bound=str(half), status=_status(bound < half)))
    else:
        rows.append(ExperimentRow("fact2", n, "", "bound_below_n_over_2", bound.numerator, None,
                                  float(bound), bound=str(half), status="report-only",
                                  note="bound < n/2" if bound < half else "bound >= n/2 (threshold not active)"))
    return rows


# -- Fact 3 ---------------------------------------------------------------------------

def fact3_row(tt: TruthTable) -> ExperimentRow:
    I = total_influence(tt)
    return ExperimentRow.exact("fact3", tt.n, "", "I", I, bound=f"2*sqrt({tt.n})",
                               status=_status(within_two_sqrt_n(I, tt.n)))


def threshold_row(n: int) -> ExperimentRow:
    """``2 sqrt(n) < n/2`` as the pure-arithmetic ``16 n < n**2``."""
    return ExperimentRow("fact3", n, "", "2sqrt(n)<n/2", 16 * n, None, float(2 * math.sqrt(n)),
                         bound=str(Fraction(n, 2)), status=_status(16 * n < n * n),
                         note="16n < n^2")


def _ltf_influences(n: int, model: RandomModel, samples: int, chunk: int, cross_check: int):
    phi = feature_matrix(n, 1)
    pts_t = np.ascontiguousarray(phi[:, 1:].T, dtype=np.float32)
    out = np.empty(samples, dtype=np.int64)
    checked = 0
    for start in range(0, samples, chunk):
        cnt = min(chunk, samples - start)
        C = ptf_coefficients(phi.shape[1], model, cnt, start)
        z = polynomial_values(phi, C.T)
        vals = np.where(z > 0, np.float32(1), np.float32(-1))
        # integer sums of at most 2**16 unit terms: exact in float32
        singles = np.rint(pts_t @ vals).astype(np.int64)
        I = np.abs(singles).sum(axis=0)
        if checked < cross_check:
            take = min(cross_check - checked, cnt)
            bits = (z[:, :take] <= 0).T.astype(np.uint8)
            flips = flip_counts_rows(bits).sum(axis=1)
            if not np.array_equal(flips, I[:take]):
                raise AssertionError("unate influence shortcut disagrees with flip counts")
            checked += take
        out[start:start + cnt] = I
    return out


def fact3_experiment(n: int, samples: int, seed: int, *, models: Sequence[str] = ("uniform", "normal"),
                     chunk: int | None = None, cross_check: int = 16) -> list[ExperimentRow]:
    """Sample random LTFs and check ``I <= 2 sqrt(n)`` exactly.

    Influence of a threshold function is ``sum_i |W({i})| / 2**n`` because it
    is monotone or antitone in each variable; the first ``cross_check``
    samples per model are re-measured by flip counting.
    """
    if not 1 <= n <= 16:
        raise GuardError(f"fact3 experiment supports 1 <= n <= 16, got {n}")
    if chunk is None:
        chunk = max(1, min(4096, (1 << 23) >> n))
    rows = []
    for kind in models:
        I = _ltf_influences(n, RandomModel(kind, seed), samples, chunk, cross_check)
        # (2 I / 2**n)**2 <= 16 n  <=>  I**2 <= 4 n 4**n
        viol = int(((I.astype(object) ** 2) > 4 * n * (1 << (2 * n))).sum())
        best = Dyadic(int(I.max()), n)
        ratio = I / float(1 << n) / math.sqrt(n)
        rows += [
            ExperimentRow.exact("fact3", n, f"model={kind}", "max_I", best, bound=f"2*sqrt({n})",
                                status=_status(viol == 0), note=f"samples={samples} seed={seed}"),
            ExperimentRow("fact3", n, f"model={kind}", "violations", viol, 0, float(viol),
                          status=_status(viol == 0)),
            ExperimentRow("fact3", n, f"model={kind}", "mean_I_over_sqrt_n", value=float(ratio.mean())),
            ExperimentRow("fact3", n, f"model={kind}", "min_I_over_sqrt_n", value=float(ratio.min())),
        ]
    rows.append(threshold_row(17))
    return rows


# -- Fact 4 ---------------------------------------------------------------------------

def plateaued_witness(n: int, k: int, seed: int = 0) -> TruthTable:
    """``k``-plateaued ``n``-variable function: random MM bent on ``n-k`` vars, padded."""
    if (n - k) % 2 or not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n with n - k even, got n={n}, k={k}")
    if k == n:
        return TruthTable(n, np.zeros(1 << n, dtype=np.uint8))
    g = mm_bent(MMSpec.random((n - k) // 2, seed))
    return padded_plateaued(g, k)


def fact4_experiment(k: int, n_list: Sequence[int], seed: int = 0) -> list[ExperimentRow]:
    """Exact ``I = (n-k)/2`` on padded constructions plus report-only crossings."""
    rows = []
    for n in n_list:
        if (n - k) % 2:
            raise ValueError(f"n - k must be even, got n={n}, k={k}")
        if not k <= n <= 14:
            raise GuardError(f"fact4 needs k <= n <= 14, got n={n}")
        f = plateaued_witness(n, k, seed)
        I = total_influence(f)
        order = plateaued_order(wht(f))
        target = Dyadic(n - k, 1)
        rows.append(ExperimentRow.exact("fact4", n, f"k={k}", "I", I, bound=str(target),
                                        status=_status(I == target), note=f.to_hex() if n <= 6 else ""))
        rows.append(ExperimentRow("fact4", n, f"k={k}", "plateaued_order",
                                  order if order is not None else -1, 0,
                                  None if order is None else float(order),
                                  bound=str(k), status=_status(order == k)))
        mb = monotone_bound(n)
        rows.append(ExperimentRow.exact("fact4", n, f"k={k}", "exceeds_monotone_bound", I, bound=str(mb),
                                        note="yes" if I > mb else "no"))
        rows.append(ExperimentRow.exact("fact4", n, f"k={k}", "exceeds_ltf_bound", I, bound=f"2*sqrt({n})",
                                        note="no" if within_two_sqrt_n(I, n) else "yes"))
    return rows


# -- PTF conjecture probe -----------------------------------------------------------------

def probe_row(tt: TruthTable, d: int) -> ExperimentRow:
    I = total_influence(tt)
    return ExperimentRow.exact("probe", tt.n, f"d={d}", "I", I, bound=f"{d}*sqrt({tt.n})",
                               note="within" if within_d_sqrt_n(I, tt.n, d) else "exceeds")


def conjecture_probe(n: int, d: int, samples: int, seed: int, *, model: str = "normal",
                     chunk: int = 256) -> list[ExperimentRow]:
    """Random degree-``d`` PTFs against ``I <= d sqrt(n)``; never asserts except ``d = 1``."""
    if not 1 <= n <= 12 or not 1 <= d <= min(3, n):
        raise GuardError(f"probe needs n <= 12 and 1 <= d <= 3, got n={n}, d={d}")
    rm = RandomModel(model, seed, degree=d)
    I = np.empty(samples, dtype=np.int64)
    for start in range(0, samples, chunk):
        cnt = min(chunk, samples - start)
        bits, _ = ptf_batch(n, d, rm, cnt, start=start)
        I[start:start + cnt] = flip_counts_rows(bits).sum(axis=1)
    scale = 1 << n
    # I/2**n > d sqrt(n)  <=>  I**2 > d**2 n 4**n
    exceed = int((I.astype(object) ** 2 > d * d * n * scale * scale).sum())
    best = Dyadic(int(I.max()), n)
    shape = math.log2(n) * n ** (1 - 1 / (4 * d + 2)) if n > 1 else 0.0
    rows = [
        ExperimentRow.exact("probe", n, f"d={d}", "max_I", best, bound=f"{d}*sqrt({n})",
                            note=f"model={model} samples={samples} seed={seed}"),
        ExperimentRow("probe", n, f"d={d}", "fraction_exceeding_d_sqrt_n", exceed, None, exceed / samples),
        ExperimentRow("probe", n, f"d={d}", "ptf_bound_shape_logn_n^(1-1/(4d+2))", value=shape,
                      note="constant 2^O(d) unspecified"),
    ]
    if d == 1:
        ok = bool((I.astype(object) ** 2 <= 4 * n * scale * scale).all())
        rows.append(ExperimentRow.exact("probe", n, "d=1", "max_I_vs_2sqrt_n", best, bound=f"2*sqrt({n})",
                                        status=_status(ok)))
    return rows


# -- LHE ----------------------------------------------------------------------------

def lhe_experiment(n_list: Sequence[int], c_list: Sequence[float], samples: int, seed: int) -> list[ExperimentRow]:
    """Check ``H <= (1+c)/h^{-1}(c^2) * I`` on random members of LHE_c."""
    rows = []
    for n in n_list:
        bits = random_bits(n, samples, seed + n)
        W = wht_rows(1 - 2 * bits.astype(np.int64))
        H = entropy_rows(W, n)
        I = flip_counts_rows(bits).sum(axis=1) / float(1 << n)
        for c in c_list:
            factor = (1 + c) / inverse_binary_entropy(c * c)
            member = H >= c * n
            viol = int((member & (H > factor * I)).sum())
            rows.append(ExperimentRow("lhe", n, f"c={c}", "members", int(member.sum()), 0, float(member.sum()),
                                      note=f"samples={samples}"))
            rows.append(ExperimentRow("lhe", n, f"c={c}", "violations", viol, 0, float(viol),
                                      bound=f"factor={factor!r}",
                                      note="finding: inequality violated" if viol else ""))
    return rows


# -- Fact 1 trend ---------------------------------------------------------------------

def fact1_trend(max_n: int = 16) -> list[ExperimentRow]:
    """Total influence of tribes and read-once trees against ``(log n)**(d-1)``."""
    rows = []
    fams = []
    for width in (2, 3, 4):
        for tribes in range(1, max_n // width + 1):
            fams.append((f"tribes(w={width},t={tribes})", tribes_circuit(tribes, width)))
    for fanins in ([2, 2, 2], [2, 2, 2, 2], [2, 3, 2], [3, 2, 2]):
        c = read_once_tree(fanins)
        if c.n <= max_n:
            fams.append((f"tree{tuple(fanins)}", c))
    for name, c in fams:
        if c.n < 2:
            continue
        f = evaluate_circuit(c)
        I = total_influence(f)
        shape = math.log2(c.n) ** (c.depth - 1)
        rows.append(ExperimentRow.exact("fact1", c.n, f"d={c.depth}", f"I:{name}", I,
                                        bound=f"(log2 n)^(d-1)={shape!r}", note=f"ratio={float(I) / shape!r}"))
    return rows
