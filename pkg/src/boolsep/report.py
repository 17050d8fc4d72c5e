"""JSON analysis report (``schema: 1``)."""
from __future__ import annotations

from .classify import classify
from .core import TruthTable
from .influence import average_sensitivity, influence_profile
from .spectral import autocorrelation, fourier_entropy, wht

SCHEMA_VERSION = 1


def analyze(tt: TruthTable, *, with_ltf: bool | None = None, include_classes: bool = True) -> dict:
    """Full report: spectrum, influences, entropy and class memberships.

    Keys: ``schema``, ``n``, ``tt`` (hex), ``spectrum`` (list of ints by
    mask), ``autocorrelation``, ``influence`` (exact numerator/exponent pairs
    with decimal values), ``average_sensitivity``, ``entropy`` and
    ``classes`` (see :meth:`ClassReport.to_json`).
    """
    spec = wht(tt)
    prof = influence_profile(tt)
    s = average_sensitivity(tt)
    if s != prof.total:
        raise AssertionError(f"average sensitivity {s} differs from total influence {prof.total}")
    out = {
        "schema": SCHEMA_VERSION,
        "n": tt.n,
        "tt": tt.to_hex(),
        "spectrum": spec.to_list(),
        "autocorrelation": [int(c) for c in autocorrelation(tt).C],
        "influence": prof.to_json(),
        "average_sensitivity": s.to_json(),
        "entropy": fourier_entropy(spec),
    }
    if include_classes:
        out["classes"] = classify(tt, with_ltf=with_ltf).to_json()
    return out
