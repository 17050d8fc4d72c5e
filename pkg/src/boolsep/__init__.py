"""Exact Fourier-analytic classification of Boolean functions.

Truth tables, Walsh-Hadamard spectra, influences, class deciders (bent,
plateaued, SAC, PC, monotone, threshold), witness generators, leveled
circuits and the separation experiments built on them.
"""
from .core import Dyadic, TruthTable, from_hex, to_hex
from .spectral import Spectrum, autocorrelation, fourier_entropy, wht
from .influence import average_sensitivity, influence_set, influence_var, total_influence
from .classify import (
    ClassReport,
    classify,
    is_bent,
    is_ltf,
    is_monotone,
    is_ptf,
    max_pc_degree,
    max_sac_order,
    plateaued_order,
    satisfies_sac,
)
from .generate import MMSpec, RandomModel, mm_bent, padded_plateaued, random_ltf, random_ptf
from .circuits import Circuit, evaluate_circuit, parse_circuit
from .report import analyze
from .estimators import (
    BooleanClassProfiler,
    InfluenceTransformer,
    NotSeparableError,
    ThresholdFunctionClassifier,
    WalshHadamardTransformer,
)

__version__ = "0.1.0"

__all__ = [
    "Dyadic", "TruthTable", "from_hex", "to_hex",
    "Spectrum", "autocorrelation", "fourier_entropy", "wht",
    "average_sensitivity", "influence_set", "influence_var", "total_influence",
    "ClassReport", "classify", "is_bent", "is_ltf", "is_monotone", "is_ptf",
    "max_pc_degree", "max_sac_order", "plateaued_order", "satisfies_sac",
    "MMSpec", "RandomModel", "mm_bent", "padded_plateaued", "random_ltf", "random_ptf",
    "Circuit", "evaluate_circuit", "parse_circuit",
    "analyze",
    "BooleanClassProfiler", "InfluenceTransformer", "NotSeparableError",
    "ThresholdFunctionClassifier", "WalshHadamardTransformer",
]
