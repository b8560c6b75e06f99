"""Exact PBW arithmetic for Ore extensions, weighted seminorms and sl2 envelopes."""

from .algebra import (
    AlgebraError,
    Derivation,
    Endomorphism,
    FuelExhausted,
    PBWElement,
    Presentation,
    RewriteError,
    builtin,
    convert,
    load_presentation,
    mul,
    normal_order,
)
from .coeff import GaussianRational, as_scalar
from .expr import FreeTerm, ParseError, parse, parse_scalar, render
from .ore import OreData, commute_zn, jordanian_ore, snk_enumerate, snk_pascal, uq_tower
from .rep import envelope_map, irrep
from .seminorm import SeminormSpec, VerificationReport, evaluate
from .suites import SUITES, run_suite

__all__ = [
    "AlgebraError",
    "Derivation",
    "Endomorphism",
    "FreeTerm",
    "FuelExhausted",
    "GaussianRational",
    "OreData",
    "PBWElement",
    "ParseError",
    "Presentation",
    "RewriteError",
    "SUITES",
    "SeminormSpec",
    "VerificationReport",
    "as_scalar",
    "builtin",
    "commute_zn",
    "convert",
    "envelope_map",
    "evaluate",
    "irrep",
    "jordanian_ore",
    "load_presentation",
    "mul",
    "normal_order",
    "parse",
    "parse_scalar",
    "render",
    "run_suite",
    "snk_enumerate",
    "snk_pascal",
    "uq_tower",
]

__version__ = "0.1.0"
