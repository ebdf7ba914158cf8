"""Negative cyclic homology, Mukai and higher residue pairings, trace pairings."""

from nchodge.cyclic.complex import NegativeCyclicComplex
from nchodge.cyclic.homology import (
    CyclicHomologyCalculator,
    free_generators,
    hc_minus_ranks,
    lift_to_negative_cyclic,
)
from nchodge.cyclic.models import (
    CyclicRankReport,
    LiftResult,
    MukaiComponents,
    NegativeCyclicChain,
    PairingValue,
    TracePairingReport,
)
from nchodge.cyclic.pairings import (
    MukaiPairing,
    higher_residue_pairing,
    mukai_components,
    mukai_pairing,
    supertrace,
)
from nchodge.cyclic.trace import (
    check_trace_closed,
    cohomology_pairing_from_trace,
    cohomology_representatives,
    evaluate,
)

__all__ = [
    "CyclicHomologyCalculator",
    "CyclicRankReport",
    "LiftResult",
    "MukaiComponents",
    "MukaiPairing",
    "NegativeCyclicChain",
    "NegativeCyclicComplex",
    "PairingValue",
    "TracePairingReport",
    "check_trace_closed",
    "cohomology_pairing_from_trace",
    "cohomology_representatives",
    "evaluate",
    "free_generators",
    "hc_minus_ranks",
    "higher_residue_pairing",
    "lift_to_negative_cyclic",
    "mukai_components",
    "mukai_pairing",
    "supertrace",
]
