"""nchodge - exact noncommutative Hodge theory for finite curved A-infinity categories.

Curved A-infinity categories over Novikov-type rings, their non-unital
Hochschild and negative cyclic complexes, pairings, Getzler-Gauss-Manin
connections and VSHS axiom checks.
"""

__version__ = "0.4.0"

from nchodge.config import get_settings

__all__ = ["__version__", "get_settings"]
