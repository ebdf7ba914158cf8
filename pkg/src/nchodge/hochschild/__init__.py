"""Hochschild chains: the unital and non-unital complexes, homology, cap products."""

from nchodge.hochschild.cap import cap_product
from nchodge.hochschild.complex import HochschildComplex, add_term
from nchodge.hochschild.deformation import deformation_class, gauge_basis, split_family
from nchodge.hochschild.functoriality import pushforward_along_f
from nchodge.hochschild.homology import (
    HomologyCalculator,
    degree_window,
    homology_ranks,
    homology_representatives,
    is_boundary,
    nonunital_comparison,
    solve_mod_boundaries,
)
from nchodge.hochschild.models import (
    ChainVector,
    ComparisonReport,
    ComplexKind,
    DeformationReport,
    HomologyBasis,
    HomologyReport,
    Sector,
    Word,
    format_word,
    sector_of,
)

__all__ = [
    "ChainVector",
    "ComparisonReport",
    "ComplexKind",
    "DeformationReport",
    "HochschildComplex",
    "HomologyBasis",
    "HomologyCalculator",
    "HomologyReport",
    "Sector",
    "Word",
    "add_term",
    "cap_product",
    "deformation_class",
    "degree_window",
    "format_word",
    "gauge_basis",
    "homology_ranks",
    "homology_representatives",
    "is_boundary",
    "nonunital_comparison",
    "pushforward_along_f",
    "sector_of",
    "solve_mod_boundaries",
    "split_family",
]
