"""Connections on based modules and the Getzler-Gauss-Manin connection."""

from nchodge.connections.ggm import (
    GGMConnection,
    OmegaChain,
    OmegaCyclicChain,
    b11,
    big_b11,
    chain_commutation_diagnostic,
    connection_on_homology,
    ggm_connection,
    nabla_of_mu,
    random_basis_connection,
    tilde_independence,
)
from nchodge.connections.models import (
    BasisConnection,
    ChainCommutationReport,
    CommutationReport,
    HomologyConnection,
    IndependenceReport,
    ModuleConnection,
    matrix_product,
    zero_matrix,
)
from nchodge.connections.pullback import pullback_connection

__all__ = [
    "BasisConnection",
    "ChainCommutationReport",
    "CommutationReport",
    "GGMConnection",
    "HomologyConnection",
    "IndependenceReport",
    "ModuleConnection",
    "OmegaChain",
    "OmegaCyclicChain",
    "b11",
    "big_b11",
    "chain_commutation_diagnostic",
    "connection_on_homology",
    "ggm_connection",
    "matrix_product",
    "nabla_of_mu",
    "pullback_connection",
    "random_basis_connection",
    "tilde_independence",
    "zero_matrix",
]
