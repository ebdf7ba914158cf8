"""Pullback of connections along morphisms of rings with derivation."""

import logging

from nchodge.connections.models import ModuleConnection, zero_matrix
from nchodge.errors import UnknownSymbol
from nchodge.scalars import Derivation, RingMorphismWithDerivation

logger = logging.getLogger(__name__)


def pullback_connection(
    morphism: RingMorphismWithDerivation,
    connection: ModuleConnection,
    target_derivation: Derivation,
) -> ModuleConnection:
    """
    ``f^*∇ = D_2 ⊗ id + Df ∘ (id ⊗ ∇)`` on the base-changed module.

    The new matrix along a target label ``m`` is
    ``sum_l Df(l)_m * f(A_l)``.

    Args:
        morphism: ``f`` with its ``Df``
        connection: Connection over the source ring
        target_derivation: Derivation of the target ring

    Raises:
        IncompatibleDf: If ``Df(D_1 r) != D_2(f r)`` on some generator
        UnknownSymbol: If the rings do not match the morphism
    """
    if connection.ring != morphism.source:
        raise UnknownSymbol("connection is not over the morphism's source ring")
    if target_derivation.ring != morphism.target:
        raise UnknownSymbol("target derivation is not over the morphism's target ring")
    morphism.require_compatible(connection.derivation, target_derivation)

    n = connection.rank
    matrices = {
        label: zero_matrix(morphism.target, n) for label in target_derivation.label_names
    }
    for i in range(n):
        for j in range(n):
            entries = {
                label: rows[i][j]
                for label, rows in connection.matrix.items()
                if not rows[i][j].is_zero()
            }
            if not entries:
                continue
            for label, value in morphism.apply_omega(entries).items():
                if label not in matrices:
                    raise UnknownSymbol(f"Df lands on undeclared label '{label}'")
                matrices[label][i][j] = value
    logger.debug("pulled back a rank %d connection to labels %s", n, list(matrices))
    return ModuleConnection(target_derivation, connection.basis, connection.degrees, matrices)
