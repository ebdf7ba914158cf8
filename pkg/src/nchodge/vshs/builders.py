"""Constructors for VSHS data: quantum-like connections, toys and the categorical pipeline."""

import logging
from collections.abc import Mapping, Sequence
from fractions import Fraction

from nchodge.ainf.models import AInfStructure
from nchodge.connections.ggm import GGMConnection
from nchodge.connections.models import BasisConnection
from nchodge.cyclic.complex import NegativeCyclicComplex
from nchodge.cyclic.homology import free_generators
from nchodge.cyclic.models import PairingValue
from nchodge.cyclic.pairings import higher_residue_pairing
from nchodge.errors import DegreeMismatch, RankMismatch
from nchodge.hochschild.homology import degree_window
from nchodge.scalars import (
    BulkRingDescriptor,
    Derivation,
    Grading,
    OmegaLabel,
    RingElement,
    TruncationPolicy,
)
from nchodge.vshs.models import (
    CandidateMorphism,
    VSHSData,
    u_constant_matrix,
    u_identity,
)

logger = logging.getLogger(__name__)


def build_quantum_like_connection(
    derivation: Derivation,
    basis: Sequence[str],
    degrees: Sequence[int],
    product_tables: Mapping[str, Sequence[Sequence[RingElement]]],
    pairing: Sequence[Sequence[RingElement]],
    u_max: int = 2,
    dimension_parity: int = 0,
    u_degree: int = 2,
    pairing_degree: int = 0,
) -> VSHSData:
    """
    ``u∇ = uD - sum_l omega_l ⊗ M_l ⋆`` from user-supplied product tables.

    ``product_tables[label][i][j]`` is the coefficient of ``s_i`` in
    ``M_label ⋆ s_j``; the connection matrix along ``label`` is ``-M_label``.
    The pairing is taken constant in u.

    Raises:
        DegreeMismatch: If a table entry does not shift degree by
            ``u_degree - |label|``
        RankMismatch: If a table or the pairing is not square of the module's rank
    """
    n = len(basis)
    grading = derivation.ring.grading
    connection = {}
    for label, table in product_tables.items():
        if len(table) != n or any(len(row) != n for row in table):
            raise RankMismatch(f"product table for '{label}' is not {n}x{n}")
        shift = u_degree - derivation.label_degree(label)
        for i, row in enumerate(table):
            for j, coeff in enumerate(row):
                if coeff.is_zero():
                    continue
                degree = coeff.degree()
                if degree is None or not grading.equal(degree + degrees[i], degrees[j] + shift):
                    raise DegreeMismatch(
                        f"product table '{label}' sends {basis[j]} to {basis[i]} "
                        f"with a coefficient of degree {degree}"
                    )
        connection[label] = u_constant_matrix([[-c for c in row] for row in table], u_max)
    return VSHSData(
        derivation=derivation,
        basis=tuple(basis),
        degrees=tuple(degrees),
        connection=connection,
        pairing=u_constant_matrix(pairing, u_max),
        u_max=u_max,
        dimension_parity=dimension_parity,
        u_degree=u_degree,
        pairing_degree=pairing_degree,
    )


def identity_morphism(vshs: VSHSData) -> CandidateMorphism:
    return CandidateMorphism(u_identity(vshs.ring, vshs.rank, vshs.u_max), expected_sign=1)


def trivial_vshs(ring: BulkRingDescriptor, u_max: int = 2) -> VSHSData:
    """Rank one, ``u∇ = uD`` along dlogT, pairing the constant 1."""
    derivation = Derivation.d_log_t(ring)
    return VSHSData(
        derivation=derivation,
        basis=("s",),
        degrees=(0,),
        connection={},
        pairing=u_constant_matrix([[RingElement.one(ring)]], u_max),
        u_max=u_max,
    )


def projective_line_toy(quantum: bool = True, u_max: int = 2) -> VSHSData:
    """
    Cohomology of the projective line with ``u∇ = uD - dlogT ⊗ p⋆``.

    The quantum product ``p⋆p = T`` needs ``T`` to carry degree, so the toy
    is mod-2 graded; the classical cup product is also consistent with the
    integer grading.
    """
    grading = Grading.MOD2 if quantum else Grading.INTEGER
    ring = BulkRingDescriptor(
        grading=grading, truncation=TruncationPolicy(Fraction(12), 0, u_max, 4)
    )
    derivation = Derivation.d_log_t(ring)
    zero = RingElement.zero(ring)
    one = RingElement.one(ring)
    t = RingElement.t_power(ring, 1) if quantum else zero
    return build_quantum_like_connection(
        derivation,
        basis=("1", "p"),
        degrees=(0, 2),
        product_tables={"dlogT": [[zero, t], [one, zero]]},
        pairing=[[zero, one], [one, zero]],
        u_max=u_max,
        dimension_parity=1,
        u_degree=2,
        pairing_degree=-2,
    )


def group_algebra_toy(u_max: int = 2) -> VSHSData:
    """
    The group algebra of Z/2 as a Frobenius algebra with the unit section.

    Tangent directions ``dt0``, ``dt1`` act by multiplication with ``1`` and ``g``.
    """
    ring = BulkRingDescriptor(
        grading=Grading.MOD2, truncation=TruncationPolicy(None, 0, u_max, 4)
    )
    derivation = Derivation(ring, labels=(OmegaLabel("dt0"), OmegaLabel("dt1")))
    zero = RingElement.zero(ring)
    one = RingElement.one(ring)
    return build_quantum_like_connection(
        derivation,
        basis=("1", "g"),
        degrees=(0, 0),
        product_tables={
            "dt0": [[one, zero], [zero, one]],
            "dt1": [[zero, one], [one, zero]],
        },
        pairing=[[one, zero], [zero, one]],
        u_max=u_max,
        u_degree=0,
    )


def assemble_from_category(
    structure: AInfStructure,
    derivation: Derivation,
    tilde: BasisConnection | None = None,
    degrees: tuple[int, int] = (0, 0),
    length_max: int | None = None,
    u_max: int | None = None,
    dimension_parity: int = 0,
) -> VSHSData:
    """
    End-to-end VSHS of a category.

    Generators are the free ``k[u]``-generators of truncated negative cyclic
    homology in the degree window, the connection is ``u∇^{GGM}`` solved on
    them modulo boundaries and the pairing is the higher residue pairing.
    """
    q = NegativeCyclicComplex(structure, length_max, u_max)
    tilde = tilde or BasisConnection.flat(structure, derivation)
    generators = []
    generator_degrees = []
    for n in degree_window(structure, *degrees):
        found = free_generators(q, n)
        generators.extend(found)
        generator_degrees.extend([n] * len(found))
    logger.info("assembling a rank %d VSHS at u_max=%d", len(generators), q.u_max)

    ggm = GGMConnection(q, tilde, derivation)
    on_homology = ggm.on_homology(generators)
    ring = structure.ring
    pairing = [
        [higher_residue_pairing(q.hochschild, a, b) for b in generators] for a in generators
    ]
    pairing = [[PairingValue(ring, p.coefficients, q.u_max) for p in row] for row in pairing]
    return VSHSData(
        derivation=derivation,
        basis=tuple(f"s{n}_{i}" for i, n in enumerate(generator_degrees)),
        degrees=tuple(generator_degrees),
        connection=on_homology.matrices,
        pairing=pairing,
        u_max=q.u_max,
        dimension_parity=dimension_parity,
        u_degree=-2,
        pairing_degree=0,
        diagnostics={
            "descends": on_homology.descends,
            "unsolved": [list(p) for p in on_homology.unsolved],
            "tail": [list(p) for p in on_homology.tail],
            "generators": [s.to_dict() for s in generators],
        },
    )
