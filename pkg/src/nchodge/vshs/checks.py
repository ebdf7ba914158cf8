"""Axiom checks for VSHS data, candidate morphisms, splittings and miniversality.

Every check is an exact matrix identity at the module's u-truncation. A
failing identity is reported entry by entry; only malformed input raises.
"""

import logging
from collections.abc import Sequence

from nchodge.cyclic.models import PairingValue
from nchodge.errors import NotASection, RankMismatch
from nchodge.scalars import RingElement, linalg
from nchodge.vshs.models import (
    CandidateMorphism,
    MiniversalityReport,
    MorphismReport,
    OppositeSubspaceReport,
    UMatrix,
    Violation,
    VSHSData,
    VSHSReport,
    u_product,
    u_sigma,
    u_transpose,
)

logger = logging.getLogger(__name__)


def _sample_scalars(vshs: VSHSData) -> list[RingElement]:
    ring = vshs.ring
    samples = [RingElement.t_power(ring, 1)]
    samples += [RingElement.symbol(ring, q) for q in ring.symbols]
    samples += [RingElement.variable(ring, v.name) for v in ring.variables if v.degree % 2 == 0]
    return [s for s in samples if not s.is_zero()]


def _derive(vshs: VSHSData, label: str, value: PairingValue) -> PairingValue:
    """``u D_label`` applied to the coefficients of a u-polynomial."""
    derived = {}
    for k, c in value.coefficients.items():
        image = vshs.derivation.apply(c).get(label)
        if image is not None:
            derived[k] = image
    return PairingValue(vshs.ring, derived, vshs.u_max).multiply_u(1)


def _homogeneous(vshs: VSHSData, value: PairingValue, expected: int) -> bool:
    """Every ``c u^k`` term has ``deg(c) + k * u_degree == expected``."""
    grading = vshs.ring.grading
    for k, c in value.coefficients.items():
        degree = c.degree()
        if degree is None or not grading.equal(degree + k * vshs.u_degree, expected):
            return False
    return True


def _determinant_is_unit(matrix: Sequence[Sequence[RingElement]]) -> bool:
    if not matrix:
        return True
    return linalg.determinant_valuation(matrix) == 0


# =============================================================================
# VSHS axioms
# =============================================================================


def check_vshs(vshs: VSHSData) -> VSHSReport:
    """
    Leibniz rule, pairing covariance and gradedness, plus polarization.

    Covariance is ``uD<s_i, s_j> = <u∇s_i, s_j> - <s_i, u∇s_j>``; in
    matrices ``uD(G) = A^T G - G A(-u)``.
    """
    n = vshs.rank
    ring = vshs.ring
    violations: list[Violation] = []

    leibniz = True
    for f in _sample_scalars(vshs):
        f_poly = PairingValue.constant(f, vshs.u_max)
        for j in range(n):
            unit = [PairingValue(ring, {}, vshs.u_max) for _ in range(n)]
            unit[j] = PairingValue.constant(RingElement.one(ring), vshs.u_max)
            scaled = [entry * f_poly for entry in unit]
            for label in vshs.labels:
                left = vshs.apply(label, scaled)
                right = [entry * f_poly for entry in vshs.apply(label, unit)]
                right[j] = right[j] + _derive(vshs, label, f_poly)
                for i in range(n):
                    if left[i] != right[i]:
                        leibniz = False
                        violations.append(Violation("leibniz", label, i, j))

    covariance = True
    gram = vshs.pairing
    for label in vshs.labels:
        a = vshs.connection[label]
        first = u_product(u_transpose(a), gram, ring, vshs.u_max)
        second = u_product(gram, u_sigma(a), ring, vshs.u_max)
        for i in range(n):
            for j in range(n):
                if _derive(vshs, label, gram[i][j]) != first[i][j] - second[i][j]:
                    covariance = False
                    violations.append(Violation("covariance", label, i, j))

    graded = True
    degrees = vshs.degrees
    for label in vshs.labels:
        shift = vshs.u_degree - vshs.derivation.label_degree(label)
        for i in range(n):
            for j in range(n):
                entry = vshs.connection[label][i][j]
                if not _homogeneous(vshs, entry, degrees[j] + shift - degrees[i]):
                    graded = False
                    violations.append(Violation("graded_connection", label, i, j))
    for i in range(n):
        for j in range(n):
            expected = degrees[i] + degrees[j] + vshs.pairing_degree
            if not _homogeneous(vshs, gram[i][j], expected):
                graded = False
                violations.append(Violation("graded_pairing", None, i, j))

    constant_gram = [[entry.coefficient(0) for entry in row] for row in gram]
    polarized = n == 0 or linalg.determinant_valuation(constant_gram) is not None
    if violations:
        logger.info("VSHS check found %d violations", len(violations))
    return VSHSReport(
        leibniz=leibniz,
        covariance=covariance,
        graded=graded,
        polarized=polarized,
        violations=violations,
        truncation=vshs.truncation(),
    )


# =============================================================================
# Morphisms
# =============================================================================


def check_morphism(
    candidate: CandidateMorphism,
    source: VSHSData,
    target: VSHSData,
    require_isomorphism: bool = False,
) -> MorphismReport:
    """
    Check ``Φ ∘ u∇ = u∇' ∘ Φ`` and ``<Φs, Φt>' = sign * <s, t>``.

    In matrices: ``uD(Φ) + A'Φ = ΦA`` per label and
    ``Φ^T G' Φ(-u) = sign * G``.

    Raises:
        RankMismatch: If Φ does not map the source generators to the target's
    """
    phi = candidate.matrix
    if source.ring != target.ring:
        raise RankMismatch("source and target VSHS live over different rings")
    if set(source.labels) != set(target.labels):
        raise RankMismatch("source and target VSHS use different Omega labels")
    if len(phi) != target.rank or any(len(row) != source.rank for row in phi):
        raise RankMismatch(
            f"candidate must be {target.rank}x{source.rank}, got "
            f"{len(phi)}x{len(phi[0]) if phi else 0}"
        )
    ring = source.ring
    u_max = min(source.u_max, target.u_max)
    violations: list[Violation] = []

    connection_ok = True
    for label in source.labels:
        left = u_product(target.connection[label], phi, ring, u_max)
        right = u_product(phi, source.connection[label], ring, u_max)
        for i in range(target.rank):
            for j in range(source.rank):
                derived = _derive(target, label, phi[i][j])
                if _truncate(derived + left[i][j], u_max) != _truncate(right[i][j], u_max):
                    connection_ok = False
                    violations.append(Violation("connection", label, i, j))

    pairing_ok = True
    pulled = u_product(
        u_product(u_transpose(phi), target.pairing, ring, u_max), u_sigma(phi), ring, u_max
    )
    sign = RingElement.constant(ring, candidate.expected_sign)
    for i in range(source.rank):
        for j in range(source.rank):
            expected = source.pairing[i][j].scale(sign)
            if _truncate(pulled[i][j], u_max) != _truncate(expected, u_max):
                pairing_ok = False
                violations.append(Violation("pairing", None, i, j))

    isomorphism = None
    if require_isomorphism:
        isomorphism = source.rank == target.rank and _determinant_is_unit(
            [[entry.coefficient(0) for entry in row] for row in phi]
        )
    return MorphismReport(
        connection_intertwined=connection_ok,
        pairing_intertwined=pairing_ok,
        expected_sign=candidate.expected_sign,
        isomorphism=isomorphism,
        violations=violations,
        truncation={**ring.truncation.to_dict(), "u_max": u_max},
    )


def _truncate(value: PairingValue, u_max: int) -> PairingValue:
    return PairingValue(value.ring, value.coefficients, u_max)


# =============================================================================
# Splittings and miniversality
# =============================================================================


def check_opposite_subspace(vshs: VSHSData, splitting: UMatrix) -> OppositeSubspaceReport:
    """
    Certify a splitting ``σ`` of the mod-u projection.

    The opposite subspace is spanned by ``u^{-k} σ(e_j)``, ``k >= 1``. It is
    isotropic when ``σ^T G σ(-u)`` is constant in u, complementary to the
    lattice when ``σ(0)`` is invertible, and graded when each ``σ(e_j)`` is
    homogeneous of the degree of ``e_j``.

    Raises:
        RankMismatch: If the splitting is not square of the module's rank
        NotASection: If ``σ(e_j)`` does not reduce to ``e_j`` mod u
    """
    n = vshs.rank
    ring = vshs.ring
    if len(splitting) != n or any(len(row) != n for row in splitting):
        raise RankMismatch(f"splitting must be {n}x{n}")
    one = RingElement.one(ring)
    for i in range(n):
        for j in range(n):
            constant = splitting[i][j].coefficient(0)
            expected = one if i == j else RingElement.zero(ring)
            if constant != expected:
                raise NotASection(f"splitting entry ({i}, {j}) does not reduce to the identity")

    violations: list[Violation] = []
    complementary = _determinant_is_unit([[e.coefficient(0) for e in row] for row in splitting])

    gram = u_product(
        u_product(u_transpose(splitting), vshs.pairing, ring, vshs.u_max),
        u_sigma(splitting),
        ring,
        vshs.u_max,
    )
    isotropic = True
    for i in range(n):
        for j in range(n):
            if any(k > 0 for k in gram[i][j].coefficients):
                isotropic = False
                violations.append(Violation("isotropy", None, i, j))

    graded = True
    for i in range(n):
        for j in range(n):
            if not _homogeneous(vshs, splitting[i][j], vshs.degrees[j] - vshs.degrees[i]):
                graded = False
                violations.append(Violation("graded_splitting", None, i, j))

    return OppositeSubspaceReport(
        complementary=complementary,
        isotropic=isotropic,
        graded=graded,
        window=f"u^-1..u^-{max(vshs.u_max, 1)} against the lattice up to u^{vshs.u_max}",
        violations=violations,
    )


def check_miniversal(
    vshs: VSHSData,
    section: Sequence[PairingValue],
    tangent_labels: Sequence[str] | None = None,
) -> MiniversalityReport:
    """
    Bijectivity of ``v -> (u∇)_v s0 mod u`` over the given tangent directions.

    The rank is taken with bulk variables set to zero, which decides
    invertibility over the bulk ring. Also reports whether ``s0`` is
    homogeneous of degree zero, the condition for the dilaton shift.
    """
    n = vshs.rank
    if len(section) != n:
        raise RankMismatch(f"section has {len(section)} coefficients for a rank {n} module")
    labels = list(tangent_labels) if tangent_labels is not None else list(vshs.labels)
    columns = []
    for label in labels:
        image = vshs.apply(label, section)
        constants = [entry.coefficient(0) for entry in image]
        columns.append({i: c for i, c in enumerate(constants) if not c.is_zero()})
    rank = linalg.residue_rank(columns, n) if columns else 0

    nonzero = [value for value in section if not value.is_zero()]
    dilaton = bool(nonzero) and all(
        _homogeneous(vshs, value, -vshs.degrees[i])
        for i, value in enumerate(section)
        if not value.is_zero()
    )
    return MiniversalityReport(
        bijective=rank == n == len(labels),
        rank=rank,
        dimension=n,
        directions=len(labels),
        dilaton_shift=dilaton,
    )
