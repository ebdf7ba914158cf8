"""Built-in example categories with known homological data.

Every builder returns a single-object category over the rationals or the
Novikov field. Products follow the convention ``mu2(a, b) = (-1)^{|a|} ab``
for an associative graded algebra, under which a unit satisfies
``mu2(e, a) = a`` and ``mu2(a, e) = (-1)^{|a|} a``.
"""

import logging
import random
from collections.abc import Callable, Sequence
from fractions import Fraction
from itertools import combinations

from nchodge.ainf.models import (
    AInfStructure,
    BoundingCochainAssignment,
    CochainEntries,
    Element,
    Generator,
    ModIdeal,
    element_add,
)
from nchodge.errors import ParameterOutOfRange
from nchodge.models.models import BuiltModel, ModelKind, ModelSpec
from nchodge.scalars import (
    BulkRingDescriptor,
    Grading,
    RingElement,
    TruncationPolicy,
    koszul_sign,
    sign_of,
)

logger = logging.getLogger(__name__)

OBJECT = "X"
MAX_GENERATORS = 4
MAX_LAYER = 6


def _ring(spec: ModelSpec, grading: Grading, novikov: bool) -> BulkRingDescriptor:
    """The requested ring, or a default one with the configured truncation."""
    if spec.ring is not None:
        if spec.ring.grading is not grading:
            raise ParameterOutOfRange(
                f"{ModelKind(spec.kind).value} needs a {grading.value} graded ring"
            )
        return spec.ring
    truncation = TruncationPolicy.default()
    if not novikov:
        truncation = truncation.with_caps(t_precision=None)
    return BulkRingDescriptor(grading=grading, truncation=truncation)


def _unit_laws(ring: BulkRingDescriptor, generators: Sequence[Generator], unit: str) -> CochainEntries:
    one = RingElement.one(ring)
    mu: CochainEntries = {}
    for g in generators:
        mu[(unit, g.name)] = {g.name: one}
        mu[(g.name, unit)] = {g.name: one.scale(sign_of(g.degree))}
    return mu


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParameterOutOfRange(message)


# =============================================================================
# Fields and dual numbers
# =============================================================================


def field_model(ring: BulkRingDescriptor) -> AInfStructure:
    """The ground field as a one-object category: ``hom(X, X) = k·1``."""
    generators = [Generator("1", OBJECT, OBJECT, 0)]
    return AInfStructure(
        ring=ring,
        objects=[OBJECT],
        generators=generators,
        mu={("1", "1"): {"1": RingElement.one(ring)}},
        units={OBJECT: "1"},
    )


def dual_numbers(ring: BulkRingDescriptor, t_weight: Fraction | None = None) -> AInfStructure:
    """
    ``k[ε]/ε²``, or ``ε² = T^w·1`` when a weight is given.

    Both generators sit in degree 0.
    """
    generators = [Generator("1", OBJECT, OBJECT, 0), Generator("eps", OBJECT, OBJECT, 0)]
    mu = _unit_laws(ring, generators, "1")
    if t_weight is not None:
        mu[("eps", "eps")] = {"1": RingElement.t_power(ring, t_weight)}
    return AInfStructure(
        ring=ring, objects=[OBJECT], generators=generators, mu=mu, units={OBJECT: "1"}
    )


# =============================================================================
# Matrix algebras
# =============================================================================


def _matrix_names(n: int) -> list[str]:
    names = ["1"] + [f"H{i}" for i in range(2, n + 1)]
    names += [f"E{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    return names


def _as_matrix(name: str, n: int) -> dict[tuple[int, int], int]:
    if name == "1":
        return {(i, i): 1 for i in range(n)}
    if name.startswith("H"):
        i = int(name[1:]) - 1
        return {(i, i): 1}
    return {(int(name[1]) - 1, int(name[2]) - 1): 1}


def _from_matrix(ring: BulkRingDescriptor, matrix: dict[tuple[int, int], int], n: int) -> Element:
    """Coordinates over ``1, H_i = E_ii (i >= 2), E_ij (i != j)``."""
    corner = matrix.get((0, 0), 0)
    coordinates: dict[str, int] = {"1": corner}
    for i in range(1, n):
        coordinates[f"H{i + 1}"] = matrix.get((i, i), 0) - corner
    for (i, j), value in matrix.items():
        if i != j:
            coordinates[f"E{i + 1}{j + 1}"] = value
    return {name: RingElement.constant(ring, c) for name, c in coordinates.items() if c}


def matrix_algebra(ring: BulkRingDescriptor, n: int) -> AInfStructure:
    """``M_n(k)`` in degree 0 on a basis containing the identity."""
    _require(1 <= n <= MAX_GENERATORS, f"matrix size must be in 1..{MAX_GENERATORS}, got {n}")
    names = _matrix_names(n)
    generators = [Generator(name, OBJECT, OBJECT, 0) for name in names]
    matrices = {name: _as_matrix(name, n) for name in names}
    mu: CochainEntries = {}
    for a in names:
        for b in names:
            product: dict[tuple[int, int], int] = {}
            for (i, k), x in matrices[a].items():
                for (k2, j), y in matrices[b].items():
                    if k == k2:
                        product[(i, j)] = product.get((i, j), 0) + x * y
            value = _from_matrix(ring, {key: v for key, v in product.items() if v}, n)
            if value:
                mu[(a, b)] = value
    return AInfStructure(
        ring=ring, objects=[OBJECT], generators=generators, mu=mu, units={OBJECT: "1"}
    )


# =============================================================================
# Exterior algebras and their Clifford deformation
# =============================================================================


def _subset_name(subset: tuple[int, ...]) -> str:
    return "".join(f"x{i + 1}" for i in subset) if subset else "1"


def exterior_algebra(
    ring: BulkRingDescriptor, n: int, degrees: Sequence[int] | None = None
) -> tuple[AInfStructure, dict]:
    """
    ``Λ(x_1, ..., x_n)`` with ``x_i² = 0`` and the Koszul rule for reordering.

    Returns:
        The structure and its top-coefficient trace functional

    Raises:
        ParameterOutOfRange: If n or the degrees are out of range
    """
    _require(1 <= n <= MAX_GENERATORS, f"exterior algebras need 1 <= n <= {MAX_GENERATORS}")
    degrees = tuple(degrees) if degrees is not None else (1,) * n
    _require(len(degrees) == n, f"{n} generators but {len(degrees)} degrees")

    subsets = [s for size in range(n + 1) for s in combinations(range(n), size)]
    degree_of = {s: sum(degrees[i] for i in s) for s in subsets}
    generators = [Generator(_subset_name(s), OBJECT, OBJECT, degree_of[s]) for s in subsets]
    one = RingElement.one(ring)
    mu: CochainEntries = {}
    for a in subsets:
        for b in subsets:
            if set(a) & set(b):
                continue
            letters = a + b
            order = sorted(range(len(letters)), key=lambda k: letters[k])
            sign = koszul_sign([degrees[i] for i in letters], order) * sign_of(degree_of[a])
            out = tuple(sorted(letters))
            mu[(_subset_name(a), _subset_name(b))] = {_subset_name(out): one.scale(sign)}

    structure = AInfStructure(
        ring=ring, objects=[OBJECT], generators=generators, mu=mu, units={OBJECT: "1"}
    )
    top = _subset_name(tuple(range(n)))
    return structure, {(top,): one}


def clifford_deformation(
    ring: BulkRingDescriptor, n: int = 1, t_weights: Sequence[Fraction] | None = None
) -> tuple[AInfStructure, BoundingCochainAssignment]:
    """
    ``Λ(x)`` with higher products whose bounding cochain deforms it to ``x² = T^w``.

    The odd generator carries ``mu3(x,x,x) = T^{2w/3}``, ``mu4(x,x,x,x) = -2 T^{w/3}``
    and ``mu5(x,...,x) = 1`` (all onto the unit). With ``b = T^{w/3} x`` the
    deformed structure has zero curvature and ``mu^b_2(x, x) = T^w·1``.

    Putting the same products on each generator of ``Λ(x_1, ..., x_n)`` is not
    an A-infinity structure for ``n > 1``: ``mu2(mu3(x1, x1, x1), x2)`` is left
    uncancelled.

    Raises:
        ParameterOutOfRange: Unless n = 1 and the weight is positive
    """
    _require(
        n == 1,
        f"the Clifford deformation is only available for one generator, got n = {n}; "
        "higher products on several generators do not satisfy the A-infinity relations",
    )
    _require(ring.grading is Grading.MOD2, "the Clifford deformation is mod-2 graded")
    weight = Fraction(t_weights[0]) if t_weights else Fraction(3)
    _require(weight > 0, f"the Novikov weight must be positive, got {weight}")

    structure, _ = exterior_algebra(ring, 1, (1,))
    third = weight / 3
    mu = {k: dict(v) for k, v in structure.mu.items()}
    mu[("x1",) * 3] = {"1": RingElement.t_power(ring, 2 * third)}
    mu[("x1",) * 4] = {"1": RingElement.t_power(ring, third, -2)}
    mu[("x1",) * 5] = {"1": RingElement.one(ring)}
    deformed = structure.with_mu(mu)
    bounding = BoundingCochainAssignment(
        deformed, {OBJECT: {"x1": RingElement.t_power(ring, third)}}, ModIdeal.ZERO
    )
    return deformed, bounding


def curved_clifford(ring: BulkRingDescriptor) -> tuple[AInfStructure, BoundingCochainAssignment]:
    """
    ``Cl_1`` with ``x² = e`` and curvature ``T·e``; ``b = T^{1/2} x`` cancels the curvature.
    """
    _require(ring.grading is Grading.MOD2, "the curved Clifford algebra is mod-2 graded")
    generators = [Generator("e", OBJECT, OBJECT, 0), Generator("x", OBJECT, OBJECT, 1)]
    mu = _unit_laws(ring, generators, "e")
    mu[("x", "x")] = {"e": RingElement.constant(ring, -1)}
    mu[()] = {"e": RingElement.t_power(ring, 1)}
    structure = AInfStructure(
        ring=ring, objects=[OBJECT], generators=generators, mu=mu, units={OBJECT: "e"}
    )
    bounding = BoundingCochainAssignment(
        structure, {OBJECT: {"x": RingElement.t_power(ring, Fraction(1, 2))}}, ModIdeal.ZERO
    )
    return structure, bounding


# =============================================================================
# Random DGAs
# =============================================================================


def random_dga(
    ring: BulkRingDescriptor, seed: int = 0, dims: tuple[int, int] = (2, 2)
) -> AInfStructure:
    """
    A seeded DGA ``k·1 ⊕ V ⊕ W`` with ``V·V ⊂ W``, ``d(V) ⊂ W`` and everything else zero.

    Products of three non-unit elements vanish and ``d`` kills ``W``, so the
    result is associative with ``d² = 0`` and the Leibniz rule by
    construction. Parities are random; coefficients lie in ``-2..2``.

    Raises:
        ParameterOutOfRange: If a layer is larger than the documented bound
    """
    p, q = dims
    _require(0 <= p <= MAX_LAYER and 0 <= q <= MAX_LAYER, f"dims must lie in 0..{MAX_LAYER}")
    _require(ring.grading is Grading.MOD2, "random DGAs are mod-2 graded")
    rng = random.Random(seed)
    lower = [Generator(f"v{i + 1}", OBJECT, OBJECT, rng.randint(0, 1)) for i in range(p)]
    upper = [Generator(f"w{i + 1}", OBJECT, OBJECT, rng.randint(0, 1)) for i in range(q)]
    generators = [Generator("1", OBJECT, OBJECT, 0), *lower, *upper]
    mu = _unit_laws(ring, generators, "1")

    def draw(targets: list[Generator], parity: int) -> Element:
        value: Element = {}
        for w in targets:
            if w.degree % 2 != parity:
                continue
            c = rng.randint(-2, 2)
            if c:
                value = element_add(value, {w.name: RingElement.constant(ring, c)})
        return value

    for a in lower:
        differential = draw(upper, (a.degree + 1) % 2)
        if differential:
            mu[(a.name,)] = differential
        for b in lower:
            # mu2(a, b) = (-1)^{|a|} ab
            product = draw(upper, (a.degree + b.degree) % 2)
            if product:
                mu[(a.name, b.name)] = product
    structure = AInfStructure(
        ring=ring, objects=[OBJECT], generators=generators, mu=mu, units={OBJECT: "1"}
    )
    logger.debug("random DGA seed=%d dims=%s: %d entries", seed, dims, len(structure.mu))
    return structure


# =============================================================================
# Dispatch
# =============================================================================


def _build_field(spec: ModelSpec) -> BuiltModel:
    return BuiltModel(spec, field_model(_ring(spec, Grading.INTEGER, False)))


def _build_dual(spec: ModelSpec) -> BuiltModel:
    weight = Fraction(spec.t_weights[0]) if spec.t_weights else None
    ring = _ring(spec, Grading.INTEGER, weight is not None)
    return BuiltModel(spec, dual_numbers(ring, weight))


def _build_exterior(spec: ModelSpec) -> BuiltModel:
    structure, trace = exterior_algebra(_ring(spec, Grading.INTEGER, False), spec.n, spec.degrees)
    return BuiltModel(spec, structure, trace=trace)


def _build_clifford(spec: ModelSpec) -> BuiltModel:
    structure, bounding = clifford_deformation(
        _ring(spec, Grading.MOD2, True), spec.n, spec.t_weights
    )
    return BuiltModel(spec, structure, bounding=bounding)


def _build_curved(spec: ModelSpec) -> BuiltModel:
    structure, bounding = curved_clifford(_ring(spec, Grading.MOD2, True))
    return BuiltModel(spec, structure, bounding=bounding)


def _build_matrix(spec: ModelSpec) -> BuiltModel:
    return BuiltModel(spec, matrix_algebra(_ring(spec, Grading.INTEGER, False), spec.n))


def _build_random(spec: ModelSpec) -> BuiltModel:
    return BuiltModel(
        spec, random_dga(_ring(spec, Grading.MOD2, False), spec.seed, tuple(spec.dims))
    )


_BUILDERS: dict[ModelKind, Callable[[ModelSpec], BuiltModel]] = {
    ModelKind.FIELD: _build_field,
    ModelKind.DUAL_NUMBERS: _build_dual,
    ModelKind.EXTERIOR_ALGEBRA: _build_exterior,
    ModelKind.CLIFFORD_DEFORMATION: _build_clifford,
    ModelKind.CURVED_CLIFFORD: _build_curved,
    ModelKind.MATRIX_ALGEBRA: _build_matrix,
    ModelKind.RANDOM_DGA: _build_random,
}


def build_model(spec: ModelSpec) -> BuiltModel:
    """
    Build a model from its spec.

    Raises:
        ParameterOutOfRange: If a parameter is outside its documented bounds
    """
    built = _BUILDERS[ModelKind(spec.kind)](spec)
    logger.info("built %s: %r", spec.name, built.structure)
    return built


def standard_models() -> list[ModelSpec]:
    """The models every suite run covers."""
    return [
        ModelSpec(ModelKind.FIELD),
        ModelSpec(ModelKind.DUAL_NUMBERS),
        ModelSpec(ModelKind.DUAL_NUMBERS, t_weights=(Fraction(1),)),
        ModelSpec(ModelKind.EXTERIOR_ALGEBRA, n=1),
        ModelSpec(ModelKind.EXTERIOR_ALGEBRA, n=2),
        ModelSpec(ModelKind.CLIFFORD_DEFORMATION, n=1),
        ModelSpec(ModelKind.CURVED_CLIFFORD),
        ModelSpec(ModelKind.MATRIX_ALGEBRA, n=2),
    ]
