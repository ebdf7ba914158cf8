"""Seeded identity suite over the built-in models.

Every check records a :class:`CheckResult`; a failing identity never raises.
Precision and resource errors do propagate, since they say nothing about the
identity being checked.
"""

import logging
import random
from collections.abc import Callable, Iterable
from dataclasses import replace
from fractions import Fraction

from nchodge.ainf import (
    AInfStructure,
    BoundingCochainAssignment,
    ModIdeal,
    check_ainf_relations,
    check_maurer_cartan,
    check_strict_units,
    coboundary_family,
    cochain_differential,
    is_unit_plus,
    unit_plus_name,
)
from nchodge.ainf.bounding import deform_by_bounding_cochains
from nchodge.connections import (
    BasisConnection,
    GGMConnection,
    ModuleConnection,
    nabla_of_mu,
    pullback_connection,
    random_basis_connection,
    tilde_independence,
)
from nchodge.cyclic import (
    NegativeCyclicChain,
    NegativeCyclicComplex,
    PairingValue,
    cohomology_pairing_from_trace,
    free_generators,
    hc_minus_ranks,
    higher_residue_pairing,
    mukai_pairing,
)
from nchodge.errors import IncompatibleDf, NCHodgeError, PrecisionExhausted, TooLarge
from nchodge.hochschild import (
    ChainVector,
    ComplexKind,
    HochschildComplex,
    Word,
    deformation_class,
    degree_window,
    gauge_basis,
    homology_ranks,
    homology_representatives,
    nonunital_comparison,
    pushforward_along_f,
)
from nchodge.models import (
    BuiltModel,
    Constraint,
    ModelKind,
    ModelSpec,
    Mutation,
    OracleCaps,
    OracleQuantity,
    brute_force_oracle,
    build_model,
    mutations,
    standard_models,
)
from nchodge.models.builders import OBJECT
from nchodge.scalars import (
    BulkRingDescriptor,
    Derivation,
    Grading,
    RingElement,
    RingMorphismWithDerivation,
    TruncationPolicy,
)
from nchodge.suite.models import CheckResult, SuiteConfig, SuiteReport
from nchodge.vshs import (
    CandidateMorphism,
    VSHSData,
    assemble_from_category,
    build_quantum_like_connection,
    check_miniversal,
    check_morphism,
    check_opposite_subspace,
    check_vshs,
    group_algebra_toy,
    identity_morphism,
    mukai_sign,
    projective_line_toy,
    u_constant_matrix,
)

logger = logging.getLogger(__name__)

Outcome = tuple[bool, str]

DUAL_NUMBERS_RANKS = {0: 2, 1: 1, 2: 1, 3: 1, 4: 1}
CLIFFORD_WEIGHT = Fraction(3)
PUSHFORWARD_LENGTH = 6
PUSHFORWARD_EXPONENTS = (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3))
PUSHFORWARD_COEFFICIENTS = (1, -1, 2, -2)
PULLBACK_KAPPAS = {"r1": Fraction(1), "r2": Fraction(1, 2), "r3": Fraction(2)}
ORACLE_MODELS = (
    ModelSpec(ModelKind.FIELD),
    ModelSpec(ModelKind.DUAL_NUMBERS),
    ModelSpec(ModelKind.EXTERIOR_ALGEBRA, n=1),
    ModelSpec(ModelKind.MATRIX_ALGEBRA, n=2),
)


# =============================================================================
# Chain helpers
# =============================================================================


def sample_words(
    complex_: HochschildComplex, rng: random.Random, count: int, longest: int
) -> list[Word]:
    """
    Seeded distinct normal words with at most ``longest`` bar entries.

    On the non-unital complex about half of them are wedge words
    ``e+[a1|...|as]``.
    """
    structure = complex_.structure
    letters = [g for g in structure.generators if not is_unit_plus(g.name)]
    found: list[Word] = []
    if not letters or longest < 0:
        return found
    for _ in range(20 * count):
        if len(found) >= count:
            break
        wedge = complex_.nonunital and longest >= 1 and rng.random() < 0.5
        size = rng.randint(1, longest) if wedge else rng.randint(0, longest) + 1
        path = [rng.choice(letters)]
        while len(path) < size:
            options = [g for g in letters if g.source == path[-1].target]
            if not options:
                break
            path.append(rng.choice(options))
        if len(path) < size or path[-1].target != path[0].source:
            continue
        word: Word = tuple(g.name for g in path)
        if wedge:
            word = (unit_plus_name(path[0].source),) + word
        if complex_.is_normal(word) and word not in found:
            found.append(word)
    return found


def unit_chain(ring: BulkRingDescriptor, word: Word) -> ChainVector:
    return ChainVector.word(word, RingElement.one(ring))


def short_part_vanishes(x: ChainVector, longest: int) -> bool:
    """Whether every word of ``x`` with at most ``longest`` bar entries has coefficient zero."""
    return all(c.is_zero() for w, c in x.terms.items() if len(w) - 1 <= longest)


def _failing(items: Iterable[object]) -> Outcome:
    failing = list(items)
    if failing:
        return False, f"{len(failing)} failing: {failing[:3]}"
    return True, ""


# =============================================================================
# Runner
# =============================================================================


class SuiteRunner:
    """
    Runs every identity check over the built-in models.

    Results are appended in a fixed order, so a run is reproducible from
    its seed and mode.
    """

    def __init__(self, config: SuiteConfig | None = None):
        """
        Initialize runner.

        Args:
            config: Seed, mode and sample sizes
        """
        self.config = config or SuiteConfig()
        self.rng = random.Random(self.config.seed)
        self.results: list[CheckResult] = []

    def run(self) -> SuiteReport:
        """
        Run the suite.

        Returns:
            Report with one result per check and model

        Raises:
            PrecisionExhausted: If an elimination runs out of T-adic precision
            TooLarge: If a complex exceeds the configured dimension caps
        """
        logger.info("suite: seed=%d quick=%s", self.config.seed, self.config.quick)
        built = [build_model(spec) for spec in standard_models()]

        for model in built:
            self._structure_checks(model.name, model.structure)
            for length_max in self.config.length_caps:
                self._differential_identities(model.name, model.structure, length_max)
            self._nonunital_comparison(model.name, model.structure)
        for model in built:
            if not model.structure.is_curved():
                self._pairing_checks(model.name, model.structure)
        self._pushforward_checks()
        for name, structure in self._ggm_models():
            self._ggm_checks(name, structure)
        self._pullback_checks()
        for model in built:
            self._deformation_check(model)
            self._maurer_cartan_check(model)
        self._clifford_square()
        for n in (1, 2, 3):
            self._wpcy_checks(n)
        for spec in ORACLE_MODELS:
            self._oracle_checks(spec)
        self._dual_numbers_ranks()
        self._vshs_pipeline()
        self._vshs_counterexamples()
        for model in built:
            self._mutation_robustness(model)
        for i in range(self.config.random_models):
            self._random_model(i)

        report = SuiteReport(config=self.config, results=self.results)
        logger.info(
            "suite finished: %d checks, %d failures", len(report.results), len(report.failures)
        )
        return report

    # -------------------------------------------------------------------------
    # Recording
    # -------------------------------------------------------------------------

    def _record(self, name: str, model: str, check: Callable[[], Outcome]) -> None:
        try:
            passed, detail = check()
        except (PrecisionExhausted, TooLarge):
            raise
        except NCHodgeError as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        self.results.append(CheckResult(name, model, passed, detail))
        if passed:
            logger.debug("%s on %s passed", name, model)
        else:
            logger.warning("%s failed on %s: %s", name, model, detail)

    # -------------------------------------------------------------------------
    # Structures and differentials
    # -------------------------------------------------------------------------

    def _structure_checks(self, name: str, structure: AInfStructure) -> None:
        def relations() -> Outcome:
            report = check_ainf_relations(structure)
            return report.passed, f"{len(report.violations)} violations"

        def units() -> Outcome:
            report = check_strict_units(structure)
            return report.passed, "; ".join(report.failures[:3])

        self._record("ainf_relations", name, relations)
        self._record("strict_units", name, units)

    def _differential_identities(
        self, name: str, structure: AInfStructure, length_max: int
    ) -> None:
        """b² = 0, B² = 0 and bB + Bb = 0 on words short enough to stay below the cap."""
        ring = structure.ring
        count = self.config.samples
        plain = HochschildComplex(structure, nonunital=False, length_max=length_max)
        nonunital = HochschildComplex(structure, nonunital=True, length_max=length_max)
        plain_words = sample_words(plain, self.rng, count, length_max - 2)
        words = sample_words(nonunital, self.rng, count, length_max - 2)
        label = f"{name} length_max={length_max}"

        def b_squared() -> Outcome:
            return _failing(
                w
                for complex_, ws in ((plain, plain_words), (nonunital, words))
                for w in ws
                if not complex_.b(complex_.b(unit_chain(ring, w))).is_zero()
            )

        def connes_squared() -> Outcome:
            return _failing(
                w
                for w in words
                if not nonunital.connes_b(nonunital.connes_b(unit_chain(ring, w))).is_zero()
            )

        def anticommute() -> Outcome:
            bad = []
            for w in words:
                x = unit_chain(ring, w)
                total = nonunital.b(nonunital.connes_b(x)) + nonunital.connes_b(nonunital.b(x))
                if not total.is_zero():
                    bad.append(w)
            return _failing(bad)

        self._record("b_squared", label, b_squared)
        self._record("connes_b_squared", label, connes_squared)
        self._record("b_connes_anticommute", label, anticommute)
        for u_max in self.config.u_caps:
            self._total_differential(name, structure, words, length_max, u_max)

    def _total_differential(
        self, name: str, structure: AInfStructure, words: list[Word], length_max: int, u_max: int
    ) -> None:
        ring = structure.ring
        q = NegativeCyclicComplex(structure, length_max, u_max)

        def squared() -> Outcome:
            bad = []
            for i, w in enumerate(words):
                parts = {
                    k: unit_chain(ring, words[(i + k) % len(words)]) for k in range(u_max + 1)
                }
                x = NegativeCyclicChain(parts, u_max)
                if not q.b_plus_ub(q.b_plus_ub(x)).is_zero():
                    bad.append(w)
            return _failing(bad)

        self._record(
            "b_plus_ub_squared", f"{name} length_max={length_max} u_max={u_max}", squared
        )

    def _nonunital_comparison(self, name: str, structure: AInfStructure) -> None:
        def compare() -> Outcome:
            report = nonunital_comparison(
                structure, (0, 2), length_max=self.config.comparison_length
            )
            if not report.applicable:
                return True, report.reason or "not applicable"
            return report.agree, f"disagreeing degrees {report.disagreeing_degrees}"

        self._record("nonunital_comparison", name, compare)

    # -------------------------------------------------------------------------
    # Pairings
    # -------------------------------------------------------------------------

    def _pairing_checks(self, name: str, structure: AInfStructure) -> None:
        """Descent of both pairings, reduction mod u and sesquilinearity."""
        ring = structure.ring
        window = degree_window(structure, 0, 1)
        hochschild = HochschildComplex(structure, nonunital=True, length_max=3)
        cycles = [
            z for n in window for z in homology_representatives(hochschild, n).representatives
        ]
        chains = [
            unit_chain(ring, w) for w in sample_words(hochschild, self.rng, self.config.samples, 2)
        ]
        q = NegativeCyclicComplex(structure, length_max=2, u_max=1)
        generators = [s for n in window for s in free_generators(q, n)]
        lifted = [
            q.chain(unit_chain(ring, w))
            for w in sample_words(q.hochschild, self.rng, self.config.samples, 1)
        ]

        def mukai_descent() -> Outcome:
            return _failing(
                (i, j)
                for i, y in enumerate(chains)
                for j, z in enumerate(cycles)
                if not mukai_pairing(hochschild, hochschild.b(y), z).is_zero()
            )

        def residue_descent() -> Outcome:
            return _failing(
                (i, j)
                for i, y in enumerate(lifted)
                for j, z in enumerate(generators)
                if not higher_residue_pairing(q.hochschild, q.b_plus_ub(y), z).is_zero()
            )

        def reduces_to_mukai() -> Outcome:
            return _failing(
                (i, j)
                for i, a in enumerate(generators)
                for j, b in enumerate(generators)
                if higher_residue_pairing(q.hochschild, a, b).coefficient(0)
                != mukai_pairing(q.hochschild, a.component(0), b.component(0))
            )

        def sesquilinear() -> Outcome:
            bad = []
            for i, a in enumerate(generators):
                for j, b in enumerate(generators):
                    value = higher_residue_pairing(q.hochschild, a, b)
                    left = higher_residue_pairing(q.hochschild, a.multiply_u(1), b)
                    right = higher_residue_pairing(q.hochschild, a, b.multiply_u(1))
                    if left != value.multiply_u(1) or right != value.multiply_u(1, sign=-1):
                        bad.append((i, j))
            return _failing(bad)

        self._record("pairing_descent", name, mukai_descent)
        self._record("residue_descent", name, residue_descent)
        self._record("residue_reduces_to_mukai", name, reduces_to_mukai)
        self._record("residue_sesquilinear", name, sesquilinear)

    # -------------------------------------------------------------------------
    # Functoriality along bounding cochains
    # -------------------------------------------------------------------------

    def _random_bounding(
        self, structure: AInfStructure, generator: str
    ) -> BoundingCochainAssignment:
        exponent = self.rng.choice(PUSHFORWARD_EXPONENTS)
        coefficient = self.rng.choice(PUSHFORWARD_COEFFICIENTS)
        value = RingElement.t_power(structure.ring, exponent, coefficient)
        return BoundingCochainAssignment(structure, {OBJECT: {generator: value}})

    def _pushforward_checks(self) -> None:
        ring = BulkRingDescriptor.novikov(Grading.MOD2, 4, length_max=PUSHFORWARD_LENGTH, u_max=1)
        cases = [
            (ModelSpec(ModelKind.CLIFFORD_DEFORMATION, n=1, ring=ring), "x1"),
            (ModelSpec(ModelKind.CURVED_CLIFFORD, ring=ring), "x"),
        ]
        extra = 3 if self.config.quick else 10
        for spec, generator in cases:
            model = build_model(spec)
            assignments = [model.bounding] if model.bounding else []
            assignments += [
                self._random_bounding(model.structure, generator) for _ in range(extra)
            ]
            for index, assignment in enumerate(assignments):
                self._pushforward_case(f"{model.name} b#{index}", model.structure, assignment)

    def _pushforward_case(
        self, label: str, structure: AInfStructure, assignment: BoundingCochainAssignment
    ) -> None:
        """
        ``F_*`` is a chain map and preserves both pairings.

        The chain-map identity is compared on words short enough that no
        dropped run can reach them.
        """
        ring = structure.ring
        target = HochschildComplex(structure, nonunital=True, length_max=PUSHFORWARD_LENGTH)
        compared = PUSHFORWARD_LENGTH - max(structure.arity_cap - 1, 1)
        deformed = deform_by_bounding_cochains(structure, assignment)
        source = HochschildComplex(deformed, nonunital=True, length_max=PUSHFORWARD_LENGTH)
        words = sample_words(source, self.rng, self.config.samples, 2)

        def push(x: ChainVector) -> ChainVector:
            return pushforward_along_f(structure, assignment, x, target)

        def chain_map() -> Outcome:
            bad = []
            for w in words:
                x = unit_chain(ring, w)
                if not short_part_vanishes(push(source.b(x)) - target.b(push(x)), compared):
                    bad.append(w)
            return _failing(bad)

        def pairings() -> Outcome:
            bad = []
            for v in words:
                for w in words:
                    x, y = unit_chain(ring, v), unit_chain(ring, w)
                    if mukai_pairing(source, x, y) != mukai_pairing(target, push(x), push(y)):
                        bad.append(("mukai", v, w))
                    alpha = NegativeCyclicChain({0: x, 1: y}, 1)
                    beta = NegativeCyclicChain({0: y, 1: x}, 1)
                    pushed_alpha = NegativeCyclicChain({0: push(x), 1: push(y)}, 1)
                    pushed_beta = NegativeCyclicChain({0: push(y), 1: push(x)}, 1)
                    before = higher_residue_pairing(source, alpha, beta)
                    after = higher_residue_pairing(target, pushed_alpha, pushed_beta)
                    if before != after:
                        bad.append(("residue", v, w))
            return _failing(bad)

        self._record("pushforward_chain_map", label, chain_map)
        self._record("pushforward_preserves_pairings", label, pairings)

    # -------------------------------------------------------------------------
    # Getzler-Gauss-Manin connection
    # -------------------------------------------------------------------------

    def _ggm_models(self) -> list[tuple[str, AInfStructure]]:
        integer = BulkRingDescriptor.novikov(Grading.INTEGER, 6, length_max=3, u_max=1)
        mod2 = BulkRingDescriptor.novikov(Grading.MOD2, 6, length_max=3, u_max=1)
        specs = [
            ModelSpec(ModelKind.DUAL_NUMBERS, t_weights=(Fraction(1),), ring=integer),
            ModelSpec(ModelKind.EXTERIOR_ALGEBRA, n=1, ring=integer),
            ModelSpec(ModelKind.CLIFFORD_DEFORMATION, n=1, ring=mod2),
            ModelSpec(ModelKind.CURVED_CLIFFORD, ring=mod2),
        ]
        return [(spec.name, build_model(spec).structure) for spec in specs]

    def _ggm_checks(self, name: str, structure: AInfStructure) -> None:
        """
        Cocycle property of ``∇̃(mu)``, the u-weighted Leibniz rule, descent to
        homology and independence of the hom-space connection.
        """
        ring = structure.ring
        derivation = Derivation.d_log_t(ring)
        tildes = [
            BasisConnection.flat(structure, derivation),
            random_basis_connection(structure, derivation, seed=self.config.seed),
        ]
        q = NegativeCyclicComplex(structure, length_max=3, u_max=1)
        words = sample_words(q.hochschild, self.rng, self.config.samples, 2)
        scalars = [RingElement.t_power(ring, 1, 2), RingElement.t_power(ring, Fraction(1, 2))]

        def cocycle() -> Outcome:
            return _failing(
                label
                for tilde in tildes
                for label, cochain in nabla_of_mu(structure, tilde, derivation).items()
                if not cochain_differential(structure, cochain).is_zero()
            )

        def leibniz() -> Outcome:
            bad = []
            for tilde in tildes:
                connection = GGMConnection(q, tilde, derivation)
                for w in words:
                    x = q.chain(unit_chain(ring, w))
                    bad.extend(w for f in scalars if connection.leibniz_defect(f, x))
            return _failing(bad)

        self._record("ggm_cocycle", name, cocycle)
        self._record("ggm_leibniz", name, leibniz)
        if structure.is_curved():
            return

        small = NegativeCyclicComplex(structure, length_max=2, u_max=1)
        generators = [
            s for n in degree_window(structure, 0, 1) for s in free_generators(small, n)
        ]

        def descends() -> Outcome:
            bad = []
            for tilde in tildes:
                on_homology = GGMConnection(small, tilde, derivation).on_homology(generators)
                bad.extend(on_homology.unsolved)
            return _failing(bad)

        def independent() -> Outcome:
            report = tilde_independence(small, derivation, tildes, generators)
            return report.agree, f"disagreements {report.disagreements[:3]}"

        self._record("ggm_descends", name, descends)
        self._record("ggm_independent", name, independent)

    def _pullback_checks(self) -> None:
        """``f^*∇`` on a three-symbol ring against the closed-form matrix."""
        source = BulkRingDescriptor(
            grading=Grading.INTEGER,
            symbols=tuple(PULLBACK_KAPPAS),
            truncation=TruncationPolicy(Fraction(12), 2, 2, 4),
        )
        target = BulkRingDescriptor.novikov(Grading.INTEGER, 12, length_max=4)
        d_source = Derivation.standard(source)
        d_target = Derivation.d_log_t(target)

        def morphism(kappas: dict[str, Fraction]) -> RingMorphismWithDerivation:
            omega = {"dlogT": {"dlogT": RingElement.one(target)}}
            for q, kappa in kappas.items():
                omega[f"dlog_{q}"] = {"dlogT": RingElement.constant(target, kappa)}
            return RingMorphismWithDerivation(
                source=source, target=target, exponent_map=dict(PULLBACK_KAPPAS), omega_map=omega
            )

        r1, r2, r3 = (RingElement.symbol(source, q) for q in PULLBACK_KAPPAS)
        zero = RingElement.zero(source)
        one = RingElement.one(source)
        matrices = {
            "dlogT": [[r1, RingElement.t_power(source, 1)], [zero, r2 * r3]],
            "dlog_r1": [[one, zero], [r3, zero]],
            "dlog_r2": [[zero, r1], [zero, zero]],
            "dlog_r3": [[r2, zero], [zero, one.scale(2)]],
        }
        connection = ModuleConnection(d_source, ("a", "b"), (0, 0), matrices)

        def pullback() -> Outcome:
            f = morphism(PULLBACK_KAPPAS)
            pulled = pullback_connection(f, connection, d_target)
            bad = []
            for i in range(2):
                for j in range(2):
                    expected = f.apply(matrices["dlogT"][i][j])
                    for q, kappa in PULLBACK_KAPPAS.items():
                        expected = expected + f.apply(matrices[f"dlog_{q}"][i][j]).scale(kappa)
                    if pulled.matrix["dlogT"][i][j] != expected:
                        bad.append((i, j))
            return _failing(bad)

        def rejects_incompatible() -> Outcome:
            wrong = {**PULLBACK_KAPPAS, "r1": Fraction(5)}
            try:
                pullback_connection(morphism(wrong), connection, d_target)
            except IncompatibleDf:
                return True, ""
            return False, "an incompatible Df was accepted"

        self._record("connection_pullback", "three_symbol_toy", pullback)
        self._record("pullback_rejects_incompatible_df", "three_symbol_toy", rejects_incompatible)

    # -------------------------------------------------------------------------
    # Deformation theory
    # -------------------------------------------------------------------------

    def _deformation_check(self, model: BuiltModel) -> None:
        """A coboundary family ``mu + t·δψ`` has a closed, null-homologous class."""
        structure = model.structure
        if structure.is_curved() or structure.ring.truncation.t_precision is not None:
            return

        def classify() -> Outcome:
            basis = gauge_basis(structure, 2)
            if not basis:
                return True, "no gauge directions"
            psi = next((p for p in basis if p.max_arity() == 2), basis[0])
            report = deformation_class(coboundary_family(structure, psi), "t", arity_bound=2)
            return (
                report.closed and report.null_homologous,
                f"closed={report.closed} null={report.null_homologous}",
            )

        self._record("deformation_class", model.name, classify)

    def _maurer_cartan_check(self, model: BuiltModel) -> None:
        """The MC check passes exactly when the deformed curvature lies in the ideal."""
        structure = model.structure
        assignment = model.bounding or BoundingCochainAssignment.zero(structure)

        def consistency() -> Outcome:
            report = check_maurer_cartan(structure, assignment)
            curvature = deform_by_bounding_cochains(structure, assignment).value(())
            if assignment.mod_ideal is ModIdeal.BULK:
                in_ideal = all(c.specialize_bulk_zero().is_zero() for c in curvature.values())
            else:
                in_ideal = all(c.is_zero() for c in curvature.values())
            return (
                report.passed == in_ideal,
                f"mc={report.passed} deformed_curvature_in_ideal={in_ideal}",
            )

        self._record("maurer_cartan_consistency", model.name, consistency)

    def _clifford_square(self) -> None:
        spec = ModelSpec(ModelKind.CLIFFORD_DEFORMATION, n=1, t_weights=(CLIFFORD_WEIGHT,))
        model = build_model(spec)

        def square() -> Outcome:
            if model.bounding is None:
                return False, "no bounding cochain shipped"
            report = check_maurer_cartan(model.structure, model.bounding)
            deformed = deform_by_bounding_cochains(model.structure, model.bounding)
            value = deformed.value(("x1", "x1")).get("1")
            expected = RingElement.t_power(model.structure.ring, CLIFFORD_WEIGHT)
            return report.passed and value == expected, f"mu^b_2(x1, x1) = {value}"

        self._record("clifford_deformed_square", spec.name, square)

    # -------------------------------------------------------------------------
    # Traces and oracles
    # -------------------------------------------------------------------------

    def _wpcy_checks(self, n: int) -> None:
        spec = ModelSpec(ModelKind.EXTERIOR_ALGEBRA, n=n)
        model = build_model(spec)

        def top() -> Outcome:
            report = cohomology_pairing_from_trace(model.structure, model.trace or {})
            return (
                report.nondegenerate and report.graded_symmetric,
                f"rank {report.rank}/{report.dimension}",
            )

        def zero() -> Outcome:
            report = cohomology_pairing_from_trace(model.structure, {})
            return not report.nondegenerate, f"rank {report.rank}/{report.dimension}"

        self._record("wpcy_trace", spec.name, top)
        self._record("wpcy_zero_trace_degenerate", spec.name, zero)

    def _oracle_checks(self, spec: ModelSpec) -> None:
        """Optimized ranks and the Mukai pairing against dense recomputation."""
        structure = build_model(spec).structure
        ring = structure.ring
        length_max = self.config.comparison_length

        def hh() -> Outcome:
            caps = OracleCaps(degrees=(0, 3), length_max=length_max)
            table = brute_force_oracle(structure, OracleQuantity.HH_RANKS, caps)
            report = homology_ranks(structure, ComplexKind.HOCHSCHILD, (0, 3), length_max)
            return table.ranks == report.ranks, f"oracle {table.ranks} vs {report.ranks}"

        def hc() -> Outcome:
            caps = OracleCaps(degrees=(0, 2), length_max=2, u_max=1)
            table = brute_force_oracle(structure, OracleQuantity.HC_RANKS, caps)
            report = hc_minus_ranks(structure, (0, 2), length_max=2, u_max=1)
            return table.ranks == report.ranks, f"oracle {table.ranks} vs {report.ranks}"

        def mukai() -> Outcome:
            table = brute_force_oracle(structure, OracleQuantity.MUKAI_GRAM)
            complex_ = HochschildComplex(structure, nonunital=True, length_max=0)
            expected = table.gram_elements(ring)
            bad = []
            for i, a in enumerate(table.labels):
                for j, b in enumerate(table.labels):
                    value = mukai_pairing(complex_, unit_chain(ring, (a,)), unit_chain(ring, (b,)))
                    if value != expected[i][j]:
                        bad.append((a, b))
            return _failing(bad)

        self._record("oracle_hh", spec.name, hh)
        self._record("oracle_hc", spec.name, hc)
        self._record("oracle_mukai", spec.name, mukai)

    def _dual_numbers_ranks(self) -> None:
        structure = build_model(ModelSpec(ModelKind.DUAL_NUMBERS)).structure
        length_max = self.config.dual_numbers_length

        def ranks() -> Outcome:
            report = homology_ranks(structure, ComplexKind.HOCHSCHILD, (0, 4), length_max)
            oracle = brute_force_oracle(
                structure,
                OracleQuantity.HH_RANKS,
                OracleCaps(degrees=(0, 4), length_max=length_max),
            )
            passed = report.ranks == DUAL_NUMBERS_RANKS == oracle.ranks
            return passed, f"ranks {report.ranks}, oracle {oracle.ranks}"

        self._record("dual_numbers_ranks", ModelKind.DUAL_NUMBERS.value, ranks)

    # -------------------------------------------------------------------------
    # VSHS
    # -------------------------------------------------------------------------

    def _vshs_pipeline(self) -> None:
        ring = BulkRingDescriptor.novikov(Grading.INTEGER, 12, length_max=2, u_max=1)
        spec = ModelSpec(ModelKind.EXTERIOR_ALGEBRA, n=1, ring=ring)
        structure = build_model(spec).structure

        def pipeline() -> Outcome:
            vshs = assemble_from_category(
                structure,
                Derivation.d_log_t(ring),
                degrees=(0, 0),
                length_max=2,
                u_max=1,
                dimension_parity=1,
            )
            axioms = check_vshs(vshs)
            identity = check_morphism(identity_morphism(vshs), vshs, vshs, require_isomorphism=True)
            return (
                axioms.passed and identity.passed,
                f"rank {vshs.rank}, axioms={axioms.passed}, identity={identity.passed}, "
                f"mukai_sign={mukai_sign(vshs.dimension_parity)}",
            )

        def toys() -> Outcome:
            bad = []
            samples: list[tuple[str, VSHSData]] = [
                ("projective_line", projective_line_toy()),
                ("classical_projective_line", projective_line_toy(quantum=False)),
                ("group_algebra", group_algebra_toy()),
            ]
            for label, vshs in samples:
                if not check_vshs(vshs).passed:
                    bad.append((label, "axioms"))
                if not check_morphism(identity_morphism(vshs), vshs, vshs).passed:
                    bad.append((label, "identity"))
            group = group_algebra_toy()
            section = [
                PairingValue.constant(RingElement.one(group.ring), group.u_max),
                PairingValue(group.ring, {}, group.u_max),
            ]
            if not check_miniversal(group, section).passed:
                bad.append(("group_algebra", "miniversal"))
            return _failing(bad)

        self._record("vshs_pipeline", spec.name, pipeline)
        self._record("vshs_toys", "toys", toys)

    def _vshs_counterexamples(self) -> None:
        """Each broken datum fails the one check it was built to break."""

        def non_self_adjoint() -> Outcome:
            ring = BulkRingDescriptor.novikov(Grading.MOD2, 12, length_max=4)
            zero, one = RingElement.zero(ring), RingElement.one(ring)
            vshs = build_quantum_like_connection(
                Derivation.d_log_t(ring),
                basis=("a", "b"),
                degrees=(0, 0),
                product_tables={"dlogT": [[one, zero], [zero, zero]]},
                pairing=[[zero, one], [one, zero]],
            )
            report = check_vshs(vshs)
            return (
                report.leibniz and report.graded and not report.covariance,
                f"leibniz={report.leibniz} covariance={report.covariance} graded={report.graded}",
            )

        def ungraded_pairing() -> Outcome:
            base = projective_line_toy(quantum=False)
            ring = base.ring
            c, one, zero = (RingElement.constant(ring, 3), RingElement.one(ring), RingElement.zero(ring))
            vshs = replace(base, pairing=u_constant_matrix([[c, one], [one, zero]], base.u_max))
            report = check_vshs(vshs)
            return (
                report.leibniz and report.covariance and not report.graded,
                f"leibniz={report.leibniz} covariance={report.covariance} graded={report.graded}",
            )

        def scaled_morphism() -> Outcome:
            vshs = projective_line_toy()
            two, zero = RingElement.constant(vshs.ring, 2), RingElement.zero(vshs.ring)
            candidate = CandidateMorphism(u_constant_matrix([[two, zero], [zero, two]], vshs.u_max))
            report = check_morphism(candidate, vshs, vshs)
            return (
                report.connection_intertwined and not report.pairing_intertwined,
                f"connection={report.connection_intertwined} pairing={report.pairing_intertwined}",
            )

        def non_isotropic() -> Outcome:
            vshs = group_algebra_toy()
            one = RingElement.one(vshs.ring)

            def entry(coefficients: dict[int, RingElement]) -> PairingValue:
                return PairingValue(vshs.ring, coefficients, vshs.u_max)

            splitting = [[entry({0: one}), entry({1: one})], [entry({}), entry({0: one})]]
            report = check_opposite_subspace(vshs, splitting)
            return (
                report.complementary and report.graded and not report.isotropic,
                f"complementary={report.complementary} isotropic={report.isotropic} "
                f"graded={report.graded}",
            )

        def degenerate_section() -> Outcome:
            vshs = group_algebra_toy()
            section = [PairingValue(vshs.ring, {}, vshs.u_max) for _ in range(vshs.rank)]
            report = check_miniversal(vshs, section)
            return not report.bijective, f"rank {report.rank}/{report.dimension}"

        self._record("counterexample_non_self_adjoint", "toy", non_self_adjoint)
        self._record("counterexample_ungraded_pairing", "projective_line", ungraded_pairing)
        self._record("counterexample_scaled_morphism", "projective_line", scaled_morphism)
        self._record("counterexample_non_isotropic_splitting", "group_algebra", non_isotropic)
        self._record("counterexample_degenerate_section", "group_algebra", degenerate_section)

    # -------------------------------------------------------------------------
    # Robustness
    # -------------------------------------------------------------------------

    def _mutation_robustness(self, model: BuiltModel) -> None:
        structure, bounding = model.structure, model.bounding

        def caught_by(mutation: Mutation) -> bool:
            relations = check_ainf_relations(mutation.structure)
            if mutation.constraint == Constraint.ASSOCIATIVITY:
                return not relations.passed
            if mutation.constraint == Constraint.MAURER_CARTAN and bounding is not None:
                assignment = BoundingCochainAssignment(
                    mutation.structure, bounding.per_object, bounding.mod_ideal
                )
                return not check_maurer_cartan(mutation.structure, assignment).passed
            return not (relations.passed and check_strict_units(mutation.structure).passed)

        def caught() -> Outcome:
            found = mutations(
                structure, self.config.mutation_count, self.config.seed, bounding
            )
            return _failing(m.description for m in found if not caught_by(m))

        self._record("mutation_robustness", model.name, caught)

    def _random_model(self, index: int) -> None:
        seed = self.config.seed * 1000 + index
        dims = (self.rng.randint(1, 3), self.rng.randint(1, 3))
        spec = ModelSpec(ModelKind.RANDOM_DGA, seed=seed, dims=dims)
        structure = build_model(spec).structure
        self._structure_checks(spec.name, structure)
        for length_max in self.config.length_caps:
            self._differential_identities(spec.name, structure, length_max)
        self._nonunital_comparison(spec.name, structure)
        length_max = self.config.comparison_length

        def oracle() -> Outcome:
            caps = OracleCaps(degrees=(0, 1), length_max=length_max)
            table = brute_force_oracle(structure, OracleQuantity.HH_RANKS, caps)
            report = homology_ranks(structure, ComplexKind.HOCHSCHILD, (0, 1), length_max)
            return table.ranks == report.ranks, f"oracle {table.ranks} vs {report.ranks}"

        self._record("oracle_hh", spec.name, oracle)


def run_suite(seed: int = 1, quick: bool = False) -> SuiteReport:
    """Run the identity suite with a seed; ``quick`` uses smaller caps."""
    return SuiteRunner(SuiteConfig(seed=seed, quick=quick)).run()
