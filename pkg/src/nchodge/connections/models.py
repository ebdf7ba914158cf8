"""Data models for connections on based modules and their reports."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from nchodge.ainf.models import AInfStructure, CochainVector, Element, is_unit_plus
from nchodge.cyclic.models import PairingValue
from nchodge.errors import DegreeMismatch, RankMismatch, UnknownSymbol
from nchodge.scalars import BulkRingDescriptor, Derivation, RingElement, format_element

Matrix = list[list[RingElement]]
Vector = dict[str, RingElement]


def zero_matrix(ring: BulkRingDescriptor, n: int) -> Matrix:
    return [[RingElement.zero(ring) for _ in range(n)] for _ in range(n)]


def matrix_product(a: Sequence[Sequence[RingElement]], b: Sequence[Sequence[RingElement]]) -> Matrix:
    """Product of square matrices of the same size."""
    n = len(a)
    if n == 0:
        return []
    ring = a[0][0].ring
    result = zero_matrix(ring, n)
    for i in range(n):
        for k in range(n):
            if a[i][k].is_zero():
                continue
            for j in range(n):
                if not b[k][j].is_zero():
                    result[i][j] = result[i][j] + a[i][k] * b[k][j]
    return result


def matrix_to_strings(matrix: Sequence[Sequence[RingElement]]) -> list[list[str]]:
    return [[format_element(c) for c in row] for row in matrix]


@dataclass
class ModuleConnection:
    """
    A connection ``∇ = D ⊗ id + A`` on a free module with a named basis.

    ``matrix[label][i][j]`` is the coefficient of ``basis[i]`` in the
    ``label`` component of ``∇(basis[j])``. Labels the matrix omits act by zero.

    Attributes:
        derivation: Base derivation D
        basis: Basis names
        degrees: Grading degree of each basis element
        matrix: Omega-valued connection matrix
    """

    derivation: Derivation
    basis: tuple[str, ...]
    degrees: tuple[int, ...]
    matrix: dict[str, Matrix] = field(default_factory=dict)

    def __post_init__(self) -> None:
        n = len(self.basis)
        if len(self.degrees) != n:
            raise RankMismatch(f"{n} basis elements but {len(self.degrees)} degrees")
        names = set(self.derivation.label_names)
        for label, rows in self.matrix.items():
            if label not in names:
                raise UnknownSymbol(f"connection uses undeclared Omega label '{label}'")
            if len(rows) != n or any(len(row) != n for row in rows):
                raise RankMismatch(f"connection matrix for '{label}' is not {n}x{n}")
        ring = self.derivation.ring
        for label in self.derivation.label_names:
            self.matrix.setdefault(label, zero_matrix(ring, n))

    @classmethod
    def trivial(
        cls, derivation: Derivation, basis: Sequence[str], degrees: Sequence[int]
    ) -> ModuleConnection:
        """``∇ = D ⊗ id``: every basis element is flat."""
        return cls(derivation, tuple(basis), tuple(degrees))

    @property
    def ring(self) -> BulkRingDescriptor:
        return self.derivation.ring

    @property
    def rank(self) -> int:
        return len(self.basis)

    def entry(self, label: str, i: int, j: int) -> RingElement:
        return self.matrix[label][i][j]

    # -------------------------------------------------------------------------
    # Action
    # -------------------------------------------------------------------------

    def apply(self, vector: Mapping[str, RingElement]) -> dict[str, Vector]:
        """
        ``∇(sum_j f_j m_j) = sum_j D(f_j) ⊗ m_j + f_j A m_j``.

        Returns:
            Mapping from Omega label to the coefficient vector of that component
        """
        index = {name: j for j, name in enumerate(self.basis)}
        result: dict[str, Vector] = {label: {} for label in self.derivation.label_names}
        for name, coeff in vector.items():
            if name not in index:
                raise UnknownSymbol(f"'{name}' is not a basis element of the module")
            j = index[name]
            for label, value in self.derivation.apply(coeff).items():
                _accumulate(result[label], name, value)
            for label, rows in self.matrix.items():
                for i, row in enumerate(rows):
                    if not row[j].is_zero():
                        _accumulate(result[label], self.basis[i], coeff * row[j])
        return {label: v for label, v in result.items() if v}

    def leibniz_defect(
        self, f: RingElement, vector: Mapping[str, RingElement]
    ) -> dict[str, Vector]:
        """``∇(f m) - Df ⊗ m - f ∇(m)``; empty for a connection."""
        left = self.apply({name: f * c for name, c in vector.items()})
        right: dict[str, Vector] = {}
        for label, df in self.derivation.apply(f).items():
            right[label] = {name: df * c for name, c in vector.items()}
        for label, image in self.apply(vector).items():
            bucket = right.setdefault(label, {})
            for name, c in image.items():
                _accumulate(bucket, name, f * c)
        defect: dict[str, Vector] = {}
        for label in set(left) | set(right):
            diff = dict(left.get(label, {}))
            for name, c in right.get(label, {}).items():
                _accumulate(diff, name, -c)
            if diff:
                defect[label] = diff
        return defect

    def commutation_report(self, differential: Sequence[Sequence[RingElement]]) -> CommutationReport:
        """
        Compare ``∇ ∘ d`` with ``d ∘ ∇`` for an even module differential.

        The residual along a label is ``D(d) + A d - d A``.
        """
        n = self.rank
        if len(differential) != n or any(len(row) != n for row in differential):
            raise RankMismatch(f"differential is not {n}x{n}")
        failures: dict[str, list[tuple[int, int]]] = {}
        for label in self.derivation.label_names:
            a = self.matrix[label]
            left = matrix_product(a, differential)
            right = matrix_product(differential, a)
            bad = []
            for i in range(n):
                for j in range(n):
                    d_entry = self.derivation.apply(differential[i][j]).get(
                        label, RingElement.zero(self.ring)
                    )
                    if not (d_entry + left[i][j] - right[i][j]).is_zero():
                        bad.append((i, j))
            if bad:
                failures[label] = bad
        return CommutationReport(passed=not failures, failures=failures)

    def to_dict(self) -> dict:
        return {
            "basis": list(self.basis),
            "degrees": list(self.degrees),
            "matrix": {label: matrix_to_strings(m) for label, m in sorted(self.matrix.items())},
        }


def _accumulate(bucket: dict[str, RingElement], name: str, value: RingElement) -> None:
    if value.is_zero():
        return
    total = bucket[name] + value if name in bucket else value
    if total.is_zero():
        bucket.pop(name, None)
    else:
        bucket[name] = total


@dataclass
class CommutationReport:
    """Entries where a connection fails to commute with a differential."""

    passed: bool
    failures: dict[str, list[tuple[int, int]]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "failures": {label: [list(p) for p in pairs] for label, pairs in self.failures.items()},
        }


class BasisConnection:
    """
    A connection ``∇̃`` on every hom space of a category.

    Each hom space carries a :class:`ModuleConnection` on its generator
    basis. Adjoined units ``e+`` are flat.
    """

    def __init__(
        self,
        structure: AInfStructure,
        derivation: Derivation,
        hom_connections: Mapping[tuple[str, str], ModuleConnection] | None = None,
    ):
        if derivation.ring != structure.ring:
            raise UnknownSymbol("derivation and category use different rings")
        self.structure = structure
        self.derivation = derivation
        self.hom_connections: dict[tuple[str, str], ModuleConnection] = {}
        for source in structure.objects:
            for target in structure.objects:
                generators = structure.hom(source, target)
                given = (hom_connections or {}).get((source, target))
                if given is None:
                    given = ModuleConnection.trivial(
                        derivation, [g.name for g in generators], [g.degree for g in generators]
                    )
                elif given.basis != tuple(g.name for g in generators):
                    raise RankMismatch(
                        f"connection on hom({source}, {target}) uses basis {given.basis}"
                    )
                self.hom_connections[(source, target)] = given
        self._check_degrees()
        self._gamma: dict[str, dict[str, Element]] = {}

    @classmethod
    def flat(cls, structure: AInfStructure, derivation: Derivation) -> BasisConnection:
        """Every generator is ``∇̃``-constant."""
        return cls(structure, derivation)

    def _check_degrees(self) -> None:
        grading = self.structure.ring.grading
        for (source, target), connection in self.hom_connections.items():
            for label, rows in connection.matrix.items():
                shift = self.derivation.label_degree(label)
                for i, row in enumerate(rows):
                    for j, coeff in enumerate(row):
                        if coeff.is_zero():
                            continue
                        degree = coeff.degree()
                        expected = connection.degrees[j] - connection.degrees[i] - shift
                        if degree is None or not grading.equal(degree, expected):
                            raise DegreeMismatch(
                                f"∇̃ on hom({source}, {target}) sends "
                                f"{connection.basis[j]} to {connection.basis[i]} "
                                f"with a coefficient of degree {degree}"
                            )

    def gamma(self, name: str) -> dict[str, Element]:
        """``Γ(g)``: the connection-matrix column of a generator, per label."""
        if is_unit_plus(name):
            return {}
        if name not in self._gamma:
            generator = self.structure.generator(name)
            connection = self.hom_connections[(generator.source, generator.target)]
            j = connection.basis.index(name)
            images: dict[str, Element] = {}
            for label, rows in connection.matrix.items():
                column = {
                    connection.basis[i]: row[j] for i, row in enumerate(rows) if not row[j].is_zero()
                }
                if column:
                    images[label] = column
            self._gamma[name] = images
        return self._gamma[name]

    def gamma_cochain(self, label: str) -> CochainVector:
        """``Γ`` along one label as an even arity-one cochain."""
        entries = {}
        for g in self.structure.generators:
            image = self.gamma(g.name).get(label)
            if image:
                entries[(g.name,)] = image
        return CochainVector(entries, parity=0)

    def is_flat(self) -> bool:
        return all(
            c.is_zero()
            for connection in self.hom_connections.values()
            for rows in connection.matrix.values()
            for row in rows
            for c in row
        )

    def to_dict(self) -> dict:
        return {
            f"{source}->{target}": connection.to_dict()
            for (source, target), connection in sorted(self.hom_connections.items())
            if connection.rank
        }


@dataclass
class HomologyConnection:
    """
    Matrix of ``u∇^{GGM}`` on a list of ``(b + uB)``-cycle representatives.

    ``matrices[label][i][j]`` is the u-polynomial coefficient of generator
    ``i`` in ``u∇_label(s_j)`` modulo boundaries.
    """

    labels: list[str]
    degrees: list[int]
    matrices: dict[str, list[list[PairingValue]]]
    unsolved: list[tuple[str, int]] = field(default_factory=list)
    tail: list[tuple[str, int]] = field(default_factory=list)
    truncation: dict = field(default_factory=dict)

    @property
    def descends(self) -> bool:
        return not self.unsolved

    def coefficient(self, label: str, i: int, j: int, power: int) -> RingElement:
        return self.matrices[label][i][j].coefficient(power)

    def to_dict(self) -> dict:
        return {
            "labels": self.labels,
            "degrees": self.degrees,
            "descends": self.descends,
            "matrices": {
                label: [[entry.to_dict()["coefficients"] for entry in row] for row in rows]
                for label, rows in self.matrices.items()
            },
            "unsolved": [list(p) for p in self.unsolved],
            "tail": [list(p) for p in self.tail],
            "truncation": self.truncation,
        }


@dataclass
class IndependenceReport:
    """Whether several choices of ``∇̃`` induce the same map on homology."""

    agree: bool
    choices: int
    disagreements: list[tuple[int, str, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "agree": self.agree,
            "choices": self.choices,
            "disagreements": [
                {"choice": c, "label": label, "generator": j} for c, label, j in self.disagreements
            ],
        }


@dataclass
class ChainCommutationReport:
    """``[b + uB, u∇^{GGM}]`` evaluated on sample chains, per label."""

    commutes: bool
    nonzero: list[tuple[int, str]] = field(default_factory=list)
    samples: int = 0

    def to_dict(self) -> dict:
        return {
            "commutes": self.commutes,
            "samples": self.samples,
            "nonzero": [{"sample": i, "label": label} for i, label in self.nonzero],
        }

