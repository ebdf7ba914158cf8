"""Data models for variations of semi-infinite Hodge structure."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from nchodge.cyclic.models import PairingValue
from nchodge.errors import RankMismatch, UnknownSymbol
from nchodge.scalars import BulkRingDescriptor, Derivation, RingElement, sign_of

UMatrix = list[list[PairingValue]]


def mukai_sign(n: int) -> int:
    """``(-1)^{n(n+1)/2}``."""
    return sign_of(n * (n + 1) // 2)


def u_zero_matrix(ring: BulkRingDescriptor, rows: int, cols: int, u_max: int) -> UMatrix:
    return [[PairingValue(ring, {}, u_max) for _ in range(cols)] for _ in range(rows)]


def u_identity(ring: BulkRingDescriptor, n: int, u_max: int) -> UMatrix:
    matrix = u_zero_matrix(ring, n, n, u_max)
    for i in range(n):
        matrix[i][i] = PairingValue.constant(RingElement.one(ring), u_max)
    return matrix


def u_constant_matrix(rows: Sequence[Sequence[RingElement]], u_max: int) -> UMatrix:
    """Lift a matrix of ring elements to u-polynomials constant in u."""
    return [[PairingValue.constant(c, u_max) for c in row] for row in rows]


def u_product(a: UMatrix, b: UMatrix, ring: BulkRingDescriptor, u_max: int) -> UMatrix:
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if b else 0
    result = u_zero_matrix(ring, rows, cols, u_max)
    for i in range(rows):
        for k in range(inner):
            if a[i][k].is_zero():
                continue
            for j in range(cols):
                if not b[k][j].is_zero():
                    result[i][j] = result[i][j] + a[i][k] * b[k][j]
    return result


def u_transpose(a: UMatrix) -> UMatrix:
    return [list(column) for column in zip(*a)] if a else []


def u_sigma(a: UMatrix) -> UMatrix:
    return [[entry.sigma() for entry in row] for row in a]


def u_matrix_to_dict(a: UMatrix) -> list[list[dict[str, str]]]:
    return [[entry.to_dict()["coefficients"] for entry in row] for row in a]


@dataclass
class VSHSData:
    """
    A free based module over ``R[u]/u^{u_max+1}`` with a u-connection and a pairing.

    The u-connection is ``u∇(sum_j f_j s_j) = sum_j u D(f_j) s_j + f_j A(s_j)``
    with ``connection[label][i][j]`` the coefficient of ``s_i`` in
    ``A_label(s_j)``. The pairing is sesquilinear: u-linear in the first
    slot and ``u -> -u`` in the second; ``pairing[i][j] = <s_i, s_j>``.

    Attributes:
        derivation: Base derivation D
        basis: Generator names
        degrees: Generator degrees
        connection: Omega-valued u-polynomial matrices
        pairing: u-polynomial Gram matrix
        u_max: Largest power of u kept
        dimension_parity: n in the sign ``(-1)^{n(n+1)/2}``
        u_degree: Degree of u in the module's grading
        pairing_degree: ``<s_i, s_j>`` has degree ``|s_i| + |s_j| + pairing_degree``
    """

    derivation: Derivation
    basis: tuple[str, ...]
    degrees: tuple[int, ...]
    connection: dict[str, UMatrix]
    pairing: UMatrix
    u_max: int = 2
    dimension_parity: int = 0
    u_degree: int = -2
    pairing_degree: int = 0
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        n = len(self.basis)
        if len(self.degrees) != n:
            raise RankMismatch(f"{n} generators but {len(self.degrees)} degrees")
        names = set(self.derivation.label_names)
        for label, matrix in self.connection.items():
            if label not in names:
                raise UnknownSymbol(f"connection uses undeclared Omega label '{label}'")
            if len(matrix) != n or any(len(row) != n for row in matrix):
                raise RankMismatch(f"connection matrix for '{label}' is not {n}x{n}")
        if len(self.pairing) != n or any(len(row) != n for row in self.pairing):
            raise RankMismatch(f"pairing matrix is not {n}x{n}")
        for label in self.derivation.label_names:
            self.connection.setdefault(label, u_zero_matrix(self.ring, n, n, self.u_max))

    @property
    def ring(self) -> BulkRingDescriptor:
        return self.derivation.ring

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def labels(self) -> tuple[str, ...]:
        return self.derivation.label_names

    def truncation(self) -> dict:
        return {**self.ring.truncation.to_dict(), "u_max": self.u_max}

    def apply(self, label: str, vector: Sequence[PairingValue]) -> list[PairingValue]:
        """The ``label`` component of ``u∇`` on a coefficient vector."""
        n = self.rank
        result = [PairingValue(self.ring, {}, self.u_max) for _ in range(n)]
        matrix = self.connection[label]
        for j, f in enumerate(vector):
            if f.is_zero():
                continue
            derived = {
                k: value
                for k, c in f.coefficients.items()
                if (value := self.derivation.apply(c).get(label)) is not None
            }
            result[j] = result[j] + PairingValue(self.ring, derived, self.u_max).multiply_u(1)
            for i in range(n):
                if not matrix[i][j].is_zero():
                    result[i] = result[i] + matrix[i][j] * f
        return result

    def to_dict(self) -> dict:
        return {
            "basis": list(self.basis),
            "degrees": list(self.degrees),
            "connection": {
                label: u_matrix_to_dict(m) for label, m in sorted(self.connection.items())
            },
            "pairing": u_matrix_to_dict(self.pairing),
            "u_max": self.u_max,
            "dimension_parity": self.dimension_parity,
            "u_degree": self.u_degree,
            "pairing_degree": self.pairing_degree,
            "diagnostics": self.diagnostics,
        }


@dataclass
class CandidateMorphism:
    """
    A u-linear map between two VSHS.

    ``matrix[i][j]`` is the coefficient of the target generator ``i`` in the
    image of the source generator ``j``.
    """

    matrix: UMatrix
    expected_sign: int = 1

    @classmethod
    def with_mukai_sign(cls, matrix: UMatrix, n: int) -> CandidateMorphism:
        return cls(matrix, mukai_sign(n))

    def to_dict(self) -> dict:
        return {"matrix": u_matrix_to_dict(self.matrix), "expected_sign": self.expected_sign}


@dataclass
class Violation:
    """One failing matrix entry of a check."""

    check: str
    label: str | None
    row: int
    column: int

    def to_dict(self) -> dict:
        return {"check": self.check, "label": self.label, "row": self.row, "column": self.column}


@dataclass
class VSHSReport:
    """Outcome of the VSHS axiom checks."""

    leibniz: bool
    covariance: bool
    graded: bool
    polarized: bool
    violations: list[Violation] = field(default_factory=list)
    truncation: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.leibniz and self.covariance and self.graded

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "polarized": self.polarized,
            "leibniz": self.leibniz,
            "covariance": self.covariance,
            "graded": self.graded,
            "violations": [v.to_dict() for v in self.violations],
            "truncation": self.truncation,
        }


@dataclass
class MorphismReport:
    """Outcome of checking a candidate morphism."""

    connection_intertwined: bool
    pairing_intertwined: bool
    expected_sign: int
    isomorphism: bool | None = None
    violations: list[Violation] = field(default_factory=list)
    truncation: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (
            self.connection_intertwined
            and self.pairing_intertwined
            and self.isomorphism is not False
        )

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "connection_intertwined": self.connection_intertwined,
            "pairing_intertwined": self.pairing_intertwined,
            "expected_sign": self.expected_sign,
            "isomorphism": self.isomorphism,
            "violations": [v.to_dict() for v in self.violations],
            "truncation": self.truncation,
        }


@dataclass
class OppositeSubspaceReport:
    """Complementarity, isotropy and gradedness of a splitting."""

    complementary: bool
    isotropic: bool
    graded: bool
    window: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.complementary and self.isotropic and self.graded

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "complementary": self.complementary,
            "isotropic": self.isotropic,
            "graded": self.graded,
            "window": self.window,
            "violations": [v.to_dict() for v in self.violations],
        }


@dataclass
class MiniversalityReport:
    """Bijectivity of ``v -> (u∇)_v s0 mod u`` and the dilaton-shift flag."""

    bijective: bool
    rank: int
    dimension: int
    directions: int
    dilaton_shift: bool

    @property
    def passed(self) -> bool:
        return self.bijective

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "bijective": self.bijective,
            "rank": self.rank,
            "dimension": self.dimension,
            "directions": self.directions,
            "dilaton_shift": self.dilaton_shift,
        }
