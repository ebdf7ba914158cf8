"""Text documents describing a category, its extras and an optional VSHS.

A document is a single JSON object. Unknown keys are rejected, scalars are
written in the exact expression grammar of :mod:`nchodge.scalars`, and
:func:`emit_document` is canonical, so ``emit(parse(emit(x)))`` reproduces
``emit(x)`` byte for byte.
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from nchodge.ainf import AInfStructure, BoundingCochainAssignment, Generator, ModIdeal
from nchodge.cyclic import PairingValue
from nchodge.errors import DocumentError
from nchodge.hochschild import Word
from nchodge.scalars import (
    BulkRingDescriptor,
    BulkVariable,
    Derivation,
    Grading,
    OmegaLabel,
    RingElement,
    TruncationPolicy,
    format_element,
    parse_element,
)
from nchodge.vshs import CandidateMorphism, UMatrix, VSHSData

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

# One u-polynomial: power of u (as a string key) -> scalar expression
UEntry = dict[str, str]


# =============================================================================
# Schema
# =============================================================================


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class TruncationBlock(StrictModel):
    t_precision: str | None = None
    bulk_degree_max: int = Field(default=2, ge=0)
    u_max: int = Field(default=2, ge=0)
    length_max: int = Field(default=6, ge=0)


class VariableBlock(StrictModel):
    name: str
    degree: int = 0


class RingBlock(StrictModel):
    grading: Grading = Grading.INTEGER
    symbols: list[str] = Field(default_factory=list)
    variables: list[VariableBlock] = Field(default_factory=list)
    divided_powers: bool = True
    differential: dict[str, dict[str, str]] = Field(default_factory=dict)
    truncation: TruncationBlock = Field(default_factory=TruncationBlock)


class GeneratorBlock(StrictModel):
    name: str
    degree: int


class HomBlock(StrictModel):
    source: str
    target: str
    generators: list[GeneratorBlock]


class MuRecord(StrictModel):
    arity: int = Field(ge=0)
    inputs: list[str]
    output: str
    coeff: str

    @model_validator(mode="after")
    def _arity_matches(self) -> "MuRecord":
        if self.arity != len(self.inputs):
            raise ValueError(f"arity {self.arity} but {len(self.inputs)} inputs")
        return self


class BoundingBlock(StrictModel):
    mod_ideal: ModIdeal = ModIdeal.ZERO
    per_object: dict[str, dict[str, str]] = Field(default_factory=dict)


class TraceRecord(StrictModel):
    word: list[str]
    coeff: str


class LabelBlock(StrictModel):
    name: str
    degree: int = 0


class DerivationBlock(StrictModel):
    labels: list[LabelBlock]
    t_log: dict[str, str] = Field(default_factory=dict)
    symbol_log: dict[str, dict[str, str]] = Field(default_factory=dict)
    bulk_images: dict[str, dict[str, str]] = Field(default_factory=dict)


class MorphismBlock(StrictModel):
    matrix: list[list[UEntry]]
    expected_sign: Literal[1, -1] = 1
    require_isomorphism: bool = False


class VSHSBlock(StrictModel):
    basis: list[str]
    degrees: list[int]
    connection: dict[str, list[list[UEntry]]]
    pairing: list[list[UEntry]]
    u_max: int = Field(default=2, ge=0)
    dimension_parity: int = 0
    u_degree: int = -2
    pairing_degree: int = 0
    morphism: MorphismBlock | None = None
    splitting: list[list[UEntry]] | None = None
    section: list[UEntry] | None = None
    tangent_labels: list[str] | None = None


class NCHodgeDocument(StrictModel):
    """Top-level document schema."""

    format_version: Literal[1]
    ring: RingBlock
    objects: list[str]
    homs: list[HomBlock]
    units: dict[str, str] = Field(default_factory=dict)
    arity_cap: int | None = None
    mu: list[MuRecord]
    bounding_cochains: BoundingBlock | None = None
    trace: list[TraceRecord] | None = None
    derivation: DerivationBlock | None = None
    vshs: VSHSBlock | None = None


# =============================================================================
# Loaded documents
# =============================================================================


@dataclass
class LoadedDocument:
    """Domain objects built from a document."""

    ring: BulkRingDescriptor
    structure: AInfStructure
    bounding: BoundingCochainAssignment | None = None
    trace: dict[Word, RingElement] | None = None
    derivation: Derivation | None = None
    vshs: VSHSData | None = None
    morphism: CandidateMorphism | None = None
    require_isomorphism: bool = False
    splitting: UMatrix | None = None
    section: list[PairingValue] | None = None
    tangent_labels: list[str] | None = None


def _rational(text: str, where: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"{where}: {text!r} is not a rational number") from None


def build_ring(block: RingBlock) -> BulkRingDescriptor:
    truncation = block.truncation
    t_precision = (
        None
        if truncation.t_precision is None
        else _rational(truncation.t_precision, "ring.truncation.t_precision")
    )
    differential = tuple(
        (
            source,
            tuple(
                (target, _rational(c, f"ring.differential.{source}"))
                for target, c in images.items()
            ),
        )
        for source, images in block.differential.items()
    )
    return BulkRingDescriptor(
        grading=block.grading,
        symbols=tuple(block.symbols),
        variables=tuple(BulkVariable(v.name, v.degree) for v in block.variables),
        divided_powers=block.divided_powers,
        differential=differential,
        truncation=TruncationPolicy(
            t_precision,
            truncation.bulk_degree_max,
            truncation.u_max,
            truncation.length_max,
        ),
    )


def _u_entry(ring: BulkRingDescriptor, entry: UEntry, u_max: int) -> PairingValue:
    coefficients = {}
    for power, text in entry.items():
        try:
            index = int(power)
        except ValueError:
            raise DocumentError(f"u-power {power!r} is not an integer") from None
        coefficients[index] = parse_element(ring, text)
    return PairingValue(ring, coefficients, u_max)


def _u_matrix(ring: BulkRingDescriptor, rows: list[list[UEntry]], u_max: int) -> UMatrix:
    return [[_u_entry(ring, entry, u_max) for entry in row] for row in rows]


def _build_derivation(ring: BulkRingDescriptor, block: DerivationBlock) -> Derivation:
    return Derivation(
        ring=ring,
        labels=tuple(OmegaLabel(label.name, label.degree) for label in block.labels),
        t_log={k: _rational(v, "derivation.t_log") for k, v in block.t_log.items()},
        symbol_log={
            q: {k: _rational(v, "derivation.symbol_log") for k, v in row.items()}
            for q, row in block.symbol_log.items()
        },
        bulk_images={
            t: {k: parse_element(ring, v) for k, v in row.items()}
            for t, row in block.bulk_images.items()
        },
    )


def _build_structure(document: NCHodgeDocument, ring: BulkRingDescriptor) -> AInfStructure:
    generators = [
        Generator(g.name, hom.source, hom.target, g.degree)
        for hom in document.homs
        for g in hom.generators
    ]
    mu: dict[tuple[str, ...], dict[str, RingElement]] = {}
    for record in document.mu:
        outputs = mu.setdefault(tuple(record.inputs), {})
        if record.output in outputs:
            raise DocumentError(f"duplicate mu record for {record.inputs} -> {record.output}")
        outputs[record.output] = parse_element(ring, record.coeff)
    return AInfStructure(
        ring=ring,
        objects=document.objects,
        generators=generators,
        mu=mu,
        units=document.units,
        arity_cap=document.arity_cap,
    )


def _build_vshs(
    block: VSHSBlock, ring: BulkRingDescriptor, derivation: Derivation | None
) -> VSHSData:
    if derivation is None:
        raise DocumentError("a vshs block needs a derivation block")
    return VSHSData(
        derivation=derivation,
        basis=tuple(block.basis),
        degrees=tuple(block.degrees),
        connection={
            label: _u_matrix(ring, rows, block.u_max) for label, rows in block.connection.items()
        },
        pairing=_u_matrix(ring, block.pairing, block.u_max),
        u_max=block.u_max,
        dimension_parity=block.dimension_parity,
        u_degree=block.u_degree,
        pairing_degree=block.pairing_degree,
    )


def build_document(document: NCHodgeDocument) -> LoadedDocument:
    """
    Build domain objects from a validated document.

    Raises:
        DocumentError: On malformed scalars or inconsistent blocks
        NCHodgeError: On structure data the domain types reject
    """
    ring = build_ring(document.ring)
    structure = _build_structure(document, ring)
    loaded = LoadedDocument(ring=ring, structure=structure)

    if document.bounding_cochains is not None:
        block = document.bounding_cochains
        loaded.bounding = BoundingCochainAssignment(
            structure,
            {
                obj: {name: parse_element(ring, c) for name, c in b.items()}
                for obj, b in block.per_object.items()
            },
            block.mod_ideal,
        )
    if document.trace is not None:
        loaded.trace = {tuple(r.word): parse_element(ring, r.coeff) for r in document.trace}
    if document.derivation is not None:
        loaded.derivation = _build_derivation(ring, document.derivation)
    if document.vshs is not None:
        vshs_block = document.vshs
        loaded.vshs = _build_vshs(vshs_block, ring, loaded.derivation)
        if vshs_block.morphism is not None:
            loaded.morphism = CandidateMorphism(
                _u_matrix(ring, vshs_block.morphism.matrix, vshs_block.u_max),
                vshs_block.morphism.expected_sign,
            )
            loaded.require_isomorphism = vshs_block.morphism.require_isomorphism
        if vshs_block.splitting is not None:
            loaded.splitting = _u_matrix(ring, vshs_block.splitting, vshs_block.u_max)
        if vshs_block.section is not None:
            loaded.section = [_u_entry(ring, e, vshs_block.u_max) for e in vshs_block.section]
        loaded.tangent_labels = vshs_block.tangent_labels
    return loaded


def parse_document(text: str) -> NCHodgeDocument:
    """
    Parse and validate document text.

    Raises:
        DocumentError: If the text is not JSON or does not match the schema
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"not a JSON document: {e}") from None
    try:
        return NCHodgeDocument.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(p) for p in first["loc"]) or "document"
        raise DocumentError(f"{location}: {first['msg']} ({e.error_count()} errors)") from None


def load_document(path: Path) -> LoadedDocument:
    """Read, validate and build a document file."""
    logger.info("loading document %s", path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise DocumentError(f"cannot read {path}: {e}") from None
    return build_document(parse_document(text))


# =============================================================================
# Emission
# =============================================================================


def _ring_block(ring: BulkRingDescriptor) -> RingBlock:
    truncation = ring.truncation
    return RingBlock(
        grading=ring.grading,
        symbols=list(ring.symbols),
        variables=[VariableBlock(name=v.name, degree=v.degree) for v in ring.variables],
        divided_powers=ring.divided_powers,
        differential={
            source: {target: str(c) for target, c in images} for source, images in ring.differential
        },
        truncation=TruncationBlock(
            t_precision=None if truncation.t_precision is None else str(truncation.t_precision),
            bulk_degree_max=truncation.bulk_degree_max,
            u_max=truncation.u_max,
            length_max=truncation.length_max,
        ),
    )


def _homs(structure: AInfStructure) -> list[HomBlock]:
    blocks: dict[tuple[str, str], HomBlock] = {}
    for g in structure.generators:
        block = blocks.setdefault(
            (g.source, g.target), HomBlock(source=g.source, target=g.target, generators=[])
        )
        block.generators.append(GeneratorBlock(name=g.name, degree=g.degree))
    return list(blocks.values())


def _mu_records(structure: AInfStructure) -> list[MuRecord]:
    records = []
    for inputs in sorted(structure.mu, key=lambda k: (len(k), k)):
        for output, coeff in sorted(structure.mu[inputs].items()):
            records.append(
                MuRecord(
                    arity=len(inputs), inputs=list(inputs), output=output, coeff=format_element(coeff)
                )
            )
    return records


def _derivation_block(derivation: Derivation) -> DerivationBlock:
    return DerivationBlock(
        labels=[LabelBlock(name=label.name, degree=label.degree) for label in derivation.labels],
        t_log={k: str(v) for k, v in derivation.t_log.items()},
        symbol_log={
            q: {k: str(v) for k, v in row.items()} for q, row in derivation.symbol_log.items()
        },
        bulk_images={
            t: {k: format_element(v) for k, v in row.items()}
            for t, row in derivation.bulk_images.items()
        },
    )


def _u_rows(matrix: UMatrix) -> list[list[UEntry]]:
    return [[entry.to_dict()["coefficients"] for entry in row] for row in matrix]


def _vshs_block(vshs: VSHSData) -> VSHSBlock:
    return VSHSBlock(
        basis=list(vshs.basis),
        degrees=list(vshs.degrees),
        connection={label: _u_rows(m) for label, m in sorted(vshs.connection.items())},
        pairing=_u_rows(vshs.pairing),
        u_max=vshs.u_max,
        dimension_parity=vshs.dimension_parity,
        u_degree=vshs.u_degree,
        pairing_degree=vshs.pairing_degree,
    )


def to_document(
    structure: AInfStructure | None,
    *,
    ring: BulkRingDescriptor | None = None,
    bounding: BoundingCochainAssignment | None = None,
    trace: dict[Word, RingElement] | None = None,
    derivation: Derivation | None = None,
    vshs: VSHSData | None = None,
) -> NCHodgeDocument:
    """
    Canonical document of a structure and its optional extras.

    Args:
        structure: The category; None for a VSHS-only document
        ring: Ring of a VSHS-only document
        bounding: Bounding cochains to record
        trace: Trace functional to record
        derivation: Derivation to record (required with ``vshs``)
        vshs: VSHS to record
    """
    base_ring = structure.ring if structure is not None else ring
    if base_ring is None:
        raise DocumentError("a document needs a structure or a ring")
    document = NCHodgeDocument(
        format_version=FORMAT_VERSION, ring=_ring_block(base_ring), objects=[], homs=[], mu=[]
    )
    if structure is not None:
        document.objects = list(structure.objects)
        document.homs = _homs(structure)
        document.units = dict(sorted(structure.units.items()))
        document.arity_cap = structure.arity_cap
        document.mu = _mu_records(structure)
    if bounding is not None:
        document.bounding_cochains = BoundingBlock(
            mod_ideal=bounding.mod_ideal,
            per_object={
                obj: {name: format_element(c) for name, c in sorted(b.items())}
                for obj, b in sorted(bounding.per_object.items())
            },
        )
    if trace is not None:
        document.trace = [
            TraceRecord(word=list(w), coeff=format_element(c)) for w, c in sorted(trace.items())
        ]
    if vshs is not None:
        derivation = derivation or vshs.derivation
        document.vshs = _vshs_block(vshs)
    if derivation is not None:
        document.derivation = _derivation_block(derivation)
    return document


def emit_document(document: NCHodgeDocument) -> str:
    """Canonical text: two-space indentation, absent optional blocks omitted."""
    data = document.model_dump(mode="json", exclude_none=True)
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
