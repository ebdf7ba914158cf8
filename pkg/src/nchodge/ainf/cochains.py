"""Hochschild cochains: Gerstenhaber composition, bracket and differential."""

from collections import defaultdict
from collections.abc import Mapping

from nchodge.ainf.models import AInfStructure, CochainEntries, CochainVector, Element
from nchodge.scalars import RingElement, sign_of


def _index_by_output(entries: CochainEntries) -> dict[str, list[tuple[tuple[str, ...], RingElement]]]:
    by_output: dict[str, list[tuple[tuple[str, ...], RingElement]]] = defaultdict(list)
    for inputs, outputs in entries.items():
        for name, coeff in outputs.items():
            by_output[name].append((inputs, coeff))
    return by_output


def compose_entries(
    structure: AInfStructure,
    outer: Mapping[tuple[str, ...], Element],
    inner: Mapping[tuple[str, ...], Element],
    inner_parity: int,
    max_arity: int | None = None,
) -> CochainEntries:
    """
    Gerstenhaber composition ``outer ∘ inner``.

    ``(f ∘ g)(a1..an) = sum ± f(a1..ai, g(a_{i+1}..a_{i+j}), ..., an)`` with
    sign ``(-1)^{|g| * (||a1|| + ... + ||ai||)}``; ``|g|`` is the parity of
    the inner cochain's shifted degree.

    Args:
        structure: Supplies generator degrees
        outer: Entries of f
        inner: Entries of g
        inner_parity: Shifted-degree parity of g
        max_arity: Drop result tuples longer than this

    Returns:
        Entries of the composite, zero coefficients pruned
    """
    by_output = _index_by_output(dict(inner))
    result: dict[tuple[str, ...], dict[str, RingElement]] = defaultdict(dict)
    for key, outputs in outer.items():
        prefix_shift = 0
        for position, slot in enumerate(key):
            candidates = by_output.get(slot)
            if candidates:
                sign = sign_of(inner_parity * prefix_shift)
                head, tail = key[:position], key[position + 1 :]
                for inner_inputs, inner_coeff in candidates:
                    new_key = head + inner_inputs + tail
                    if max_arity is not None and len(new_key) > max_arity:
                        continue
                    bucket = result[new_key]
                    for name, coeff in outputs.items():
                        term = (inner_coeff * coeff).scale(sign)
                        bucket[name] = bucket[name] + term if name in bucket else term
            prefix_shift += structure.shifted(slot)
    return {
        key: kept
        for key, bucket in result.items()
        if (kept := {n: c for n, c in bucket.items() if not c.is_zero()})
    }


def compose(
    structure: AInfStructure,
    f: CochainVector,
    g: CochainVector,
    max_arity: int | None = None,
) -> CochainVector:
    """Composition of cochains; the result has parity ``|f| + |g|``."""
    entries = compose_entries(structure, f.entries, g.entries, g.parity, max_arity)
    return CochainVector(entries, (f.parity + g.parity) % 2)


def gerstenhaber_bracket(
    structure: AInfStructure,
    f: CochainVector,
    g: CochainVector,
    max_arity: int | None = None,
) -> CochainVector:
    """``[f, g] = f ∘ g - (-1)^{|f||g|} g ∘ f``."""
    left = compose(structure, f, g, max_arity)
    right = compose(structure, g, f, max_arity)
    if (f.parity * g.parity) % 2:
        return left + right
    return left - right


def structure_cochain(structure: AInfStructure) -> CochainVector:
    """The structure maps as an odd cochain."""
    return CochainVector({k: dict(v) for k, v in structure.mu.items()}, parity=1)


def cochain_differential(
    structure: AInfStructure, phi: CochainVector, max_arity: int | None = None
) -> CochainVector:
    """
    Hochschild differential ``delta(phi) = [mu, phi]``.

    For an odd cochain with ``[mu, mu] = 0`` this squares to zero.
    """
    return gerstenhaber_bracket(structure, structure_cochain(structure), phi, max_arity)


def cochain_equal(a: CochainVector, b: CochainVector) -> bool:
    return (a - b).is_zero()
