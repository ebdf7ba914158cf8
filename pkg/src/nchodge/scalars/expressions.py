"""Exact scalar expression grammar.

    rational   ::= int ['/' int]
    atom       ::= rational | 'T' | 'T^(' ['-'] rational ')' | name
                 | name '^[' int ']' | name '^' int
    product    ::= atom ('*' atom)*
    expression ::= ['-'] product (('+' | '-') product)* [('+' 'O(T^(' rational '))')]

Parsing is exact; there is no floating point anywhere. Formatting is
canonical, so ``format(parse(s))`` is stable.
"""

import re
from fractions import Fraction

from nchodge.errors import DocumentError, UnknownSymbol
from nchodge.scalars.novikov import NovikovScalar
from nchodge.scalars.ring import BulkRingDescriptor, RingElement

TOKEN_PATTERN = re.compile(
    r"\s*(?:"
    r"(?P<bigo>O\(\s*T\^\(\s*(?P<prec>-?\d+(?:/\d+)?)\s*\)\s*\))"
    r"|(?P<tpow>T\^\(\s*(?P<texp>-?\d+(?:/\d+)?)\s*\))"
    r"|(?P<number>\d+(?:/\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)(?:\^\[(?P<divided>\d+)\]|\^(?P<plain>\d+))?"
    r"|(?P<op>[*+\-])"
    r")"
)


def _tokenize(text: str) -> list[re.Match]:
    tokens = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = TOKEN_PATTERN.match(stripped, position)
        if match is None or match.end() == position:
            raise DocumentError(f"cannot parse scalar expression {text!r} at offset {position}")
        tokens.append(match)
        position = match.end()
    return tokens


def _atom(ring: BulkRingDescriptor, token: re.Match) -> RingElement:
    if token.group("tpow"):
        return RingElement.t_power(ring, Fraction(token.group("texp")))
    if token.group("number"):
        return RingElement.constant(ring, Fraction(token.group("number")))
    name = token.group("name")
    if name == "T":
        if token.group("divided") or token.group("plain"):
            raise DocumentError("write powers of T as T^(q)")
        return RingElement.t_power(ring, 1)
    if token.group("divided"):
        if name in ring.symbols:
            raise DocumentError(f"divided powers apply to bulk variables, not symbol '{name}'")
        if not ring.divided_powers:
            raise DocumentError(f"ring has no divided powers, cannot read '{name}^[...]'")
        return RingElement.variable(ring, name, int(token.group("divided")))
    power = int(token.group("plain") or 1)
    if name in ring.symbols:
        return RingElement.symbol(ring, name, power)
    if name in ring.variable_names:
        return RingElement.variable(ring, name, 1).power(power)
    raise UnknownSymbol(f"unknown symbol '{name}' in scalar expression")


def parse_element(ring: BulkRingDescriptor, text: str) -> RingElement:
    """
    Parse a scalar expression into a ring element.

    Args:
        ring: Ring the expression lives in
        text: Expression such as ``"3/2*T^(1/2)*t1^[2] - 1"``

    Returns:
        The parsed element, reduced to the ring's truncation

    Raises:
        DocumentError: On syntax errors
        UnknownSymbol: On names the ring does not declare
    """
    tokens = _tokenize(text)
    if not tokens:
        raise DocumentError("empty scalar expression")

    total = RingElement.zero(ring)
    precision: Fraction | None = None
    sign = 1
    current: RingElement | None = None
    expect_atom = True

    def flush() -> None:
        nonlocal total, current
        if current is not None:
            total = total + current.scale(sign)
        current = None

    for token in tokens:
        op = token.group("op")
        if op in ("+", "-"):
            if not expect_atom:
                flush()
                sign = 1 if op == "+" else -1
            elif current is None:
                sign = sign * (1 if op == "+" else -1)
            else:
                raise DocumentError(f"unexpected '{op}' in {text!r}")
            expect_atom = True
            continue
        if op == "*":
            if expect_atom:
                raise DocumentError(f"unexpected '*' in {text!r}")
            expect_atom = True
            continue
        if token.group("bigo"):
            if current is not None and not expect_atom:
                raise DocumentError(f"O(...) must be a separate summand in {text!r}")
            precision = Fraction(token.group("prec"))
            expect_atom = False
            continue
        if not expect_atom:
            raise DocumentError(f"missing operator before {token.group(0).strip()!r} in {text!r}")
        atom = _atom(ring, token)
        current = atom if current is None else current * atom
        expect_atom = False

    if expect_atom:
        raise DocumentError(f"expression {text!r} ends with an operator")
    flush()
    if precision is not None:
        total = total.map_scalars(lambda s: s.truncate(precision))
        if total.is_zero():
            return total
    return total


def parse_scalar(text: str) -> NovikovScalar:
    """Parse an expression without bulk variables into a Novikov scalar."""
    ring = BulkRingDescriptor()
    return parse_element(ring, text).constant_scalar()


def _format_rational(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _factors(ring: BulkRingDescriptor, monomial: tuple, exponent: Fraction) -> list[str]:
    symbols, bulk = monomial
    factors = []
    if exponent != 0:
        factors.append("T" if exponent == 1 else f"T^({_format_rational(exponent)})")
    for name, power in zip(ring.symbols, symbols):
        if power:
            factors.append(name if power == 1 else f"{name}^{power}")
    for variable, power in zip(ring.variables, bulk):
        if not power:
            continue
        if power == 1:
            factors.append(variable.name)
        elif ring.divided_powers and variable.degree % 2 == 0:
            factors.append(f"{variable.name}^[{power}]")
        else:
            factors.append(f"{variable.name}^{power}")
    return factors


def _join(pieces: list[tuple[Fraction, list[str]]], precision: Fraction | None) -> str:
    parts: list[str] = []
    for coeff, factors in pieces:
        magnitude = abs(coeff)
        body = "*".join(factors)
        if not body:
            text = _format_rational(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{_format_rational(magnitude)}*{body}"
        if not parts:
            parts.append(f"-{text}" if coeff < 0 else text)
        else:
            parts.append(f"- {text}" if coeff < 0 else f"+ {text}")
    if precision is not None:
        marker = f"O(T^({_format_rational(precision)}))"
        parts.append(f"+ {marker}" if parts else marker)
    return " ".join(parts) if parts else "0"


def format_scalar(scalar: NovikovScalar) -> str:
    """Canonical text of a Novikov scalar."""
    ring = BulkRingDescriptor()
    pieces = [(c, _factors(ring, ring.unit_monomial, e)) for e, c in scalar.terms]
    return _join(pieces, scalar.precision)


def format_element(element: RingElement) -> str:
    """Canonical text of a ring element: monomials in lexicographic order, then T-exponents."""
    ring = element.ring
    pieces = []
    for monomial, scalar in element.sorted_terms():
        for exponent, coeff in scalar.terms:
            pieces.append((coeff, _factors(ring, monomial, exponent)))
    precision = element.precision()
    if precision is not None and ring.truncation.t_precision is not None:
        if precision >= ring.truncation.t_precision:
            precision = None
    return _join(pieces, precision)
