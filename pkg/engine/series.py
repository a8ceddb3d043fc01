"""Truncated elements of k[[t^S]] over a prime field GF(p).

Elements are sparse exponent -> residue maps. Every element belongs to a
SeriesRing, which fixes the semigroup, the characteristic and the working
degree W above which terms are discarded.
"""

import logging
import re
from dataclasses import dataclass
from typing import Union

from engine.errors import CaseError, InconsistencyError, SeriesParseError
from engine.semigroup import NumericalSemigroup

logger = logging.getLogger(__name__)

# Residues must multiply and accumulate exactly in int64 during elimination.
MAX_CHARACTERISTIC = 1 << 24


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (p < 2**24 keeps this cheap)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def validate_characteristic(p: int) -> int:
    """
    Check that p is a supported field characteristic.

    Args:
        p: Candidate characteristic

    Returns:
        p unchanged

    Raises:
        CaseError: If p is not a prime below 2**24
    """
    if not isinstance(p, int) or not is_prime(p):
        raise CaseError(f"characteristic must be prime, got {p}")
    if p >= MAX_CHARACTERISTIC:
        raise CaseError(f"characteristic must be below {MAX_CHARACTERISTIC}, got {p}")
    return p


@dataclass(frozen=True)
class FieldElement:
    """Residue modulo a prime p."""

    value: int
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other: Union["FieldElement", int]) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise InconsistencyError(f"field mismatch: GF({self.p}) vs GF({other.p})")
            return other.value
        return int(other)

    def __add__(self, other: Union["FieldElement", int]) -> "FieldElement":
        return FieldElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other: Union["FieldElement", int]) -> "FieldElement":
        return FieldElement(self.value - self._coerce(other), self.p)

    def __mul__(self, other: Union["FieldElement", int]) -> "FieldElement":
        return FieldElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return FieldElement(-self.value, self.p)

    def is_zero(self) -> bool:
        return self.value == 0

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


class PrimeField:
    """Factory for residues of one characteristic."""

    def __init__(self, p: int) -> None:
        self.p = validate_characteristic(p)

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value, self.p)

    def zero(self) -> FieldElement:
        return FieldElement(0, self.p)

    def one(self) -> FieldElement:
        return FieldElement(1, self.p)

    def random(self, rng, nonzero: bool = False) -> FieldElement:
        low = 1 if nonzero else 0
        return FieldElement(rng.randint(low, self.p - 1), self.p)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


class SeriesRing:
    """Context shared by elements: semigroup, prime field and working degree W."""

    def __init__(self, semigroup: NumericalSemigroup, p: int, working_degree: int) -> None:
        self.semigroup = semigroup
        self.field = PrimeField(p)
        self.p = self.field.p
        if working_degree < 0:
            raise CaseError(f"working degree must be non-negative, got {working_degree}")
        self.working_degree = working_degree

    def element(self, terms: dict[int, int]) -> "SeriesElement":
        """Build an element from an exponent -> coefficient map (coefficients reduced mod p)."""
        return SeriesElement(self, terms)

    def monomial(self, exponent: int, coefficient: int = 1) -> "SeriesElement":
        return SeriesElement(self, {exponent: coefficient})

    def zero(self) -> "SeriesElement":
        return SeriesElement(self, {})

    def one(self) -> "SeriesElement":
        return SeriesElement(self, {0: 1})

    def parse(self, text: str) -> "SeriesElement":
        return parse_series(text, self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SeriesRing):
            return NotImplemented
        return (
            self.semigroup == other.semigroup
            and self.p == other.p
            and self.working_degree == other.working_degree
        )

    def __hash__(self) -> int:
        return hash((self.semigroup, self.p, self.working_degree))

    def __repr__(self) -> str:
        return f"SeriesRing(k[[t^{self.semigroup}]], p={self.p}, W={self.working_degree})"


class SeriesElement:
    """Immutable truncated power series with exponents in S and at most W."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: SeriesRing, terms: dict[int, int]) -> None:
        p = ring.p
        clean: dict[int, int] = {}
        for exponent in sorted(terms):
            if exponent > ring.working_degree:
                continue
            if exponent not in ring.semigroup:
                raise CaseError(f"exponent outside semigroup: {exponent}")
            value = int(terms[exponent]) % p
            if value:
                clean[exponent] = value
        self.ring = ring
        self._terms = clean

    @property
    def terms(self) -> dict[int, int]:
        """Ascending exponent -> nonzero residue (a copy)."""
        return dict(self._terms)

    def items(self) -> list[tuple[int, int]]:
        return list(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def valuation(self) -> float:
        """Smallest exponent, or +inf for zero."""
        if not self._terms:
            return float("inf")
        return next(iter(self._terms))

    def _check(self, other: "SeriesElement") -> None:
        if self.ring is not other.ring and self.ring != other.ring:
            raise InconsistencyError(f"context mismatch: {self.ring!r} vs {other.ring!r}")

    def __add__(self, other: "SeriesElement") -> "SeriesElement":
        self._check(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return SeriesElement(self.ring, terms)

    def __neg__(self) -> "SeriesElement":
        return SeriesElement(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "SeriesElement") -> "SeriesElement":
        return self + (-other)

    def scale(self, c: Union[FieldElement, int]) -> "SeriesElement":
        if isinstance(c, FieldElement) and c.p != self.ring.p:
            raise InconsistencyError(f"field mismatch: GF({c.p}) vs GF({self.ring.p})")
        k = int(c)
        return SeriesElement(self.ring, {e: k * v for e, v in self._terms.items()})

    def __mul__(self, other: Union["SeriesElement", FieldElement, int]) -> "SeriesElement":
        if not isinstance(other, SeriesElement):
            return self.scale(other)
        self._check(other)
        w = self.ring.working_degree
        p = self.ring.p
        terms: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                if e > w:
                    break
                terms[e] = (terms.get(e, 0) + c1 * c2) % p
        return SeriesElement(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SeriesElement":
        if n < 0:
            raise CaseError(f"power needs n >= 0, got {n}")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SeriesElement):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.ring, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"SeriesElement({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            parts.append(f"t^{e}" if c == 1 else f"{c}*t^{e}")
        return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<sign>[+-])|(?P<int>\d+)|(?P<star>\*)|(?P<t>t)|(?P<caret>\^))")


def parse_series(text: str, ring: SeriesRing) -> SeriesElement:
    """
    Parse a sum of terms `[coeff *] t^exp` into an element of `ring`.

    A bare integer is a constant term. Coefficients reduce mod p, terms above
    W are dropped and like terms combine.

    Args:
        text: Element text such as "t^8 + t^57" or "3*t^6 - t^11"
        ring: Target SeriesRing

    Returns:
        Parsed SeriesElement

    Raises:
        SeriesParseError: On malformed syntax, with the offending position
        CaseError: If an exponent lies outside the semigroup
    """
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            raise SeriesParseError(f"unexpected character {stripped[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    if not tokens:
        raise SeriesParseError("empty element", 0)

    terms: dict[int, int] = {}
    i = 0

    def expect(kind: str) -> str:
        nonlocal i
        if i >= len(tokens):
            raise SeriesParseError(f"expected {kind}, found end of input", len(stripped))
        k, value, at = tokens[i]
        if k != kind:
            raise SeriesParseError(f"expected {kind}, found {value!r}", at)
        i += 1
        return value

    first = True
    while i < len(tokens):
        sign = 1
        if tokens[i][0] == "sign":
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif not first:
            raise SeriesParseError(f"expected '+' or '-', found {tokens[i][1]!r}", tokens[i][2])
        first = False
        if i >= len(tokens):
            raise SeriesParseError("dangling sign", len(stripped))

        coefficient = 1
        exponent = 0
        kind, value, at = tokens[i]
        if kind == "int":
            coefficient = int(value)
            i += 1
            if i < len(tokens) and tokens[i][0] == "star":
                i += 1
                expect("t")
                expect("caret")
                exponent = int(expect("int"))
        elif kind == "t":
            i += 1
            expect("caret")
            exponent = int(expect("int"))
        else:
            raise SeriesParseError(f"expected a term, found {value!r}", at)

        if exponent not in ring.semigroup:
            raise CaseError(f"exponent outside semigroup: t^{exponent} in {ring.semigroup}")
        terms[exponent] = terms.get(exponent, 0) + sign * coefficient

    return SeriesElement(ring, terms)
