"""Tests for the prime field, truncated series and the element grammar."""

import random

import pytest

from engine.errors import CaseError, InconsistencyError, SeriesParseError
from engine.semigroup import NumericalSemigroup
from engine.series import FieldElement, SeriesElement, SeriesRing, is_prime, validate_characteristic

P = 32003


def ring(working_degree: int = 100, p: int = P) -> SeriesRing:
    return SeriesRing(NumericalSemigroup([6, 11, 15, 31]), p, working_degree)


# =============================================================================
# Field
# =============================================================================


def test_field_arithmetic() -> None:
    """Residues are reduced modulo p."""
    a = FieldElement(3, 7)
    assert int(a * 5) == 1
    assert int(a - 4) == 6
    assert FieldElement(-1, 7).value == 6
    assert FieldElement(7, 7).is_zero()


def test_characteristic_validation() -> None:
    """Only primes below 2**24 are accepted."""
    assert is_prime(32003)
    assert validate_characteristic(101) == 101
    with pytest.raises(CaseError, match="prime"):
        validate_characteristic(100)
    with pytest.raises(CaseError):
        validate_characteristic(1 << 24)


# =============================================================================
# Parsing
# =============================================================================


def test_parse_sum() -> None:
    """A sum of monomials parses and prints back unchanged."""
    g = ring().parse("t^6 + t^57")
    assert g.terms == {6: 1, 57: 1}
    assert str(g) == "t^6 + t^57"
    assert g.valuation == 6


def test_parse_coefficients_and_signs() -> None:
    """Coefficients reduce mod p; a leading minus is allowed."""
    g = ring().parse("3*t^6 - t^11")
    assert g.terms == {6: 3, 11: P - 1}
    h = ring().parse("-2*t^12 + 5")
    assert h.terms == {0: 5, 12: P - 2}


def test_parse_combines_like_terms() -> None:
    g = ring().parse("t^6 + t^6 - 2*t^6 + t^11")
    assert g.terms == {11: 1}


def test_parse_drops_terms_above_working_degree() -> None:
    g = ring(working_degree=20).parse("t^6 + t^31")
    assert g.terms == {6: 1}


def test_exponent_outside_semigroup() -> None:
    """t^7 is not an element of k[[t^<6,11,15,31>]]."""
    with pytest.raises(CaseError, match="exponent outside semigroup"):
        ring().parse("t^7")


def test_parse_error_positions() -> None:
    """Grammar errors carry the offending character position."""
    with pytest.raises(SeriesParseError) as info:
        ring().parse("t^")
    assert info.value.position == 2

    with pytest.raises(SeriesParseError, match="at position 5"):
        ring().parse("t^6 +* t^11")

    with pytest.raises(SeriesParseError) as info:
        ring().parse("t^6 t^11")
    assert info.value.position == 4

    with pytest.raises(SeriesParseError):
        ring().parse("")


def test_parse_error_is_case_error() -> None:
    with pytest.raises(CaseError):
        ring().parse("x^6")


# =============================================================================
# Arithmetic
# =============================================================================


def test_product_and_power() -> None:
    r = ring()
    g = r.parse("t^6 + t^11")
    assert (g * r.monomial(6)).terms == {12: 1, 17: 1}
    assert (r.monomial(6) ** 3).terms == {18: 1}
    assert (g ** 0) == r.one()


def test_product_truncates_at_working_degree() -> None:
    r = ring(working_degree=30)
    g = r.parse("t^6 + t^11")
    assert (g * g).terms == {12: 1, 17: 2, 22: 1}
    assert (g ** 3).terms == {18: 1, 23: 3, 28: 3}


def test_zero_element() -> None:
    z = ring().zero()
    assert z.is_zero()
    assert z.valuation == float("inf")
    assert str(z) == "0"


def random_element(r: SeriesRing, rng: random.Random) -> SeriesElement:
    """Nonzero element supported on members up to 30."""
    support = rng.sample(r.semigroup.monomials_up_to(30), 3)
    return r.element({e: rng.randrange(1, P) for e in support})


@pytest.mark.parametrize("seed", range(10))
def test_ring_axioms(seed: int) -> None:
    """Commutativity, associativity and distributivity on random triples."""
    rng = random.Random(seed)
    r = ring()
    f, g, h = (random_element(r, rng) for _ in range(3))
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + r.zero() == f
    assert f * r.one() == f
    assert (f - f).is_zero()


@pytest.mark.parametrize("seed", range(10))
def test_valuation_and_power_laws(seed: int) -> None:
    """v(fg) = v(f) + v(g) and f^(m+n) = f^m f^n below the working degree."""
    rng = random.Random(seed)
    r = ring()
    f, g = random_element(r, rng), random_element(r, rng)
    assert (f * g).valuation == f.valuation + g.valuation
    m, n = rng.randint(0, 3), rng.randint(0, 3)
    assert f ** (m + n) == (f ** m) * (f ** n)
    assert (f ** 2) == f * f


def test_context_mismatch() -> None:
    """Elements of different rings never mix."""
    with pytest.raises(InconsistencyError):
        ring(100).monomial(6) + ring(50).monomial(6)
    with pytest.raises(InconsistencyError):
        ring(100, p=P).monomial(6) * ring(100, p=101).monomial(6)
