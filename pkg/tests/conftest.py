"""Shared fixtures: ring contexts and the ideals of the worked examples."""

from typing import Callable

import pytest

from engine.semigroup import NumericalSemigroup
from engine.subspace import IdealHandle, RingContext

P = 32003


def make_ideal(
    semigroup: list[int],
    generators: list[str],
    truncation: int = 200,
) -> tuple[RingContext, IdealHandle]:
    """Context with a generous ceiling and the ideal generated by `generators`."""
    ctx = RingContext(NumericalSemigroup(semigroup), P, truncation, working_degree=truncation + 60)
    return ctx, IdealHandle(ctx, [ctx.parse(g) for g in generators])


@pytest.fixture
def ideal_factory() -> Callable[..., tuple[RingContext, IdealHandle]]:
    return make_ideal


@pytest.fixture
def example1() -> IdealHandle:
    """I = (t^6, t^11, t^31) in k[[t^<6,11,15,31>]]."""
    _, ideal = make_ideal([6, 11, 15, 31], ["t^6", "t^11", "t^31"])
    return ideal


@pytest.fixture
def example2() -> IdealHandle:
    """I = (t^8, t^15, t^50, t^57) in k[[t^<8,15,28,50,57>]]."""
    _, ideal = make_ideal([8, 15, 28, 50, 57], ["t^8", "t^15", "t^50", "t^57"], truncation=400)
    return ideal


@pytest.fixture
def closing() -> IdealHandle:
    """The maximal ideal of k[[t^<4,5,11>]]."""
    _, ideal = make_ideal([4, 5, 11], ["t^4", "t^5", "t^11"])
    return ideal
